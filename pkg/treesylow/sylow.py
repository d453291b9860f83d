"""
Sylow 2-subgroups of symmetric and alternating groups as automorphism groups
of binary rooted trees, with the drivers that check their order formulas,
decompositions, isomorphisms and the minimality of {α_0, ..., α_{k-2}, τ}.

G_k denotes ⟨α_0, ..., α_{k-2}, τ⟩ acting on the 2^k leaves of X^[k]; it is
the even part of Aut X^[k] and a Sylow 2-subgroup of A_{2^k}.
"""

import logging
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import portrait as pt
from .constants import DEFAULT_CLOSURE_CAP
from .engine import (GeneratingSet, StabilizerChain, closure, derived_subgroup,
                     frattini_2group, generate_from, is_normal,
                     order_schreier_sims, quotient_structure, rank,
                     squares_subgroup, trivial_gens)
from .errors import InvalidParameterError
from .models import (AgreementReport, BinaryDecomposition, BoxtimesReport,
                     CheckReport, FrattiniActionReport, LemmaReport, MinimalityReport,
                     OrderRelationsReport, SemidirectReport, SystemsCount)
from .perm import Permutation, double, embed_block, parity_extend
from .utils import nu2

logger = logging.getLogger(__name__)


def _require(condition, message):
    if not condition:
        raise InvalidParameterError(message)


def _as_generating_set(portraits, name):
    perms = [pt.to_permutation(p) for p in portraits]
    return GeneratingSet(perms[0].degree, perms, name)


# ==============================================================================
# GENERATOR FAMILIES
# ==============================================================================

def alpha(k, i):
    """α_i: a single active state at v_{i,1}, 0 <= i <= k-2."""
    _require(isinstance(k, int) and k >= 2, f'alpha needs k >= 2, got {k}')
    _require(0 <= i <= k - 2, f'alpha index must lie in 0..{k - 2}, got {i}')
    return pt.vertex_swap(k, pt.VertexAddress(i, 1))


def tau(k):
    """τ = τ_{1,2^{k-1}}: active at the two outermost vertices of level k-1."""
    _require(isinstance(k, int) and k >= 2, f'tau needs k >= 2, got {k}')
    return pt.from_active(k, [(k - 1, 1), (k - 1, 1 << (k - 1))])


def generator_names(k):
    return [f'a{i}' for i in range(k - 1)] + ['t']


def _letter(k, name):
    return tau(k) if name == 't' else alpha(k, int(name[1:]))


def evaluate_word(k, word):
    """Product of the letters left to right (the rightmost letter acts first)."""
    out = pt.identity(k)
    for name in word:
        out = pt.compose(out, _letter(k, name))
    return out


def _reduce(word):
    # every letter is an involution, so equal neighbours cancel
    out = []
    for name in word:
        if out and out[-1] == name:
            out.pop()
        else:
            out.append(name)
    return out


def _left_conjugator(k, x):
    """α-word moving v_{k-1,1} to the 0-based left-half index x; fixes the right half."""
    return [f'a{m}' for m in range(1, k - 1) if (x >> (k - 2 - m)) & 1]


def _conjugate_word(c, core):
    return c + core + c[::-1]


def tau_ij_word(k, i, j):
    """Word in {α_0..α_{k-2}, τ} evaluating to τ_{i,j} (built from the 2-adic digits of i and j)."""
    _require(isinstance(k, int) and k >= 2, f'tau_ij needs k >= 2, got {k}')
    n_top = 1 << (k - 1)
    _require(1 <= i < j <= n_top, f'need 1 <= i < j <= {n_top}, got ({i}, {j})')
    half = n_top >> 1
    x, y = i - 1, j - 1

    def to_last(z):
        # τ_{z+1, 2^{k-1}} for z in the left half
        return _conjugate_word(_left_conjugator(k, z), ['t'])

    def from_middle(z):
        # τ_{2^{k-2}, z+1} for z in the right half
        d = ['a0'] + _left_conjugator(k, z - half) + ['a0']
        return _conjugate_word(d, ['a0', 't', 'a0'])

    def left_pair(z):
        # τ_{z+1, 2^{k-2}} for z in the left half
        if z == half - 1:
            return []
        return to_last(z) + to_last(half - 1)

    if y == n_top - 1 and x < half:
        word = to_last(x)
    elif y < half:
        word = to_last(x) + to_last(y)
    elif x < half:
        word = left_pair(x) + from_middle(y)
    else:
        word = from_middle(x) + from_middle(y)
    return _reduce(word)


def tau_ij(k, i, j):
    return evaluate_word(k, tau_ij_word(k, i, j))


def s_beta_portraits(k):
    _require(isinstance(k, int) and k >= 2, f'S_beta needs k >= 2, got {k}')
    return [alpha(k, i) for i in range(k - 1)] + [tau(k)]


def s_beta(k):
    """{α_0, ..., α_{k-2}, τ} as leaf permutations of degree 2^k."""
    return _as_generating_set(s_beta_portraits(k), f'S_beta({k})')


def w_subgroup_portraits(k):
    """Adjacent pairs {v_{k-1,i}, v_{k-1,i+1}}: a basis of the even-weight level-(k-1) activities."""
    _require(isinstance(k, int) and k >= 2, f'W needs k >= 2, got {k}')
    top = k - 1
    return [pt.from_active(k, [(top, i), (top, i + 1)]) for i in range(1, 1 << top)]


def w_subgroup_gens(k):
    return _as_generating_set(w_subgroup_portraits(k), f'W_{k - 1}')


def b_subgroup_portraits(k):
    _require(isinstance(k, int) and k >= 2, f'B needs k >= 2, got {k}')
    return [alpha(k, i) for i in range(k - 1)]


def b_subgroup_gens(k):
    return _as_generating_set(b_subgroup_portraits(k), f'B_{k - 1}')


def doubled_b_gens(k):
    """B_{k-1} as β_σ of the depth-(k-1) α_i acting on 2^(k-1) leaves."""
    _require(isinstance(k, int) and k >= 2, f'B needs k >= 2, got {k}')
    head = [pt.to_permutation(pt.restrict(a, k - 1)) for a in b_subgroup_portraits(k)]
    return GeneratingSet(1 << k, [double(x) for x in head], f'beta(B_{k - 1})')


def g_table(k, cap=DEFAULT_CLOSURE_CAP):
    return closure(s_beta(k), cap)


def random_words(gens, count, rng, max_length=32):
    """Products of random generator words, for sampled checks on large groups."""
    for _ in range(count):
        out = Permutation.identity(gens.degree)
        for _ in range(rng.randint(1, max_length)):
            out = out.compose(rng.choice(gens.generators))
        yield out


# ==============================================================================
# ORDER FORMULAS
# ==============================================================================

def nu2_factorial(n):
    """Legendre: exponent of 2 in n!."""
    _require(n >= 0, f'nu2_factorial needs n >= 0, got {n}')
    total = 0
    power = 2
    while power <= n:
        total += n // power
        power *= 2
    return total


def syl2_order_Sn(n):
    return 2 ** nu2_factorial(n)


def syl2_order_An(n):
    if n < 3:
        return 1
    return 2 ** (nu2_factorial(n) - 1)


# ==============================================================================
# DIRECT PRODUCTS AND ⊠
# ==============================================================================

def binary_decompose(n):
    _require(isinstance(n, int) and n >= 1, f'binary_decompose needs n >= 1, got {n}')
    return BinaryDecomposition(n, tuple(e for e in range(n.bit_length() - 1, -1, -1) if n >> e & 1))


def _wreath_tower(e):
    """Generators of Aut X^[e] = Syl2(S_{2^e}): the α family plus one sibling swap."""
    swaps = [pt.vertex_swap(e, pt.VertexAddress(i, 1)) for i in range(e)]
    return [pt.to_permutation(p) for p in swaps]


def syl2_Sn_blocks(n):
    """One generating set per binary part of n, embedded at its block, largest first."""
    blocks = []
    for offset, e in binary_decompose(n).blocks():
        if e == 0:
            continue
        gens = [embed_block(g, offset, n) for g in _wreath_tower(e)]
        blocks.append(GeneratingSet(n, gens, f'Syl2(S_{1 << e})@{offset}'))
    return blocks


def syl2_Sn_gens(n):
    blocks = syl2_Sn_blocks(n)
    if not blocks:
        return trivial_gens(n)
    return GeneratingSet(n, [g for b in blocks for g in b], f'Syl2(S_{n})')


def boxtimes_gens(parts, name=None):
    """Generators of the even permutations of the direct product of the parts.

    Schreier generators of the parity kernel, with transversal {id, t} for the
    first odd generator t. Parts must act on disjoint blocks of one degree.
    """
    parts = list(parts)
    _require(parts, 'boxtimes needs at least one part')
    degree = parts[0].degree
    _require(all(p.degree == degree for p in parts), 'boxtimes parts must share one degree')
    supports = [set().union(*(g.moved_points() for g in p)) for p in parts]
    for a in range(len(supports)):
        for b in range(a + 1, len(supports)):
            _require(not supports[a] & supports[b], 'boxtimes parts must act on disjoint blocks')
    name = name or ' ⊠ '.join(p.name or '?' for p in parts)
    gens = [g for p in parts for g in p if not g.is_identity()]
    odd = next((g for g in gens if g.parity()), None)
    if odd is None:
        return GeneratingSet(degree, gens or [Permutation.identity(degree)], name)
    ident = Permutation.identity(degree)
    odd_inv = odd.inverse()
    out = []
    for s in gens:
        for r in (ident, odd):
            sr = s.compose(r)
            x = odd_inv.compose(sr) if sr.parity() else sr
            if not x.is_identity() and x not in out:
                out.append(x)
    return GeneratingSet(degree, out or [ident], name)


def syl2_An_gens(n):
    _require(isinstance(n, int) and n >= 3, f'Syl2(A_n) needs n >= 3, got {n}')
    return boxtimes_gens(syl2_Sn_blocks(n), name=f'Syl2(A_{n})')


# ==============================================================================
# φ AND THE H-SUBGROUPS
# ==============================================================================

def phi_iso(sigma):
    """φ(σ) = σ∘(4k+1, 4k+2)^χ(σ) for σ on 4k points."""
    _require(sigma.degree > 0 and sigma.degree % 4 == 0,
             f'phi needs a degree divisible by 4, got {sigma.degree}')
    return parity_extend(sigma, sigma.degree + 2)


@dataclass(frozen=True)
class HSpec:
    """Which paired subgroup to build: A_{4k+2}, A_{4k+3} or A_{2^a+2^b}."""
    kind: str
    k: int = 0
    a: int = 0
    b: int = 0
    pair: tuple = None

    @property
    def degree(self):
        if self.kind == '4k+2':
            return 4 * self.k + 2
        if self.kind == '4k+3':
            return 4 * self.k + 3
        return (1 << self.a) + (1 << self.b)

    @classmethod
    def for_degree(cls, n):
        if n >= 6 and n % 4 == 2:
            return cls('4k+2', k=(n - 2) // 4)
        if n >= 7 and n % 4 == 3:
            return cls('4k+3', k=(n - 3) // 4)
        if n.bit_count() == 2 and n & 1 == 0:
            low = (n & -n).bit_length() - 1
            return cls('2^a+2^b', a=n.bit_length() - 1, b=low)
        raise InvalidParameterError(f'no H-subgroup construction for degree {n}')


def build_h_subgroup(hspec):
    """Generators {(g, h_g)}: each Syl2(S) generator g of the first block with its even-izing partner."""
    if hspec.kind == '4k+2':
        _require(hspec.k >= 1, 'H_{4k+2} needs k >= 1')
        n = hspec.degree
        gens = [parity_extend(g, n) for g in syl2_Sn_gens(4 * hspec.k)]
        return GeneratingSet(n, gens, f'H_{n}')
    if hspec.kind == '4k+3':
        _require(hspec.k >= 1, 'H_{4k+3} needs k >= 1')
        n = hspec.degree
        tail = (n - 2, n - 1, n)
        pair = tuple(hspec.pair) if hspec.pair else (n - 2, n - 1)
        _require(len(pair) == 2 and pair[0] != pair[1] and set(pair) <= set(tail),
                 f'pairing transposition must use two of {tail}, got {pair}')
        t = Permutation.transposition(pair[0], pair[1], n)
        gens = []
        for g in syl2_Sn_gens(4 * hspec.k):
            lifted = embed_block(g, 0, n)
            gens.append(lifted.compose(t) if g.parity() else lifted)
        return GeneratingSet(n, gens, f'H_{n}')
    if hspec.kind == '2^a+2^b':
        _require(hspec.a > hspec.b >= 1, f'H_(2^a+2^b) needs a > b >= 1, got a={hspec.a}, b={hspec.b}')
        n = hspec.degree
        first = 1 << hspec.a
        t = Permutation.transposition(first + 1, first + 2, n)
        gens = []
        for g in syl2_Sn_gens(first):
            lifted = embed_block(g, 0, n)
            gens.append(lifted.compose(t) if g.parity() else lifted)
        second = GeneratingSet(n, [embed_block(g, first, n) for g in _wreath_tower(hspec.b)])
        gens.extend(g for g in boxtimes_gens([second]) if not g.is_identity())
        return GeneratingSet(n, gens, f'H_{n}')
    raise InvalidParameterError(f'unknown H-subgroup kind {hspec.kind!r}')


# ==============================================================================
# VERIFICATION DRIVERS
# ==============================================================================

def verify_semidirect(k, cap=DEFAULT_CLOSURE_CAP):
    _require(k in (2, 3, 4), f'semidirect check runs for k in 2..4, got {k}')
    g = g_table(k, cap)
    w_gens, b_gens = w_subgroup_gens(k), b_subgroup_gens(k)
    w, b = closure(w_gens, cap), closure(b_gens, cap)
    doubled = closure(doubled_b_gens(k), cap)
    meet = int(b.contains_rows(w.array).sum())
    products = np.unique(np.concatenate([row[w.array] for row in b.array]), axis=0)
    product_is_g = len(products) == g.order and bool(g.contains_rows(products).all())
    report = SemidirectReport(
        k=k, w_order=w.order, b_order=b.order, g_order=g.order,
        w_normal=is_normal(w_gens, g, cap), b_normal=is_normal(b_gens, g, cap),
        intersection_trivial=meet == 1, product_is_g=product_is_g,
        b_from_doubling=b.same_elements(doubled))
    logger.info('semidirect k=%d: %s', k, 'pass' if report.passed else 'FAIL')
    return report


def verify_minimal(k, cap=DEFAULT_CLOSURE_CAP):
    _require(k in (2, 3, 4), f'minimality check runs for k in 2..4, got {k}')
    gens = s_beta(k)
    g = closure(gens, cap)
    phi = frattini_2group(g, cap)
    quotient = quotient_structure(g, phi)
    removals = tuple(closure(gens.without(i), cap).order for i in range(len(gens)))
    report = MinimalityReport(k=k, order=g.order, rank=rank(g, cap, phi=phi),
                              cosets=quotient.cosets, exponent=quotient.exponent,
                              removal_orders=removals)
    logger.info('minimal k=%d: %s', k, 'pass' if report.passed else 'FAIL')
    return report


def verify_frattini_action(k, cap=DEFAULT_CLOSURE_CAP):
    from .classify import is_type_t

    _require(k in (3, 4), f'Frattini action check runs for k in 3..4, got {k}')
    g = g_table(k, cap)
    squares = squares_subgroup(g, cap)
    derived = derived_subgroup(g, cap)
    phi = generate_from(squares.origin.generators + derived.origin.generators, g.degree, cap,
                        name=f'Phi(G_{k})')
    phi_portraits = [pt.from_permutation(x, k) for x in phi.elements]
    all_even = all(pt.level_index(a, l) % 2 == 0 for a in phi_portraits for l in range(k))
    t_in_g = sum(1 for x in g.elements if is_type_t(pt.from_permutation(x, k)))
    report = FrattiniActionReport(
        k=k, g_order=g.order, phi_order=phi.order, squares_order=squares.order,
        squares_equal_phi=phi.same_elements(squares),
        derived_in_squares=derived.issubset(squares),
        all_levels_even=all_even,
        t_in_phi=sum(1 for a in phi_portraits if is_type_t(a)),
        t_in_g=t_in_g,
        tau_in_phi=pt.to_permutation(tau(k)) in phi)
    logger.info('frattini k=%d: %s', k, 'pass' if report.passed else 'FAIL')
    return report


def verify_phi(n, cap=DEFAULT_CLOSURE_CAP):
    """φ: Syl2(S_{n-2}) -> Syl2(A_n) is a bijective homomorphism, checked on all pairs."""
    _require(n % 4 == 2 and n >= 6, f'phi check needs n = 4k+2, got {n}')
    domain = closure(syl2_Sn_gens(n - 2), cap).elements
    image = {x: phi_iso(x) for x in domain}
    hom = all(image[x.compose(y)] == image[x].compose(image[y]) for x in domain for y in domain)
    target = closure(syl2_An_gens(n), cap)
    onto = set(image.values()) == set(target.elements)
    return [
        CheckReport('relations.phi_homomorphism', n, True, hom),
        CheckReport('relations.phi_injective', n, len(domain), len(set(image.values()))),
        CheckReport('relations.phi_onto_syl2_an', n, True, onto),
    ]


def verify_phi_generators(n):
    """φ checked through generators and stabilizer chains, without listing the group."""
    _require(n % 4 == 2 and n >= 6, f'phi check needs n = 4k+2, got {n}')
    domain = syl2_Sn_gens(n - 2)
    image = GeneratingSet(n, [phi_iso(x) for x in domain], f'phi(Syl2(S_{n - 2}))')
    hom = all(phi_iso(x.compose(y)) == phi_iso(x).compose(phi_iso(y))
              for x in domain for y in domain)
    target = StabilizerChain.build(syl2_An_gens(n))
    image_order = order_schreier_sims(image)
    onto = all(target.contains(x) for x in image) and image_order == target.order()
    return [
        CheckReport('relations.phi_homomorphism', n, True, hom),
        CheckReport('relations.phi_injective', n, order_schreier_sims(domain), image_order),
        CheckReport('relations.phi_onto_syl2_an', n, True, onto),
    ]


def verify_order_relations(n, cap=DEFAULT_CLOSURE_CAP, brute_limit=16, phi_limit=10):
    _require(isinstance(n, int) and n >= 3, f'order relations need n >= 3, got {n}')
    an, sn = syl2_order_An, syl2_order_Sn
    entries = []
    if n % 2 == 1:
        entries.append(CheckReport('relations.odd_collapse', n, an(n - 1), an(n)))
    if n % 4 == 3 and n >= 7:
        entries.append(CheckReport('relations.ratio_two', n, 2, an(n) // an(n - 2)))
    if n % 4 == 2 and n >= 6:
        entries.append(CheckReport('relations.phi_order', n, sn(n - 2), an(n)))
    if n % 2 == 0:
        entries.append(CheckReport('relations.embedding_index', n,
                                   2 ** (nu2(n) - 1), an(n) // sn(n - 1)))
    if n <= brute_limit:
        an_gens = syl2_An_gens(n)
        entries.append(CheckReport('relations.an_all_even', n, True, an_gens.all_even()))
        entries.append(CheckReport('relations.an_group_order', n, an(n), order_schreier_sims(an_gens)))
        entries.append(CheckReport('relations.sn_group_order', n, sn(n),
                                   order_schreier_sims(syl2_Sn_gens(n))))
        if n % 2 == 1 and n >= 5:
            lifted = GeneratingSet(n, [embed_block(g, 0, n) for g in syl2_An_gens(n - 1)])
            entries.append(CheckReport('relations.odd_embedding_order', n, an(n),
                                       order_schreier_sims(lifted)))
        if n % 2 == 0 and n >= 4:
            lifted = GeneratingSet(n, [parity_extend(g, n) for g in syl2_Sn_gens(n - 2)])
            entries.append(CheckReport('relations.sn_minus_one_embedding', n, sn(n - 1),
                                       order_schreier_sims(lifted)))
        if n % 4 == 2 and n >= 6:
            entries.extend(verify_phi(n, cap) if n <= phi_limit else verify_phi_generators(n))
    report = OrderRelationsReport(n=n, entries=tuple(entries))
    logger.info('relations n=%d: %s', n, 'pass' if report.passed else 'FAIL')
    return report


def find_relabeling(a, b, max_degree=8):
    """A point relabeling σ with σ A σ⁻¹ = B, by search over S_n (small degrees only)."""
    if a.order != b.order or a.degree > max_degree:
        return None
    gens = a.origin.generators
    for images in permutations(range(1, a.degree + 1)):
        sigma = Permutation(images)
        if all(x.conjugate(sigma) in b for x in gens):
            return sigma
    return None


def verify_two_constructions(k, cap=DEFAULT_CLOSURE_CAP):
    _require(k in (2, 3, 4), f'agreement check runs for k in 2..4, got {k}')
    a = g_table(k, cap)
    b = closure(syl2_An_gens(1 << k), cap)
    equal = a.same_elements(b)
    relabeling = None if equal else find_relabeling(a, b)
    return AgreementReport(k=k, sbeta_order=a.order, an_order=b.order,
                           equal_sets=equal, relabeling=relabeling)


def verify_boxtimes(n):
    blocks = syl2_Sn_blocks(n)
    _require(blocks, f'no Sylow blocks for n = {n}')
    product = order_schreier_sims(syl2_Sn_gens(n))
    flat = order_schreier_sims(boxtimes_gens(blocks))
    nested = blocks[0]
    for block in blocks[1:]:
        nested = boxtimes_gens([nested, block])
    return BoxtimesReport(n=n, product_order=product, flat_order=flat,
                          nested_order=order_schreier_sims(nested), blocks=len(blocks))


def count_tau_systems(k):
    """How many {α_0..α_{k-2}, τ_{i,j}} with i <= 2^{k-2} < j generate G_k (reported, not asserted)."""
    _require(k in (2, 3, 4), f'system count runs for k in 2..4, got {k}')
    target = 2 ** (2 ** k - 2)
    alphas = list(b_subgroup_gens(k))
    half = 1 << (k - 2)
    candidates = generating = 0
    for i in range(1, half + 1):
        for j in range(half + 1, 2 * half + 1):
            candidates += 1
            gens = GeneratingSet(1 << k, alphas + [pt.to_permutation(tau_ij(k, i, j))])
            if StabilizerChain.build(gens).order() == target:
                generating += 1
    return SystemsCount(k=k, candidates=candidates, generating=generating)


def sample_evenness(k, count, rng, max_length=32):
    """Random words in S_beta(k) never leave A_{2^k}; for depths too large to enumerate."""
    _require(isinstance(k, int) and k >= 2, f'evenness sample needs k >= 2, got {k}')
    odd = sum(x.parity() for x in random_words(s_beta(k), count, rng, max_length))
    return LemmaReport(check='evenness', k=k, holds=odd == 0, scanned=count,
                       details={'odd_products': (0, odd)})
