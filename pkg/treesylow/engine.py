"""
Finite permutation group machinery.

Two engines live here:

* ``closure`` enumerates a group exhaustively into a ``GroupTable``. Elements
  are rows of a numpy array in 0-based one-line form; the frontier of the
  breadth-first search is multiplied by every generator in one vectorised
  step and deduplicated against a set of row bytes.
* ``StabilizerChain`` is a deterministic Schreier-Sims chain (base points
  picked as the smallest moved point) that gives exact orders for groups far
  beyond enumeration, e.g. 2^126 at degree 128.

Everything that needs a subgroup lattice (derived and squares subgroups,
Frattini subgroup, rank, quotients) works on tables.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial, lcm

import numpy as np

from .constants import DEFAULT_CLOSURE_CAP
from .errors import (ClosureCapExceeded, DegreeMismatchError,
                     InvalidParameterError, NotASubgroupError,
                     NotATwoGroupError, NotNormalError)
from .models import QuotientStructure
from .perm import Permutation, _inv, _mul
from .utils import gf2_rank, is_power_of_two, log2_exact

logger = logging.getLogger(__name__)


# ==============================================================================
# GENERATING SETS
# ==============================================================================

@dataclass(frozen=True)
class GeneratingSet:
    degree: int
    generators: tuple
    name: str = None

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, 'generators', gens)
        if not gens:
            raise InvalidParameterError('a generating set needs at least one element')
        for g in gens:
            if g.degree != self.degree:
                raise DegreeMismatchError(f'generator {g} has degree {g.degree}, expected {self.degree}')

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def without(self, index):
        """Drop one generator; an emptied set falls back to the identity."""
        rest = self.generators[:index] + self.generators[index + 1:]
        if not rest:
            rest = (Permutation.identity(self.degree),)
        return GeneratingSet(self.degree, rest, f'{self.name or "gens"} without #{index}')

    def extended(self, more, name=None):
        return GeneratingSet(self.degree, self.generators + tuple(more), name or self.name)

    def all_even(self):
        return all(g.parity() == 0 for g in self.generators)

    def to_dict(self):
        return {
            'name': self.name,
            'degree': self.degree,
            'generators': [g.to_cycle_string() for g in self.generators],
        }


def trivial_gens(degree):
    return GeneratingSet(degree, (Permutation.identity(degree),), 'trivial')


# ==============================================================================
# ROW HELPERS (numpy array forms)
# ==============================================================================

def _dtype(degree):
    return np.int16 if degree <= np.iinfo(np.int16).max else np.int32


def _as_rows(perms, degree):
    rows = np.array([p.array_form for p in perms], dtype=_dtype(degree))
    return rows.reshape(len(perms), degree)


def _compose_rows(a, b):
    """Row-wise a∘b."""
    return np.take_along_axis(a, b, axis=1)


def _invert_rows(a):
    return np.argsort(a, axis=1).astype(a.dtype)


def _row_perm(row):
    return Permutation.from_array_form(row.tolist())


# ==============================================================================
# EXHAUSTIVE ENGINE
# ==============================================================================

class GroupTable:
    """A fully enumerated finite permutation group.

    Rows are sorted lexicographically by one-line form, so iteration order and
    exports do not depend on how the closure was scheduled.
    """

    def __init__(self, degree, array, origin):
        array = np.ascontiguousarray(array, dtype=_dtype(degree)).reshape(-1, degree)
        order = np.lexsort(array.T[::-1]) if degree else np.arange(len(array))
        self.degree = degree
        self.array = array[order]
        self.array.setflags(write=False)
        self.origin = origin
        self._keys = {row.tobytes(): i for i, row in enumerate(self.array)}

    def __len__(self):
        return len(self.array)

    @property
    def order(self):
        return len(self.array)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        if x.degree != self.degree:
            raise DegreeMismatchError(f'degree {x.degree} element against degree {self.degree} table')
        return self._key(x) in self._keys

    def __repr__(self):
        return f'<GroupTable {self.origin.name or "?"} degree={self.degree} order={self.order}>'

    def _key(self, x):
        return np.asarray(x.array_form, dtype=self.array.dtype).tobytes()

    def index_of(self, x):
        return self._keys[self._key(x)]

    @cached_property
    def elements(self):
        return tuple(_row_perm(row) for row in self.array)

    @property
    def is_trivial(self):
        return self.order == 1

    def contains_rows(self, rows):
        rows = np.ascontiguousarray(rows, dtype=self.array.dtype)
        return np.fromiter((row.tobytes() in self._keys for row in rows), bool, len(rows))

    def issubset(self, other):
        return self.degree == other.degree and all(k in other._keys for k in self._keys)

    def same_elements(self, other):
        return self.order == other.order and self.issubset(other)

    def verify(self):
        """Identity, inverses, closure under the origin generators, Lagrange against n!."""
        if Permutation.identity(self.degree) not in self:
            return False
        if not self.contains_rows(_invert_rows(self.array)).all():
            return False
        for g in _as_rows(self.origin.generators, self.degree):
            if not self.contains_rows(g[self.array]).all():
                return False
        return factorial(self.degree) % self.order == 0

    def export_lines(self):
        return [','.join(str(x + 1) for x in row) for row in self.array.tolist()]


def closure(gens, cap=DEFAULT_CLOSURE_CAP):
    """Enumerate ⟨gens⟩ breadth first; ClosureCapExceeded past cap elements."""
    if cap < 1:
        raise InvalidParameterError('closure cap must be at least 1')
    n = gens.degree
    gen_rows = _as_rows(gens.generators, n)
    ident = np.arange(n, dtype=_dtype(n))[None, :]
    seen = {ident[0].tobytes()}
    found = [ident]
    frontier = ident
    while len(frontier):
        products = np.unique(np.concatenate([g[frontier] for g in gen_rows]), axis=0)
        keys = [row.tobytes() for row in products]
        fresh = np.fromiter((key not in seen for key in keys), bool, len(keys))
        seen.update(key for key, new in zip(keys, fresh) if new)
        if len(seen) > cap:
            raise ClosureCapExceeded(len(seen), cap)
        frontier = products[fresh]
        found.append(frontier)
    table = GroupTable(n, np.concatenate(found), gens)
    logger.debug('closure of %s: %d elements', gens.name, table.order)
    return table


def trivial_group(degree):
    return closure(trivial_gens(degree))


def _generate_from_rows(rows, degree, cap=DEFAULT_CLOSURE_CAP, name=None):
    """Subgroup generated by many rows, keeping only the rows that enlarge it."""
    chosen = []
    table = trivial_group(degree)
    for row in np.ascontiguousarray(rows, dtype=_dtype(degree)):
        if row.tobytes() in table._keys:
            continue
        chosen.append(_row_perm(row))
        table = closure(GeneratingSet(degree, chosen, name), cap)
    return table


def generate_from(elements, degree, cap=DEFAULT_CLOSURE_CAP, name=None):
    elements = list(elements)
    if not elements:
        return trivial_group(degree)
    return _generate_from_rows(_as_rows(elements, degree), degree, cap, name)


# ==============================================================================
# STABILIZER-CHAIN ENGINE
# ==============================================================================

def _is_identity_af(af):
    return all(i == x for i, x in enumerate(af))


def _first_moved(af):
    for i, x in enumerate(af):
        if i != x:
            return i
    return None


class StabilizerChain:
    """Base, transversals and strong generators of a permutation group.

    Level l stores the strong generators fixing base[0..l-1], the orbit of
    base[l] under them and a coset representative (plus inverse) for every
    orbit point. Representatives are never replaced once found, which keeps
    previously sifted Schreier generators valid.
    """

    def __init__(self, degree):
        self.degree = degree
        self.base = []
        self._gens = []
        self._orbits = []
        self._reps = []
        self._inv_reps = []
        self._done = []

    @classmethod
    def build(cls, gens):
        chain = cls(gens.degree)
        moving = [g.array_form for g in gens if not g.is_identity()]
        if moving:
            chain._add_level(min(_first_moved(g) for g in moving))
            chain._gens[0].extend(moving)
            chain._extend_orbit(0)
            chain._schreier_sims()
        logger.debug('chain for %s: base length %d, order %d',
                     gens.name, len(chain.base), chain.order())
        return chain

    def _add_level(self, point):
        ident = tuple(range(self.degree))
        self.base.append(point)
        self._gens.append([])
        self._orbits.append([point])
        self._reps.append({point: ident})
        self._inv_reps.append({point: ident})
        self._done.append(set())

    def _extend_orbit(self, level):
        orbit = self._orbits[level]
        reps = self._reps[level]
        inv_reps = self._inv_reps[level]
        gens = self._gens[level]
        i = 0
        while i < len(orbit):
            p = orbit[i]
            for g in gens:
                q = g[p]
                if q not in reps:
                    rep = _mul(g, reps[p])
                    reps[q] = rep
                    inv_reps[q] = _inv(rep)
                    orbit.append(q)
            i += 1

    def _strip(self, h, start=0):
        """Sift h from level start; returns (residue, level where it stopped)."""
        for level in range(start, len(self.base)):
            b = self.base[level]
            x = h[b]
            if x == b:
                continue
            inv = self._inv_reps[level].get(x)
            if inv is None:
                return h, level
            h = _mul(inv, h)
        return h, len(self.base)

    def _schreier_sims(self):
        i = len(self.base) - 1
        while i >= 0:
            jumped = False
            gens = self._gens[i]
            reps = self._reps[i]
            inv_reps = self._inv_reps[i]
            done = self._done[i]
            for p in self._orbits[i]:
                for s_idx, s in enumerate(gens):
                    if (p, s_idx) in done:
                        continue
                    h = _mul(inv_reps[s[p]], _mul(s, reps[p]))
                    residue, j = self._strip(h, i + 1)
                    if j == len(self.base) and _is_identity_af(residue):
                        done.add((p, s_idx))
                        continue
                    if j == len(self.base):
                        self._add_level(_first_moved(residue))
                    for level in range(i + 1, j + 1):
                        self._gens[level].append(residue)
                        self._extend_orbit(level)
                    i = j
                    jumped = True
                    break
                if jumped:
                    break
            if not jumped:
                i -= 1

    # -- queries --

    def order(self):
        out = 1
        for orbit in self._orbits:
            out *= len(orbit)
        return out

    @property
    def strong_generators(self):
        seen = {}
        for gens in self._gens:
            for g in gens:
                seen.setdefault(g, None)
        return [Permutation.from_array_form(g) for g in seen]

    def contains(self, x):
        if x.degree != self.degree:
            raise DegreeMismatchError(f'degree {x.degree} element against degree {self.degree} chain')
        residue, level = self._strip(x.array_form)
        return level == len(self.base) and _is_identity_af(residue)

    def __contains__(self, x):
        return self.contains(x)

    def is_consistent(self):
        """Every strong generator sifts to the identity."""
        return all(self.contains(g) for g in self.strong_generators)


def order_schreier_sims(gens):
    return StabilizerChain.build(gens).order()


def contains(g, x):
    """Membership in a GroupTable (set lookup) or StabilizerChain (sifting)."""
    if isinstance(g, StabilizerChain):
        return g.contains(x)
    return x in g


# ==============================================================================
# SUBGROUPS
# ==============================================================================

def _conjugates_of(h_row, table):
    """x∘h∘x⁻¹ for every row x of the table."""
    inverses = _invert_rows(table.array)
    return _compose_rows(table.array, h_row[inverses])


def is_normal(h_gens, g, cap=DEFAULT_CLOSURE_CAP):
    """True iff every g-conjugate of every generator of H stays in H."""
    h = closure(h_gens, cap)
    if not h.issubset(g):
        raise NotASubgroupError(f'{h_gens.name or "H"} is not contained in {g.origin.name or "G"}')
    for row in _as_rows(h_gens.generators, h_gens.degree):
        if not h.contains_rows(_conjugates_of(row, g)).all():
            return False
    return True


def normal_closure(elements, g, cap=DEFAULT_CLOSURE_CAP, name=None):
    """Smallest normal subgroup of g containing the elements."""
    table = generate_from(elements, g.degree, cap, name)
    changed = True
    while changed:
        changed = False
        for h in table.origin.generators:
            for x in g.origin.generators:
                c = h.conjugate(x)
                if c not in table:
                    table = closure(table.origin.extended([c], name), cap)
                    changed = True
                    break
            if changed:
                break
    return table


def commutator(a, b):
    """[a, b] = a b a⁻¹ b⁻¹."""
    return a.compose(b).compose(a.inverse()).compose(b.inverse())


def derived_subgroup(g, cap=DEFAULT_CLOSURE_CAP):
    # normal closure of generator commutators is the subgroup of all commutators
    gens = g.origin.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(comms, g, cap, name=f"[{g.origin.name}, {g.origin.name}]")


def squares_subgroup(g, cap=DEFAULT_CLOSURE_CAP):
    squares = np.unique(_compose_rows(g.array, g.array), axis=0)
    return _generate_from_rows(squares, g.degree, cap, name=f'{g.origin.name}^2')


def _require_two_group(g):
    if not is_power_of_two(g.order):
        raise NotATwoGroupError(f'order {g.order} is not a power of 2')


def frattini_2group(g, cap=DEFAULT_CLOSURE_CAP):
    """Φ(g) = g²·[g, g] for a 2-group; coincides with the squares subgroup."""
    _require_two_group(g)
    squares = squares_subgroup(g, cap)
    derived = derived_subgroup(g, cap)
    phi = generate_from(squares.origin.generators + derived.origin.generators,
                        g.degree, cap, name=f'Phi({g.origin.name})')
    if not phi.same_elements(squares):
        raise RuntimeError('Frattini subgroup of a 2-group differs from its squares subgroup')
    return phi


def rank(g, cap=DEFAULT_CLOSURE_CAP, phi=None):
    """Burnside basis rank log2 |g / Φ(g)|; pass phi when it is already built."""
    _require_two_group(g)
    if phi is None:
        phi = frattini_2group(g, cap)
    return log2_exact(g.order // phi.order)


def derived_length(g, cap=DEFAULT_CLOSURE_CAP):
    """Length of the derived series down to 1; None when it stalls above 1."""
    length = 0
    current = g
    while not current.is_trivial:
        nxt = derived_subgroup(current, cap)
        if nxt.order == current.order:
            return None
        current = nxt
        length += 1
    return length


def quotient_structure(g, n):
    """Coset count, exponent and coset-order histogram of g/n."""
    if not n.issubset(g):
        raise NotASubgroupError('quotient by a set that is not a subgroup of g')
    for row in _as_rows(n.origin.generators, n.degree):
        if not n.contains_rows(_conjugates_of(row, g)).all():
            raise NotNormalError('quotient by a subgroup that is not normal')
    orders = np.zeros(g.order, dtype=np.int64)
    power = g.array
    step = 1
    while True:
        hit = (orders == 0) & n.contains_rows(power)
        orders[hit] = step
        if (orders > 0).all():
            break
        power = _compose_rows(power, g.array)
        step += 1
    histogram = Counter(orders.tolist())
    coset_orders = {o: c // n.order for o, c in histogram.items()}
    return QuotientStructure(cosets=g.order // n.order,
                             exponent=lcm(*coset_orders),
                             coset_orders=coset_orders)


# ==============================================================================
# HOMOMORPHISMS TO C2
# ==============================================================================

def _left_multiplication(g):
    """succ[i][x] = index of gen_i ∘ element_x."""
    out = []
    for row in _as_rows(g.origin.generators, g.degree):
        products = np.ascontiguousarray(row[g.array])
        out.append([g._keys[p.tobytes()] for p in products])
    return out


def _extend_to_hom(succ, assignment, start):
    """Values of the map to C2 sending generator i to bit i of assignment; None if ill defined."""
    values = [-1] * len(succ[0])
    values[start] = 0
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i, table in enumerate(succ):
            y = table[x]
            want = values[x] ^ ((assignment >> i) & 1)
            if values[y] < 0:
                values[y] = want
                queue.append(y)
            elif values[y] != want:
                return None
    return values


def _homomorphisms_to_c2(g):
    succ = _left_multiplication(g)
    start = g.index_of(Permutation.identity(g.degree))
    homs = {}
    for assignment in range(1, 1 << len(succ)):
        values = _extend_to_hom(succ, assignment, start)
        if values is not None:
            homs[assignment] = values
    return homs


def index_two_subgroups(g, cap=DEFAULT_CLOSURE_CAP):
    """Kernels of all surjections g -> C2, found by trying every generator image."""
    kernels = {}
    for values in _homomorphisms_to_c2(g).values():
        rows = g.array[np.asarray(values) == 0]
        table = _generate_from_rows(rows, g.degree, cap, name=f'ker in {g.origin.name}')
        kernels.setdefault(table.array.tobytes(), table)
    return list(kernels.values())


def burnside_projection(g):
    """Map element -> coordinate bit vector in g/Φ(g) ≅ C2^r (r = rank for 2-groups)."""
    homs = _homomorphisms_to_c2(g)
    basis = []
    for assignment in sorted(homs):
        if gf2_rank(basis + [assignment]) > len(basis):
            basis.append(assignment)
    columns = [homs[a] for a in basis]

    def project(x):
        i = g.index_of(x)
        return sum(col[i] << bit for bit, col in enumerate(columns))

    return project
