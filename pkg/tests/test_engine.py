import random
from functools import reduce

import pytest
from sympy.combinatorics.perm_groups import PermutationGroup
from sympy.combinatorics.permutations import Permutation as SymPerm

from treesylow import portrait as pt
from treesylow.engine import (GeneratingSet, StabilizerChain, burnside_projection,
                              closure, commutator, contains, derived_length, derived_subgroup,
                              frattini_2group, generate_from, index_two_subgroups,
                              is_normal, normal_closure, order_schreier_sims,
                              quotient_structure, rank, squares_subgroup, trivial_gens)
from treesylow.errors import (ClosureCapExceeded, DegreeMismatchError,
                              InvalidParameterError, NotASubgroupError,
                              NotATwoGroupError, NotNormalError)
from treesylow.perm import Permutation, parse_cycles
from treesylow.sylow import s_beta, syl2_An_gens, syl2_Sn_gens, tau_ij
from treesylow.utils import gf2_rank


def gens_of(degree, *cycles):
    return GeneratingSet(degree, [parse_cycles(c, degree) for c in cycles])


def sympy_group(gens):
    return PermutationGroup([SymPerm(list(g.array_form)) for g in gens])


@pytest.fixture(scope='module')
def S_4():
    return closure(gens_of(4, '(1 2)', '(1 2 3 4)'))


def test_generating_set_validation():
    with pytest.raises(InvalidParameterError):
        GeneratingSet(3, [])
    with pytest.raises(DegreeMismatchError):
        GeneratingSet(3, [Permutation.identity(4)])
    gens = gens_of(4, '(1 2)')
    assert gens.without(0)[0].is_identity()


def test_closure_orders(G_2, G_3, G_4):
    assert G_2.order == 4
    assert G_3.order == 64
    assert G_4.order == 16384
    assert G_3.verify()
    assert G_3.export_lines()[0] == '1,2,3,4,5,6,7,8'


def test_closure_agrees_with_sympy():
    for gens in (syl2_Sn_gens(6), syl2_An_gens(7), s_beta(3), gens_of(5, '(1 2 3 4 5)', '(1 2)')):
        assert closure(gens).order == sympy_group(gens).order()


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded) as info:
        closure(s_beta(3), cap=10)
    assert info.value.cap == 10
    assert info.value.count > 10


def test_membership(G_3):
    assert parse_cycles('(1 2)(7 8)', 8) in G_3
    assert parse_cycles('(1 2)', 8) not in G_3
    with pytest.raises(DegreeMismatchError):
        Permutation.identity(4) in G_3


def test_stabilizer_chain_matches_closure(S_4):
    for gens in (s_beta(3), s_beta(4), syl2_Sn_gens(12), S_4.origin):
        chain = StabilizerChain.build(gens)
        assert chain.order() == closure(gens).order
        assert chain.is_consistent()


def test_stabilizer_chain_large_orders():
    for k in (5, 6, 7):
        assert order_schreier_sims(s_beta(k)) == 2 ** (2 ** k - 2)


def test_stabilizer_chain_membership():
    chain = StabilizerChain.build(s_beta(4))
    assert parse_cycles('(1 2)(15 16)', 16) in chain
    assert parse_cycles('(1 2)', 16) not in chain
    assert StabilizerChain.build(GeneratingSet(5, [Permutation.identity(5)])).order() == 1


def test_chain_base_starts_at_smallest_moved_point():
    chain = StabilizerChain.build(gens_of(4, '(3 4)', '(1 2)'))
    assert chain.base[0] == 0
    assert chain.order() == 4
    assert StabilizerChain.build(gens_of(6, '(5 6)', '(2 3 4)')).base[0] == 1


def test_normality(S_4):
    klein = gens_of(4, '(1 2)(3 4)', '(1 3)(2 4)')
    assert is_normal(klein, S_4)
    assert not is_normal(gens_of(4, '(1 2)'), S_4)
    with pytest.raises(NotASubgroupError):
        is_normal(gens_of(4, '(1 2)'), closure(klein))


def test_derived_subgroup(S_4, G_3):
    a4 = derived_subgroup(S_4)
    assert a4.order == 12
    assert derived_length(S_4) == 3
    brute = generate_from([commutator(a, b) for a in G_3.elements for b in G_3.elements], 8)
    assert derived_subgroup(G_3).same_elements(brute)
    assert derived_subgroup(G_3).order == sympy_group(G_3.origin).derived_subgroup().order()


def test_derived_length_of_g3(G_3):
    # G' = Φ(G_3) is elementary abelian of order 8
    derived = derived_subgroup(G_3)
    assert derived.order == 8
    assert derived.same_elements(frattini_2group(G_3))
    assert derived_subgroup(derived).is_trivial
    assert derived_length(G_3) == 2
    assert derived_length(G_3) == len(sympy_group(G_3.origin).derived_series()) - 1


def test_normal_closure(S_4):
    table = normal_closure([parse_cycles('(1 2)(3 4)', 4)], S_4)
    assert table.order == 4


def test_frattini_of_g3(G_3):
    phi = frattini_2group(G_3)
    assert phi.order == 8
    assert phi.same_elements(squares_subgroup(G_3))
    assert rank(G_3) == 3
    assert rank(G_3, phi=phi) == 3
    with pytest.raises(NotATwoGroupError):
        frattini_2group(closure(gens_of(3, '(1 2)', '(1 2 3)')))


def test_frattini_is_intersection_of_maximal_subgroups(G_3):
    maximal = index_two_subgroups(G_3)
    assert len(maximal) == 7
    assert all(m.order == 32 for m in maximal)
    common = reduce(lambda acc, m: acc & {x for x in m.elements}, maximal, set(G_3.elements))
    assert common == set(frattini_2group(G_3).elements)


def test_burnside_projection(G_3):
    project = burnside_projection(G_3)
    assert gf2_rank([project(x) for x in s_beta(3)]) == 3
    assert all(project(x) == 0 for x in frattini_2group(G_3).elements)


def test_quotient_structure(G_3, S_4):
    q = quotient_structure(G_3, frattini_2group(G_3))
    assert q.cosets == 8
    assert q.exponent == 2
    assert q.coset_orders == {1: 1, 2: 7}
    with pytest.raises(NotNormalError):
        quotient_structure(S_4, closure(gens_of(4, '(1 2)')))


def test_small_derived_lengths(G_2):
    assert derived_length(G_2) == 1
    assert derived_length(closure(trivial_gens(4))) == 0


def test_degenerate_quotients(G_3, G_4):
    assert quotient_structure(G_3, G_3).cosets == 1
    q = quotient_structure(G_4, frattini_2group(G_4))
    assert q.cosets == 16
    assert q.exponent == 2
    assert is_normal(trivial_gens(8), G_3)


def test_tau_ij_lies_in_g3(G_3):
    for i, j in ((1, 2), (2, 3), (1, 4), (3, 4)):
        assert contains(G_3, pt.to_permutation(tau_ij(3, i, j)))


def test_tree_groups_are_even(G_2, G_3, G_4):
    for g in (G_2, G_3, G_4):
        assert all(x.parity() == 0 for x in g.elements)


def test_burnside_basis_criterion(G_3):
    project = burnside_projection(G_3)
    rng = random.Random(31)
    elements = G_3.elements
    for _ in range(40):
        triple = rng.sample(elements, 3)
        generates = closure(GeneratingSet(8, triple)).order == G_3.order
        assert generates == (gf2_rank([project(x) for x in triple]) == 3)
