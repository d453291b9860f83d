import random

import pytest

from treesylow import portrait as pt
from treesylow.errors import (IncompatibleDepthsError, LeafHasNoStateError,
                              LevelOutOfRangeError, NotATreeAutomorphismError,
                              SerializationError)
from treesylow.perm import Permutation, parse_cycles
from treesylow.portrait import Portrait, VertexAddress


def test_vertex_swap_leaf_action():
    root = pt.vertex_swap(3, VertexAddress(0, 1))
    assert str(pt.to_permutation(root)) == '(1 5)(2 6)(3 7)(4 8)'
    assert str(pt.to_permutation(pt.vertex_swap(2, VertexAddress(1, 2)))) == '(3 4)'


def test_leaves_carry_no_state():
    with pytest.raises(LeafHasNoStateError):
        pt.vertex_swap(2, VertexAddress(2, 1))
    with pytest.raises(LevelOutOfRangeError):
        VertexAddress(1, 3)


def test_levels_and_labels():
    a = Portrait.from_levels([[1], [0, 1], [0, 0, 1, 1]])
    assert a.levels == ((1,), (0, 1), (0, 0, 1, 1))
    assert a.active_positions(2) == [3, 4]
    assert pt.level_index(a, 2) == 2
    assert pt.restrict(a, 2) == Portrait.from_levels([[1], [0, 1]])


def test_compose_depth_mismatch():
    with pytest.raises(IncompatibleDepthsError):
        pt.compose(pt.identity(2), pt.identity(3))


def test_to_permutation_is_homomorphism_on_random_portraits():
    rng = random.Random(11)
    for k in range(1, 6):
        for _ in range(100):
            a, b = pt.random_portrait(k, rng), pt.random_portrait(k, rng)
            assert pt.to_permutation(pt.compose(a, b)) == pt.to_permutation(a).compose(pt.to_permutation(b))


def test_to_permutation_is_homomorphism_on_g3(G_3):
    elements = [pt.from_permutation(x, 3) for x in G_3.elements]
    for a in elements:
        for b in elements:
            assert pt.to_permutation(pt.compose(a, b)) == pt.to_permutation(a).compose(pt.to_permutation(b))


def test_inverse():
    rng = random.Random(3)
    for k in range(1, 6):
        a = pt.random_portrait(k, rng)
        assert pt.compose(a, pt.inverse(a)) == pt.identity(k)
        assert pt.to_permutation(pt.inverse(a)) == pt.to_permutation(a).inverse()


def test_from_permutation():
    rng = random.Random(5)
    for k in range(1, 6):
        a = pt.random_portrait(k, rng)
        assert pt.from_permutation(pt.to_permutation(a), k) == a
    with pytest.raises(NotATreeAutomorphismError):
        pt.from_permutation(parse_cycles('(2 3)', 4), 2)
    with pytest.raises(NotATreeAutomorphismError):
        pt.from_permutation(Permutation.identity(6), 2)


def test_vertex_image():
    root = pt.vertex_swap(3, VertexAddress(0, 1))
    assert pt.vertex_image(root, VertexAddress(2, 1)) == VertexAddress(2, 3)
    assert pt.vertex_image(root, VertexAddress(0, 1)) == VertexAddress(0, 1)


def test_distances():
    assert pt.vertex_distance(2, 0, 1) == 2
    assert pt.vertex_distance(2, 0, 3) == 4
    for k in range(2, 6):
        tau = pt.from_active(k, [(k - 1, 1), (k - 1, 1 << (k - 1))])
        assert pt.vp_distance(tau) == 2 * (k - 1)
    assert pt.vp_distance(pt.identity(3)) is None
    a = pt.from_active(3, [(2, 1), (2, 2), (2, 4)])
    assert pt.active_distance_multiset(a) == [2, 4, 4]


def test_dumps_format():
    assert pt.dumps(pt.identity(2)) == '2\n0\n00\n'


def test_serialization_round_trip():
    rng = random.Random(2024)
    for _ in range(1000):
        a = pt.random_portrait(rng.randint(1, 6), rng)
        assert pt.loads(pt.dumps(a)) == a


@pytest.mark.parametrize('text', ['', 'x\n1\n', '2\n1\n', '2\n1\n01x\n', '2\n1\n011\n'])
def test_loads_rejects_malformed_text(text):
    with pytest.raises(SerializationError):
        pt.loads(text)


def all_portraits(k):
    return [Portrait(k, bits) for bits in range(1 << ((1 << k) - 1))]


def test_identity_laws():
    rng = random.Random(8)
    assert pt.to_permutation(pt.identity(3)).is_identity()
    assert pt.dumps(pt.identity(3)) == '3\n0\n00\n0000\n'
    for _ in range(50):
        a = pt.random_portrait(3, rng)
        assert pt.compose(pt.identity(3), a) == a
        assert pt.compose(a, pt.identity(3)) == a
    assert pt.inverse(pt.identity(4)) == pt.identity(4)


def test_single_swaps():
    for k in range(1, 7):
        for level in range(k):
            a = pt.vertex_swap(k, VertexAddress(level, 1))
            perm = pt.to_permutation(a)
            assert perm.cycle_type()[2] == 2 ** (k - level - 1)
            assert perm.parity() == (1 if level == k - 1 else 0)
            assert pt.inverse(a) == a


def test_inverse_of_product():
    rng = random.Random(9)
    for _ in range(200):
        a, b = pt.random_portrait(4, rng), pt.random_portrait(4, rng)
        assert pt.inverse(pt.compose(a, b)) == pt.compose(pt.inverse(b), pt.inverse(a))


def test_faithful_on_small_depths():
    for k in (1, 2, 3):
        images = {pt.to_permutation(a) for a in all_portraits(k)}
        assert len(images) == 2 ** (2 ** k - 1)
    rng = random.Random(4)
    sample = {pt.random_portrait(4, rng) for _ in range(500)}
    assert len({pt.to_permutation(a) for a in sample}) == len(sample)


def test_upper_levels_act_evenly():
    for k in range(2, 5):
        for a in all_portraits(k - 1):
            lifted = Portrait(k, a.bits)
            assert pt.to_permutation(lifted).parity() == 0


def test_level_index_and_restrict_on_depth_three():
    everything = all_portraits(3)
    for a in everything:
        for b in everything:
            ab = pt.compose(a, b)
            for l in range(3):
                assert pt.level_index(ab, l) % 2 == (pt.level_index(a, l) + pt.level_index(b, l)) % 2
            assert pt.restrict(ab, 2) == pt.compose(pt.restrict(a, 2), pt.restrict(b, 2))


def test_conjugation_preserves_distances():
    everything = all_portraits(3)
    stabilizers = [a for a in everything if a.bits >> 3 << 3 == a.bits]
    for a in stabilizers:
        for g in everything:
            conj = pt.compose(pt.compose(g, a), pt.inverse(g))
            assert pt.level_index(conj, 2) == pt.level_index(a, 2)
            assert pt.active_distance_multiset(conj) == pt.active_distance_multiset(a)


def test_tau_portrait_examples():
    tau = pt.from_active(3, [(2, 1), (2, 4)])
    assert pt.level_index(tau, 2) == 2
    assert pt.compose(tau, tau) == pt.identity(3)
    assert pt.restrict(tau, 2) == pt.identity(2)
    assert pt.restrict(tau, 3) == tau
    assert pt.vp_distance(pt.from_active(3, [(2, 1), (2, 2)])) == 2
    assert str(tau) == '3 / 0 / 00 / 1001'
