import random
from collections import Counter
from itertools import permutations

import pytest
from sympy.combinatorics.permutations import Permutation as SymPerm

from treesylow.errors import (BlockOverflowError, DegreeMismatchError,
                              NotAPermutationError)
from treesylow.perm import (Permutation, double, embed_block, parity_extend,
                            parse_cycles, parse_oneline)


def test_compose_is_left_action():
    a = Permutation.transposition(1, 2, 3)
    b = Permutation.transposition(2, 3, 3)
    ab = a.compose(b)
    assert ab.images == (2, 3, 1)
    assert ab(3) == a(b(3))
    assert a * b == ab


def test_inverse_and_power():
    c = parse_cycles('(1 2 3)(4 5)', 5)
    assert c.compose(c.inverse()).is_identity()
    assert c.power(6).is_identity()
    assert not c.power(3).is_identity()
    assert c.power(-1) == c.inverse()


def test_cycle_structure():
    c = parse_cycles('(1 2 3)(4 5)', 6)
    assert c.cycle_type() == Counter({3: 1, 2: 1, 1: 1})
    assert c.element_order() == 6
    assert c.parity() == 1
    assert c.cycles() == [(1, 2, 3), (4, 5)]
    assert c.moved_points() == [1, 2, 3, 4, 5]


def test_text_formats():
    p = parse_cycles('(1 2)(7 8)', 8)
    assert p.to_cycle_string() == '(1 2)(7 8)'
    assert Permutation.identity(4).to_cycle_string() == '()'
    assert parse_oneline('2,1,3').images == (2, 1, 3)
    assert parse_oneline(p.to_oneline_string()) == p


def test_bad_input():
    with pytest.raises(NotAPermutationError):
        Permutation([1, 1, 2])
    with pytest.raises(NotAPermutationError):
        parse_oneline('a,b')
    with pytest.raises(NotAPermutationError):
        parse_cycles('(1 2)(2 3)', 3)
    with pytest.raises(NotAPermutationError):
        parse_cycles('(1 2) x', 3)
    with pytest.raises(DegreeMismatchError):
        Permutation.identity(3).compose(Permutation.identity(4))


def test_double():
    assert double(Permutation.transposition(1, 2, 2)).to_cycle_string() == '(1 3)(2 4)'
    assert double(Permutation.identity(3)).is_identity()


def test_embed_block():
    t = Permutation.transposition(1, 2, 2)
    assert embed_block(t, 2, 5).to_cycle_string() == '(3 4)'
    with pytest.raises(BlockOverflowError):
        embed_block(t, 4, 5)


def test_parity_extend():
    t = Permutation.transposition(1, 2, 2)
    out = parity_extend(t, 4)
    assert out.to_cycle_string() == '(1 2)(3 4)'
    assert out.parity() == 0
    assert parity_extend(Permutation.identity(2), 4).is_identity()
    with pytest.raises(BlockOverflowError):
        parity_extend(t, 3)


def test_against_sympy():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 12)
        images = list(range(1, n + 1))
        rng.shuffle(images)
        p = Permutation(images)
        q = SymPerm([x - 1 for x in images])
        assert p.parity() == q.parity()
        assert p.element_order() == q.order()
        assert len(p.cycles()) == len([c for c in q.cyclic_form])


def random_perm(rng, n):
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(images)


def test_small_examples():
    t = Permutation.transposition(1, 2, 4)
    assert t.compose(t).is_identity()
    assert parse_cycles('(1 2 3 4)', 4).element_order() == 4
    assert Permutation.identity(5).parity() == 0
    assert parse_cycles('(1 5)(2 6)(3 7)(4 8)', 8).parity() == 0
    assert Permutation.identity(8).cycle_type() == Counter({1: 8})
    assert parse_cycles('(1 5)(2 6)(3 7)(4 8)', 8).cycle_type() == Counter({2: 4})
    assert parse_cycles('(1 2)(7 8)', 8).cycle_type() == Counter({2: 2, 1: 4})


def test_group_laws_on_random_permutations():
    rng = random.Random(13)
    for _ in range(1000):
        p = random_perm(rng, rng.randint(1, 10))
        assert p.inverse().compose(p).is_identity()
    for _ in range(10000):
        n = rng.randint(1, 9)
        a, b = random_perm(rng, n), random_perm(rng, n)
        assert a.compose(b).parity() == a.parity() ^ b.parity()


def test_cycle_type_is_conjugation_invariant():
    rng = random.Random(17)
    for _ in range(1000):
        n = rng.randint(1, 10)
        p, g = random_perm(rng, n), random_perm(rng, n)
        assert p.conjugate(g).cycle_type() == p.cycle_type()


def test_double_is_an_even_embedding():
    s4 = [Permutation(images) for images in permutations(range(1, 5))]
    doubled = {double(p) for p in s4}
    assert len(doubled) == 24
    for a in s4:
        for b in s4:
            assert double(a.compose(b)) == double(a).compose(double(b))
    rng = random.Random(19)
    for _ in range(1000):
        assert double(random_perm(rng, rng.randint(1, 8))).parity() == 0


def test_disjoint_blocks_commute():
    rng = random.Random(23)
    for _ in range(100):
        a, b = random_perm(rng, 4), random_perm(rng, 3)
        left, right = embed_block(a, 0, 7), embed_block(b, 4, 7)
        assert left.compose(right) == right.compose(left)
    assert embed_block(Permutation.identity(3), 2, 6).is_identity()
    assert embed_block(Permutation.transposition(1, 2, 2), 4, 6).to_cycle_string() == '(5 6)'
