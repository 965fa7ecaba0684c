import itertools

import pytest

from mosaic_operads.permutations import (
    Permutation,
    all_permutations,
    block_permutation,
    block_sum,
    mul,
)


def test_identity_and_call():
    p = Permutation.identity(4)
    assert p.is_identity()
    assert [p(i) for i in range(1, 5)] == [1, 2, 3, 4]


def test_invalid_images_rejected():
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))


def test_mul_applies_left_factor_first():
    s1 = Permutation.transposition(3, 1)
    s2 = Permutation.transposition(3, 2)
    # apply (1 2) then (2 3): 1 -> 2 -> 3
    assert mul(s1, s2)(1) == 3
    assert mul(s1, s2).images == (3, 1, 2)


def test_inverse():
    for p in all_permutations(4):
        assert mul(p, p.inv()).is_identity()
        assert mul(p.inv(), p).is_identity()


def test_reduced_word_reconstructs():
    for p in all_permutations(4):
        word = p.reduced_word()
        assert len(word) == p.inversions()
        acc = Permutation.identity(4)
        for i in word:
            acc = mul(acc, Permutation.transposition(4, i))
        assert acc == p


def test_descents_match_length_drop():
    for p in all_permutations(4):
        for i in range(1, 4):
            s = Permutation.transposition(4, i)
            drops = mul(s, p).inversions() < p.inversions()
            assert (i in p.descents()) == drops


def test_reversal_is_longest():
    w0 = Permutation.reversal(4)
    assert w0.inversions() == 6
    assert all(p.inversions() <= 6 for p in all_permutations(4))


def test_block_sum():
    p = Permutation((2, 1))
    q = Permutation((1, 3, 2))
    assert block_sum([p, q]).images == (2, 1, 3, 5, 4)


def test_block_permutation_small():
    swap = Permutation((2, 1))
    fat = block_permutation(swap, [2, 1])
    # block {1,2} moves to the top positions, block {3} to the bottom
    assert fat.images == (2, 3, 1)


def test_block_permutation_composes():
    sizes = [2, 1, 2]
    for p in all_permutations(3):
        for q in all_permutations(3):
            lhs = block_permutation(mul(p, q), sizes)
            resorted = [sizes[p.inv()(k) - 1] for k in range(1, 4)]
            rhs = mul(block_permutation(p, sizes), block_permutation(q, resorted))
            assert lhs == rhs


def test_cycles():
    p = Permutation((2, 1, 4, 5, 3))
    assert p.cycles() == [(1, 2), (3, 4, 5)]


def test_all_permutations_count():
    assert len(all_permutations(4)) == 24
    assert len(set(all_permutations(4))) == 24
