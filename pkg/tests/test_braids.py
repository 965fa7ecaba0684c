import itertools
import random

import pytest

from mosaic_operads.braids import (
    BraidWord,
    braids_equal,
    cable,
    cable_permutation,
    free_reduce,
    garside_normal_form,
    juxtapose,
    to_permutation,
)
from mosaic_operads.permutations import Permutation, block_permutation, block_sum, mul


def words_up_to(n: int, max_len: int):
    """All braid words on n strands with at most max_len letters."""
    letters = [k for i in range(1, n) for k in (i, -i)]
    for length in range(max_len + 1):
        for combo in itertools.product(letters, repeat=length):
            yield BraidWord(n, combo)


def random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    if n == 1:
        return BraidWord(1, ())
    letters = tuple(
        rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)
    )
    return BraidWord(n, letters)


# --- construction and plumbing -------------------------------------------


def test_invalid_letters_rejected():
    with pytest.raises(ValueError):
        BraidWord(2, (2,))
    with pytest.raises(ValueError):
        BraidWord(3, (0,))


def test_text_round_trip():
    w = BraidWord.from_text(3, "1 2 -1")
    assert w.letters == (1, 2, -1)
    assert BraidWord.from_text(3, w.to_text()) == w


def test_free_reduce():
    assert free_reduce(BraidWord(2, (1, -1))).letters == ()
    assert free_reduce(BraidWord(3, (1, 2, -2, -1))).letters == ()
    assert free_reduce(BraidWord(3, (1, 2, 1))).letters == (1, 2, 1)


def test_free_reduce_preserves_element():
    rng = random.Random(7)
    for _ in range(50):
        w = random_word(rng, 4, 8)
        assert braids_equal(w, free_reduce(w))


# --- permutation homomorphism ---------------------------------------------


def test_to_permutation_examples():
    assert to_permutation(BraidWord(2, (1,))).images == (2, 1)
    assert to_permutation(BraidWord(3, ())).is_identity()
    # (1 2) then (2 3) sends 1 -> 2 -> 3, computed by hand
    assert to_permutation(BraidWord(3, (1, 2))).images == (3, 1, 2)


def test_to_permutation_is_homomorphism():
    rng = random.Random(11)
    for _ in range(50):
        u = random_word(rng, 4, 6)
        v = random_word(rng, 4, 6)
        assert to_permutation(u * v) == mul(to_permutation(u), to_permutation(v))


# --- Garside normal form ---------------------------------------------------


def test_normal_form_examples():
    nf = garside_normal_form(BraidWord(2, (1, 1)))
    assert (nf.delta_power, nf.factors) == (2, ())

    nf = garside_normal_form(BraidWord(3, (1, 2, 1)))
    assert (nf.delta_power, nf.factors) == (1, ())

    nf = garside_normal_form(BraidWord(3, ()))
    assert (nf.delta_power, nf.factors) == (0, ())


def test_normal_form_round_trip():
    rng = random.Random(13)
    for _ in range(60):
        w = random_word(rng, 4, 8)
        nf = garside_normal_form(w)
        again = garside_normal_form(nf.to_word())
        assert (nf.delta_power, nf.factors) == (again.delta_power, again.factors)


def test_normal_form_factors_left_weighted():
    rng = random.Random(17)
    for _ in range(40):
        w = random_word(rng, 5, 8)
        nf = garside_normal_form(w)
        for a, b in zip(nf.factors, nf.factors[1:]):
            assert b.descents() <= a.inv().descents()


def test_braid_relation_decided():
    assert braids_equal(BraidWord(3, (1, 2, 1)), BraidWord(3, (2, 1, 2)))
    assert not braids_equal(BraidWord(3, (1, 2)), BraidWord(3, (2, 1)))


def test_far_generators_commute():
    assert braids_equal(BraidWord(4, (1, 3)), BraidWord(4, (3, 1)))


def test_equality_after_free_insertion():
    rng = random.Random(19)
    for _ in range(30):
        w = random_word(rng, 4, 6)
        padded = BraidWord(4, w.letters + (1, -1))
        assert braids_equal(w, padded)


def test_strand_mismatch_raises():
    with pytest.raises(ValueError):
        braids_equal(BraidWord(2, ()), BraidWord(3, ()))


def test_equality_is_congruence():
    rng = random.Random(23)
    for _ in range(20):
        u = random_word(rng, 4, 5)
        pad = random_word(rng, 4, 2)
        u2 = free_reduce(BraidWord(4, u.letters + pad.letters + pad.inverse().letters))
        v = random_word(rng, 4, 5)
        assert braids_equal(u, u2)
        assert braids_equal(u * v, u2 * v)
        assert braids_equal(u.inverse(), u2.inverse())
        assert braids_equal(juxtapose(u, v), juxtapose(u2, v))


def test_exponent_sum_invariant():
    rng = random.Random(29)
    for _ in range(30):
        w = random_word(rng, 4, 8)
        assert free_reduce(w).exponent_sum() == w.exponent_sum()
        nf = garside_normal_form(w)
        assert nf.to_word().exponent_sum() == w.exponent_sum()
    u = random_word(rng, 3, 5)
    v = random_word(rng, 4, 5)
    assert juxtapose(u, v).exponent_sum() == u.exponent_sum() + v.exponent_sum()


def test_normal_form_is_canonical_on_small_words():
    # every pair of equal small words has an identical normal form
    seen: dict[tuple[int, tuple], list[BraidWord]] = {}
    for w in words_up_to(3, 3):
        nf = garside_normal_form(w)
        seen.setdefault((nf.delta_power, nf.factors), []).append(w)
    for key, words in seen.items():
        for w in words[1:]:
            assert braids_equal(words[0], w)


# --- juxtaposition ---------------------------------------------------------


def test_juxtapose_examples():
    out = juxtapose(BraidWord(2, (1,)), BraidWord(2, (1,)))
    assert out.strands == 4
    assert out.letters == (1, 3)

    b = BraidWord(3, (1, -2))
    assert juxtapose(BraidWord(1, ()), b).letters == (2, -3)


def test_juxtapose_strictly_associative():
    a = BraidWord(2, (1,))
    b = BraidWord(3, (2, -1))
    c = BraidWord(2, (-1,))
    assert juxtapose(juxtapose(a, b), c) == juxtapose(a, juxtapose(b, c))


# --- cabling ---------------------------------------------------------------


def test_cable_identity_outer_is_juxtaposition():
    b1 = BraidWord(2, (1,))
    b2 = BraidWord(3, (2, -1))
    out = cable(BraidWord(2, ()), [b1, b2])
    assert out == juxtapose(b1, b2)


def test_cable_trivial_blocks_is_identity_law():
    b = BraidWord(3, (1, 2, -1))
    ones = [BraidWord(1, ())] * 3
    assert cable(b, ones) == b


def test_cable_block_crossing_example():
    out = cable(BraidWord(2, (1,)), [BraidWord(2, ()), BraidWord(1, ())])
    assert out.strands == 3
    assert out.letters == (2, 1)
    expected = block_permutation(Permutation((2, 1)), [2, 1])
    assert to_permutation(out) == expected


def test_cable_permutation_image():
    rng = random.Random(31)
    for _ in range(25):
        outer = random_word(rng, 3, 4)
        inners = [random_word(rng, rng.randint(1, 3), 3) for _ in range(3)]
        out = cable(outer, inners)
        expected = cable_permutation(
            to_permutation(outer),
            [b.strands for b in inners],
            [to_permutation(b) for b in inners],
        )
        assert to_permutation(out) == expected


def test_cable_length_mismatch():
    with pytest.raises(ValueError):
        cable(BraidWord(2, (1,)), [BraidWord(1, ())])


def test_equality_is_congruence_for_cable():
    # replacing outer or inner words by equal words gives equal cables
    rng = random.Random(37)
    for _ in range(15):
        outer = random_word(rng, 3, 3)
        outer_alt = free_reduce(BraidWord(3, outer.letters + (2, -2)))
        inners = [random_word(rng, 2, 2), BraidWord(1, ()), random_word(rng, 2, 2)]
        inners_alt = [
            BraidWord(2, inners[0].letters + (1, -1)),
            BraidWord(1, ()),
            inners[2],
        ]
        assert braids_equal(cable(outer, inners), cable(outer_alt, inners_alt))


def test_cable_operad_associativity_small():
    """Nested cabling agrees with cabling the composites, on a small
    exhaustive family (checked as words here; the Garside check lives in
    the operad axiom suite)."""
    for outer_letters in [(), (1,), (-1,), (1, 1)]:
        outer = BraidWord(2, outer_letters)
        for b_sizes in itertools.product([1, 2], repeat=2):
            b = [
                BraidWord(s, (1,) if s == 2 else ())
                for s in b_sizes
            ]
            total = sum(b_sizes)
            for c_sizes in itertools.product([1, 2], repeat=total):
                c = [BraidWord(s, (-1,) if s == 2 else ()) for s in c_sizes]
                lhs = cable(cable(outer, b), c)
                offsets = [0]
                for s in b_sizes:
                    offsets.append(offsets[-1] + s)
                composites = [
                    cable(b[k], c[offsets[k]:offsets[k + 1]])
                    for k in range(2)
                ]
                rhs = cable(outer, composites)
                assert braids_equal(lhs, rhs)
