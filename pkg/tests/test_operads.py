import itertools
import json
import random

import pytest

from mosaic_operads.braids import BraidWord, braids_equal, juxtapose, to_permutation
from mosaic_operads.operads import (
    EndFunction,
    FiniteEndOperad,
    GroupoidMorphism,
    all_end_functions,
    braid_operad_instance,
    braid_words_up_to,
    cable_functor_apply,
    cable_permutation_image_report,
    end_compose,
    end_operad_instance,
    groupoid_compose,
    juxtapose_all,
    mosaic_graft_intertwining_report,
    mosaic_operad_instance,
    operad_axioms_check,
)
from mosaic_operads.permutations import Permutation, all_permutations, mul


# --- endomorphism operad -------------------------------------------------------


def bool_and():
    return EndFunction.from_callable((0, 1), 2, lambda a, b: a & b)


def test_end_function_evaluation():
    f = bool_and()
    assert f(1, 1) == 1
    assert f(1, 0) == 0
    with pytest.raises(ValueError):
        f(1)


def test_end_compose_unit_laws():
    f = bool_and()
    identity = EndFunction.identity((0, 1))
    assert end_compose(f, [identity, identity]) == f
    g = EndFunction.from_callable((0, 1), 1, lambda x: 1 - x)
    assert end_compose(identity, [g]) == g


def test_end_compose_pointwise():
    f = bool_and()
    neg = EndFunction.from_callable((0, 1), 1, lambda x: 1 - x)
    composite = end_compose(f, [neg, neg])
    for a, b in itertools.product((0, 1), repeat=2):
        assert composite(a, b) == (1 - a) & (1 - b)


def test_end_compose_arity_mismatch():
    with pytest.raises(ValueError):
        end_compose(bool_and(), [EndFunction.identity((0, 1))])


def test_all_end_functions_count():
    assert len(all_end_functions((0, 1), 1)) == 4
    assert len(all_end_functions((0, 1), 2)) == 16


def test_end_compose_symmetric_equivariance():
    """Permuting the inner functions matches twisting the outer function
    and block-permuting the composite's inputs, exhaustively on two
    points with arities up to two."""
    carrier = (0, 1)
    swap_outer = lambda f: EndFunction.from_callable(
        carrier, 2, lambda a, b: f(b, a)
    )
    for f in all_end_functions(carrier, 2):
        for ga in (1, 2):
            for gb in (1, 2):
                for g1 in all_end_functions(carrier, ga):
                    for g2 in all_end_functions(carrier, gb):
                        lhs = end_compose(swap_outer(f), [g2, g1])
                        rhs = end_compose(f, [g1, g2])
                        # lhs reads g2's block first; compare pointwise
                        for args in itertools.product(carrier, repeat=ga + gb):
                            x, y = args[:ga], args[ga:]
                            assert rhs(*x, *y) == lhs(*y, *x)


def test_end_operad_axioms_exhaustive():
    reports = operad_axioms_check(end_operad_instance(), grid_budget=5000)
    assert all(r["status"] == "pass" for r in reports)
    by_law = {r["law"]: r for r in reports}
    # grids small enough that everything above ran in full
    assert by_law["left-unit"]["cases"] == 20
    assert by_law["right-unit"]["cases"] == 36
    assert by_law["associativity-nested"]["cases"] == 25920


# --- braid operad ---------------------------------------------------------------


def test_braid_words_deduplication():
    words = braid_words_up_to(2, 2)
    assert len(words) == 5  # e, s, s^-1, s^2, s^-2


def test_braid_operad_axioms():
    reports = operad_axioms_check(braid_operad_instance(), grid_budget=500)
    assert all(r["status"] == "pass" for r in reports)
    assert json.dumps(reports)  # report is JSON-serializable


def test_cable_permutation_image_report():
    report = cable_permutation_image_report()
    assert report["status"] == "pass"


# --- mosaic operad ---------------------------------------------------------------


def test_mosaic_operad_axioms():
    reports = operad_axioms_check(mosaic_operad_instance(), grid_budget=150)
    assert all(r["status"] == "pass" for r in reports)
    assert {r["law"] for r in reports} == {
        "associativity-nested",
        "associativity-disjoint",
    }


def test_mosaic_graft_intertwining():
    report = mosaic_graft_intertwining_report(max_size=5)
    assert report["status"] == "pass"
    assert report["cases"] > 0


# --- the quotient groupoid --------------------------------------------------------


def test_morphism_membership_law():
    sigma = BraidWord(2, (1,))
    m = GroupoidMorphism.from_word(sigma, Permutation.identity(2))
    assert m.target == Permutation((2, 1))
    with pytest.raises(ValueError):
        GroupoidMorphism(2, Permutation.identity(2), Permutation.identity(2), sigma)


def test_identity_morphisms_are_neutral():
    for h in all_permutations(3):
        ident = GroupoidMorphism.identity(h)
        m = GroupoidMorphism.from_word(BraidWord(3, (2, -1)), h)
        assert groupoid_compose(ident, m).element == m.element
        assert groupoid_compose(m, GroupoidMorphism.identity(m.target)).element == m.element


def test_composition_chains_objects():
    e = Permutation.identity(2)
    swap = Permutation((2, 1))
    a = GroupoidMorphism.from_word(BraidWord(2, (1,)), e)
    assert (a.source, a.target) == (e, swap)
    b = GroupoidMorphism.from_word(BraidWord(2, (1,)), swap)
    ab = groupoid_compose(a, b)
    assert (ab.source, ab.target) == (e, e)
    assert ab.element.letters == (1, 1)
    with pytest.raises(ValueError):
        groupoid_compose(b, b)


def test_inverse_morphisms():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.choice([2, 3])
        word = BraidWord(
            n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(4))
        )
        h = rng.choice(all_permutations(n))
        m = GroupoidMorphism.from_word(word, h)
        inv = m.inverse()
        assert (inv.source, inv.target) == (m.target, m.source)
        loop = groupoid_compose(m, inv)
        assert braids_equal(loop.element, BraidWord(n, ()))


def test_hom_set_characterization():
    """A braid is a morphism h0 -> h1 exactly when its permutation carries
    the source ordering to the target ordering."""
    for n in (2, 3):
        for word in braid_words_up_to(n, 2, distinct=False):
            p = to_permutation(word)
            for h0 in all_permutations(n):
                h1 = mul(p.inv(), h0)
                GroupoidMorphism(n, h0, h1, word)  # must not raise
                for other in all_permutations(n):
                    if other == h1:
                        continue
                    with pytest.raises(ValueError):
                        GroupoidMorphism(n, h0, other, word)


# --- the braid category as an algebra ----------------------------------------------


def test_cable_functor_identity_is_juxtaposition():
    h = Permutation((2, 3, 1))
    g = GroupoidMorphism.identity(h)
    bs = [BraidWord(2, (1,)), BraidWord(1, ()), BraidWord(2, (-1,))]
    out = cable_functor_apply(g, [2, 1, 2], bs)
    expected = juxtapose_all([bs[h(k) - 1] for k in (1, 2, 3)])
    assert out == expected


def test_cable_functor_object_map():
    g = GroupoidMorphism.from_word(BraidWord(3, (1, 2)), Permutation.identity(3))
    out = cable_functor_apply(g, [2, 2, 1], [BraidWord(2, ()), BraidWord(2, ()), BraidWord(1, ())])
    assert out.strands == 5


def test_cable_functor_validates_objects():
    g = GroupoidMorphism.identity(Permutation.identity(2))
    with pytest.raises(ValueError):
        cable_functor_apply(g, [2, 2], [BraidWord(1, ()), BraidWord(2, ())])
    with pytest.raises(ValueError):
        cable_functor_apply(g, [1], [BraidWord(1, ())])


def test_cable_functor_slide_law():
    """Inputs inserted at the bottom in source order equal the pure cable
    followed by the inputs at the top in target order."""
    rng = random.Random(11)
    for _ in range(60):
        n = rng.choice([2, 3])
        word = BraidWord(
            n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 3)))
        )
        h0 = rng.choice(all_permutations(n))
        g = GroupoidMorphism.from_word(word, h0)
        sizes = [rng.choice([1, 2]) for _ in range(n)]
        bs = [
            BraidWord(m, (rng.choice([1, -1]),) if m == 2 and rng.random() < 0.7 else ())
            for m in sizes
        ]
        lhs = cable_functor_apply(g, sizes, bs)
        pure = cable_functor_apply(g, sizes, [BraidWord(m, ()) for m in sizes])
        top = juxtapose_all([bs[g.target(j) - 1] for j in range(1, n + 1)])
        assert braids_equal(lhs, pure * top)


def test_cable_functor_respects_composition():
    """Functoriality on sampled pairs: the cable of a composite equals the
    composite of the cables, inputs fed once at the bottom."""
    rng = random.Random(13)
    for _ in range(60):
        n = 2
        w1 = BraidWord(n, tuple(rng.choice([1, -1]) for _ in range(rng.randint(0, 2))))
        w2 = BraidWord(n, tuple(rng.choice([1, -1]) for _ in range(rng.randint(0, 2))))
        h0 = rng.choice(all_permutations(n))
        g1 = GroupoidMorphism.from_word(w1, h0)
        g2 = GroupoidMorphism.from_word(w2, g1.target)
        composite = groupoid_compose(g1, g2)
        sizes = [rng.choice([1, 2]) for _ in range(n)]
        bs = [
            BraidWord(m, (rng.choice([1, -1]),) if m == 2 else ())
            for m in sizes
        ]
        lhs = cable_functor_apply(composite, sizes, bs)
        ones = [BraidWord(m, ()) for m in sizes]
        rhs = cable_functor_apply(g1, sizes, bs) * cable_functor_apply(g2, sizes, ones)
        assert braids_equal(lhs, rhs)
