"""Operad axiom checking, the endomorphism operad, and quotient groupoids.

The axiom checker is generic over a partial-composition interface: an
instance names its components, a substitution f o_i g, an optional unit,
and an equality oracle.  Three instances are provided:

- the endomorphism operad of a finite set (function tables, exhaustive);
- the braid operad under cabling, with Garside normal form as equality;
- the mosaic operad of moduli cells under composition along a mark.

Large associativity grids are sampled with a deterministic stride so that
reports are reproducible byte for byte; every report entry records how many
cases it covered.

The quotient groupoid of the symmetric groups by the braid groups is
modeled lazily: objects are orderings (permutations), a morphism is a braid
whose strands carry the ordered points, and composition is word
concatenation.  Cabling makes the braid category act on itself; the
conventions are fixed so that inserting braids at the bottom of a cable,
ordered by the source object, slides through the crossings to the top,
ordered by the target object.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Callable, Sequence

from .braids import (
    BraidWord,
    braids_equal,
    cable,
    cable_permutation,
    juxtapose,
    to_permutation,
)
from .mosaic import MarkedDissection, MosaicCell, canonicalize, enumerate_cells, mosaic_compose
from .permutations import Permutation, mul

# --- endomorphism operad ------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class EndFunction:
    """A function carrier^arity -> carrier as an explicit table.

    The table is indexed by the input tuple read as a big-endian number in
    base |carrier|.
    """

    carrier: tuple
    arity: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != len(self.carrier) ** self.arity:
            raise ValueError("table size must be |carrier|^arity")
        if any(v not in self.carrier for v in self.table):
            raise ValueError("table values must lie in the carrier")

    def __call__(self, *args):
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        index = 0
        size = len(self.carrier)
        for x in args:
            index = index * size + self.carrier.index(x)
        return self.table[index]

    @staticmethod
    def from_callable(carrier: Sequence, arity: int, fn: Callable) -> EndFunction:
        carrier = tuple(carrier)
        table = tuple(
            fn(*args) for args in itertools.product(carrier, repeat=arity)
        )
        return EndFunction(carrier, arity, table)

    @staticmethod
    def identity(carrier: Sequence) -> EndFunction:
        return EndFunction.from_callable(carrier, 1, lambda x: x)


def all_end_functions(carrier: Sequence, arity: int) -> list[EndFunction]:
    carrier = tuple(carrier)
    size = len(carrier) ** arity
    return [
        EndFunction(carrier, arity, values)
        for values in itertools.product(carrier, repeat=size)
    ]


def end_compose(f: EndFunction, gs: Sequence[EndFunction]) -> EndFunction:
    """Substitute gs into the slots of f: the composite sends the
    concatenated inputs through the gs and then through f."""
    if len(gs) != f.arity:
        raise ValueError(f"expected {f.arity} inner functions, got {len(gs)}")
    if any(g.carrier != f.carrier for g in gs):
        raise ValueError("all functions must share one carrier")
    total = sum(g.arity for g in gs)

    def composite(*args):
        mid = []
        at = 0
        for g in gs:
            mid.append(g(*args[at:at + g.arity]))
            at += g.arity
        return f(*mid)

    return EndFunction.from_callable(f.carrier, total, composite)


@dataclasses.dataclass(frozen=True)
class FiniteEndOperad:
    """All functions X^k -> X on a small carrier, up to a cutoff arity."""

    carrier: tuple
    max_arity: int = 2

    def components(self, arity: int) -> list[EndFunction]:
        if not 1 <= arity <= self.max_arity:
            raise ValueError(f"components tabulated for arity 1..{self.max_arity}")
        return all_end_functions(self.carrier, arity)

    def unit(self) -> EndFunction:
        return EndFunction.identity(self.carrier)


# --- generic axiom checking -----------------------------------------------------


@dataclasses.dataclass(frozen=True)
class OperadInstance:
    """A partial-composition view of an operad for the axiom checker.

    ``arities`` lists the outer arities to draw from; ``inner_arities``
    bounds the substituted elements (defaults to ``arities``).
    """

    name: str
    arities: tuple[int, ...]
    elements: Callable[[int], Sequence]
    compose: Callable[[object, int, object], object]  # f o_i g
    equal: Callable[[object, object], bool]
    arity_of: Callable[[object], int]
    unit: object | None = None
    max_result_arity: int | None = None
    inner_arities: tuple[int, ...] | None = None

    def inner(self) -> tuple[int, ...]:
        return self.inner_arities if self.inner_arities is not None else self.arities


def _strided_product(lists: Sequence[Sequence], budget: int):
    """The full product when small, otherwise a deterministic stride of it."""
    total = 1
    for l in lists:
        total *= len(l)
    if total == 0:
        return
    if total <= budget:
        yield from itertools.product(*lists)
        return
    for t in range(budget):
        flat = (t * total) // budget
        choice = []
        for l in reversed(lists):
            flat, r = divmod(flat, len(l))
            choice.append(l[r])
        yield tuple(reversed(choice))


def _report(law: str, instance: str, cases: int, witness=None) -> dict:
    entry = {
        "law": law,
        "instance": instance,
        "status": "pass" if witness is None else "fail",
        "cases": cases,
    }
    if witness is not None:
        entry["witness"] = witness
    return entry


def operad_axioms_check(instance: OperadInstance, grid_budget: int = 500) -> list[dict]:
    """Verify unit and associativity laws, exhaustively within bounds.

    Each (arity, slot) configuration contributes one element grid; grids
    up to ``grid_budget`` cases run in full, larger ones are covered by an
    evenly strided deterministic subset.  The report lists the number of
    cases per law and a witness for any failure.
    """
    reports: list[dict] = []

    if instance.unit is not None:
        cases = 0
        witness = None
        for a in instance.arities:
            for g in instance.elements(a):
                cases += 1
                if not instance.equal(instance.compose(instance.unit, 1, g), g):
                    witness = f"unit o_1 {g!r}"
                    break
            if witness:
                break
        reports.append(_report("left-unit", instance.name, cases, witness))

        cases = 0
        witness = None
        for a in instance.arities:
            for f in instance.elements(a):
                for i in range(1, a + 1):
                    cases += 1
                    if not instance.equal(instance.compose(f, i, instance.unit), f):
                        witness = f"{f!r} o_{i} unit"
                        break
                if witness:
                    break
            if witness:
                break
        reports.append(_report("right-unit", instance.name, cases, witness))

    nested_cases = 0
    nested_witness = None
    disjoint_cases = 0
    disjoint_witness = None
    for fa in instance.arities:
        for ga in instance.inner():
            for ha in instance.inner():
                if instance.max_result_arity is not None:
                    if fa + ga + ha - 2 > instance.max_result_arity:
                        continue
                fs = instance.elements(fa)
                gs = instance.elements(ga)
                hs = instance.elements(ha)
                for i in range(1, fa + 1):
                    # nested: h lands inside g
                    for j in range(1, ga + 1):
                        for f, g, h in _strided_product([fs, gs, hs], grid_budget):
                            nested_cases += 1
                            lhs = instance.compose(instance.compose(f, i, g), i + j - 1, h)
                            rhs = instance.compose(f, i, instance.compose(g, j, h))
                            if not instance.equal(lhs, rhs):
                                nested_witness = f"({f!r} o_{i} {g!r}) o_{i + j - 1} {h!r}"
                                break
                        if nested_witness:
                            break
                    if nested_witness:
                        break
                    # disjoint: h lands in a later slot of f
                    for j in range(i + 1, fa + 1):
                        for f, g, h in _strided_product([fs, gs, hs], grid_budget):
                            disjoint_cases += 1
                            lhs = instance.compose(instance.compose(f, i, g), j + ga - 1, h)
                            rhs = instance.compose(instance.compose(f, j, h), i, g)
                            if not instance.equal(lhs, rhs):
                                disjoint_witness = f"({f!r} o_{i} {g!r}) o_{j + ga - 1} {h!r}"
                                break
                        if disjoint_witness:
                            break
                    if disjoint_witness:
                        break
                if nested_witness and disjoint_witness:
                    break
    reports.append(_report("associativity-nested", instance.name, nested_cases, nested_witness))
    reports.append(_report("associativity-disjoint", instance.name, disjoint_cases, disjoint_witness))
    return reports


# --- the three instances ----------------------------------------------------------


def end_operad_instance(carrier: Sequence = (0, 1), max_arity: int = 2) -> OperadInstance:
    operad = FiniteEndOperad(tuple(carrier), max_arity)

    def compose(f: EndFunction, i: int, g: EndFunction) -> EndFunction:
        inners = [EndFunction.identity(operad.carrier)] * f.arity
        inners[i - 1] = g
        return end_compose(f, inners)

    return OperadInstance(
        name="endomorphism",
        arities=tuple(range(1, max_arity + 1)),
        elements=operad.components,
        compose=compose,
        equal=lambda a, b: a == b,
        arity_of=lambda f: f.arity,
        unit=operad.unit(),
    )


def braid_words_up_to(strands: int, max_letters: int, distinct: bool = True) -> list[BraidWord]:
    """Words with at most max_letters letters; with ``distinct`` they are
    deduplicated up to braid equality (first representative kept)."""
    letters = [k for i in range(1, strands) for k in (i, -i)]
    out: list[BraidWord] = []
    seen = set()
    for length in range(max_letters + 1):
        for combo in itertools.product(letters, repeat=length):
            w = BraidWord(strands, combo)
            if distinct:
                from .braids import _garside_key

                key = _garside_key(w)
                if key in seen:
                    continue
                seen.add(key)
            out.append(w)
    return out


def braid_operad_instance(max_arity: int = 3, max_letters: int = 2) -> OperadInstance:
    elements = {
        a: braid_words_up_to(a, max_letters) for a in range(1, max_arity + 1)
    }

    def compose(f: BraidWord, i: int, g: BraidWord) -> BraidWord:
        inners = [BraidWord(1, ())] * f.strands
        inners[i - 1] = g
        return cable(f, inners)

    return OperadInstance(
        name="braid-cabling",
        arities=tuple(range(1, max_arity + 1)),
        elements=lambda a: elements[a],
        compose=compose,
        equal=braids_equal,
        arity_of=lambda w: w.strands,
        unit=BraidWord(1, ()),
        inner_arities=(1, 2),  # blocks of at most two strands
    )


def mosaic_operad_instance(max_size: int = 7, elements_cap: int = 8) -> OperadInstance:
    """Cells of the mosaic models; arity of a cell with n+1 marks is n.
    Component lists are capped by a deterministic stride to keep the
    grids reviewable."""

    def cells_of_arity(a: int) -> list[MosaicCell]:
        size = a + 1
        if size == 3:
            return [canonicalize(MarkedDissection.of((1, 2, 3)))]
        cx = enumerate_cells(size)
        cells = [c for level in cx.cells for c in level]
        if len(cells) <= elements_cap:
            return cells
        return [cells[(t * len(cells)) // elements_cap] for t in range(elements_cap)]

    return OperadInstance(
        name="mosaic",
        arities=(2, 3, 4),
        elements=cells_of_arity,
        compose=mosaic_compose,
        equal=lambda a, b: a == b,
        arity_of=lambda c: c.n - 1,
        unit=None,
        max_result_arity=max_size - 1,
    )


def cable_permutation_image_report(samples: int = 60) -> dict:
    """Equivariance observed through the permutation image: the image of a
    cable is the block permutation of the outer image composed with the
    disjoint sum of the inner images."""
    words2 = braid_words_up_to(2, 2)
    words3 = braid_words_up_to(3, 2)
    cases = 0
    witness = None
    for t, (outer, b1, b2, b3) in enumerate(
        _strided_product([words3, words2, words2 + words3, [BraidWord(1, ())] + words2], samples)
    ):
        cases += 1
        out = cable(outer, [b1, b2, b3])
        expected = cable_permutation(
            to_permutation(outer),
            [b1.strands, b2.strands, b3.strands],
            [to_permutation(b1), to_permutation(b2), to_permutation(b3)],
        )
        if to_permutation(out) != expected:
            witness = repr((outer, b1, b2, b3))
            break
    return _report("cable-permutation-image", "braid-cabling", cases, witness)


def mosaic_graft_intertwining_report(max_size: int = 6) -> dict:
    """Whether composing identity-labeled cells matches grafting the
    underlying dissections through the tessellation map.  Reported rather
    than assumed: the tessellation is not claimed to identify the operads."""
    from .associahedra import enumerate_dissections, graft
    from .mosaic import tessellation_map

    cases = 0
    witness = None
    for sa in range(3, max_size + 1):
        for sb in range(3, max_size + 1):
            if sa + sb - 2 > 7:
                continue
            ida, idb = Permutation.identity(sa), Permutation.identity(sb)
            idout = Permutation.identity(sa + sb - 2)
            for ka in range(sa - 2):
                for fa in enumerate_dissections(sa, ka):
                    for kb in range(sb - 2):
                        for fb in enumerate_dissections(sb, kb):
                            for i in range(1, sa):
                                cases += 1
                                lhs = mosaic_compose(
                                    tessellation_map(ida, fa), i, tessellation_map(idb, fb)
                                )
                                rhs = tessellation_map(idout, graft(fa, i, fb))
                                if lhs != rhs:
                                    witness = f"sizes ({sa},{sb}), slot {i}, {fa!r}, {fb!r}"
                                    return _report(
                                        "graft-intertwining", "mosaic", cases, witness
                                    )
    return _report("graft-intertwining", "mosaic", cases, witness)


# --- the quotient groupoid -----------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class GroupoidMorphism:
    """A braid seen as a morphism between orderings of its strands.

    The objects record which marked point sits at each strand position; the
    braid's permutation p carries position k to position p(k), so the
    ordering at the target is the source reordered by p^-1.  Morphisms
    h0 -> h1 are exactly the braids with mul(p.inv(), h0) == h1.
    """

    n: int
    source: Permutation
    target: Permutation
    element: BraidWord

    def __post_init__(self):
        if self.element.strands != self.n or self.source.size != self.n or self.target.size != self.n:
            raise ValueError("sizes must agree")
        p = to_permutation(self.element)
        if mul(p.inv(), self.source) != self.target:
            raise ValueError("braid does not carry the source ordering to the target")

    @staticmethod
    def from_word(element: BraidWord, source: Permutation) -> GroupoidMorphism:
        p = to_permutation(element)
        return GroupoidMorphism(
            element.strands, source, mul(p.inv(), source), element
        )

    @staticmethod
    def identity(h: Permutation) -> GroupoidMorphism:
        return GroupoidMorphism(h.size, h, h, BraidWord(h.size, ()))

    def inverse(self) -> GroupoidMorphism:
        return GroupoidMorphism(self.n, self.target, self.source, self.element.inverse())


def groupoid_compose(a: GroupoidMorphism, b: GroupoidMorphism) -> GroupoidMorphism:
    """Concatenate morphisms when a's target ordering is b's source."""
    if a.n != b.n:
        raise ValueError("groupoid morphisms live over one strand count")
    if a.target != b.source:
        raise ValueError("target and source orderings do not match")
    return GroupoidMorphism(a.n, a.source, b.target, a.element * b.element)


def cable_functor_apply(
    g: GroupoidMorphism, objects: Sequence[int], morphisms: Sequence[BraidWord]
) -> BraidWord:
    """Act on a tuple of braids by cabling: input number objects[i-1] rides
    the block whose bottom position k has source ordering g.source(k).

    The object map is (m_1, ..., m_n) -> m_1 + ... + m_n; inserting the
    inputs at the bottom in source order and sliding them through the
    crossings reproduces them at the top in target order.
    """
    if len(objects) != g.n or len(morphisms) != g.n:
        raise ValueError(f"expected {g.n} objects and morphisms")
    for m, b in zip(objects, morphisms):
        if b.strands != m:
            raise ValueError("each morphism must be a braid on its object")
    inners = [morphisms[g.source(k) - 1] for k in range(1, g.n + 1)]
    return cable(g.element, inners)


def juxtapose_all(words: Sequence[BraidWord]) -> BraidWord:
    out = None
    for w in words:
        out = w if out is None else juxtapose(out, w)
    return out if out is not None else BraidWord(1, ())
