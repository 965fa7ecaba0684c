"""Non-crossing dissections of convex polygons and the associahedron.

Vertices of the n-gon are labeled 0..n-1 in convex position; a diagonal is
an unordered pair of non-adjacent vertices.  A dissection (a pairwise
non-crossing set of diagonals) indexes a face of the associahedron of the
n-gon: the empty dissection is the whole polytope, triangulations are the
vertices, and a face with k diagonals has dimension (n-3)-k.  This "fewer
diagonals = bigger face" indexing replaces subscript conventions for the
polytope family entirely.

Grafting glues a marked side of one dissected polygon onto a numbered side
of another and is the substitution composition making the family of
associahedra an operad: the slot sides of a polygon with p vertices are the
sides (0,1), ..., (p-2,p-1) numbered 1..p-1, and the marked (output) side
is (p-1,0).
"""

from __future__ import annotations

import dataclasses
import functools
import math
from typing import Iterable

Diagonal = tuple[int, int]


@dataclasses.dataclass(frozen=True)
class Dissection:
    """A set of pairwise non-crossing diagonals of a convex polygon."""

    polygon_size: int
    diagonals: frozenset[Diagonal]

    def __post_init__(self):
        n = self.polygon_size
        if n < 3:
            raise ValueError("polygons need at least 3 vertices")
        for d in self.diagonals:
            if not is_diagonal(n, d):
                raise ValueError(f"{d} is not a diagonal of the {n}-gon")
        diags = sorted(self.diagonals)
        for i, d in enumerate(diags):
            for e in diags[i + 1:]:
                if crosses(d, e):
                    raise ValueError(f"diagonals {d} and {e} cross")

    @staticmethod
    def of(n: int, diagonals: Iterable[Iterable[int]] = ()) -> Dissection:
        return Dissection(n, frozenset(normalize_diagonal(d) for d in diagonals))

    @property
    def dim(self) -> int:
        """Dimension of the corresponding associahedron face."""
        return (self.polygon_size - 3) - len(self.diagonals)

    def is_triangulation(self) -> bool:
        return len(self.diagonals) == self.polygon_size - 3

    def sorted_diagonals(self) -> tuple[Diagonal, ...]:
        return tuple(sorted(self.diagonals))

    def to_json(self) -> dict:
        return {
            "n": self.polygon_size,
            "diagonals": [list(d) for d in self.sorted_diagonals()],
        }

    @staticmethod
    def from_json(data: dict) -> Dissection:
        return Dissection.of(data["n"], data["diagonals"])


def normalize_diagonal(pair: Iterable[int]) -> Diagonal:
    a, b = sorted(pair)
    return (a, b)


def is_diagonal(n: int, pair: Diagonal) -> bool:
    a, b = pair
    if not (0 <= a < b <= n - 1):
        return False
    return b - a >= 2 and not (a == 0 and b == n - 1)


def crosses(d: Diagonal, e: Diagonal) -> bool:
    """Whether two diagonals interleave in cyclic order (cross inside)."""
    (a, b), (c, dd) = sorted((d, e))
    return a < c < b < dd


def all_diagonals(n: int) -> list[Diagonal]:
    return [
        (a, b)
        for a in range(n)
        for b in range(a + 2, n)
        if not (a == 0 and b == n - 1)
    ]


@functools.lru_cache(maxsize=None)
def _dissections_cached(n: int, k: int) -> tuple[frozenset[Diagonal], ...]:
    candidates = all_diagonals(n)
    compatible = {
        d: [e for e in candidates if e > d and not crosses(d, e)]
        for d in candidates
    }
    out: list[frozenset[Diagonal]] = []

    def backtrack(chosen: list[Diagonal], pool: list[Diagonal]):
        if len(chosen) == k:
            out.append(frozenset(chosen))
            return
        for idx, d in enumerate(pool):
            chosen.append(d)
            backtrack(chosen, [e for e in pool[idx + 1:] if e in fast[d]])
            chosen.pop()

    fast = {d: set(es) for d, es in compatible.items()}
    backtrack([], candidates)
    return tuple(out)


def enumerate_dissections(n: int, k: int) -> list[Dissection]:
    """All dissections of the n-gon with exactly k diagonals, in the
    deterministic backtracking order (lexicographic in sorted diagonals)."""
    if n < 3:
        raise ValueError("polygons need at least 3 vertices")
    if not 0 <= k <= n - 3:
        raise ValueError(f"diagonal count {k} out of range for n={n}")
    return [Dissection(n, ds) for ds in _dissections_cached(n, k)]


def f_vector(n: int) -> tuple[int, ...]:
    """Face counts of the associahedron by dimension 0 .. n-3."""
    return tuple(
        len(_dissections_cached(n, (n - 3) - d)) for d in range(n - 2)
    )


def compatible_diagonals(d: Dissection) -> list[Diagonal]:
    """Diagonals not in d that cross nothing in d."""
    return [
        x
        for x in all_diagonals(d.polygon_size)
        if x not in d.diagonals and all(not crosses(x, e) for e in d.diagonals)
    ]


def face_covers(d: Dissection) -> list[Dissection]:
    """All one-diagonal refinements of d: the codimension-one faces of the
    face that d indexes."""
    return [
        Dissection(d.polygon_size, d.diagonals | {x})
        for x in compatible_diagonals(d)
    ]


def flip(t: Dissection, d: Diagonal) -> Dissection:
    """Exchange one diagonal of a triangulation for the unique other one."""
    d = normalize_diagonal(d)
    if not t.is_triangulation():
        raise ValueError("flip is defined on triangulations only")
    if d not in t.diagonals:
        raise ValueError(f"diagonal {d} not present")
    rest = Dissection(t.polygon_size, t.diagonals - {d})
    replacements = [x for x in compatible_diagonals(rest) if x != d]
    if len(replacements) != 1:
        raise AssertionError("a removed diagonal leaves a unique quadrilateral")
    return Dissection(t.polygon_size, rest.diagonals | {replacements[0]})


def flip_graph(n: int) -> dict[Dissection, list[Dissection]]:
    """Adjacency of triangulations under single flips."""
    graph: dict[Dissection, list[Dissection]] = {}
    for t in enumerate_dissections(n, n - 3):
        graph[t] = [flip(t, d) for d in t.sorted_diagonals()]
    return graph


@dataclasses.dataclass(frozen=True)
class FacePoset:
    """All faces of the associahedron with the refinement relation.

    ``covers`` pairs (D, D + one diagonal): the left face is one dimension
    higher.  The empty dissection is the unique maximum; triangulations are
    the minima.
    """

    polygon_size: int
    nodes: tuple[Dissection, ...]
    covers: tuple[tuple[Dissection, Dissection], ...]


def face_poset(n: int) -> FacePoset:
    nodes = [
        d for k in range(n - 2) for d in enumerate_dissections(n, k)
    ]
    covers = [
        (d, refined)
        for d in nodes
        for refined in face_covers(d)
    ]
    return FacePoset(n, tuple(nodes), tuple(covers))


# --- grafting -------------------------------------------------------------


def graft(p: Dissection, slot: int, q: Dissection) -> Dissection:
    """Glue q's marked side onto the slot-th side of p.

    The glued edge becomes a diagonal of the combined polygon; the sides of
    the result inherit the cyclic order starting after the glued edge, so
    the result's slots are p's slots with slot replaced by q's slots.
    """
    sp, sq = p.polygon_size, q.polygon_size
    if not 1 <= slot <= sp - 1:
        raise ValueError(f"slot {slot} out of range for a {sp}-gon")
    size = sp + sq - 2

    # p's side (slot-1, slot) is glued to q's side (sq-1, 0);
    # q keeps vertices 0..sq-1, p's vertex v >= slot shifts by sq-2.
    def map_p(v: int) -> int:
        if v <= slot - 1:
            return v
        return v + sq - 2

    def map_q(v: int) -> int:
        return v + slot - 1

    diagonals = {normalize_diagonal((map_p(a), map_p(b))) for a, b in p.diagonals}
    diagonals |= {normalize_diagonal((map_q(a), map_q(b))) for a, b in q.diagonals}
    diagonals.add(normalize_diagonal((slot - 1, slot + sq - 2)))
    return Dissection(size, frozenset(diagonals))


def dissection_count_formula(n: int, k: int) -> int:
    """Closed form for the number of k-diagonal dissections of an n-gon."""
    return (
        math.comb(n - 3, k) * math.comb(n + k - 1, k) // (k + 1)
    )


def catalan(n: int) -> int:
    """The n-th Catalan number.

    >>> [catalan(i) for i in range(6)]
    [1, 1, 2, 5, 14, 42]
    """
    return math.comb(2 * n, n) // (n + 1)
