"""Chain-level topology of mosaic cell complexes.

Three computations, all exact:

- mod-2 Betti numbers from boundary matrices over the two-element field
  (bitset rows; no orientations needed);
- a presentation of the fundamental group from the 2-skeleton: generators
  are the 1-cells outside a spanning tree, relations the attaching words of
  the 2-cells.  The complexes are aspherical, so the presentation
  determines the homotopy type and in particular all group homology;
- first homology as the abelianization of that presentation, via Smith
  normal form of the integer relation matrix.

Orienting a quotient 1-cell is the only delicate step: the orientation is
fixed on the canonical representative (tail = the lexicographically smaller
of its two refinements) and transported along the gluing group to every
member of the orbit.  If two transport paths ever disagree the edge is
folded by a stabilizer and we raise a diagnostic instead of guessing.
"""

from __future__ import annotations

import dataclasses
import math
import random
from typing import Iterable, Sequence

from .associahedra import Dissection, compatible_diagonals, crosses, normalize_diagonal
from .mosaic import (
    CellComplex,
    CellStructureError,
    MarkedDissection,
    _dihedral_maps,
    _map_diagonals,
    _twist_diagonals,
    _twist_side_sources,
)

# --- exact integer linear algebra -------------------------------------------


@dataclasses.dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        rows = [tuple(int(x) for x in row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return IntegerMatrix(len(rows), cols, tuple(rows))


def smith_normal_form(m: IntegerMatrix) -> tuple[tuple[int, ...], int]:
    """Invariant factors (d1 | d2 | ...) and the rank of an integer matrix.

    Pivots are chosen with minimal absolute value to keep entries small;
    the divisibility chain is enforced afterwards by gcd/lcm sweeps on the
    diagonal, which preserves the equivalence class.
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    diag: list[int] = []
    s = 0
    while s < min(nrows, ncols):
        pivot = None
        best = None
        for i in range(s, nrows):
            row = a[i]
            for j in range(s, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        i, j = pivot
        a[s], a[i] = a[i], a[s]
        for row in a:
            row[s], row[j] = row[j], row[s]
        while True:
            # clear column s, re-pivoting on any nonzero remainder
            dirty = False
            for i in range(s + 1, nrows):
                if a[i][s]:
                    q = a[i][s] // a[s][s]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[s])]
                    if a[i][s]:
                        a[s], a[i] = a[i], a[s]
                        dirty = True
            for j in range(s + 1, ncols):
                if a[s][j]:
                    q = a[s][j] // a[s][s]
                    if q:
                        for row in a:
                            row[j] -= q * row[s]
                    if a[s][j]:
                        for row in a:
                            row[s], row[j] = row[j], row[s]
                        dirty = True
            if not dirty:
                break
        diag.append(abs(a[s][s]))
        s += 1
    # enforce d1 | d2 | ... by gcd/lcm exchanges
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            x, y = diag[i], diag[i + 1]
            if y % x:
                g = math.gcd(x, y)
                diag[i], diag[i + 1] = g, x * y // g
                changed = True
    return tuple(diag), len(diag)


def gf2_rank(rows: list[int]) -> int:
    """Rank over the two-element field; rows are bitsets."""
    rank = 0
    basis: list[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
            rank += 1
    return rank


# --- mod-2 homology -----------------------------------------------------------


def boundary_matrix_mod2(cx: CellComplex, d: int) -> list[int]:
    """Row i is the bitset of odd-multiplicity faces of the i-th d-cell."""
    if not 1 <= d <= cx.top_dim:
        raise ValueError(f"no boundary matrix in degree {d}")
    rows = []
    for faces in cx.boundary[d]:
        row = 0
        for j, mult in faces:
            if mult % 2:
                row |= 1 << j
        rows.append(row)
    return rows


def check_boundary_squares_to_zero(cx: CellComplex) -> None:
    """Verify that the face relation is a chain complex over the
    two-element field; a failure indicates a face-relation bug."""
    for d in range(2, cx.top_dim + 1):
        for faces in cx.boundary[d]:
            parity: dict[int, int] = {}
            for j, mult in faces:
                if mult % 2 == 0:
                    continue
                for g, mult2 in cx.boundary[d - 1][j]:
                    if mult2 % 2:
                        parity[g] = parity.get(g, 0) ^ 1
            if any(parity.values()):
                raise CellStructureError(
                    f"boundary of boundary nonzero in degree {d}"
                )


def betti_mod2(cx: CellComplex) -> tuple[int, ...]:
    """Mod-2 Betti numbers in degrees 0 .. top dimension."""
    check_boundary_squares_to_zero(cx)
    ranks = [0] * (cx.top_dim + 2)
    for d in range(1, cx.top_dim + 1):
        ranks[d] = gf2_rank(boundary_matrix_mod2(cx, d))
    return tuple(
        len(cx.cells[d]) - ranks[d] - ranks[d + 1]
        for d in range(cx.top_dim + 1)
    )


# --- oriented 1-cells ----------------------------------------------------------


def _edge_transport(cx: CellComplex) -> dict[tuple, tuple[int, tuple[int, int]]]:
    """Map every marked dissection in every 1-cell orbit to
    (edge index, transported tail marker diagonal).

    The marker starts as the smaller refinement diagonal of the canonical
    representative and is carried along the generators; reaching a state
    twice with different markers means a stabilizer folds the edge, which
    is reported rather than resolved silently.
    """
    n = cx.n
    dihedral = _dihedral_maps(n)
    out: dict[tuple, tuple[int, tuple[int, int]]] = {}
    for idx, cell in enumerate(cx.cells[1]):
        rep = cell.canonical
        additions = sorted(compatible_diagonals(rep.dissection))
        if len(additions) != 2:
            raise CellStructureError("a 1-cell must have exactly two refinements")
        start = (rep.labels, rep.dissection.diagonals, additions[0])
        frontier = [start]
        seen = {(start[0], start[1]): start[2]}
        while frontier:
            new = []
            for labels, diagonals, marker in frontier:
                neighbors = []
                for src, vmap in dihedral:
                    neighbors.append(
                        (
                            tuple(labels[s] for s in src),
                            _map_diagonals(diagonals, vmap),
                            normalize_diagonal((vmap(marker[0]), vmap(marker[1]))),
                        )
                    )
                for d in diagonals:
                    src = _twist_side_sources(n, d)
                    a, b = d
                    x, y = marker
                    if a <= x <= b and a <= y <= b:
                        new_marker = normalize_diagonal((a + b - x, a + b - y))
                    else:
                        new_marker = marker
                    neighbors.append(
                        (
                            tuple(labels[s] for s in src),
                            _twist_diagonals(diagonals, d),
                            new_marker,
                        )
                    )
                for nb in neighbors:
                    key = (nb[0], nb[1])
                    if key not in seen:
                        seen[key] = nb[2]
                        new.append(nb)
                    elif seen[key] != nb[2]:
                        raise CellStructureError(
                            f"folded 1-cell: orientation of edge {idx} is ambiguous"
                        )
            frontier = new
        for (labels, diagonals), marker in seen.items():
            out[(labels, tuple(sorted(diagonals)))] = (idx, marker)
    return out


def attaching_cycle(
    cx: CellComplex,
    cell,
    transport: dict | None = None,
) -> list[tuple[int, int]]:
    """The boundary cycle of a 2-cell as a list of (edge index, sign).

    Signs are taken against the fixed orientation of each quotient 1-cell;
    the walk follows the boundary polygon of the cell's canonical
    representative inside its own associahedron copy.
    """
    d, _ = cx.locate(cell)
    if d != 2:
        raise ValueError("attaching cycles are defined for 2-cells")
    if transport is None:
        transport = _edge_transport(cx)
    rep = cell.canonical
    base = rep.dissection.diagonals
    additions = sorted(compatible_diagonals(rep.dissection))

    def refinements(x):
        others = [
            y for y in additions if y != x and not crosses(x, y)
        ]
        if len(others) != 2:
            raise CellStructureError("2-cell boundary is not a polygon")
        return others

    start_edge = additions[0]
    first, second = refinements(start_edge)
    walk = [(first, start_edge)]
    steps: list[tuple[int, int]] = []
    prev, here = first, start_edge
    while True:
        a, b = refinements(here)
        nxt = b if a == prev else a
        key = (rep.labels, tuple(sorted(base | {here})))
        edge_idx, marker = transport[key]
        if marker == prev:
            steps.append((edge_idx, 1))
        elif marker == nxt:
            steps.append((edge_idx, -1))
        else:
            raise CellStructureError("edge marker does not match either endpoint")
        prev, here = here, nxt
        if (prev, here) == walk[0]:
            break
    return steps


# --- presentations and first homology ------------------------------------------


@dataclasses.dataclass(frozen=True)
class GroupPresentation:
    """Generators 1..g and relation words as signed generator indices."""

    generators: int
    relations: tuple[tuple[int, ...], ...]
    relation_matrix: IntegerMatrix

    def __post_init__(self):
        for word in self.relations:
            for x in word:
                if x == 0 or abs(x) > self.generators:
                    raise ValueError(f"letter {x} out of range")
        if self.relation_matrix.rows != len(self.relations):
            raise ValueError("one matrix row per relation required")

    @staticmethod
    def from_relations(generators: int, relations: Iterable[Iterable[int]]) -> GroupPresentation:
        relations = tuple(tuple(word) for word in relations)
        rows = []
        for word in relations:
            row = [0] * generators
            for x in word:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return GroupPresentation(
            generators, relations, IntegerMatrix.from_rows(rows, generators)
        )

    def to_text(self) -> str:
        gens = ", ".join(f"g{i}" for i in range(1, self.generators + 1))
        words = []
        for word in self.relations:
            if not word:
                words.append("1")
                continue
            words.append(
                " ".join(f"g{abs(x)}" if x > 0 else f"g{abs(x)}^-1" for x in word)
            )
        return f"generators: {gens}\nrelations:\n" + "\n".join(
            f"  {w}" for w in words
        )

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "relations": [list(word) for word in self.relations],
            "relation_matrix": [list(row) for row in self.relation_matrix.entries],
        }


@dataclasses.dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic torsion with d1 | d2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion coefficients exceed 1")

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def mod2_dimension(self) -> int:
        return self.free_rank + sum(1 for t in self.torsion if t % 2 == 0)


def spanning_tree(
    cx: CellComplex, rng: random.Random | None = None
) -> tuple[set[int], list[int]]:
    """Breadth-first spanning tree of the 1-skeleton from the least 0-cell.

    Returns (tree edge indices, parent edge of each vertex).  A random
    generator shuffles edge exploration order; by default the order is the
    deterministic canonical one.
    """
    nv = len(cx.cells[0])
    incident: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for i, (a, b) in enumerate(cx.edge_endpoints):
        incident[a].append((i, b))
        incident[b].append((i, a))
    order = list(range(nv))
    if rng is not None:
        for adj in incident:
            rng.shuffle(adj)
    tree: set[int] = set()
    parent_edge = [-1] * nv
    visited = [False] * nv
    queue = [0]
    visited[0] = True
    while queue:
        v = queue.pop(0)
        for edge, w in incident[v]:
            if not visited[w]:
                visited[w] = True
                parent_edge[w] = edge
                tree.add(edge)
                queue.append(w)
    if not all(visited):
        raise CellStructureError("1-skeleton is disconnected")
    return tree, parent_edge


def pi1_presentation(
    cx: CellComplex, rng: random.Random | None = None
) -> GroupPresentation:
    """Present the fundamental group from the 2-skeleton.

    Generators: 1-cells outside a spanning tree.  Relations: attaching
    words of the 2-cells with tree edges deleted.  The underlying spaces
    are aspherical, so this presentation carries the full homotopy type.
    """
    if cx.top_dim == 0:
        return GroupPresentation.from_relations(0, [])
    tree, _ = spanning_tree(cx, rng)
    gen_of_edge: dict[int, int] = {}
    for i in range(len(cx.cells[1])):
        if i not in tree:
            gen_of_edge[i] = len(gen_of_edge) + 1
    relations = []
    if cx.top_dim >= 2:
        transport = _edge_transport(cx)
        for cell in cx.cells[2]:
            word = []
            for edge_idx, sign in attaching_cycle(cx, cell, transport):
                if edge_idx in gen_of_edge:
                    word.append(sign * gen_of_edge[edge_idx])
            relations.append(word)
    return GroupPresentation.from_relations(len(gen_of_edge), relations)


def h1(cx: CellComplex, rng: random.Random | None = None) -> AbelianGroup:
    """First integral homology: abelianization of the fundamental group."""
    pres = pi1_presentation(cx, rng)
    factors, rank = smith_normal_form(pres.relation_matrix)
    return AbelianGroup(
        free_rank=pres.generators - rank,
        torsion=tuple(d for d in factors if d > 1),
    )
