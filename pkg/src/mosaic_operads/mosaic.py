"""Cells of the real moduli space of stable rational curves, as mosaics.

A point configuration on the real projective line degenerates into a mosaic:
a convex polygon whose n sides carry the marks 1..n and which may be cut by
non-crossing diagonals.  A cell of the compactified moduli space is an
equivalence class of such marked dissections under

- the 2n dihedral relabelings of the polygon, and
- the twist along any diagonal of the dissection, which reverses the side
  labels on one side of the diagonal and reflects the diagonals nested
  there.

The class of a marked dissection with k diagonals is a cell of codimension
k; the equivalence realizes the gluing that makes the quotient of the
disjoint associahedra (one per labeling) 2^k-to-1 over codimension-k cells.
Cells are represented by the lexicographically least marked dissection in
the orbit, found by breadth-first closure; orbit sizes stay below
2n * 2^(n-3), so exhaustive search is cheap at desk scale.

The moduli interpretation fixes the degenerate base case: with three marks
the space is a single point.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from typing import Iterable, Sequence

from .associahedra import (
    Diagonal,
    Dissection,
    compatible_diagonals,
    enumerate_dissections,
    normalize_diagonal,
)
from .permutations import Permutation


class CellStructureError(Exception):
    """A structural diagnostic: the cell complex violates an expected law
    (folded orbit, bad coface count, miscounted stratum)."""


@dataclasses.dataclass(frozen=True)
class MarkedDissection:
    """A dissected polygon whose sides carry the marks 1..n.

    ``labels[j]`` is the mark on side j, where side j joins vertices j and
    j+1 mod n.
    """

    n: int
    labels: tuple[int, ...]
    dissection: Dissection

    def __post_init__(self):
        if sorted(self.labels) != list(range(1, self.n + 1)):
            raise ValueError("labels must be a bijection onto 1..n")
        if self.dissection.polygon_size != self.n:
            raise ValueError("dissection size does not match the polygon")

    @staticmethod
    def of(labels: Sequence[int], diagonals: Iterable[Iterable[int]] = ()) -> MarkedDissection:
        n = len(labels)
        return MarkedDissection(n, tuple(labels), Dissection.of(n, diagonals))

    def encoding(self) -> tuple:
        return (self.labels, self.dissection.sorted_diagonals())

    def side_of_mark(self, mark: int) -> int:
        return self.labels.index(mark)


@dataclasses.dataclass(frozen=True)
class MosaicCell:
    """An orbit of marked dissections, named by its least representative."""

    canonical: MarkedDissection
    dim: int

    @property
    def n(self) -> int:
        return self.canonical.n

    def codim(self) -> int:
        return (self.n - 3) - self.dim


# --- elementary moves ------------------------------------------------------


def twist(m: MarkedDissection, d: Diagonal) -> MarkedDissection:
    """Reflect the part of the mosaic cut off by d.

    For d = {a, b} with a < b the affected part is the sub-polygon on
    vertices a..b: the labels of sides a..b-1 are reversed in place and the
    diagonals with both endpoints in [a, b] are reflected.  Twisting along
    the same diagonal twice is the identity.
    """
    d = normalize_diagonal(d)
    if d not in m.dissection.diagonals:
        raise ValueError(f"diagonal {d} not in the dissection")
    a, b = d
    labels = list(m.labels)
    for j in range(a, b):
        labels[j] = m.labels[a + b - 1 - j]
    diagonals = set()
    for x, y in m.dissection.diagonals:
        if a <= x <= b and a <= y <= b:
            diagonals.add(normalize_diagonal((a + b - x, a + b - y)))
        else:
            diagonals.add((x, y))
    return MarkedDissection(m.n, tuple(labels), Dissection(m.n, frozenset(diagonals)))


def rotate_marked(m: MarkedDissection, t: int) -> MarkedDissection:
    """Rotate the underlying polygon by t positions (a dihedral relabeling)."""
    n = m.n
    labels = tuple(m.labels[(j - t) % n] for j in range(n))
    diagonals = frozenset(
        normalize_diagonal(((x + t) % n, (y + t) % n)) for x, y in m.dissection.diagonals
    )
    return MarkedDissection(n, labels, Dissection(n, diagonals))


def reflect_marked(m: MarkedDissection, c: int = 0) -> MarkedDissection:
    """Reflect the polygon by the vertex map v -> c - v (dihedral relabeling)."""
    n = m.n
    labels = tuple(m.labels[(c - 1 - j) % n] for j in range(n))
    diagonals = frozenset(
        normalize_diagonal(((c - x) % n, (c - y) % n)) for x, y in m.dissection.diagonals
    )
    return MarkedDissection(n, labels, Dissection(n, diagonals))


# --- fast orbit engine ------------------------------------------------------
#
# States are (labels tuple, diagonals frozenset); the group generators act
# by a precomputed source table on labels plus a dissection map.  All maps
# preserve the number of diagonals.


def _twist_side_sources(n: int, d: Diagonal) -> tuple[int, ...]:
    a, b = d
    src = list(range(n))
    for j in range(a, b):
        src[j] = a + b - 1 - j
    return tuple(src)


def _twist_diagonals(diagonals: frozenset[Diagonal], d: Diagonal) -> frozenset[Diagonal]:
    a, b = d
    out = set()
    for x, y in diagonals:
        if a <= x <= b and a <= y <= b:
            out.add(normalize_diagonal((a + b - x, a + b - y)))
        else:
            out.add((x, y))
    return frozenset(out)


@functools.lru_cache(maxsize=None)
def _dihedral_maps(n: int) -> list[tuple[tuple[int, ...], callable]]:
    """The 2n dihedral actions as (label source table, vertex map)."""
    maps = []
    for t in range(n):
        src = tuple((j - t) % n for j in range(n))
        maps.append((src, (lambda t: lambda v: (v + t) % n)(t)))
    for c in range(n):
        src = tuple((c - 1 - j) % n for j in range(n))
        maps.append((src, (lambda c: lambda v: (c - v) % n)(c)))
    return maps


def _map_diagonals(diagonals: frozenset[Diagonal], vmap) -> frozenset[Diagonal]:
    return frozenset(normalize_diagonal((vmap(x), vmap(y))) for x, y in diagonals)


def _orbit(state: tuple[tuple[int, ...], frozenset[Diagonal]]):
    """Breadth-first closure of a state under dihedral maps and twists.

    Generator actions on the diagonal set are cached per dissection, since
    an orbit revisits few dissections under many labelings.
    """
    n = len(state[0])
    dihedral = _dihedral_maps(n)
    seen = {state}
    frontier = [state]
    actions: dict[frozenset, list] = {}
    while frontier:
        new = []
        for labels, diagonals in frontier:
            gens = actions.get(diagonals)
            if gens is None:
                gens = [
                    (src, _map_diagonals(diagonals, vmap)) for src, vmap in dihedral
                ]
                gens.extend(
                    (_twist_side_sources(n, d), _twist_diagonals(diagonals, d))
                    for d in diagonals
                )
                actions[diagonals] = gens
            for src, nd in gens:
                nb = (tuple(labels[s] for s in src), nd)
                if nb not in seen:
                    seen.add(nb)
                    new.append(nb)
        frontier = new
    return seen


def _state_key(state) -> tuple:
    labels, diagonals = state
    return (labels, tuple(sorted(diagonals)))


def canonicalize(m: MarkedDissection) -> MosaicCell:
    """The cell of a marked dissection: least representative of its orbit."""
    state = (m.labels, m.dissection.diagonals)
    best = min(_orbit(state), key=_state_key)
    rep = MarkedDissection(m.n, best[0], Dissection(m.n, best[1]))
    return MosaicCell(rep, (m.n - 3) - len(best[1]))


def tessellation_map(g: Permutation, f: Dissection) -> MosaicCell:
    """Send (labeling, associahedron face) to the cell it covers."""
    if g.size != f.polygon_size:
        raise ValueError("labeling size must match the polygon")
    return canonicalize(MarkedDissection(g.size, g.images, f))


def cyclic_rotate(c: MosaicCell) -> MosaicCell:
    """Advance every mark cyclically by one (mark k -> k+1, mark n -> 1)."""
    m = c.canonical
    labels = tuple(v % m.n + 1 for v in m.labels)
    return canonicalize(MarkedDissection(m.n, labels, m.dissection))


# --- the cell complex -------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CellComplex:
    """All cells of the mosaic model for one value of n, with boundaries.

    ``cells[d]`` lists the cells of dimension d in canonical order.
    ``boundary[d][i]`` lists (face index in dimension d-1, multiplicity):
    the multiplicity counts the codimension-one faces of the canonical
    representative's associahedron face that land on that quotient cell.
    ``edge_endpoints[i]`` orients the i-th 1-cell by the vertex cells its
    representative's two refinements map to, in diagonal order.
    ``copy_index`` holds the top-cell representatives, one per labeling
    class (there are (n-1)!/2 of them).
    """

    n: int
    cells: tuple[tuple[MosaicCell, ...], ...]
    boundary: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    edge_endpoints: tuple[tuple[int, int], ...]
    copy_index: tuple[MarkedDissection, ...]

    @functools.cached_property
    def _index(self) -> dict[MosaicCell, tuple[int, int]]:
        return {
            cell: (d, i)
            for d, level in enumerate(self.cells)
            for i, cell in enumerate(level)
        }

    @property
    def top_dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> tuple[int, ...]:
        """Cell counts by dimension 0 .. n-3."""
        return tuple(len(level) for level in self.cells)

    def locate(self, cell: MosaicCell) -> tuple[int, int]:
        try:
            return self._index[cell]
        except KeyError:
            raise ValueError("cell does not belong to this complex") from None

    def boundary_faces(self, cell: MosaicCell) -> list[tuple[MosaicCell, int]]:
        d, i = self.locate(cell)
        if d == 0:
            return []
        return [
            (self.cells[d - 1][j], mult) for j, mult in self.boundary[d][i]
        ]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(level) for d, level in enumerate(self.cells))

    def dual_edges(self) -> list[tuple[int, int, int]]:
        """(top cell, top cell, via codim-1 cell) adjacency, one entry per
        codim-1 cell; the two ends coincide when a top cell meets itself."""
        if self.top_dim == 0:
            return []
        cofaces: dict[int, list[int]] = {}
        for i, faces in enumerate(self.boundary[self.top_dim]):
            for j, mult in faces:
                cofaces.setdefault(j, []).extend([i] * mult)
        out = []
        for j in sorted(cofaces):
            pair = cofaces[j]
            if len(pair) != 2:
                raise CellStructureError(
                    f"codim-1 cell {j} has {len(pair)} top cofaces"
                )
            out.append((pair[0], pair[1], j))
        return out

    # --- exports ---

    def to_json(self) -> dict:
        cells = []
        ids: dict[tuple[int, int], int] = {}
        for d, level in enumerate(self.cells):
            for i, cell in enumerate(level):
                ids[(d, i)] = len(cells)
                cells.append(
                    {
                        "id": len(cells),
                        "dim": d,
                        "labels": list(cell.canonical.labels),
                        "diagonals": [
                            list(x) for x in cell.canonical.dissection.sorted_diagonals()
                        ],
                    }
                )
        boundary = []
        for d in range(1, len(self.cells)):
            for i, faces in enumerate(self.boundary[d]):
                boundary.append(
                    {
                        "cell": ids[(d, i)],
                        "faces": [[ids[(d - 1, j)], mult] for j, mult in faces],
                    }
                )
        return {"n": self.n, "cells": cells, "boundary": boundary}

    def skeleton_dot(self) -> str:
        """The 1-skeleton as an undirected DOT graph."""
        lines = ["graph skeleton {"]
        for i in range(len(self.cells[0])):
            lines.append(f"  v{i};")
        if self.top_dim >= 1:
            for i, (a, b) in enumerate(self.edge_endpoints):
                lines.append(f"  v{a} -- v{b} [label=e{i}];")
        lines.append("}")
        return "\n".join(lines)

    def dual_dot(self) -> str:
        """Top-cell adjacency across codim-1 cells as a DOT graph."""
        lines = ["graph dual {"]
        for i in range(len(self.cells[self.top_dim])):
            lines.append(f"  t{i};")
        for a, b, via in self.dual_edges():
            lines.append(f"  t{a} -- t{b} [label=f{via}];")
        lines.append("}")
        return "\n".join(lines)


def _build_level(n: int, k: int):
    """Enumerate the orbits among all (labeling, k-diagonal dissection)
    states.  Returns (cells, state_to_cell, orbit_sizes, diss_list)."""
    diss_list = [d.diagonals for d in enumerate_dissections(n, k)]
    diss_index = {ds: i for i, ds in enumerate(diss_list)}
    ndiss = len(diss_list)
    diag_keys = [tuple(sorted(ds)) for ds in diss_list]

    # dihedral actions: label source tables and per-dissection targets
    dihedral = _dihedral_maps(n)
    dihedral_srcs = [src for src, _ in dihedral]
    dihedral_targets = [
        [diss_index[_map_diagonals(ds, vmap)] for ds in diss_list]
        for _, vmap in dihedral
    ]
    # twist actions per dissection
    twist_actions: list[list[tuple[tuple[int, ...], int]]] = []
    for ds in diss_list:
        acts = []
        for d in sorted(ds):
            acts.append(
                (_twist_side_sources(n, d), diss_index[_twist_diagonals(ds, d)])
            )
        twist_actions.append(acts)

    def encode(labels: tuple[int, ...], diss_idx: int) -> int:
        code = 0
        for v in labels:
            code = code * n + (v - 1)
        return code * ndiss + diss_idx

    cells: list[tuple[tuple[int, ...], int]] = []
    orbit_sizes: list[int] = []
    state_to_cell: dict[int, int] = {}

    for labels in itertools.permutations(range(1, n + 1)):
        for diss_idx in range(ndiss):
            if encode(labels, diss_idx) in state_to_cell:
                continue
            # breadth-first closure of a fresh orbit
            seed = (labels, diss_idx)
            orbit = [seed]
            seen = {encode(labels, diss_idx)}
            best = (labels, diag_keys[diss_idx], diss_idx)
            frontier = [seed]
            while frontier:
                new = []
                for lab, di in frontier:
                    targets = twist_actions[di] + [
                        (dihedral_srcs[g], dihedral_targets[g][di])
                        for g in range(2 * n)
                    ]
                    for src, tgt in targets:
                        nlab = tuple(lab[s] for s in src)
                        key = encode(nlab, tgt)
                        if key not in seen:
                            seen.add(key)
                            st = (nlab, tgt)
                            new.append(st)
                            orbit.append(st)
                            cand = (nlab, diag_keys[tgt], tgt)
                            if cand[:2] < best[:2]:
                                best = cand
                frontier = new
            cell_id = len(cells)
            cells.append((best[0], best[2]))
            orbit_sizes.append(len(orbit))
            for lab, di in orbit:
                state_to_cell[encode(lab, di)] = cell_id

    # canonical order: sort cells by encoding, remap the state table
    order = sorted(range(len(cells)), key=lambda i: (cells[i][0], diag_keys[cells[i][1]]))
    rank = {old: new for new, old in enumerate(order)}
    cells = [cells[i] for i in order]
    orbit_sizes = [orbit_sizes[i] for i in order]
    state_to_cell = {key: rank[v] for key, v in state_to_cell.items()}
    return cells, state_to_cell, orbit_sizes, diss_list, diss_index, encode


@functools.lru_cache(maxsize=8)
def enumerate_cells(n: int) -> CellComplex:
    """Build the full cell complex of the mosaic model for n marks.

    Supported for 3 <= n <= 8 (n = 3 is a single point).  The builder
    verifies the stratum counts against the 2^d gluing law, the uniformity
    of orbit sizes, and the two-coface property of codimension-1 cells,
    raising CellStructureError on any violation.
    """
    if not 3 <= n <= 8:
        raise ValueError("cell enumeration supported for 3 <= n <= 8")
    top = n - 3
    levels: list[list[MosaicCell]] = [None] * (top + 1)
    boundaries: list[list[tuple[tuple[int, int], ...]]] = [None] * (top + 1)
    edge_endpoints: list[tuple[int, int]] = []

    prev = None  # (state_to_cell, ndiss, encode) of level k+1
    for k in range(top, -1, -1):
        dim = top - k
        cells_raw, state_to_cell, orbit_sizes, diss_list, diss_index, encode = _build_level(n, k)
        expected_orbit = 2 * n * 2 ** k
        if any(size != expected_orbit for size in orbit_sizes):
            bad = next(s for s in orbit_sizes if s != expected_orbit)
            raise CellStructureError(
                f"n={n}, codim {k}: orbit of size {bad}, expected {expected_orbit}"
            )
        if len(cells_raw) * expected_orbit != math.factorial(n) * len(diss_list):
            raise CellStructureError(f"n={n}, codim {k}: stratum miscount")

        level_cells = [
            MosaicCell(
                MarkedDissection(n, labels, Dissection(n, diss_list[di])),
                dim,
            )
            for labels, di in cells_raw
        ]
        levels[dim] = level_cells

        if k < top:
            prev_map, prev_index, prev_encode = prev
            level_boundary = []
            for labels, di in cells_raw:
                counts: dict[int, int] = {}
                additions = sorted(
                    compatible_diagonals(Dissection(n, diss_list[di]))
                )
                face_cells = []
                for x in additions:
                    target = prev_index[diss_list[di] | {x}]
                    face = prev_map[prev_encode(labels, target)]
                    counts[face] = counts.get(face, 0) + 1
                    face_cells.append(face)
                level_boundary.append(tuple(sorted(counts.items())))
                if dim == 1:
                    if len(face_cells) != 2:
                        raise CellStructureError(
                            "a 1-cell representative must have exactly two refinements"
                        )
                    edge_endpoints.append((face_cells[0], face_cells[1]))
            boundaries[dim] = level_boundary
        else:
            boundaries[dim] = [()] * len(level_cells)

        prev = (state_to_cell, diss_index, encode)

    boundaries[0] = [()] * len(levels[0])
    complex_ = CellComplex(
        n=n,
        cells=tuple(tuple(level) for level in levels),
        boundary=tuple(tuple(level) for level in boundaries),
        edge_endpoints=tuple(edge_endpoints),
        copy_index=tuple(cell.canonical for cell in levels[top]),
    )
    _validate(complex_)
    return complex_


def _validate(cx: CellComplex) -> None:
    n = cx.n
    if len(cx.cells[cx.top_dim]) != math.factorial(n - 1) // 2:
        raise CellStructureError("top stratum has the wrong size")
    for d, level in enumerate(cx.cells):
        k = cx.top_dim - d
        total = (math.factorial(n - 1) // 2) * len(enumerate_dissections(n, k))
        if len(level) * 2 ** k != total:
            raise CellStructureError(
                f"dimension {d}: {len(level)} cells violate the 2^codim law"
            )
    if cx.top_dim >= 1:
        cx.dual_edges()  # raises unless every codim-1 cell has two cofaces


def boundary_faces(cell: MosaicCell, cx: CellComplex) -> list[tuple[MosaicCell, int]]:
    """Faces of a cell with incidence multiplicities, within a complex."""
    return cx.boundary_faces(cell)


def euler_characteristic(n: int) -> int:
    """Alternating sum of cell counts of the mosaic model."""
    return enumerate_cells(n).euler_characteristic()


# --- operad composition ------------------------------------------------------


def compose_marked(a: MarkedDissection, mark: int, b: MarkedDissection) -> MarkedDissection:
    """Glue b's highest-marked side onto the side of a carrying ``mark``.

    The output is relabeled 1..(n+m) operadically: a's marks below ``mark``
    stay, b's marks follow in order, then a's remaining marks.  The glued
    edge becomes a diagonal.
    """
    p, q = a.n, b.n
    if not 1 <= mark <= p - 1:
        raise ValueError(f"mark {mark} is not an input mark of the left cell")
    ja = a.side_of_mark(mark)
    jb = b.side_of_mark(q)
    size = p + q - 2

    # rotate a so the glued side is (0, 1), b so it is (q-1, 0)
    def va(v: int) -> int:
        return (v - ja) % p

    def vb(v: int) -> int:
        return (v - jb - 1) % q

    # assemble: b's vertices 0..q-1 sit at 0..q-1, a's vertex v >= 1 at v+q-2
    def out_a(v: int) -> int:
        v = va(v)
        return 0 if v == 0 else v + q - 2

    def out_b(v: int) -> int:
        return vb(v)

    labels = [0] * size
    for j in range(p):  # a's sides except the glued one
        if j == ja:
            continue
        side = out_a(j)
        if out_a((j + 1) % p) != (side + 1) % size and side != size - 1:
            raise AssertionError("side mapping must preserve adjacency")
        t = a.labels[j]
        labels[side] = t if t < mark else t + q - 2
    for j in range(q):  # b's sides except the glued one
        if j == jb:
            continue
        side = out_b(j)
        t = b.labels[j]
        labels[side] = mark + t - 1

    diagonals = {
        normalize_diagonal((out_a(x), out_a(y))) for x, y in a.dissection.diagonals
    }
    diagonals |= {
        normalize_diagonal((out_b(x), out_b(y))) for x, y in b.dissection.diagonals
    }
    diagonals.add(normalize_diagonal((0, q - 1)))
    return MarkedDissection(size, tuple(labels), Dissection(size, frozenset(diagonals)))


def mosaic_compose(a: MosaicCell, mark: int, b: MosaicCell) -> MosaicCell:
    """Operad composition of cells along an input mark of the left cell."""
    return canonicalize(compose_marked(a.canonical, mark, b.canonical))
