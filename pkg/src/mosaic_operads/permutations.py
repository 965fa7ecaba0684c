"""Permutations of {1, ..., n} with the composition conventions used throughout.

The whole package applies maps left-to-right: in a product ``mul(p, q)`` the
permutation ``p`` acts first.  Braid words follow the same convention (the
leftmost letter acts first), so the permutation image of a word is the
``mul``-product of the images of its letters.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable


@dataclasses.dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1, ..., n}, stored in one-line notation.

    ``images[i - 1]`` is the image of ``i``.

    >>> p = Permutation((2, 3, 1))
    >>> p(1), p(2), p(3)
    (2, 3, 1)
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, i: int) -> Permutation:
        """The adjacent transposition swapping i and i+1."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"transposition index {i} out of range for n={n}")
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    @staticmethod
    def reversal(n: int) -> Permutation:
        """The longest element i -> n + 1 - i (the half-twist's image)."""
        return Permutation(tuple(range(n, 0, -1)))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def inv(self) -> Permutation:
        images = [0] * self.size
        for i, v in enumerate(self.images):
            images[v - 1] = i + 1
        return Permutation(tuple(images))

    def descents(self) -> set[int]:
        """Positions i with images[i] > images[i+1] (1-indexed).

        Under the act-first-on-the-left convention these are exactly the
        generator indices that divide the corresponding positive braid on
        the left; descents of the inverse divide it on the right.
        """
        return {
            i + 1
            for i in range(self.size - 1)
            if self.images[i] > self.images[i + 1]
        }

    def inversions(self) -> int:
        count = 0
        for i in range(self.size):
            for j in range(i + 1, self.size):
                if self.images[i] > self.images[j]:
                    count += 1
        return count

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word in adjacent transpositions, leftmost letter first.

        Peels the least descent repeatedly, so the result is deterministic.

        >>> Permutation((3, 2, 1)).reduced_word()
        (1, 2, 1)
        """
        word = []
        current = self
        while not current.is_identity():
            i = min(current.descents())
            word.append(i)
            current = mul(Permutation.transposition(current.size, i), current)
        return tuple(word)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, singletons omitted, each starting at its minimum."""
        seen = [False] * self.size
        out = []
        for start in range(1, self.size + 1):
            if seen[start - 1]:
                continue
            cycle = []
            j = start
            while not seen[j - 1]:
                seen[j - 1] = True
                cycle.append(j)
                j = self(j)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out


def mul(p: Permutation, q: Permutation) -> Permutation:
    """Compose left-to-right: apply p first, then q."""
    if p.size != q.size:
        raise ValueError(f"size mismatch: {p.size} vs {q.size}")
    return Permutation(tuple(q.images[v - 1] for v in p.images))


def mul_all(perms: Iterable[Permutation], n: int) -> Permutation:
    acc = Permutation.identity(n)
    for p in perms:
        acc = mul(acc, p)
    return acc


def block_sum(perms: Iterable[Permutation]) -> Permutation:
    """Disjoint juxtaposition: each permutation acts on its own block."""
    images: list[int] = []
    offset = 0
    for p in perms:
        images.extend(v + offset for v in p.images)
        offset += p.size
    return Permutation(tuple(images))


def block_permutation(p: Permutation, sizes: list[int] | tuple[int, ...]) -> Permutation:
    """Fatten p so that strand k becomes a parallel block of sizes[k-1] strands.

    Block k occupies the input positions determined by the block sizes in
    order 1..n and is carried, order preserved, to the slot that p assigns it.
    """
    if p.size != len(sizes):
        raise ValueError("one block size per strand required")
    in_offsets = [0]
    for s in sizes:
        in_offsets.append(in_offsets[-1] + s)
    # Output offset of block k: total size of blocks landing before it.
    out_offsets = [0] * p.size
    for k in range(1, p.size + 1):
        out_offsets[k - 1] = sum(
            sizes[j - 1] for j in range(1, p.size + 1) if p(j) < p(k)
        )
    images = [0] * in_offsets[-1]
    for k in range(1, p.size + 1):
        for t in range(sizes[k - 1]):
            images[in_offsets[k - 1] + t] = out_offsets[k - 1] + t + 1
    return Permutation(tuple(images))


def all_permutations(n: int) -> list[Permutation]:
    import itertools

    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
