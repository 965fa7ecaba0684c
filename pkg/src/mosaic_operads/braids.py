"""Braid words, Garside normal form, and the cabling composition.

A braid on n strands is a word in the Artin generators: the letter ``k``
(1 <= |k| <= n-1) is the positive crossing of strands |k|, |k|+1 when k > 0
and the negative crossing when k < 0.  Words act bottom to top and the
leftmost letter acts first; permutation images compose accordingly.

Word equality is decided through the left-greedy Garside normal form
Delta^p . f1 ... fr over the classical Garside structure: Delta is the half
twist, the simple factors fi are permutation braids (identified with their
permutations), no factor is trivial or Delta, and each consecutive pair is
left-weighted.  The normal form is a complete invariant, so it doubles as a
canonical form and hash key.

Cabling replaces strand k of an outer braid by a parallel block of i_k
strands.  Conventions (any fixed choice satisfies the operad laws):

- strands and blocks are numbered at the bottom, blocks in order 1..n;
- inner braid k is inserted on block k at the bottom, before all crossings;
- a positive crossing of a p-block over a q-block is emitted row by row as
  the standard p*q-letter word; a negative crossing is the mirror inverse.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from .permutations import Permutation, block_permutation, block_sum, mul


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``strands`` strands."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strand count must be positive")
        for k in self.letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise ValueError(
                    f"letter {k} invalid for {self.strands} strands"
                )

    @staticmethod
    def identity(n: int) -> BraidWord:
        return BraidWord(n, ())

    @staticmethod
    def from_text(strands: int, text: str) -> BraidWord:
        """Parse whitespace-separated signed integers, e.g. ``"1 2 -1"``."""
        letters = tuple(int(tok) for tok in text.split())
        return BraidWord(strands, letters)

    def to_text(self) -> str:
        return " ".join(str(k) for k in self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-k for k in reversed(self.letters)))

    def exponent_sum(self) -> int:
        return sum(1 if k > 0 else -1 for k in self.letters)


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent pairs (k, -k) until none remain."""
    stack: list[int] = []
    for k in w.letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    return BraidWord(w.strands, tuple(stack))


def to_permutation(w: BraidWord) -> Permutation:
    """The image under sigma_i -> (i, i+1), leftmost letter applied first.

    Strand x, read at the bottom, ends at position to_permutation(w)(x).
    """
    at_position = list(range(1, w.strands + 1))
    for k in w.letters:
        i = abs(k) - 1
        at_position[i], at_position[i + 1] = at_position[i + 1], at_position[i]
    images = [0] * w.strands
    for pos, strand in enumerate(at_position):
        images[strand - 1] = pos + 1
    return Permutation(tuple(images))


# --- Garside normal form ------------------------------------------------


@dataclasses.dataclass(frozen=True)
class GarsideNormalForm:
    """Left-greedy normal form Delta^delta_power . factors."""

    strands: int
    delta_power: int
    factors: tuple[Permutation, ...]

    def __post_init__(self):
        w0 = Permutation.reversal(self.strands)
        for f in self.factors:
            if f.size != self.strands:
                raise ValueError("factor size mismatch")
            if f.is_identity() or f == w0:
                raise ValueError("factors must avoid the identity and the half twist")

    def to_word(self) -> BraidWord:
        """A braid word representing the same element; re-normalizing it
        reproduces this form."""
        w0 = Permutation.reversal(self.strands)
        delta_word = w0.reduced_word()
        letters: list[int] = []
        if self.delta_power >= 0:
            letters.extend(delta_word * self.delta_power)
        else:
            undo = tuple(-i for i in reversed(delta_word))
            letters.extend(undo * (-self.delta_power))
        for f in self.factors:
            letters.extend(f.reduced_word())
        return BraidWord(self.strands, tuple(letters))

    def canonical_length(self) -> int:
        return len(self.factors)


# The normalization engine works on bare image tuples rather than
# Permutation objects: equality tests run it tens of thousands of times.


def _descent_mask(p: tuple[int, ...]) -> int:
    mask = 0
    for i in range(len(p) - 1):
        if p[i] > p[i + 1]:
            mask |= 1 << i
    return mask


def _finish_mask(p: tuple[int, ...]) -> int:
    pos = [0] * len(p)
    for i, v in enumerate(p):
        pos[v - 1] = i
    mask = 0
    for i in range(len(p) - 1):
        if pos[i] > pos[i + 1]:
            mask |= 1 << i
    return mask


def _transfer(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Move letters from the head of v to the tail of u until the pair is
    left-weighted (starting set of v contained in finishing set of u)."""
    while True:
        movable = _descent_mask(v) & ~_finish_mask(u)
        if not movable:
            return u, v
        i = (movable & -movable).bit_length() - 1  # lowest movable index - 1
        lu = list(u)
        a, b = lu.index(i + 1), lu.index(i + 2)
        lu[a], lu[b] = lu[b], lu[a]
        u = tuple(lu)
        lv = list(v)
        lv[i], lv[i + 1] = lv[i + 1], lv[i]
        v = tuple(lv)


def _normalize_factors(n: int, factors: list[tuple[int, ...]]) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Drive the factor list to its left-weighted fixed point with a
    worklist, then strip leading half twists and trailing identities.

    Each transfer moves length strictly toward the front, so the worklist
    drains; at the fixed point half twists can only sit at the front and
    identities at the back.
    """
    fs = list(factors)
    pending = list(range(len(fs) - 2, -1, -1))
    queued = set(pending)
    while pending:
        j = pending.pop()
        queued.discard(j)
        u, v = _transfer(fs[j], fs[j + 1])
        if u != fs[j]:
            fs[j], fs[j + 1] = u, v
            for t in (j - 1, j + 1):
                if 0 <= t < len(fs) - 1 and t not in queued:
                    pending.append(t)
                    queued.add(t)
    w0 = tuple(range(n, 0, -1))
    ident = tuple(range(1, n + 1))
    lo, hi = 0, len(fs)
    while lo < hi and fs[lo] == w0:
        lo += 1
    while lo < hi and fs[hi - 1] == ident:
        hi -= 1
    return lo, tuple(fs[lo:hi])


def _garside_key(w: BraidWord) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """(delta power, factor tuples) of the left-greedy normal form."""
    n = w.strands
    if n == 1:
        return 0, ()
    w = free_reduce(w)
    w0 = tuple(range(n, 0, -1))
    # sigma_i^-1 = Delta^-1 . (left complement of s_i); collect the Delta
    # powers in front by conjugating everything they pass over.  Conjugation
    # by the half twist is p -> w0 p w0, of order two.
    factors: list[tuple[int, ...]] = []
    delta_steps: list[int] = []
    for k in w.letters:
        i = abs(k)
        s = list(range(1, n + 1))
        s[i - 1], s[i] = s[i], s[i - 1]
        if k > 0:
            factors.append(tuple(s))
            delta_steps.append(0)
        else:
            factors.append(tuple(s[n - 1 - x] for x in range(n)))
            delta_steps.append(-1)
    power = 0
    for idx in range(len(factors) - 1, -1, -1):
        if power % 2:
            p = factors[idx]
            factors[idx] = tuple(n + 1 - p[n - 1 - x] for x in range(n))
        power += delta_steps[idx]
    gained, normalized = _normalize_factors(n, factors)
    return power + gained, normalized


def garside_normal_form(w: BraidWord) -> GarsideNormalForm:
    """Compute the unique left-greedy normal form of the word."""
    power, factors = _garside_key(w)
    return GarsideNormalForm(
        w.strands, power, tuple(Permutation(f) for f in factors)
    )


def braids_equal(u: BraidWord, v: BraidWord) -> bool:
    """Decide equality in the braid group via normal forms."""
    if u.strands != v.strands:
        raise ValueError(
            f"cannot compare braids on {u.strands} and {v.strands} strands"
        )
    return _garside_key(u) == _garside_key(v)


# --- operad structure ----------------------------------------------------


def juxtapose(u: BraidWord, v: BraidWord) -> BraidWord:
    """Place v to the right of u on disjoint strands (monoidal product)."""
    shift = u.strands
    shifted = tuple(k + shift if k > 0 else k - shift for k in v.letters)
    return BraidWord(u.strands + v.strands, u.letters + shifted)


def _positive_block_crossing(p: int, q: int, offset: int) -> tuple[int, ...]:
    """Row-by-row word carrying a p-block over the q-block to its right.

    ``offset`` strands sit below the two blocks.
    """
    return tuple(
        offset + p - r + c
        for r in range(p)
        for c in range(q)
    )


def cable(outer: BraidWord, inners: Sequence[BraidWord]) -> BraidWord:
    """Operad composition: thicken strand k of the outer braid into a block
    carrying inners[k-1], inserted at the bottom of the block."""
    n = outer.strands
    if len(inners) != n:
        raise ValueError(f"expected {n} inner braids, got {len(inners)}")
    sizes = [b.strands for b in inners]
    total = sum(sizes)
    letters: list[int] = []
    offset = 0
    for b in inners:
        letters.extend(k + offset if k > 0 else k - offset for k in b.letters)
        offset += b.strands
    # Track which block currently occupies each position while reading the
    # outer word bottom to top.
    current = list(range(n))
    for k in outer.letters:
        j = abs(k) - 1
        left, right = current[j], current[j + 1]
        p, q = sizes[left], sizes[right]
        offset = sum(sizes[b] for b in current[:j])
        if k > 0:
            letters.extend(_positive_block_crossing(p, q, offset))
        else:
            word = _positive_block_crossing(q, p, offset)
            letters.extend(-x for x in reversed(word))
        current[j], current[j + 1] = right, left
    return BraidWord(total, tuple(letters))


def cable_permutation(outer_image: Permutation, sizes: Sequence[int],
                      inner_images: Iterable[Permutation]) -> Permutation:
    """Expected permutation image of a cable: the inner images act first on
    their blocks, then the fattened outer image moves the blocks."""
    return mul(block_sum(inner_images), block_permutation(outer_image, list(sizes)))
