"""Exact points of the rational projective line and the cross-ratio.

Everything is computed in exact rational arithmetic with an explicit point
at infinity; no floating point is involved anywhere.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


@dataclasses.dataclass(frozen=True)
class ProjectivePoint:
    """A rational number or the point at infinity (value None)."""

    value: Fraction | None

    @staticmethod
    def of(x: Rational | ProjectivePoint | None) -> ProjectivePoint:
        if isinstance(x, ProjectivePoint):
            return x
        if x is None:
            return INFINITY
        return ProjectivePoint(Fraction(x))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __repr__(self):
        return "ProjectivePoint(oo)" if self.is_infinite else f"ProjectivePoint({self.value})"


INFINITY = ProjectivePoint(None)


def cross_ratio(z1, z2, z3, z4) -> ProjectivePoint:
    """((z1-z3)(z2-z4)) / ((z1-z4)(z2-z3)), with infinity by cancellation.

    The four points must be pairwise distinct; the result then never lands
    on 0, 1 or infinity.  The normalization is chosen so that
    cross_ratio(oo, 0, 1, t) = t.
    """
    pts = [ProjectivePoint.of(z) for z in (z1, z2, z3, z4)]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                raise ValueError("cross-ratio requires pairwise distinct points")
    p1, p2, p3, p4 = pts

    def diff(a: ProjectivePoint, b: ProjectivePoint) -> Fraction | None:
        """None stands for an infinite factor (cancelled below)."""
        if a.is_infinite or b.is_infinite:
            return None
        return a.value - b.value

    num = [diff(p1, p3), diff(p2, p4)]
    den = [diff(p1, p4), diff(p2, p3)]
    # at most one input is infinite, and it appears in exactly one factor
    # above and one below: cancel the pair
    num = [f for f in num if f is not None]
    den = [f for f in den if f is not None]
    assert len(num) == len(den)
    num_val = Fraction(1)
    for f in num:
        num_val *= f
    den_val = Fraction(1)
    for f in den:
        den_val *= f
    return ProjectivePoint(num_val / den_val)


@dataclasses.dataclass(frozen=True)
class FractionalLinearMap:
    """z -> (a z + b) / (c z + d) with rational coefficients, ad - bc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("determinant must be nonzero")

    @staticmethod
    def of(a, b, c, d) -> FractionalLinearMap:
        return FractionalLinearMap(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    def __call__(self, z: ProjectivePoint | Rational | None) -> ProjectivePoint:
        p = ProjectivePoint.of(z)
        if p.is_infinite:
            if self.c == 0:
                return INFINITY
            return ProjectivePoint(self.a / self.c)
        denom = self.c * p.value + self.d
        if denom == 0:
            return INFINITY
        return ProjectivePoint((self.a * p.value + self.b) / denom)

    def fixes(self, *points) -> bool:
        return all(self(p) == ProjectivePoint.of(p) for p in points)

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d
