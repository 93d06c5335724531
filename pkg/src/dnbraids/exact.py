"""Exact arithmetic in the ordered ring Q[eps] with eps a positive infinitesimal.

A value is a polynomial in eps with rational coefficients; it is positive when
its lowest-degree nonzero coefficient is.  This lets geometric constructions
use "arbitrarily small" offsets without choosing a numeric size.

>>> e = Eps.eps()
>>> 0 < e * e < e < Fraction(1, 10**9)
True
>>> (1 - e).sign()
1
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


class Eps:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def eps(cls, power: int = 1, scale: Scalar = 1) -> Eps:
        return cls([0] * power + [scale])

    @staticmethod
    def lift(v: Union[Eps, Scalar]) -> Eps:
        return v if isinstance(v, Eps) else Eps([v])

    def __add__(self, other):
        o = Eps.lift(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return Eps([(a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Eps([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-Eps.lift(other))

    def __rsub__(self, other):
        return Eps.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Eps):
            return Eps([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Eps(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Eps:
        return Eps([c / Fraction(other) for c in self.coeffs])

    def sign(self) -> int:
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (Eps, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash(self.coeffs)

    def __float__(self):
        return self.evaluate(0.0)

    def evaluate(self, eps: float) -> float:
        return float(sum(float(c) * eps**i for i, c in enumerate(self.coeffs)))

    def __repr__(self):
        terms = [f"{c}*e^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "Eps(" + (" + ".join(terms) or "0") + ")"


ZERO = Eps()
Point = tuple  # (x: Eps, y: Eps)


def cross(o: Point, a: Point, b: Point) -> Eps:
    """z-component of (a - o) x (b - o); positive when o, a, b turn counterclockwise."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(o: Point, a: Point, b: Point) -> int:
    return cross(o, a, b).sign()


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """p lies on the closed segment ab (assuming collinearity is checked separately)."""
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share a point."""
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    if o1 != o2 and o3 != o4 and o1 * o2 <= 0 and o3 * o4 <= 0:
        if o1 and o2 and o3 and o4:
            return True
    if o1 == 0 and on_segment(c, a, b):
        return True
    if o2 == 0 and on_segment(d, a, b):
        return True
    if o3 == 0 and on_segment(a, c, d):
        return True
    if o4 == 0 and on_segment(b, c, d):
        return True
    return o1 * o2 < 0 and o3 * o4 < 0


def convex_hull(points: list[Point]) -> list[Point]:
    """Counterclockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(points), key=lambda p: (p[0], p[1]))
    pts = _dedupe(pts)
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _dedupe(pts: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in pts:
        if not out or not (out[-1][0] == p[0] and out[-1][1] == p[1]):
            out.append(p)
    return out


def point_in_convex(p: Point, hull: list[Point]) -> bool:
    """p lies in the closed convex polygon (hull may be a point or a segment)."""
    if len(hull) == 1:
        return hull[0][0] == p[0] and hull[0][1] == p[1]
    if len(hull) == 2:
        return orientation(hull[0], hull[1], p) == 0 and on_segment(p, hull[0], hull[1])
    return all(orientation(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull)))


def point_strictly_in_convex(p: Point, hull: list[Point]) -> bool:
    if len(hull) < 3:
        return False
    return all(orientation(hull[i], hull[(i + 1) % len(hull)], p) > 0 for i in range(len(hull)))


def _edges(hull: list[Point]) -> list[tuple[Point, Point]]:
    if len(hull) == 1:
        return [(hull[0], hull[0])]
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def convex_sets_intersect(a: list[Point], b: list[Point]) -> bool:
    """Closed convex hulls of the two vertex lists share a point."""
    ha, hb = convex_hull(a), convex_hull(b)
    for e in _edges(ha):
        for f in _edges(hb):
            if segments_intersect(e[0], e[1], f[0], f[1]):
                return True
    return point_in_convex(ha[0], hb) or point_in_convex(hb[0], ha)
