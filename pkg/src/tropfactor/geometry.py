"""Exact integer lattice geometry: points, convex bodies, Minkowski arithmetic.

All coordinates are Python ints, so every operation is bit-exact; there is no
floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from operator import index as _as_int
from typing import Iterable, Optional


class GeometryError(ValueError):
    """Raised for invalid geometric inputs."""


@dataclass(frozen=True, order=True)
class LatticePoint:
    """A point of Z^2, doubling as an integer displacement vector."""

    x: int
    y: int

    def __post_init__(self):
        # operator.index rejects floats and keeps arithmetic exact.
        object.__setattr__(self, "x", _as_int(self.x))
        object.__setattr__(self, "y", _as_int(self.y))

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(-self.x, -self.y)

    def __mul__(self, k: int) -> "LatticePoint":
        k = _as_int(k)
        return LatticePoint(self.x * k, self.y * k)

    __rmul__ = __mul__

    def dot(self, other: "LatticePoint") -> int:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "LatticePoint") -> int:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> int:
        return self.x * self.x + self.y * self.y

    def as_pair(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __repr__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = LatticePoint(0, 0)


def pt(x: int, y: int) -> LatticePoint:
    """Shorthand constructor."""
    return LatticePoint(x, y)


@dataclass(frozen=True)
class Direction:
    """Primitive integer direction used to probe support functions."""

    dx: int
    dy: int

    def __post_init__(self):
        dx, dy = _as_int(self.dx), _as_int(self.dy)
        if dx == 0 and dy == 0:
            raise GeometryError("zero direction")
        g = gcd(abs(dx), abs(dy))
        object.__setattr__(self, "dx", dx // g)
        object.__setattr__(self, "dy", dy // g)

    def __repr__(self) -> str:
        return f"dir({self.dx}, {self.dy})"


def orientation(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> int:
    """Sign of the cross product (b - a) x (c - a): +1 CCW, 0 collinear, -1 CW."""
    v = (b - a).cross(c - a)
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class LatticeBody:
    """A canonical integral convex body: point, segment, or polygon.

    The vertex tuple is the strict convex hull in CCW order, starting at the
    lexicographically smallest vertex, so structural equality of bodies is
    tuple equality.  Construct via :func:`convex_hull` unless the vertices are
    already canonical.
    """

    vertices: tuple[LatticePoint, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise GeometryError("empty point set")
        if any(not isinstance(v, LatticePoint) for v in vs):
            raise GeometryError("vertices must be lattice points")
        if len(set(vs)) != len(vs):
            raise GeometryError("duplicate vertices")
        if vs[0] != min(vs):
            raise GeometryError("vertex ring must start at the lexicographic minimum")
        if len(vs) == 2 and vs[0] > vs[1]:
            raise GeometryError("segment endpoints out of order")
        if len(vs) >= 3:
            n = len(vs)
            for i in range(n):
                if orientation(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0:
                    raise GeometryError("vertices must be strictly convex in CCW order")

    @property
    def kind(self) -> str:
        n = len(self.vertices)
        return "point" if n == 1 else "segment" if n == 2 else "polygon"

    def translate(self, v: LatticePoint) -> "LatticeBody":
        # Translation preserves lexicographic order and turning direction.
        return LatticeBody(tuple(p + v for p in self.vertices))

    def dilate(self, k: int) -> "LatticeBody":
        """k-fold Minkowski sum of a convex body with itself, k >= 1."""
        k = _as_int(k)
        if k < 1:
            raise GeometryError("dilation factor must be >= 1")
        return LatticeBody(tuple(p * k for p in self.vertices))

    def edges(self) -> list[tuple[LatticePoint, LatticePoint]]:
        vs = self.vertices
        if len(vs) == 1:
            return []
        if len(vs) == 2:
            return [(vs[0], vs[1])]
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, p: LatticePoint) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return p == vs[0]
        if len(vs) == 2:
            return on_segment(vs[0], vs[1], p)
        return all(orientation(a, b, p) >= 0 for a, b in self.edges())

    def boundary_contains(self, p: LatticePoint) -> bool:
        vs = self.vertices
        if len(vs) <= 2:
            return self.contains(p)
        if not self.contains(p):
            return False
        return any(orientation(a, b, p) == 0 for a, b in self.edges())

    def __repr__(self) -> str:
        return f"{self.kind}{list(self.vertices)!r}"


def on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool:
    if (b - a).cross(p - a) != 0:
        return False
    s = (p - a).dot(b - a)
    return 0 <= s <= (b - a).norm2()


def _as_points(points: Iterable) -> list[LatticePoint]:
    out = []
    for p in points:
        if isinstance(p, LatticePoint):
            out.append(p)
        else:
            x, y = p
            out.append(LatticePoint(x, y))
    return out


def convex_hull(points: Iterable) -> LatticeBody:
    """Canonical convex hull of a finite point set (monotone chain, exact)."""
    pts = sorted(set(_as_points(points)))
    if not pts:
        raise GeometryError("empty point set")
    if len(pts) == 1:
        return LatticeBody((pts[0],))

    def chain(seq):
        out: list[LatticePoint] = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return LatticeBody(tuple(lower[:-1] + upper[:-1]))


def segment(a, b) -> LatticeBody:
    """The segment between two distinct lattice points."""
    (a,), (b,) = _as_points([a]), _as_points([b])
    if a == b:
        raise GeometryError("degenerate segment")
    return convex_hull([a, b])


def point_body(p) -> LatticeBody:
    (p,) = _as_points([p])
    return LatticeBody((p,))


def minkowski_sum(a: LatticeBody, b: LatticeBody, *rest: LatticeBody) -> LatticeBody:
    """Exact Minkowski sum: hull of all pairwise vertex sums."""
    acc = convex_hull([va + vb for va in a.vertices for vb in b.vertices])
    for c in rest:
        acc = minkowski_sum(acc, c)
    return acc


def minkowski_diff(a: LatticeBody, b: LatticeBody) -> Optional[LatticeBody]:
    """The body C with C + b = a, or None when no such convex body exists.

    The candidate is the erosion of `a` by `b` (intersection of the translates
    a - v over vertices v of b), realised exactly through its lattice points;
    the candidate is then verified, since erosion alone is only an upper bound.
    """
    ax0, ay0, ax1, ay1 = a.bbox()
    xmin = max(ax0 - v.x for v in b.vertices)
    ymin = max(ay0 - v.y for v in b.vertices)
    xmax = min(ax1 - v.x for v in b.vertices)
    ymax = min(ay1 - v.y for v in b.vertices)
    candidates = [
        LatticePoint(x, y)
        for x in range(xmin, xmax + 1)
        for y in range(ymin, ymax + 1)
        if all(a.contains(LatticePoint(x, y) + v) for v in b.vertices)
    ]
    if not candidates:
        return None
    c = convex_hull(candidates)
    return c if minkowski_sum(c, b) == a else None


def support(a: LatticeBody, d: Direction) -> int:
    """Maximum inner product of the body with the direction; additive under Minkowski sums."""
    return max(d.dx * v.x + d.dy * v.y for v in a.vertices)


def twice_area(a: LatticeBody) -> int:
    """Doubled shoelace area; 0 for points and segments, >= 1 for polygons."""
    vs = a.vertices
    if len(vs) < 3:
        return 0
    return sum(vs[i].cross(vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def lattice_points(a: LatticeBody) -> list[LatticePoint]:
    """All integer points of the body (boundary and interior), in lexicographic order."""
    vs = a.vertices
    if len(vs) == 1:
        return [vs[0]]
    if len(vs) == 2:
        d = vs[1] - vs[0]
        g = gcd(abs(d.x), abs(d.y))
        step = LatticePoint(d.x // g, d.y // g)
        return sorted(vs[0] + step * i for i in range(g + 1))
    x0, y0, x1, y1 = a.bbox()
    return [
        LatticePoint(x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if a.contains(LatticePoint(x, y))
    ]


def is_prime_segment(p: LatticePoint, q: LatticePoint) -> bool:
    """True iff the segment p-q contains no lattice points besides its endpoints."""
    if p == q:
        raise GeometryError("degenerate segment")
    d = q - p
    return gcd(abs(d.x), abs(d.y)) == 1


def body_to_dict(a: LatticeBody) -> dict:
    return {"vertices": [[v.x, v.y] for v in a.vertices]}


def body_from_dict(data: dict) -> LatticeBody:
    """Load a body from {"vertices": [...]} (must be convex) or {"points": [...]} (raw set)."""
    if "points" in data:
        return convex_hull(data["points"])
    if "vertices" in data:
        given = _as_points(data["vertices"])
        if not given:
            raise GeometryError("empty point set")
        hull = convex_hull(given)
        if set(hull.vertices) != set(given):
            raise GeometryError("vertex list is not convex; use a 'points' field for raw sets")
        return hull
    raise GeometryError("body JSON needs a 'vertices' or 'points' field")
