"""Cutting relations, polygon partitions, and unimodular triangulation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import (
    GeometryError,
    LatticeBody,
    LatticePoint,
    convex_hull,
    lattice_points,
    on_segment,
    orientation,
    point_body,
    segment,
    twice_area,
)
from .signed import SignedExpression

Seg = tuple[LatticePoint, LatticePoint]


class PartitionError(ValueError):
    """A partition condition is violated; `condition` is the failing index."""

    def __init__(self, condition: int, message: str):
        super().__init__(f"partition condition {condition} violated: {message}")
        self.condition = condition


def seg_key(p: LatticePoint, q: LatticePoint) -> Seg:
    return (p, q) if p < q else (q, p)


def boundary_chain(points: Iterable[LatticePoint]) -> list[LatticePoint]:
    """Points of the set on the boundary of its hull, CCW from the hull's first vertex."""
    pts = list(set(points))
    hull = convex_hull(pts)
    if hull.kind != "polygon":
        return sorted(p for p in pts if hull.contains(p))
    chain: list[LatticePoint] = []
    for a, b in hull.edges():
        on = [p for p in pts if on_segment(a, b, p)]
        on.sort(key=lambda p: (p - a).dot(b - a))
        chain.extend(on[:-1])  # the edge end reappears as the next edge's start
    return chain


def boundary_segments(points: Iterable[LatticePoint]) -> list[Seg]:
    """Segments between consecutive boundary points of the set, as canonical keys."""
    chain = boundary_chain(points)
    n = len(chain)
    return [seg_key(chain[i], chain[(i + 1) % n]) for i in range(n)]


def classify_points(poly: LatticeBody) -> tuple[list[LatticePoint], list[LatticePoint]]:
    """Split the body's lattice points into (boundary CCW, interior lex-sorted)."""
    pts = lattice_points(poly)
    if poly.kind != "polygon":
        return pts, []
    chain = boundary_chain(pts)
    interior = sorted(set(pts) - set(chain))
    return chain, interior


@dataclass(frozen=True)
class Partition:
    """A subdivision of conv(points) into cells over subsets of the point set."""

    points: tuple[LatticePoint, ...]
    cells: tuple[tuple[LatticePoint, ...], ...]
    boundary: tuple[LatticePoint, ...]
    interior: tuple[LatticePoint, ...]
    boundary_segs: tuple[Seg, ...]
    dividing_segs: tuple[Seg, ...]

    @property
    def hull(self) -> LatticeBody:
        return convex_hull(self.points)

    @classmethod
    def build(
        cls,
        points: Iterable[LatticePoint],
        cells: Iterable[Iterable[LatticePoint]],
        check_faces: bool = True,
    ) -> "Partition":
        """Validate the partition conditions and derive the boundary/dividing data.

        `check_faces` controls the quadratic pairwise face check; constructions
        that guarantee it (the triangulator) skip it.
        """
        pts = tuple(sorted(set(points)))
        cell_tuples = tuple(tuple(sorted(set(c))) for c in cells)
        pset = set(pts)
        for c in cell_tuples:
            if not set(c) <= pset:
                raise PartitionError(0, "cell is not a subset of the point set")
        hull = convex_hull(pts)
        if hull.kind != "polygon":
            raise PartitionError(0, "point set must span a polygon")

        cell_hulls = [convex_hull(c) for c in cell_tuples]
        for h in cell_hulls:
            if h.kind != "polygon":
                raise PartitionError(2, "every cell needs at least 3 hull vertices")

        cell_chains = [boundary_chain(c) for c in cell_tuples]
        covered = set().union(*(set(ch) for ch in cell_chains)) if cell_chains else set()
        missing = pset - covered
        if missing:
            raise PartitionError(1, f"point {min(missing)} is on no cell boundary")

        if check_faces:
            cell_esegs = [set(_chain_segs(ch)) for ch in cell_chains]
            for i in range(len(cell_hulls)):
                for j in range(i + 1, len(cell_hulls)):
                    _check_face(
                        cell_hulls[i], cell_hulls[j],
                        cell_esegs[i], cell_esegs[j],
                        set(cell_chains[i]), set(cell_chains[j]),
                    )

        if sum(twice_area(h) for h in cell_hulls) != twice_area(hull):
            raise PartitionError(3, "cells do not cover the hull exactly")

        chain = boundary_chain(pts)
        esegs = _chain_segs(chain)
        all_cell_segs: set[Seg] = set()
        for ch in cell_chains:
            all_cell_segs.update(_chain_segs(ch))
        dividing = tuple(sorted(all_cell_segs - set(esegs)))
        return cls(
            points=pts,
            cells=cell_tuples,
            boundary=tuple(chain),
            interior=tuple(sorted(pset - set(chain))),
            boundary_segs=tuple(esegs),
            dividing_segs=dividing,
        )


def _chain_segs(chain: Sequence[LatticePoint]) -> list[Seg]:
    n = len(chain)
    return [seg_key(chain[i], chain[(i + 1) % n]) for i in range(n)]


def _check_face(h1, h2, esegs1, esegs2, bpts1, bpts2) -> None:
    shape = _convex_intersection(h1, h2)
    if shape is None:
        return
    kind, data = shape
    if kind == "polygon":
        if h1 == h2:
            return
        raise PartitionError(4, "cells overlap in a two-dimensional region")
    if kind == "segment":
        if data in esegs1 and data in esegs2:
            return
        raise PartitionError(4, f"shared segment {data} is not a boundary segment of both cells")
    if data in bpts1 and data in bpts2:
        return
    raise PartitionError(4, f"shared point {data} is not a boundary point of both cells")


def _convex_intersection(h1: LatticeBody, h2: LatticeBody):
    """Exact intersection of two convex polygons via rational half-plane clipping.

    Returns None, ("point", p), ("segment", (p, q)), or ("polygon", None);
    point/segment data are lattice values when integral, else a condition-4
    violation is raised by the caller through non-membership.
    """
    poly = [(Fraction(v.x), Fraction(v.y)) for v in h1.vertices]
    for a, b in h2.edges():
        poly = _clip_halfplane(poly, a, b)
        if not poly:
            return None
    uniq: list[tuple[Fraction, Fraction]] = []
    for p in poly:
        if p not in uniq:
            uniq.append(p)
    if len(uniq) == 1:
        return "point", _as_lattice(uniq[0])
    if _all_collinear(uniq):
        lo, hi = min(uniq), max(uniq)
        return "segment", (_as_lattice(lo), _as_lattice(hi))
    return "polygon", None


def _clip_halfplane(poly, a: LatticePoint, b: LatticePoint):
    """Keep the part of poly on the left of the directed line a -> b."""
    dx, dy = b.x - a.x, b.y - a.y

    def side(p):
        return dx * (p[1] - a.y) - dy * (p[0] - a.x)

    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        sp, sq = side(p), side(q)
        if sp >= 0:
            out.append(p)
        if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
            t = Fraction(sp, sp - sq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _all_collinear(pts) -> bool:
    if len(pts) <= 2:
        return True
    (x0, y0), (x1, y1) = pts[0], pts[1]
    return all((x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) == 0 for x, y in pts[2:])


def _as_lattice(p):
    x, y = p
    if x.denominator != 1 or y.denominator != 1:
        raise PartitionError(4, "cells meet at a non-lattice face")
    return LatticePoint(int(x), int(y))


def cut_segment(p1: LatticePoint, p2: LatticePoint, p3: LatticePoint) -> SignedExpression:
    """Split a segment at an interior point: p1p2 = p1p3 + p3p2 - p3."""
    if p1 == p2:
        raise GeometryError("degenerate segment")
    if (p2 - p1).cross(p3 - p1) != 0:
        raise GeometryError("cut point is not on the segment")
    s = (p3 - p1).dot(p2 - p1)
    if not 0 < s < (p2 - p1).norm2():
        raise GeometryError("cut point is not interior to the segment")
    return SignedExpression.of(
        (1, segment(p1, p3)), (1, segment(p3, p2)), (-1, point_body(p3))
    )


def cut_polygon(poly: LatticeBody, l1: LatticePoint, l2: LatticePoint) -> SignedExpression:
    """Cut a polygon along a lattice chord: poly = P1 + P2 - chord."""
    if poly.kind != "polygon":
        raise GeometryError("cut requires a polygon")
    if l1 == l2:
        raise GeometryError("degenerate chord")
    if not (poly.boundary_contains(l1) and poly.boundary_contains(l2)):
        raise GeometryError("chord endpoints must lie on the polygon boundary")
    sides = [orientation(l1, l2, v) for v in poly.vertices]
    if not (any(s > 0 for s in sides) and any(s < 0 for s in sides)):
        raise GeometryError("not a separating chord")
    left = [v for v, s in zip(poly.vertices, sides) if s >= 0] + [l1, l2]
    right = [v for v, s in zip(poly.vertices, sides) if s <= 0] + [l1, l2]
    return SignedExpression.of(
        (1, convex_hull(left)), (1, convex_hull(right)), (-1, segment(l1, l2))
    )


def star_subdivide_triangle(tri: LatticeBody, p4: LatticePoint) -> SignedExpression:
    """Star a triangle from a strictly interior point."""
    if tri.kind != "polygon" or len(tri.vertices) != 3:
        raise GeometryError("star subdivision requires a triangle")
    if any(orientation(a, b, p4) <= 0 for a, b in tri.edges()):
        where = "on boundary" if tri.boundary_contains(p4) else "outside the triangle"
        raise GeometryError(f"subdivision point is {where}, not strictly interior")
    p1, p2, p3 = tri.vertices
    return SignedExpression.of(
        (1, convex_hull([p1, p2, p4])),
        (1, convex_hull([p2, p3, p4])),
        (1, convex_hull([p1, p3, p4])),
        (-1, segment(p1, p4)),
        (-1, segment(p2, p4)),
        (-1, segment(p3, p4)),
        (1, point_body(p4)),
    )


def unimodular_triangulation(poly: LatticeBody) -> Partition:
    """Deterministic triangulation of a lattice polygon into minimal triangles.

    Lattice points are inserted in lexicographic order; each new point fans
    triangles to the strictly visible stretch of the current boundary chain.
    The chain keeps every boundary lattice point (not just hull vertices), so
    no emitted triangle contains a lattice point beyond its own vertices and
    every cell has doubled area 1.
    """
    if poly.kind != "polygon":
        raise GeometryError("triangulation requires a polygon")
    pts = lattice_points(poly)
    cells: list[tuple[LatticePoint, ...]] = []

    # Seed: the maximal collinear prefix plus the first point off its line.
    line = [pts[0], pts[1]]
    i = 2
    while i < len(pts) and orientation(line[0], line[1], pts[i]) == 0:
        line.append(pts[i])
        i += 1
    p = pts[i]
    for a, b in zip(line, line[1:]):
        cells.append((a, b, p))
    ring = line + [p] if orientation(line[0], line[-1], p) > 0 else line[::-1] + [p]
    i += 1

    while i < len(pts):
        p = pts[i]
        n = len(ring)
        visible = [orientation(ring[k], ring[(k + 1) % n], p) < 0 for k in range(n)]
        start = next(k for k in range(n) if visible[k] and not visible[k - 1])
        run = 0
        while visible[(start + run) % n]:
            run += 1
        for k in range(run):
            a, b = ring[(start + k) % n], ring[(start + k + 1) % n]
            cells.append((a, b, p))
        ring = [ring[(start + run + j) % n] for j in range(n - run + 1)] + [p]
        i += 1

    return Partition.build(pts, cells, check_faces=False)


def partition_relation(part: Partition) -> SignedExpression:
    """The signed identity induced by a partition:
    conv(P) = sum of cells - sum of dividing segments + sum of interior points."""
    terms: list[tuple[int, LatticeBody]] = []
    terms.extend((1, convex_hull(c)) for c in part.cells)
    terms.extend((-1, segment(a, b)) for a, b in part.dividing_segs)
    terms.extend((1, point_body(p)) for p in part.interior)
    return SignedExpression(tuple(terms))


def partition_to_dict(part: Partition) -> dict:
    index = {p: i for i, p in enumerate(part.points)}
    return {
        "points": [[p.x, p.y] for p in part.points],
        "cells": [[index[p] for p in c] for c in part.cells],
        "dividing": [[index[a], index[b]] for a, b in part.dividing_segs],
        "interior": [index[p] for p in part.interior],
    }


def partition_from_dict(data: dict, check_faces: bool = True) -> Partition:
    pts = [LatticePoint(x, y) for x, y in data["points"]]
    cells = [[pts[i] for i in c] for c in data["cells"]]
    return Partition.build(pts, cells, check_faces=check_faces)
