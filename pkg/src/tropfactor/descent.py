"""Recursive descent decomposing lattice segments into unit segments and triangles.

A prime vector p (gcd of coordinates 1, not a unit vector) always has a mate q
with cross(p, q) = 1 such that both q and r = p - q are strictly shorter than
p.  Splitting the segment o-p against the two minimal triangles o-p-q and
o-p-r and recursing on q and r therefore terminates, emitting a normal form
over the four unit atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .geometry import GeometryError, LatticePoint, ORIGIN, convex_hull, minkowski_sum, segment, LatticeBody
from .signed import NormalForm

_UNITS = {
    (1, 0): NormalForm(kx=1),
    (0, 1): NormalForm(ky=1),
    (-1, 0): NormalForm(t=LatticePoint(-1, 0), kx=1),
    (0, -1): NormalForm(t=LatticePoint(0, -1), ky=1),
}


class DescentError(GeometryError):
    """Raised for vectors outside the descent domain."""


@dataclass(frozen=True)
class DescentStep:
    """One split p = q + r with both flanking triangles minimal."""

    p: LatticePoint
    q: LatticePoint
    r: LatticePoint


def _require_prime(p: LatticePoint) -> None:
    if p == ORIGIN or gcd(abs(p.x), abs(p.y)) != 1:
        raise DescentError(f"not a prime vector: {p}")


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_u, u = u, old_u - k * u
        old_v, v = v, old_v - k * v
    return old_r, old_u, old_v


def find_mate(p: LatticePoint) -> DescentStep:
    """Deterministic mate for a non-unit prime vector.

    Solves cross(p, q) = 1 by extended Euclid, then shifts q by multiples of p
    until the inner product q.p lands in [1, |p|^2 - 1]; that window cannot be
    empty and forces |q| < |p| and |p - q| < |p|.
    """
    _require_prime(p)
    if p.as_pair() in _UNITS:
        raise DescentError(f"base case: unit vector {p} has no mate")
    g, u, v = _egcd(p.x, -p.y)
    if g < 0:
        u, v = -u, -v
    q = LatticePoint(v, u)  # p.x * u - p.y * v = 1, i.e. cross(p, q) = 1
    n2 = p.norm2()
    k = -((q.dot(p) - 1) // n2)
    q = q + p * k
    s = q.dot(p)
    if not 1 <= s <= n2 - 1:
        raise AssertionError(f"mate window failed for {p}: inner product {s}")
    r = p - q
    assert p.cross(q) == 1 and q.norm2() < n2 and r.norm2() < n2
    return DescentStep(p, q, r)


_memo: dict[LatticePoint, NormalForm] = {}
_depth_memo: dict[LatticePoint, int] = {}


def _descent_graph(p: LatticePoint, resolved) -> dict[LatticePoint, DescentStep]:
    """Mates for every unresolved vector reachable from p, without recursion.

    Descent chains can be long (the depth is the subtraction-style continued
    fraction of the slope, linear in the smaller coordinate at worst), so the
    call stack is never used.
    """
    pending: dict[LatticePoint, DescentStep] = {}
    stack = [p]
    while stack:
        v = stack.pop()
        if v.as_pair() in _UNITS or v in resolved or v in pending:
            continue
        step = find_mate(v)
        pending[v] = step
        stack.append(step.q)
        stack.append(step.r)
    return pending


def decompose_prime(p: LatticePoint, memo: dict | None = None) -> NormalForm:
    """Normal form of the segment from the origin to a prime vector p.

    Results are memoised on p (the shared table is only ever extended with
    immutable values); pass a private dict to bypass the shared cache.
    """
    _require_prime(p)
    memo = _memo if memo is None else memo
    base = _UNITS.get(p.as_pair())
    if base is not None:
        return base
    pending = _descent_graph(p, memo)

    def lookup(v: LatticePoint) -> NormalForm:
        return _UNITS.get(v.as_pair()) or memo[v]

    # Both children of a step are strictly shorter, so resolving by norm works.
    for v in sorted(pending, key=LatticePoint.norm2):
        step = pending[v]
        memo[v] = (
            NormalForm.from_body_atom(convex_hull([ORIGIN, v, step.q]))
            + NormalForm.from_body_atom(convex_hull([ORIGIN, v, step.r]))
            - lookup(step.q)
            - lookup(step.r)
        )
    return memo[p]


def descent_depth(p: LatticePoint) -> int:
    """Depth of the descent recursion below p (unit vectors have depth 0)."""
    _require_prime(p)
    if p.as_pair() in _UNITS:
        return 0
    pending = _descent_graph(p, _depth_memo)

    def lookup(v: LatticePoint) -> int:
        return 0 if v.as_pair() in _UNITS else _depth_memo[v]

    for v in sorted(pending, key=LatticePoint.norm2):
        step = pending[v]
        _depth_memo[v] = 1 + max(lookup(step.q), lookup(step.r))
    return _depth_memo[p]


def decompose_segment(p1: LatticePoint, p2: LatticePoint, memo: dict | None = None) -> NormalForm:
    """Normal form of an arbitrary lattice segment.

    The segment is the g-fold dilation of its primitive direction translated
    to p1, where g is the gcd of the coordinate differences.
    """
    if p1 == p2:
        raise GeometryError("degenerate segment")
    d = p2 - p1
    g = gcd(abs(d.x), abs(d.y))
    u = LatticePoint(d.x // g, d.y // g)
    return NormalForm(t=p1) + decompose_prime(u, memo).scale(g)


def edges_to_hexagon(p: LatticePoint, q: LatticePoint) -> LatticeBody:
    """Minkowski sum of the three segments o-p, o-q, o-(p-q).

    Equals hull{o, q, p+q, 2p, p+r, r} with r = p - q, which is the geometric
    identity behind each descent step.
    """
    r = p - q
    if ORIGIN in (p, q, r):
        raise GeometryError("degenerate vectors")
    return minkowski_sum(segment(ORIGIN, p), segment(ORIGIN, q), segment(ORIGIN, r))
