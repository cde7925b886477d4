"""Signed Minkowski expressions, canonical unit atoms, and identity verification.

An identity  C = A1 + A2 - B1 - B2  never forms set differences: it is checked
by moving every negative term to the left, i.e. C + B1 + B2 = A1 + A2, where
both sides are plain Minkowski sums of convex bodies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

from .geometry import (
    ORIGIN,
    Direction,
    GeometryError,
    LatticeBody,
    LatticePoint,
    convex_hull,
    minkowski_sum,
    point_body,
    support,
    twice_area,
)


class SignedAlgebraError(ValueError):
    """Raised for malformed signed expressions or non-atomic bodies."""


X_UNIT = LatticeBody((ORIGIN, LatticePoint(1, 0)))
Y_UNIT = LatticeBody((ORIGIN, LatticePoint(0, 1)))


@dataclass(frozen=True)
class UnitTriangle:
    """A lattice triangle of doubled area 1, translated against both axes.

    Its vertices are nonnegative, touch both coordinate axes, and follow the
    canonical CCW-from-lexicographic-minimum order, so each translation class
    of minimal triangles has exactly one representative.
    """

    vertices: tuple[LatticePoint, LatticePoint, LatticePoint]

    def __post_init__(self):
        body = LatticeBody(self.vertices)  # validates canonical convex order
        if twice_area(body) != 1:
            raise SignedAlgebraError("not a minimal triangle")
        if min(v.x for v in self.vertices) != 0 or min(v.y for v in self.vertices) != 0:
            raise SignedAlgebraError("unit triangle must touch both axes")

    @classmethod
    def from_body(cls, body: LatticeBody) -> "UnitTriangle":
        if body.kind != "polygon" or len(body.vertices) != 3:
            raise SignedAlgebraError("not a triangle")
        return cls(body.vertices)

    @property
    def body(self) -> LatticeBody:
        return LatticeBody(self.vertices)

    @property
    def sort_key(self) -> tuple:
        return tuple(sorted(v.as_pair() for v in self.vertices))

    def __repr__(self) -> str:
        return f"T{list(self.vertices)!r}"


CanonicalAtom = Union[LatticeBody, UnitTriangle]


def atom_body(atom: CanonicalAtom) -> LatticeBody:
    return atom.body if isinstance(atom, UnitTriangle) else atom


@dataclass(frozen=True)
class SignedExpression:
    """An ordered list of (sign, body) terms; order is presentation only."""

    terms: tuple[tuple[int, LatticeBody], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((s, b) for s, b in self.terms))
        if any(s not in (1, -1) for s, _ in self.terms):
            raise SignedAlgebraError("signs must be +1 or -1")

    @classmethod
    def of(cls, *terms: tuple[int, LatticeBody]) -> "SignedExpression":
        return cls(tuple(terms))

    def __iter__(self) -> Iterator[tuple[int, LatticeBody]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def positives(self) -> list[LatticeBody]:
        return [b for s, b in self.terms if s == 1]

    def negatives(self) -> list[LatticeBody]:
        return [b for s, b in self.terms if s == -1]


def normalize_term(body: LatticeBody) -> tuple[CanonicalAtom, LatticePoint]:
    """Split a unit axis segment or minimal triangle into (canonical atom, shift)."""
    shift = LatticePoint(min(v.x for v in body.vertices), min(v.y for v in body.vertices))
    moved = body.translate(-shift)
    if moved == X_UNIT or moved == Y_UNIT:
        return moved, shift
    if moved.kind == "polygon" and twice_area(moved) == 1:
        return UnitTriangle.from_body(moved), shift
    raise SignedAlgebraError("not an atomic body")


@dataclass(frozen=True)
class NormalForm:
    """Translation + integer multiples of the unit segments and unit triangles.

    Denotes  t + kx*X_UNIT + ky*Y_UNIT + sum(k_T * T)  in the signed Minkowski
    sense; zero coefficients are never stored.
    """

    t: LatticePoint = ORIGIN
    kx: int = 0
    ky: int = 0
    tri: Mapping[UnitTriangle, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "tri", {u: k for u, k in self.tri.items() if k != 0})

    @classmethod
    def from_atom(cls, atom: CanonicalAtom, shift: LatticePoint = ORIGIN) -> "NormalForm":
        if isinstance(atom, UnitTriangle):
            return cls(t=shift, tri={atom: 1})
        if atom == X_UNIT:
            return cls(t=shift, kx=1)
        if atom == Y_UNIT:
            return cls(t=shift, ky=1)
        raise SignedAlgebraError("not an atomic body")

    @classmethod
    def from_body_atom(cls, body: LatticeBody) -> "NormalForm":
        """Normal form of a single unit segment or minimal triangle."""
        return cls.from_atom(*normalize_term(body))

    def is_zero(self) -> bool:
        return self.t == ORIGIN and self.kx == 0 and self.ky == 0 and not self.tri

    def __add__(self, other: "NormalForm") -> "NormalForm":
        tri = dict(self.tri)
        for u, k in other.tri.items():
            tri[u] = tri.get(u, 0) + k
        return NormalForm(self.t + other.t, self.kx + other.kx, self.ky + other.ky, tri)

    def __neg__(self) -> "NormalForm":
        return self.scale(-1)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + (-other)

    def scale(self, k: int) -> "NormalForm":
        return NormalForm(self.t * k, self.kx * k, self.ky * k, {u: c * k for u, c in self.tri.items()})

    def atoms(self) -> list[tuple[CanonicalAtom, int]]:
        """Coefficiented atoms in canonical order: X_UNIT, Y_UNIT, then triangles."""
        out: list[tuple[CanonicalAtom, int]] = []
        if self.kx:
            out.append((X_UNIT, self.kx))
        if self.ky:
            out.append((Y_UNIT, self.ky))
        out.extend(sorted(self.tri.items(), key=lambda item: item[0].sort_key))
        return out

    def max_coefficient(self) -> int:
        return max((abs(k) for _, k in self.atoms()), default=0)

    def to_dict(self) -> dict:
        return {
            "t": [self.t.x, self.t.y],
            "kx": self.kx,
            "ky": self.ky,
            "triangles": [
                {"v": [[v.x, v.y] for v in u.vertices], "k": k}
                for u, k in sorted(self.tri.items(), key=lambda item: item[0].sort_key)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NormalForm":
        tri = {}
        for entry in data.get("triangles", []):
            u = UnitTriangle.from_body(convex_hull(entry["v"]))
            tri[u] = tri.get(u, 0) + int(entry["k"])
        tx, ty = data.get("t", [0, 0])
        return cls(LatticePoint(tx, ty), int(data.get("kx", 0)), int(data.get("ky", 0)), tri)


def expand(nf: NormalForm) -> SignedExpression:
    """Signed expression of a normal form; k copies of an atom become one k-fold dilation."""
    terms: list[tuple[int, LatticeBody]] = []
    if nf.t != ORIGIN:
        terms.append((1, point_body(nf.t)))
    for atom, k in nf.atoms():
        sign = 1 if k > 0 else -1
        terms.append((sign, atom_body(atom).dilate(abs(k))))
    return SignedExpression(tuple(terms))


def verify_identity(target: LatticeBody, rhs: SignedExpression | NormalForm) -> bool:
    """Exact oracle: target + (negative side) and (positive side) must be equal hulls."""
    if isinstance(rhs, NormalForm):
        rhs = expand(rhs)
    left = target
    for b in rhs.negatives():
        left = minkowski_sum(left, b)
    right: LatticeBody | None = None
    for b in rhs.positives():
        right = b if right is None else minkowski_sum(right, b)
    if right is None:
        right = point_body(ORIGIN)
    return left == right


def support_check(
    target: LatticeBody, rhs: SignedExpression | NormalForm, dirs: Iterable[Direction]
) -> bool:
    """Signed support-function balance: necessary (not sufficient) for an identity."""
    if isinstance(rhs, NormalForm):
        rhs = expand(rhs)
    dirs = list(dirs)
    if not dirs:
        raise GeometryError("need at least one direction")
    for d in dirs:
        lhs = support(target, d) + sum(support(b, d) for b in rhs.negatives())
        pos = sum(support(b, d) for b in rhs.positives())
        if lhs != pos:
            return False
    return True
