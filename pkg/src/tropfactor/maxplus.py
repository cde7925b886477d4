"""Max-plus functions with integer coefficients and their geometric factorization.

A function max(a_1 x + b_1 y, ..., a_m x + b_m y) is identified with its term
set {(a_i, b_i)}; pointwise max corresponds to set union, pointwise sum to the
Minkowski sum of term sets, and equivalence to equality of term-set hulls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping

from .geometry import LatticeBody, LatticePoint, convex_hull
from .pipeline import decompose
from .signed import NormalForm, UnitTriangle


class MaxPlusError(ValueError):
    """Raised for malformed max-plus values or unsupported operations."""


@dataclass(frozen=True)
class MaxPlusFunction:
    """A finite, nonempty set of integer coefficient pairs (a, b)."""

    terms: frozenset[tuple[int, int]]

    def __post_init__(self):
        terms = frozenset((int(a), int(b)) for a, b in self.terms)
        if not terms:
            raise MaxPlusError("a max-plus function needs at least one term")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, terms: Iterable[tuple[int, int]]) -> "MaxPlusFunction":
        return cls(frozenset(terms))

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def __repr__(self) -> str:
        return f"max<{sorted(self.terms)!r}>"


ZERO_FUNCTION = MaxPlusFunction.of([(0, 0)])


def evaluate(f: MaxPlusFunction, x: int, y: int) -> int:
    """Exact value max over terms of a*x + b*y at an integer probe."""
    return max(a * x + b * y for a, b in f.terms)


def newton_polygon(f: MaxPlusFunction) -> LatticeBody:
    return convex_hull(f.terms)


def simplify(f: MaxPlusFunction) -> MaxPlusFunction:
    """Drop terms interior to the term-set hull; pointwise equal to the input."""
    return MaxPlusFunction.of(v.as_pair() for v in newton_polygon(f).vertices)


def equivalent(f: MaxPlusFunction, g: MaxPlusFunction) -> bool:
    """Pointwise equality, decided exactly by comparing term-set hulls."""
    return newton_polygon(f) == newton_polygon(g)


def combine_max(f: MaxPlusFunction, g: MaxPlusFunction) -> MaxPlusFunction:
    """Pointwise maximum: the union of the term sets."""
    return MaxPlusFunction(f.terms | g.terms)


def combine_sum(f: MaxPlusFunction, g: MaxPlusFunction) -> MaxPlusFunction:
    """Pointwise sum: all pairwise sums of coefficient pairs."""
    return MaxPlusFunction.of(
        (a1 + a2, b1 + b2) for a1, b1 in f.terms for a2, b2 in g.terms
    )


class MaxPlusExpr:
    """Base class for expression trees over max, +, -, and positive scaling."""

    __slots__ = ()


@dataclass(frozen=True)
class Linear(MaxPlusExpr):
    a: int
    b: int


@dataclass(frozen=True)
class Max(MaxPlusExpr):
    args: tuple[MaxPlusExpr, ...]

    def __post_init__(self):
        if not self.args:
            raise MaxPlusError("max needs at least one argument")


@dataclass(frozen=True)
class Sum(MaxPlusExpr):
    args: tuple[MaxPlusExpr, ...]

    def __post_init__(self):
        if not self.args:
            raise MaxPlusError("sum needs at least one argument")


@dataclass(frozen=True)
class Negate(MaxPlusExpr):
    arg: MaxPlusExpr


@dataclass(frozen=True)
class Scale(MaxPlusExpr):
    k: int
    arg: MaxPlusExpr

    def __post_init__(self):
        if self.k <= 0:
            raise MaxPlusError("positive scaling only")


def eval_expr(e: MaxPlusExpr, x: int, y: int) -> int:
    """Exact recursive evaluation of an expression tree at an integer probe."""
    if isinstance(e, Linear):
        return e.a * x + e.b * y
    if isinstance(e, Max):
        return max(eval_expr(c, x, y) for c in e.args)
    if isinstance(e, Sum):
        return sum(eval_expr(c, x, y) for c in e.args)
    if isinstance(e, Negate):
        return -eval_expr(e.arg, x, y)
    if isinstance(e, Scale):
        return e.k * eval_expr(e.arg, x, y)
    raise TypeError(f"not a max-plus expression: {e!r}")


def flatten(e: MaxPlusExpr) -> tuple[MaxPlusFunction, MaxPlusFunction]:
    """Rewrite any expression tree as a difference (plus, minus) of two functions.

    Negation swaps the sides; a max over differences is lifted by adding every
    other child's minus side to each argument, the structural version of
    max(-M, c) = max(0, a+c, b+c) - M.
    """
    plus, minus = _flatten(e)
    return simplify(plus), simplify(minus)


def _flatten(e: MaxPlusExpr) -> tuple[MaxPlusFunction, MaxPlusFunction]:
    if isinstance(e, Linear):
        return MaxPlusFunction.of([(e.a, e.b)]), ZERO_FUNCTION
    if isinstance(e, Negate):
        p, m = _flatten(e.arg)
        return m, p
    if isinstance(e, Scale):
        p, m = _flatten(e.arg)
        dilate = lambda f: MaxPlusFunction.of((e.k * a, e.k * b) for a, b in f.terms)
        return dilate(p), dilate(m)
    if isinstance(e, Sum):
        parts = [_flatten(c) for c in e.args]
        plus = simplify(reduce(combine_sum, (p for p, _ in parts)))
        minus = simplify(reduce(combine_sum, (m for _, m in parts)))
        return plus, minus
    if isinstance(e, Max):
        parts = [_flatten(c) for c in e.args]
        minus = simplify(reduce(combine_sum, (m for _, m in parts)))
        lifted = []
        for i, (p, _) in enumerate(parts):
            others = [m for j, (_, m) in enumerate(parts) if j != i]
            lifted.append(reduce(combine_sum, others, p))
        return simplify(reduce(combine_max, lifted)), minus
    raise TypeError(f"not a max-plus expression: {e!r}")


@dataclass(frozen=True)
class MaxPlusFactorization:
    """The functional mirror of a geometric normal form.

    Denotes a0*x + b0*y + kx*max(0,x) + ky*max(0,y) + sum over triangles of
    k_T * max over the triangle's vertices.
    """

    a0: int = 0
    b0: int = 0
    kx: int = 0
    ky: int = 0
    tri: Mapping[UnitTriangle, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "tri", {u: k for u, k in self.tri.items() if k != 0})

    @classmethod
    def from_normal_form(cls, nf: NormalForm) -> "MaxPlusFactorization":
        return cls(a0=nf.t.x, b0=nf.t.y, kx=nf.kx, ky=nf.ky, tri=dict(nf.tri))

    def to_normal_form(self) -> NormalForm:
        return NormalForm(LatticePoint(self.a0, self.b0), self.kx, self.ky, dict(self.tri))

    def __sub__(self, other: "MaxPlusFactorization") -> "MaxPlusFactorization":
        tri = dict(self.tri)
        for u, k in other.tri.items():
            tri[u] = tri.get(u, 0) - k
        return MaxPlusFactorization(
            self.a0 - other.a0, self.b0 - other.b0, self.kx - other.kx, self.ky - other.ky, tri
        )

    def is_zero(self) -> bool:
        return self.a0 == self.b0 == self.kx == self.ky == 0 and not self.tri

    def evaluate(self, x: int, y: int) -> int:
        total = self.a0 * x + self.b0 * y
        total += self.kx * max(0, x) + self.ky * max(0, y)
        for u, k in self.tri.items():
            total += k * max(v.x * x + v.y * y for v in u.vertices)
        return total

    def to_dict(self) -> dict:
        nf_data = self.to_normal_form().to_dict()
        del nf_data["t"]
        return {"a0": self.a0, "b0": self.b0, **nf_data}

    @classmethod
    def from_dict(cls, data: dict) -> "MaxPlusFactorization":
        nf = NormalForm.from_dict(
            {"t": [data.get("a0", 0), data.get("b0", 0)], **data}
        )
        return cls.from_normal_form(nf)


def factorize(f: MaxPlusFunction) -> MaxPlusFactorization:
    """Factor a function into the canonical atoms by decomposing its Newton polygon."""
    report = decompose(newton_polygon(f))
    return MaxPlusFactorization.from_normal_form(report.normal_form)


def factorize_difference(f: MaxPlusFunction, g: MaxPlusFunction) -> MaxPlusFactorization:
    """Factor f - g; works even when the Minkowski difference of the hulls does not exist."""
    return factorize(f) - factorize(g)


def _linear_str(a: int, b: int) -> str:
    if a == 0 and b == 0:
        return "0"
    out = ""
    if a != 0:
        out = "x" if a == 1 else "-x" if a == -1 else f"{a}x"
    if b != 0:
        ys = "y" if b == 1 else "-y" if b == -1 else f"{b}y"
        if out and b > 0:
            out += "+"
        out += ys
    return out


def _atom_str(atom) -> str:
    if isinstance(atom, UnitTriangle):
        parts = [_linear_str(x, y) for x, y in sorted(v.as_pair() for v in atom.vertices)]
        return "max(" + ",".join(parts) + ")"
    # the unit segments
    if any(v.x == 1 for v in atom.vertices):
        return "max(0,x)"
    return "max(0,y)"


def to_expression_string(fact: MaxPlusFactorization) -> str:
    """Canonical, re-parseable text for a factorization."""
    chunks: list[tuple[int, str]] = []
    if fact.a0 or fact.b0:
        chunks.append((1, _linear_str(fact.a0, fact.b0)))
    for atom, k in fact.to_normal_form().atoms():
        text = _atom_str(atom)
        if abs(k) != 1:
            text = f"{abs(k)}*{text}"
        chunks.append((1 if k > 0 else -1, text))
    if not chunks:
        return "0"
    out = ""
    for sign, text in chunks:
        if not out:
            out = text if sign > 0 else f"-{text}"
        else:
            out += f" + {text}" if sign > 0 else f" - {text}"
    return out
