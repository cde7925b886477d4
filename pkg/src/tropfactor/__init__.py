"""Exact signed Minkowski decomposition of lattice polygons and max-plus factorization."""

from .geometry import (
    Direction,
    GeometryError,
    LatticeBody,
    LatticePoint,
    ORIGIN,
    body_from_dict,
    body_to_dict,
    convex_hull,
    is_prime_segment,
    lattice_points,
    minkowski_diff,
    minkowski_sum,
    orientation,
    point_body,
    pt,
    segment,
    support,
    twice_area,
)
from .signed import (
    NormalForm,
    SignedAlgebraError,
    SignedExpression,
    UnitTriangle,
    X_UNIT,
    Y_UNIT,
    expand,
    normalize_term,
    support_check,
    verify_identity,
)
from .partition import (
    Partition,
    PartitionError,
    classify_points,
    cut_polygon,
    cut_segment,
    partition_relation,
    star_subdivide_triangle,
    unimodular_triangulation,
)
from .descent import (
    DescentError,
    DescentStep,
    decompose_prime,
    decompose_segment,
    descent_depth,
    edges_to_hexagon,
    find_mate,
)
from .pipeline import DecompositionReport, decompose, render_svg
from .maxplus import (
    Linear,
    Max,
    MaxPlusError,
    MaxPlusExpr,
    MaxPlusFactorization,
    MaxPlusFunction,
    Negate,
    Scale,
    Sum,
    ZERO_FUNCTION,
    combine_max,
    combine_sum,
    equivalent,
    eval_expr,
    evaluate,
    factorize,
    factorize_difference,
    flatten,
    newton_polygon,
    simplify,
    to_expression_string,
)
from .parsing import ExpressionSyntaxError, parse_expression

__version__ = "0.1.0"
