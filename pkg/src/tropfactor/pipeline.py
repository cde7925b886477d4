"""End-to-end decomposition of integral bodies into unit-atom normal forms."""

from __future__ import annotations

from dataclasses import dataclass

from .descent import decompose_segment
from .geometry import LatticeBody, convex_hull, is_prime_segment
from .partition import unimodular_triangulation
from .signed import NormalForm, expand, verify_identity


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of a verified decomposition run."""

    body: LatticeBody
    normal_form: NormalForm
    cells: int
    dividing: int
    verified: bool
    max_coefficient: int
    distinct_triangles: int

    def stats(self) -> dict:
        return {
            "max_coefficient": self.max_coefficient,
            "distinct_triangles": self.distinct_triangles,
        }


def decompose(body: LatticeBody, memo: dict | None = None) -> DecompositionReport:
    """Decompose any integral body and verify the result against the hull oracle.

    Points translate directly, segments go through the descent, and polygons
    are triangulated, expanded by the partition relation, and have every
    dividing segment recursively decomposed.
    """
    cells = dividing = 0
    if body.kind == "point":
        nf = NormalForm(t=body.vertices[0])
    elif body.kind == "segment":
        nf = decompose_segment(body.vertices[0], body.vertices[1], memo)
    else:
        part = unimodular_triangulation(body)
        cells, dividing = len(part.cells), len(part.dividing_segs)
        nf = NormalForm()
        for cell in part.cells:
            nf = nf + NormalForm.from_body_atom(convex_hull(cell))
        for a, b in part.dividing_segs:
            # Dividing segments of a unimodular triangulation join consecutive
            # lattice points, hence are prime.
            if not is_prime_segment(a, b):
                raise RuntimeError("decomposition invariant violated: non-prime dividing segment")
            nf = nf - decompose_segment(a, b, memo)
        for p in part.interior:
            nf = nf + NormalForm(t=p)
    if not verify_identity(body, expand(nf)):
        raise RuntimeError("decomposition invariant violated")
    return DecompositionReport(
        body=body,
        normal_form=nf,
        cells=cells,
        dividing=dividing,
        verified=True,
        max_coefficient=nf.max_coefficient(),
        distinct_triangles=len(nf.tri),
    )


def render_svg(report: DecompositionReport) -> str:
    """Static SVG of the input, its triangulation, and the signed atom row."""
    from .svgout import render_report

    return render_report(report)
