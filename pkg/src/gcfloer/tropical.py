"""Newton polygons of univariate polynomials over Novikov scalars.

The lower convex hull of the points (degree, coefficient valuation) has
edges whose negated slopes are root valuations: an edge spanning degrees
a..b accounts for exactly b-a roots of that valuation.  Collinear interior
points are absorbed into a single edge so each slope corresponds to one
count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .novikov import NovikovSeries
from .polytope import WoodwardParams


class TooFewTermsError(ValueError):
    pass


@dataclass(frozen=True)
class ValuedPolynomial:
    """Sparse polynomial: degree -> nonzero NovikovSeries coefficient."""

    coefficients: dict

    def __post_init__(self):
        clean = {
            int(d): c for d, c in self.coefficients.items() if not c.is_zero()
        }
        object.__setattr__(self, "coefficients", clean)

    def degree(self) -> int:
        return max(self.coefficients)

    def support(self) -> list[int]:
        return sorted(self.coefficients)

    def eval_at(self, t: float, z: complex) -> complex:
        return sum(c.eval_at(t) * z**d for d, c in self.coefficients.items())


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower-hull vertices (degree, valuation), strictly increasing slopes."""

    vertices: tuple

    def edges(self):
        out = []
        for (d0, v0), (d1, v1) in zip(self.vertices, self.vertices[1:]):
            out.append(((d0, v0), (d1, v1), Fraction(v1 - v0, d1 - d0)))
        return out


def newton_polygon(f: ValuedPolynomial) -> NewtonPolygon:
    """Lower convex hull of (degree, val(coefficient)); needs >= 2 terms."""
    points = sorted(
        (d, Fraction(c.valuation())) for d, c in f.coefficients.items()
    )
    if len(points) < 2:
        raise TooFewTermsError("need at least two nonzero coefficients")
    hull = []
    for pt in points:
        # keep the middle point only on a strict upward turn, so collinear
        # interior points are absorbed and slopes strictly increase
        while len(hull) >= 2:
            (d0, v0), (d1, v1) = hull[-2], hull[-1]
            if (v1 - v0) * (pt[0] - d1) < (pt[1] - v1) * (d1 - d0):
                break
            hull.pop()
        hull.append(pt)
    return NewtonPolygon(tuple(hull))


def root_valuation_counts(np_: NewtonPolygon) -> list[tuple]:
    """One (valuation, multiplicity) pair per edge; valuation = -slope."""
    return [(-slope, d1 - d0) for (d0, _), (d1, _), slope in np_.edges()]


@dataclass(frozen=True)
class SlopeComparison:
    """Slopes of the three chords of the hull points A=(0, v0), B=(6, vB),
    C=(2n+4, 0) for the eliminated polynomial, and which configuration the
    lower hull takes."""

    ab: Fraction
    bc: Fraction
    ac: Fraction
    configuration: str  # "two-edges" | "collinear" | "single-edge"


def slope_comparison(p: WoodwardParams) -> SlopeComparison:
    n, r, l2, l3 = p.n, p.r, p.lam2, p.lam3
    ab = -Fraction(2 * r + (2 - n) * l2 + (n + 2) * l3, 6)
    bc = -l2
    ac = -Fraction(2 * r + n * l2 + (n + 2) * l3, 2 * n + 4)
    if ab < bc:
        configuration = "two-edges"
    elif ab == bc:
        configuration = "collinear"
    else:
        configuration = "single-edge"
    return SlopeComparison(ab, bc, ac, configuration)
