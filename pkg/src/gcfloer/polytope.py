"""Rational half-space polytopes for the cut U(3) orbit family.

A polytope is stored as facet data ``<normal, u> + offset >= 0`` with
primitive integer inner normals and exact rational offsets.  Two
constructors are provided: the interlacing polytope of a generic U(3)
orbit, and the polytope of the cut manifold, where the ``lam1 - u1 >= 0``
facet is replaced by the cut facet ``-u1 - n*u2 + r + n*lam3 >= 0``.

The vertex ``(lam2, lam2, lam2)`` is tracked as a distinguished point: the
torus structure is only defined away from it, so the probe engine has to
avoid it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .ratlin import NO_SOLUTION, UNDERDETERMINED, dot, qvector, rank, solve_linear


class DegenerateParametersError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class WoodwardParams:
    """Cut parameters: integer n and rational r, lam1 > lam2 > lam3."""

    n: int
    r: Fraction
    lam1: Fraction
    lam2: Fraction
    lam3: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "lam1", Fraction(self.lam1))
        object.__setattr__(self, "lam2", Fraction(self.lam2))
        object.__setattr__(self, "lam3", Fraction(self.lam3))


BASIC = "basic"
STRENGTHENED = "strengthened"


def validate_params(p: WoodwardParams, strength: str = STRENGTHENED) -> list[str]:
    """Return the names of all violated constraints (empty list = valid).

    Basic checks: n > 2, lam1 > lam2 > lam3, lam2 < r < lam1 and the cut
    ratio bound (lam2-lam3)/(r-lam2) < 1/n.  Strengthened additionally
    requires the ratio below 1/(n+1) and r > ((n+4)lam2 - (n+2)lam3)/2.
    """
    violations = []
    if not p.n > 2:
        violations.append("n>2")
    if not (p.lam1 > p.lam2 > p.lam3):
        violations.append("lambda-ordering")
    if not (p.lam2 < p.r < p.lam1):
        violations.append("r-between-lambda2-lambda1")
    # Ratio bounds in cross-multiplied form; they require r > lam2 and n > 0.
    gap = p.lam2 - p.lam3
    if not (p.r > p.lam2 and p.n > 0 and p.n * gap < p.r - p.lam2):
        violations.append("cut-ratio-below-1/n")
    if strength == STRENGTHENED:
        if not (p.r > p.lam2 and (p.n + 1) * gap < p.r - p.lam2):
            violations.append("cut-ratio-below-1/(n+1)")
        r0 = Fraction((p.n + 4) * p.lam2 - (p.n + 2) * p.lam3, 2)
        if not p.r > r0:
            violations.append("r-above-slope-crossover")
    return violations


def _primitive(normal, offset):
    g = gcd(*(abs(int(x)) for x in normal))
    if g == 0:
        raise ValueError("zero facet normal")
    return tuple(int(x) // g for x in normal), Fraction(offset) / g


@dataclass(frozen=True)
class HPolytope:
    dimension: int
    facets: tuple  # ((normal ints, offset Fraction), ...)
    labels: tuple
    distinguished: tuple | None = None  # tracked singular vertex, if any

    def facet_value(self, index: int, u) -> Fraction:
        normal, offset = self.facets[index]
        return dot(normal, u) + offset

    def facet_values(self, u) -> tuple:
        if len(u) != self.dimension:
            raise DimensionMismatchError(
                f"point has dimension {len(u)}, polytope {self.dimension}"
            )
        return tuple(self.facet_value(i, u) for i in range(len(self.facets)))


def hpolytope(facets, labels=None, distinguished=None, check=True) -> HPolytope:
    """Normalize facet data to primitive normals and validate geometry.

    For 3-dimensional polytopes boundedness and full-dimensionality are
    checked exactly (recession-cone rays over normal pairs, interior point
    from the vertex average).
    """
    norm = tuple(_primitive(n, c) for n, c in facets)
    dim = len(norm[0][0])
    if any(len(n) != dim for n, _ in norm):
        raise ValueError("inconsistent facet dimensions")
    if labels is None:
        labels = tuple(f"F{i + 1}" for i in range(len(norm)))
    poly = HPolytope(
        dimension=dim,
        facets=norm,
        labels=tuple(labels),
        distinguished=None if distinguished is None else qvector(distinguished),
    )
    if check and dim == 3:
        if not _is_bounded(poly):
            raise DegenerateParametersError("polytope is unbounded")
        if not _has_interior_point(poly):
            raise DegenerateParametersError("polytope is not full-dimensional")
    return poly


def _is_bounded(poly: HPolytope) -> bool:
    normals = [n for n, _ in poly.facets]
    if rank(tuple(tuple(Fraction(x) for x in n) for n in normals)) < poly.dimension:
        return False
    # Recession cone is trivial iff no ray on a pair of active normals
    # satisfies every inequality (d = 3: extreme rays lie on normal pairs).
    def cross(a, b):
        return (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )

    for a, b in combinations(normals, 2):
        ray = cross(a, b)
        if all(x == 0 for x in ray):
            continue
        for candidate in (ray, tuple(-x for x in ray)):
            if all(dot(n, candidate) >= 0 for n in normals):
                return False
    return True


def vertices(poly: HPolytope) -> list:
    """All vertices, by brute force over facet triples (3-d only)."""
    if poly.dimension != 3:
        raise ValueError("vertex enumeration implemented for dimension 3 only")
    found = []
    for triple in combinations(range(len(poly.facets)), 3):
        a = tuple(tuple(Fraction(x) for x in poly.facets[i][0]) for i in triple)
        b = tuple(-poly.facets[i][1] for i in triple)
        x = solve_linear(a, b)
        if x is NO_SOLUTION or x is UNDERDETERMINED:
            continue
        if all(v >= 0 for v in poly.facet_values(x)) and x not in found:
            found.append(x)
    return found


def _has_interior_point(poly: HPolytope) -> bool:
    verts = vertices(poly)
    if len(verts) < 4:
        return False
    d = poly.dimension
    center = tuple(
        sum(v[k] for v in verts) / Fraction(len(verts)) for k in range(d)
    )
    return all(v > 0 for v in poly.facet_values(center))


INTERIOR = "interior"
ON_FACES = "on-faces"
OUTSIDE = "outside"


@dataclass(frozen=True)
class PointClass:
    kind: str
    on_facets: tuple = ()

    @property
    def is_interior(self) -> bool:
        return self.kind == INTERIOR


def classify_point(poly: HPolytope, u) -> PointClass:
    """Interior (all facet values > 0), Outside (some < 0), or on facets."""
    values = poly.facet_values(qvector(u))
    if any(v < 0 for v in values):
        return PointClass(OUTSIDE)
    zeros = tuple(i for i, v in enumerate(values) if v == 0)
    if zeros:
        return PointClass(ON_FACES, zeros)
    return PointClass(INTERIOR)


def facet_interior_contains(poly: HPolytope, facet: int, w) -> bool:
    """True iff w lies on facet ``facet`` and strictly inside every other."""
    values = poly.facet_values(qvector(w))
    return values[facet] == 0 and all(
        v > 0 for i, v in enumerate(values) if i != facet
    )


# -- constructors -----------------------------------------------------------

def build_orbit_polytope(lam1, lam2, lam3) -> HPolytope:
    """Interlacing polytope lam1 >= u1 >= lam2 >= u2 >= lam3, u1 >= u3 >= u2."""
    lam1, lam2, lam3 = Fraction(lam1), Fraction(lam2), Fraction(lam3)
    if not (lam1 > lam2 > lam3):
        raise DegenerateParametersError("need lam1 > lam2 > lam3")
    facets = [
        ((-1, 0, 0), lam1),   # lam1 - u1 >= 0
        ((1, 0, 0), -lam2),   # u1 - lam2 >= 0
        ((0, -1, 0), lam2),   # lam2 - u2 >= 0
        ((0, 1, 0), -lam3),   # u2 - lam3 >= 0
        ((1, 0, -1), 0),      # u1 - u3 >= 0
        ((0, -1, 1), 0),      # u3 - u2 >= 0
    ]
    labels = ("lam1-u1", "u1-lam2", "lam2-u2", "u2-lam3", "u1-u3", "u3-u2")
    return hpolytope(facets, labels, distinguished=(lam2, lam2, lam2))


def build_cut_polytope(p: WoodwardParams) -> HPolytope:
    """Six-facet polytope of the cut manifold, in the order F1..F6:

    left u2-lam3, right lam2-u2, top u1-u3, bottom u3-u2, front u1-lam2,
    back -u1-n*u2+r+n*lam3.
    """
    problems = validate_params(p, BASIC)
    if problems:
        raise DegenerateParametersError(f"invalid parameters: {problems}")
    facets = [
        ((0, 1, 0), -p.lam3),                    # F1 left
        ((0, -1, 0), p.lam2),                    # F2 right
        ((1, 0, -1), 0),                         # F3 top
        ((0, -1, 1), 0),                         # F4 bottom
        ((1, 0, 0), -p.lam2),                    # F5 front
        ((-1, -p.n, 0), p.r + p.n * p.lam3),     # F6 back
    ]
    labels = ("F1-left", "F2-right", "F3-top", "F4-bottom", "F5-front", "F6-back")
    return hpolytope(facets, labels, distinguished=(p.lam2, p.lam2, p.lam2))


def format_polytope(poly: HPolytope) -> str:
    """Facet list with exact rational offsets as p/q, one facet per line."""
    lines = [f"dimension {poly.dimension}"]
    for (normal, offset), label in zip(poly.facets, poly.labels):
        n_txt = ",".join(str(x) for x in normal)
        lines.append(f"{label}: normal ({n_txt}) offset {offset}")
    if poly.distinguished is not None:
        pt = ",".join(str(x) for x in poly.distinguished)
        lines.append(f"distinguished ({pt})")
    return "\n".join(lines)
