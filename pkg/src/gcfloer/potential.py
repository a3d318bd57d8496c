"""Laurent polynomials in three torus variables with Novikov T-shifts.

The leading-order disk potential of a 3-d moment polytope has one monomial
per facet: exponent vector = primitive inner normal, T-shift = facet offset,
coefficient one.  Derivatives are always taken in logarithmic coordinates
(``x d/dx``), which is the form the critical point system is written in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import novikov
from .novikov import NovikovSeries
from .polytope import HPolytope
from .ratlin import EPS, dot, qvector


class ZeroCoordinateError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class LaurentTerm:
    exponents: tuple  # three integers
    shift: Fraction   # rational power of T
    coefficient: complex = 1.0 + 0j

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        object.__setattr__(self, "shift", Fraction(self.shift))
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        if abs(self.coefficient) <= EPS:
            raise ValueError("zero coefficient term")


@dataclass(frozen=True)
class PotentialFunction:
    """Canonically sorted term list; no two terms share (exponents, shift)."""

    terms: tuple

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_potential(self)


def potential(terms) -> PotentialFunction:
    merged = {}
    for t in terms:
        if not isinstance(t, LaurentTerm):
            t = LaurentTerm(*t)
        key = (t.exponents, t.shift)
        merged[key] = merged.get(key, 0j) + t.coefficient
    kept = [
        LaurentTerm(e, s, c) for (e, s), c in merged.items() if abs(c) > EPS
    ]
    kept.sort(key=lambda t: (t.exponents, t.shift))
    return PotentialFunction(tuple(kept))


def leading_potential(poly: HPolytope) -> PotentialFunction:
    """One unit-coefficient term per facet: x^normal * T^offset."""
    return potential(
        LaurentTerm(normal, offset) for normal, offset in poly.facets
    )


def leading_terms_by_facet(poly: HPolytope) -> list[LaurentTerm]:
    """Same terms as :func:`leading_potential`, in facet order (for display)."""
    return [LaurentTerm(normal, offset) for normal, offset in poly.facets]


def log_derivative(p: PotentialFunction, axis: int) -> PotentialFunction:
    """Apply x_i d/dx_i: each term is scaled by its i-th exponent."""
    if axis not in (1, 2, 3):
        raise ValueError("axis must be 1, 2 or 3")
    out = []
    for t in p.terms:
        e = t.exponents[axis - 1]
        if e != 0:
            out.append(LaurentTerm(t.exponents, t.shift, t.coefficient * e))
    return potential(out)


def tropicalize(p: PotentialFunction, u) -> Fraction:
    """min over terms of <exponents, u> + shift."""
    u = qvector(u)
    if not p.terms:
        raise ValueError("empty potential has no tropicalization")
    return min(dot(t.exponents, u) + t.shift for t in p.terms)


def term_valuations(p: PotentialFunction, u) -> tuple:
    u = qvector(u)
    return tuple(dot(t.exponents, u) + t.shift for t in p.terms)


def evaluate_novikov(p: PotentialFunction, point, order) -> NovikovSeries:
    """Evaluate at three NovikovSeries coordinates, truncated at ``order``.

    Coordinates must be nonzero wherever a negative exponent requires
    inversion.  Each division targets a working order raised by the total
    valuation of the divisors still to come, so the final sum is valid to
    ``order`` even when intermediate factors shift valuations downward.
    """
    order = Fraction(order)
    coords = list(point)
    if len(coords) != 3:
        raise ValueError("need three coordinates")
    total = novikov.zero(order=order)
    for t in p.terms:
        value = novikov.monomial(t.coefficient, t.shift)
        divisors = []
        for i, e in enumerate(t.exponents):
            if e > 0:
                value = value * coords[i].power(e)
            elif e < 0:
                if coords[i].is_zero():
                    raise ZeroCoordinateError(f"coordinate {i + 1} is zero")
                divisors.extend([coords[i]] * (-e))
        for j, d in enumerate(divisors):
            pending = sum((x.val_bound() for x in divisors[j + 1:]), Fraction(0))
            value = novikov.divide(value, d, order + pending)
        total = total + value.truncated(order)
    return total.truncated(order)


def evaluate_complex(p: PotentialFunction, t: float, point) -> complex:
    """Numeric evaluation with T = t substituted."""
    if not t > 0:
        raise ValueError("t must be positive")
    x, y, z = (complex(c) for c in point)
    if abs(x) == 0 or abs(y) == 0 or abs(z) == 0:
        raise ZeroCoordinateError("coordinates must be nonzero")
    total = 0j
    for term in p.terms:
        e1, e2, e3 = term.exponents
        total += term.coefficient * x**e1 * y**e2 * z**e3 * t ** float(term.shift)
    return total


def hessian_terms(p: PotentialFunction) -> list[list[PotentialFunction]]:
    """3x3 array of second logarithmic derivatives (x_i d/dx_i twice)."""
    return [
        [log_derivative(log_derivative(p, i), j) for j in (1, 2, 3)]
        for i in (1, 2, 3)
    ]


# -- text form ---------------------------------------------------------------

def _format_monomial(t: LaurentTerm) -> str:
    factors = []
    for name, e in zip("xyz", t.exponents):
        if e == 1:
            factors.append(name)
        elif e != 0:
            factors.append(f"{name}^{e}" if e > 0 else f"{name}^({e})")
    if t.shift != 0:
        fr = t.shift
        body = str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"
        factors.append(f"T^({body})")
    c = t.coefficient
    if not factors:
        return novikov._format_coefficient(c)
    if abs(c - 1) <= EPS:
        return "*".join(factors)
    if abs(c + 1) <= EPS:
        return "-" + "*".join(factors)
    return "*".join([novikov._format_coefficient(c)] + factors)


def format_potential(p: PotentialFunction, facet_order: list[LaurentTerm] | None = None) -> str:
    terms = facet_order if facet_order is not None else list(p.terms)
    if not terms:
        return "0"
    return " + ".join(_format_monomial(t) for t in terms)
