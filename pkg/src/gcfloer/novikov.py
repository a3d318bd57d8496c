"""Truncated Novikov-field scalars.

A value is a finite sum ``sum_i a_i T^{e_i}`` with strictly increasing exact
rational exponents ``e_i`` and complex coefficients ``a_i``.  The valuation of
a nonzero value is its least exponent; the zero value has valuation +inf.

Truncation bookkeeping: ``order`` is the exponent threshold up to which the
terms are trusted.  Terms at or above ``order`` are discarded, and every
arithmetic operation records the tightest valid order of its result (the
minimum of the input orders shifted by valuations), so digits beyond validity
are never silently trusted.  ``order=None`` means the value is exact.

Coefficients within ``EPS`` of zero are pruned so that floating cancellation
cannot masquerade as a new leading term and corrupt valuations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
import re

from .ratlin import EPS

INF = math.inf


class ZeroSeriesError(ZeroDivisionError):
    pass


class NotUnitaryError(ValueError):
    pass


def _as_fraction(e) -> Fraction:
    if isinstance(e, Fraction):
        return e
    if isinstance(e, int):
        return Fraction(e)
    if isinstance(e, str):
        return Fraction(e)
    raise TypeError(f"exponent must be an exact rational, got {type(e)}")


def _min_order(*orders):
    finite = [o for o in orders if o is not None and o != INF]
    if not finite:
        return None
    return min(finite)


@dataclass(frozen=True)
class NovikovSeries:
    """Immutable truncated series; construct through :func:`series`."""

    terms: tuple  # ((Fraction exponent, complex coefficient), ...) increasing
    order: Fraction | None = None

    # -- queries ----------------------------------------------------------

    def valuation(self):
        """Least exponent, or +inf for the (possibly truncated) zero."""
        if not self.terms:
            return INF
        return self.terms[0][0]

    def val_bound(self):
        """Certified lower bound on the valuation (order for truncated zero)."""
        if self.terms:
            return self.terms[0][0]
        return INF if self.order is None else self.order

    def is_zero(self) -> bool:
        return not self.terms

    def leading_coefficient(self) -> complex:
        if not self.terms:
            raise ZeroSeriesError("zero series has no leading coefficient")
        return self.terms[0][1]

    def coefficient(self, exponent) -> complex:
        e = _as_fraction(exponent)
        for exp, c in self.terms:
            if exp == e:
                return c
        return 0j

    def eval_at(self, t: float) -> complex:
        """Numerically substitute T = t (t > 0)."""
        return sum(c * t ** float(e) for e, c in self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = coerce(other)
        merged = {}
        for e, c in self.terms + other.terms:
            merged[e] = merged.get(e, 0j) + c
        return series(merged.items(), order=_min_order(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return NovikovSeries(tuple((e, -c) for e, c in self.terms), self.order)

    def __sub__(self, other):
        return self + (-coerce(other))

    def __rsub__(self, other):
        return coerce(other) + (-self)

    def __mul__(self, other):
        other = coerce(other)
        order = _min_order(
            None if self.order is None else self.order + other.val_bound(),
            None if other.order is None else other.order + self.val_bound(),
        )
        merged = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                merged[e] = merged.get(e, 0j) + c1 * c2
        return series(merged.items(), order=order)

    __rmul__ = __mul__

    def shifted(self, exponent):
        """Multiply by the monomial T^exponent."""
        e0 = _as_fraction(exponent)
        return NovikovSeries(
            tuple((e + e0, c) for e, c in self.terms),
            None if self.order is None else self.order + e0,
        )

    def truncated(self, order):
        k = _as_fraction(order)
        if self.order is not None and self.order <= k:
            return self
        return NovikovSeries(tuple((e, c) for e, c in self.terms if e < k), k)

    def power(self, exponent: int, target_order=None):
        if exponent < 0:
            raise ValueError("use invert for negative powers")
        result = one()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
                if target_order is not None:
                    result = result.truncated(target_order)
            n >>= 1
            if n:
                base = base * base
                if target_order is not None:
                    base = base.truncated(target_order)
        return result

    def __str__(self):
        return format_series(self)


def series(terms, order=None) -> NovikovSeries:
    """Normalize (exponent, coefficient) pairs into a NovikovSeries.

    Coefficients at equal exponents are merged, near-zero coefficients (<= EPS
    in modulus) are pruned, and terms at or above the truncation order are
    discarded.
    """
    if order is not None:
        order = _as_fraction(order)
    merged = {}
    for e, c in terms:
        e = _as_fraction(e)
        merged[e] = merged.get(e, 0j) + complex(c)
    kept = sorted(
        (e, c)
        for e, c in merged.items()
        if abs(c) > EPS and (order is None or e < order)
    )
    return NovikovSeries(tuple(kept), order)


def coerce(value) -> NovikovSeries:
    if isinstance(value, NovikovSeries):
        return value
    if isinstance(value, (int, float, complex, Fraction)):
        return series([(Fraction(0), complex(value))])
    raise TypeError(f"cannot interpret {type(value)} as a Novikov scalar")


def monomial(coefficient, exponent, order=None) -> NovikovSeries:
    return series([(exponent, coefficient)], order=order)


def zero(order=None) -> NovikovSeries:
    return series([], order=order)


def one() -> NovikovSeries:
    return series([(0, 1.0)])


def valuation(s: NovikovSeries):
    return s.valuation()


def invert(s: NovikovSeries, order) -> NovikovSeries:
    """Multiplicative inverse, with terms below the exponent ``order``.

    val(invert(s)) = -val(s), and s * invert(s) = 1 + O(T^{order + val(s)}).
    A truncated input caps the achievable order at order(s) - 2 val(s); the
    result's own order records what was actually certified.  Raises
    ZeroSeriesError on the zero series.
    """
    if s.is_zero():
        raise ZeroSeriesError("cannot invert the zero series")
    k = _as_fraction(order)
    v, a0 = s.terms[0]
    if s.order is not None:
        k = min(k, s.order - 2 * v)
    if k <= -v:
        return zero(order=k)
    if len(s.terms) == 1:
        return monomial(1.0 / a0, -v, order=k if s.order is not None else None)
    r = monomial(1.0 / a0, -v, order=k)
    # Newton reciprocal iteration; correct exponent span doubles each pass.
    # Floating cancellation can stall the residual when coefficient ratios
    # are extreme; that is a hard limit of the float-with-eps model, so it
    # fails loudly instead of looping.
    best = None
    for _ in range(64):
        e = one() - (s * r).truncated(k + v)
        gained = e.val_bound()
        if gained >= k + v:
            break
        if best is not None and gained <= best:
            raise ArithmeticError(
                "inverse lost precision (ill-conditioned coefficients)"
            )
        best = gained
        r = (r + r * e).truncated(k)
    else:
        raise ArithmeticError("inverse iteration failed to converge")
    return r


def divide(a: NovikovSeries, b: NovikovSeries, order) -> NovikovSeries:
    k = _as_fraction(order)
    if a.is_zero():
        return zero(_min_order(a.order, k))
    return (a * invert(b, k - a.val_bound())).truncated(k)


def unitary_part(s: NovikovSeries):
    """Split a valuation-zero element as (constant coefficient, positive tail)."""
    if s.valuation() != 0:
        raise NotUnitaryError(f"valuation {s.valuation()} != 0")
    a0 = s.terms[0][1]
    return a0, NovikovSeries(s.terms[1:], s.order)


def approx_equal(a: NovikovSeries, b: NovikovSeries, tol: float = 1e-9) -> bool:
    """Term-by-term comparison up to the common certified order."""
    cutoff = _min_order(a.order, b.order)
    diff = a - b
    for e, c in diff.terms:
        if cutoff is not None and e >= cutoff:
            continue
        if abs(c) > tol:
            return False
    return True


# -- text form -------------------------------------------------------------

def _format_coefficient(c: complex) -> str:
    if abs(c.imag) <= EPS:
        r = c.real
        if r == int(r):
            return str(int(r))
        return repr(r)
    return "(" + repr(complex(c)).strip("()") + ")"


def _format_power(e: Fraction) -> str:
    if e.denominator == 1:
        return f"T^({e.numerator})"
    return f"T^({e.numerator}/{e.denominator})"


def format_series(s: NovikovSeries) -> str:
    if not s.terms:
        return "0"
    parts = []
    for e, c in s.terms:
        if e == 0:
            parts.append(_format_coefficient(c))
        else:
            parts.append(f"{_format_coefficient(c)}*{_format_power(e)}")
    return " + ".join(parts)


_POWER_RE = re.compile(r"^T(?:\^\(?(-?\d+(?:/\d+)?)\)?)?$")


def _parse_power(text: str) -> Fraction:
    m = _POWER_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse power {text!r}")
    return Fraction(1) if m.group(1) is None else Fraction(m.group(1))


def parse_series(text: str, order=None) -> NovikovSeries:
    """Parse the output of :func:`format_series` (round trip)."""
    text = text.strip()
    if text == "0":
        return zero(order)
    terms = []
    for raw in text.split(" + "):
        raw = raw.replace(" ", "")
        if "*" in raw:
            coeff_txt, power_txt = raw.split("*", 1)
            terms.append((_parse_power(power_txt), complex(coeff_txt.strip("()"))))
        elif raw.startswith("T"):
            terms.append((_parse_power(raw), 1.0))
        else:
            terms.append((Fraction(0), complex(raw.strip("()"))))
    return series(terms, order=order)
