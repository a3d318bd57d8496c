"""Critical points of the leading-order potential for the cut manifolds.

Pipeline: eliminate the critical-point system to a single polynomial g(z)
over Novikov scalars, read root valuations off its Newton polygon, solve the
leading-term equations (six solutions, roots of unity), attach the two
stage-wise Hessian determinants, and lift each leading solution to a series
critical point by Newton iteration whose residual valuation is certified by
independent re-evaluation of the logarithmic gradient.

The three valuation cases:

* case (a): val(z) = (2r+(2-n)lam2+(n+2)lam3)/6 > lam2, giving the interior
  valuation triple u0; six roots, six non-degenerate critical points.
* case (b1): val(z) = lam2 with val(z+T^lam2) > lam2; the leading system is
  degenerate along a one-parameter family and the valuation triple leaves
  the polytope whenever (lam2-lam3)/(r-lam2) < 1/(n+1).
* case (b2): val(z) = lam2 = val(z+T^lam2); always outside under the 1/n
  ratio bound.

A numeric oracle solves the same critical-point equations in floating point
at a concrete T = t from random seeds and estimates valuations as
log_t |coordinate|, so the symbolic pipeline can be cross-checked without
sharing any code path with it.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb, log

import numpy as np

from . import novikov
from .novikov import NovikovSeries
from .polytope import (
    STRENGTHENED,
    DegenerateParametersError,
    HPolytope,
    WoodwardParams,
    build_cut_polytope,
    classify_point,
    validate_params,
    vertices,
)
from .potential import (
    PotentialFunction,
    evaluate_novikov,
    hessian_terms,
    leading_potential,
    log_derivative,
    potential,
)
from .ratlin import EPS
from .tropical import ValuedPolynomial

ZETA = cmath.exp(2j * cmath.pi / 3)


class HessianSingularError(ValueError):
    pass


class NoConvergenceError(RuntimeError):
    pass


class DegenerateHessianError(ValueError):
    pass


def _require_strengthened(p: WoodwardParams):
    problems = validate_params(p, STRENGTHENED)
    if problems:
        raise DegenerateParametersError(f"invalid parameters: {problems}")


def default_truncation(p: WoodwardParams) -> Fraction:
    """Global working order 10*(lam2 - lam3) unless the caller overrides."""
    return 10 * (p.lam2 - p.lam3)


# -- elimination -------------------------------------------------------------

def eliminate_to_g(p: WoodwardParams) -> ValuedPolynomial:
    """Expand z^6 (z+b)^n (nz+b)^(n-2) - b^n c^(2-n) d^2 over Novikov scalars,

    with b = T^lam2, c = T^lam3, d = T^(r+n*lam3).  Degree 2n+4.
    """
    _require_strengthened(p)
    n = p.n
    b = p.lam2
    # coefficient of z^(l+6) in (z+b)^n (nz+b)^(n-2):
    #   sum_j C(n, l-j) C(n-2, j) n^j * b^(2n-2-l)
    coeffs: dict[int, NovikovSeries] = {}
    for l in range(0, 2 * n - 1):
        total = 0
        for j in range(0, n - 1):
            if 0 <= l - j <= n:
                total += comb(n, l - j) * comb(n - 2, j) * n**j
        if total:
            coeffs[l + 6] = novikov.monomial(total, (2 * n - 2 - l) * b)
    const_val = 2 * p.r + n * p.lam2 + (n + 2) * p.lam3
    coeffs[0] = novikov.monomial(-1.0, const_val)
    return ValuedPolynomial(coeffs)


# -- valuation case analysis --------------------------------------------------

def stage_valuations(p: WoodwardParams) -> tuple:
    """The three tropical levels S1 < S2 < S3 of the potential at u0."""
    n, r, l2, l3 = p.n, p.r, p.lam2, p.lam3
    s1 = Fraction(l2 - l3, 2)
    s2 = Fraction(2 * r - (n + 1) * l2 + (n - 1) * l3, 6)
    s3 = Fraction(4 * r - (2 * n + 5) * l2 + (2 * n + 1) * l3, 6)
    return s1, s2, s3


def case_a_valuation(p: WoodwardParams) -> tuple:
    n, r, l2, l3 = p.n, p.r, p.lam2, p.lam3
    return (
        Fraction(4 * r - (2 * n - 1) * l2 + (2 * n + 1) * l3, 6),
        Fraction(l2 + l3, 2),
        Fraction(2 * r + (2 - n) * l2 + (n + 2) * l3, 6),
    )


def case_b1_valuation(p: WoodwardParams) -> tuple:
    n, r, l2, l3 = p.n, p.r, p.lam2, p.lam3
    return (
        Fraction(-r + (2 * n + 2) * l2 - (n + 1) * l3, n),
        Fraction(r - 2 * l2 + (n + 1) * l3, n),
        l2,
    )


def case_b2_valuation(p: WoodwardParams) -> tuple:
    n, r, l2, l3 = p.n, p.r, p.lam2, p.lam3
    return (
        Fraction(-r + (2 * n - 1) * l2 - n * l3, n - 2),
        Fraction(r - 3 * l2 + n * l3, n - 2),
        l2,
    )


def legacy_orbit_valuation(lam1, lam2, lam3) -> tuple:
    """Case (a) specialized to n = 0, r = lam1 (uncut orbit, informational)."""
    l1, l2, l3 = Fraction(lam1), Fraction(lam2), Fraction(lam3)
    return (
        Fraction(4 * l1 + l2 + l3, 6),
        Fraction(l2 + l3, 2),
        Fraction(l1 + l2 + l3, 3),
    )


CASE_A = "case-a"
CASE_B1 = "case-b1"
CASE_B2 = "case-b2"


@dataclass(frozen=True)
class ValuationCase:
    case_tag: str
    valuations: tuple  # three Fractions
    inside_polytope: bool
    facet_values: tuple
    violated: tuple  # labels of facets with negative value


def valuation_cases(p: WoodwardParams) -> list[ValuationCase]:
    """The three candidate valuation triples with exact inside/outside flags."""
    _require_strengthened(p)
    poly = build_cut_polytope(p)
    out = []
    for tag, triple in (
        (CASE_A, case_a_valuation(p)),
        (CASE_B1, case_b1_valuation(p)),
        (CASE_B2, case_b2_valuation(p)),
    ):
        values = poly.facet_values(triple)
        violated = tuple(
            poly.labels[i] for i, v in enumerate(values) if v < 0
        )
        out.append(
            ValuationCase(
                case_tag=tag,
                valuations=triple,
                inside_polytope=classify_point(poly, triple).is_interior,
                facet_values=values,
                violated=violated,
            )
        )
    return out


# -- leading-term solutions ----------------------------------------------------

def solve_leading_term_equations(p: WoodwardParams) -> list[tuple]:
    """All six solutions of y^2 = 1, x^2 y^n = z, z^2 = x y.

    Enumerated as root sets (y in {1,-1}, x a cube root of y^(1-2n),
    z = x^2 y^n), residual-filtered, and returned in a fixed order: the
    y = 1 block by increasing phase of x, then the y = -1 block by
    increasing phase of the conjugate of -x.
    """
    _require_strengthened(p)
    n = p.n
    sols = []
    for y0 in (1.0 + 0j, -1.0 + 0j):
        target = y0 ** (1 - 2 * n)
        base = cmath.exp(1j * cmath.phase(target) / 3)
        block = []
        for k in range(3):
            x0 = base * ZETA**k
            z0 = x0 * x0 * y0**n
            residual = max(
                abs(y0 * y0 - 1),
                abs(x0 * x0 * y0**n - z0),
                abs(z0 * z0 - x0 * y0),
            )
            if residual < 1e-9:
                block.append((x0, y0, z0))
        assert len(block) == 3
        if y0 == 1:
            block.sort(key=lambda s: cmath.phase(s[0]) % (2 * cmath.pi))
        else:
            block.sort(key=lambda s: cmath.phase((-s[0]).conjugate()) % (2 * cmath.pi))
        sols.extend(block)
    return sols


def stage_hessians(sol) -> tuple:
    """Stage determinants (2 y^-3, 4 x^-2 z^-3 - z^-4) at a leading solution."""
    x0, y0, z0 = (complex(c) for c in sol)
    if min(abs(x0), abs(y0), abs(z0)) <= 1e-6:
        raise DegenerateHessianError("leading coordinate too close to zero")
    h1 = 2 / y0**3
    h2 = 4 / (x0**2 * z0**3) - 1 / z0**4
    if abs(h1) <= EPS or abs(h2) <= EPS:
        raise DegenerateHessianError("vanishing stage Hessian")
    return h1, h2


def critical_values(p: WoodwardParams, sols) -> list[list[tuple]]:
    """Leading critical value of each solution as (valuation, coefficient)
    pairs at the three levels S1 < S2 < S3.

    Level coefficients come from grouping the potential's monomials by their
    tropical level at u0 and substituting the leading coordinates:
    S1: y0 + 1/y0, S2: 3 x0/z0, S3: x0.
    """
    s1, s2, s3 = stage_valuations(p)
    out = []
    for x0, y0, z0 in sols:
        out.append([(s1, y0 + 1 / y0), (s2, 3 * x0 / z0), (s3, x0)])
    return out


@dataclass(frozen=True)
class CriticalPoint:
    leading: tuple        # (x0, y0, z0) complex
    valuation: tuple      # (u1, u2, u3) Fraction
    hess1: complex
    hess2: complex
    critical_value_leading: tuple  # ((S_i, coefficient), ...)
    lifted: tuple | None = None    # three NovikovSeries
    lifted_order: Fraction | None = None


def solve_critical_points(p: WoodwardParams) -> list[CriticalPoint]:
    """The six critical points with valuation u0, leading data only."""
    _require_strengthened(p)
    u0 = case_a_valuation(p)
    sols = solve_leading_term_equations(p)
    values = critical_values(p, sols)
    points = []
    for sol, w in zip(sols, values):
        h1, h2 = stage_hessians(sol)
        points.append(
            CriticalPoint(
                leading=sol,
                valuation=u0,
                hess1=h1,
                hess2=h2,
                critical_value_leading=tuple(w),
            )
        )
    return points


# -- Hensel lifting -------------------------------------------------------------

def _solve_series_system(rows, rhs, order):
    """Gaussian elimination for a 3x3 Novikov system, min-valuation pivoting."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    size = len(m)
    perm = []
    for col in range(size):
        pivot, pivot_val = None, None
        for i in range(size):
            if i in perm:
                continue
            v = m[i][col].val_bound()
            if not m[i][col].is_zero() and (pivot is None or v < pivot_val):
                pivot, pivot_val = i, v
        if pivot is None:
            raise HessianSingularError("series Hessian is singular to working order")
        perm.append(pivot)
        prow = m[pivot]
        for i in range(size):
            if i == pivot or m[i][col].is_zero():
                continue
            factor = novikov.divide(m[i][col], prow[col], order)
            m[i] = [a - factor * b for a, b in zip(m[i], prow)]
    # full Jordan elimination: each pivot row now determines one unknown
    return [
        novikov.divide(m[perm[col]][size], m[perm[col]][col], order)
        for col in range(size)
    ]


def hensel_lift(P: PotentialFunction, cp: CriticalPoint, K) -> tuple:
    """Newton-lift a leading critical point until the logarithmic gradient
    has certified valuation >= K in all three components.

    Coordinates are updated multiplicatively, x_i <- x_i (1 + delta_i), with
    delta solved from the logarithmic Hessian; the residual valuation must
    strictly increase every round.
    """
    K = Fraction(K)
    if abs(cp.hess1) <= EPS or abs(cp.hess2) <= EPS:
        raise HessianSingularError("stage Hessians must be nonzero to lift")
    s1 = cp.critical_value_leading[0][0]
    # coordinate precision needed so the residual order certifies K
    prec = K - s1 + max(K - s1, Fraction(1)) / 2
    if prec <= 0:
        prec = Fraction(1, 2)
    grads = [log_derivative(P, i) for i in (1, 2, 3)]
    hess = hessian_terms(P)
    pt = tuple(
        novikov.monomial(c, u, order=u + prec)
        for c, u in zip(cp.leading, cp.valuation)
    )
    work_order = s1 + prec

    def residual(point):
        return [evaluate_novikov(g, point, work_order) for g in grads]

    res = residual(pt)
    last = min(r.val_bound() for r in res)
    for _ in range(64):
        if last >= K:
            return pt
        h = [
            [evaluate_novikov(hess[i][j], pt, work_order) for j in range(3)]
            for i in range(3)
        ]
        delta = _solve_series_system(h, [-r for r in res], work_order)
        if any(d.val_bound() <= 0 for d in delta):
            raise NoConvergenceError("correction does not have positive valuation")
        pt = tuple(
            (c * (novikov.one() + d)).truncated(c.val_bound() + prec)
            for c, d in zip(pt, delta)
        )
        res = residual(pt)
        now = min(r.val_bound() for r in res)
        if now <= last:
            raise NoConvergenceError(
                f"residual valuation stalled at {last}"
            )
        last = now
    raise NoConvergenceError("iteration limit reached")


def lift_all(p: WoodwardParams, K=None) -> list[CriticalPoint]:
    """Solve and lift the six critical points; K defaults to S1 + 3(lam2-lam3)."""
    if K is None:
        K = certification_order(p)
    poly = build_cut_polytope(p)
    P = leading_potential(poly)
    out = []
    for cp in solve_critical_points(p):
        lifted = hensel_lift(P, cp, K)
        out.append(replace(cp, lifted=lifted, lifted_order=Fraction(K)))
    return out


def certification_order(p: WoodwardParams) -> Fraction:
    s1, _, _ = stage_valuations(p)
    return s1 + 3 * (p.lam2 - p.lam3)


# -- case (b1) degeneracy -------------------------------------------------------

def case_b1_leading_potential() -> PotentialFunction:
    """Leading terms at the case (b1) valuation: 1/y + z/y + x/z + x."""
    return potential(
        [
            ((0, -1, 0), 0),
            ((0, -1, 1), 0),
            ((1, 0, -1), 0),
            ((1, 0, 0), 0),
        ]
    )


def case_b1_family_point(x0: complex) -> tuple:
    """A point of the degenerate solution family (x, 1/x, -1)."""
    x0 = complex(x0)
    if abs(x0) <= EPS:
        raise ValueError("x0 must be nonzero")
    return (x0, 1 / x0, -1.0 + 0j)


# -- numeric oracle -------------------------------------------------------------

def estimate_valuations(point, t: float) -> tuple:
    return tuple(log(abs(c)) / log(t) for c in point)


def polytope_valuation_box(poly: HPolytope) -> tuple:
    verts = vertices(poly)
    lo = tuple(float(min(v[k] for v in verts)) for k in range(poly.dimension))
    hi = tuple(float(max(v[k] for v in verts)) for k in range(poly.dimension))
    return lo, hi


def numeric_torus_oracle(
    P: PotentialFunction,
    t: float,
    n_seeds: int,
    box,
    seed: int = 0,
    newton_steps: int = 200,
    tol: float = 1e-12,
):
    """Damped Newton on the logarithmic gradient of P with T = t substituted.

    Seeds are points x_i = t^{w_i} e^{i theta_i} with w uniform in ``box``
    and phases uniform.  Converged points are deduplicated at 1e-4 relative
    distance.  Returns a list of (coordinates, estimated valuations).
    """
    if not 0 < t < 0.1:
        raise ValueError("need 0 < t < 0.1")
    rng = np.random.default_rng(seed)
    grads = [log_derivative(P, i) for i in (1, 2, 3)]
    hess = hessian_terms(P)
    lo, hi = (np.asarray(b, dtype=float) for b in box)
    # variables the potential never sees have identically zero gradient rows;
    # solve the Newton system on the active block only
    active = [i for i in range(3) if grads[i].terms]
    if not active:
        return []

    def gradient(w):
        x = np.exp(w)
        return np.array(
            [
                sum(
                    term.coefficient
                    * x[0] ** term.exponents[0]
                    * x[1] ** term.exponents[1]
                    * x[2] ** term.exponents[2]
                    * t ** float(term.shift)
                    for term in g.terms
                )
                for g in grads
            ],
            dtype=complex,
        )

    def jacobian(w):
        x = np.exp(w)
        out = np.empty((3, 3), dtype=complex)
        for i in range(3):
            for j in range(3):
                out[i, j] = sum(
                    term.coefficient
                    * x[0] ** term.exponents[0]
                    * x[1] ** term.exponents[1]
                    * x[2] ** term.exponents[2]
                    * t ** float(term.shift)
                    for term in hess[i][j].terms
                )
        return out

    logt = log(t)
    found = []
    for _ in range(n_seeds):
        w = (lo + (hi - lo) * rng.random(3)) * logt + 1j * rng.uniform(
            0, 2 * np.pi, 3
        )
        f = gradient(w)[active]
        norm = np.max(np.abs(f))
        ok = False
        for _ in range(newton_steps):
            if norm < tol:
                ok = True
                break
            try:
                block = jacobian(w)[np.ix_(active, active)]
                step_active = np.linalg.solve(block, -f)
            except np.linalg.LinAlgError:
                break
            step = np.zeros(3, dtype=complex)
            step[active] = step_active
            scale = 1.0
            improved = False
            for _ in range(25):
                cand = w + scale * step
                fc = gradient(cand)[active]
                nc = np.max(np.abs(fc))
                if nc < norm:
                    w, f, norm = cand, fc, nc
                    improved = True
                    break
                scale /= 2
            if not improved:
                break
        if not ok:
            continue
        coords = tuple(complex(c) for c in np.exp(w))
        if any(abs(c) == 0 for c in coords):
            continue
        duplicate = False
        for prior, _vals in found:
            if all(
                abs(a - b) <= 1e-4 * max(abs(a), abs(b))
                for a, b in zip(prior, coords)
            ):
                duplicate = True
                break
        if not duplicate:
            found.append((coords, estimate_valuations(coords, t)))
    return found
