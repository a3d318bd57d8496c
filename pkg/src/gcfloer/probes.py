"""Probe-based displaceability tests on the cut polytope.

A probe starts at a point in the interior of a facet, travels along a
primitive integer direction pairing to +1 with the facet's inner normal,
and ends where it leaves the polytope.  A torus fiber strictly less than
halfway along some probe is displaceable.  All geometry here is exact
rational; the residual set has measure zero, so floating point would never
hit it.

Probes whose closed segment meets the distinguished singular vertex are
rejected: the torus structure (and with it the probe argument) fails there.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, gcd, lcm

from .polytope import (
    HPolytope,
    WoodwardParams,
    build_cut_polytope,
    classify_point,
    facet_interior_contains,
    vertices,
)
from .ratlin import dot, qvector


class DirectionNotInwardError(ValueError):
    pass


@dataclass(frozen=True)
class Probe:
    facet: int
    direction: tuple  # primitive integers
    base: tuple       # Fractions on the facet


@dataclass(frozen=True)
class ProbeCheck:
    displaces: bool
    reason: str | None = None
    along: Fraction | None = None
    length: Fraction | None = None

    def __bool__(self):
        return self.displaces


def exit_length(poly: HPolytope, base, direction) -> Fraction:
    """Exact distance (in probe parameter) from base to the boundary.

    Requires the direction to point strictly inward on every facet through
    the base point.
    """
    base = qvector(base)
    values = poly.facet_values(base)
    pairings = [dot(normal, direction) for normal, _ in poly.facets]
    for i, v in enumerate(values):
        if v == 0 and pairings[i] <= 0:
            raise DirectionNotInwardError(
                f"direction not inward on facet {poly.labels[i]}"
            )
    candidates = [
        Fraction(values[i]) / -pairings[i]
        for i in range(len(values))
        if pairings[i] < 0
    ]
    if not candidates:
        raise ValueError("direction never exits (polytope unbounded?)")
    return min(candidates)


def _is_primitive(direction) -> bool:
    ints = [int(d) for d in direction]
    return any(ints) and gcd(*(abs(d) for d in ints)) == 1


def probe_displaces(poly: HPolytope, probe: Probe, u) -> ProbeCheck:
    """Strict halfway test; malformed probes come back False with a reason."""
    u = qvector(u)
    normal = poly.facets[probe.facet][0]
    direction = tuple(int(d) for d in probe.direction)
    if not _is_primitive(direction):
        return ProbeCheck(False, "direction-not-primitive")
    if dot(direction, normal) != 1:
        return ProbeCheck(False, "normal-pairing-not-one")
    base = qvector(probe.base)
    if not facet_interior_contains(poly, probe.facet, base):
        return ProbeCheck(False, "base-not-in-facet-interior")
    # u = base + s * direction for a single rational s
    s = None
    for du, dd in zip((a - b for a, b in zip(u, base)), direction):
        if dd == 0:
            if du != 0:
                return ProbeCheck(False, "point-not-on-probe")
        else:
            si = Fraction(du, dd)
            if s is None:
                s = si
            elif s != si:
                return ProbeCheck(False, "point-not-on-probe")
    if s is None or s <= 0:
        return ProbeCheck(False, "point-not-on-probe")
    length = exit_length(poly, base, direction)
    if poly.distinguished is not None:
        sv = _segment_parameter(base, direction, poly.distinguished)
        if sv is not None and 0 <= sv <= length:
            return ProbeCheck(False, "segment-hits-singular-vertex", s, length)
    if s >= length:
        return ProbeCheck(False, "point-not-on-probe", s, length)
    if 2 * s < length:
        return ProbeCheck(True, None, s, length)
    return ProbeCheck(False, "not-before-halfway", s, length)


def _segment_parameter(base, direction, point):
    s = None
    for pu, bu, dd in zip(point, base, direction):
        if dd == 0:
            if pu != bu:
                return None
        else:
            si = Fraction(pu - bu, dd)
            if s is None:
                s = si
            elif s != si:
                return None
    return s


def probe_through(poly: HPolytope, facet: int, direction, u) -> Probe:
    """The probe from ``facet`` along ``direction`` whose ray passes through u."""
    u = qvector(u)
    s = poly.facet_value(facet, u)  # pairing with the facet normal is +1
    base = tuple(c - s * d for c, d in zip(u, direction))
    return Probe(facet, tuple(int(d) for d in direction), base)


# -- the four lemma families ---------------------------------------------------

@dataclass(frozen=True)
class ProbeFamily:
    """A (facet, direction) family together with the arithmetic condition
    under which its lemma asserts displaceability (used for cross-checks;
    the sweep itself relies on the geometric halfway test only)."""

    name: str
    facet: int
    direction: tuple
    condition: object  # callable(u) -> bool


def lemma_probe_families(p: WoodwardParams) -> list[ProbeFamily]:
    n, r, l2, l3 = p.n, p.r, p.lam2, p.lam3
    a = r - n * (l2 - l3)
    mid = Fraction(l2 + l3, 2)

    def l3_top(u):
        return u[0] - u[2]

    def l5_front(u):
        return u[0] - l2

    def l6_back(u):
        return -u[0] - n * u[1] + r + n * l3

    return [
        ProbeFamily(
            "top,-e3", 2, (0, 0, -1),
            lambda u: u[0] + u[1] - 2 * u[2] < 0,
        ),
        ProbeFamily(
            "bottom,+e3", 3, (0, 0, 1),
            lambda u: u[0] + u[1] - 2 * u[2] > 0,
        ),
        ProbeFamily(
            "left,+e2", 0, (0, 1, 0),
            lambda u: u[1] < mid and l2 <= u[2] < a and l2 < u[0] < a,
        ),
        ProbeFamily(
            "right,-e2", 1, (0, -1, 0),
            lambda u: u[1] > mid and l2 < u[2] < a and l2 < u[0] < a,
        ),
        ProbeFamily(
            "back,-e1,upper", 5, (-1, 0, 0),
            lambda u: u[2] > l2 and l6_back(u) < l3_top(u),
        ),
        ProbeFamily(
            "top,+e1", 2, (1, 0, 0),
            lambda u: u[2] > l2 and l3_top(u) < l6_back(u),
        ),
        ProbeFamily(
            "back,-e1,lower", 5, (-1, 0, 0),
            lambda u: u[2] < l2 and l6_back(u) < l5_front(u),
        ),
        ProbeFamily(
            "front,+e1", 4, (1, 0, 0),
            lambda u: u[2] < l2 and l5_front(u) < l6_back(u),
        ),
    ]


def residual_set_predicate(p: WoodwardParams):
    """Membership test for the residual segment plus the central valuation.

    Segment: ((3 lam2 - lam3)/2 - t, (lam2 + lam3)/2 + t, lam2) for
    0 <= t <= (lam2 - lam3)/2.
    """
    from .critsolve import case_a_valuation

    l2, l3 = p.lam2, p.lam3
    u0 = case_a_valuation(p)
    t_max = Fraction(l2 - l3, 2)
    u1_start = Fraction(3 * l2 - l3, 2)
    u2_start = Fraction(l2 + l3, 2)

    def member(u) -> bool:
        u = qvector(u)
        if u == u0:
            return True
        if u[2] != l2:
            return False
        t = u[1] - u2_start
        return 0 <= t <= t_max and u[0] == u1_start - t

    return member


# -- grid sweeps ---------------------------------------------------------------

LEMMA_FAMILIES = "lemma-families"
GENERIC_SEARCH = "generic-search"


@dataclass(frozen=True)
class Verdict:
    displaced: bool
    family: str | None = None
    facet: int | None = None
    direction: tuple | None = None


@dataclass(frozen=True)
class SweepResult:
    resolution: int
    verdicts: dict  # grid point -> Verdict


def interior_grid_points(poly: HPolytope, d: int) -> list:
    """All interior points with coordinates of denominator d, integer-scaled
    membership tests for speed."""
    if d < 2:
        raise ValueError("grid resolution must be >= 2")
    verts = vertices(poly)
    dim = poly.dimension
    lo = [min(v[k] for v in verts) for k in range(dim)]
    hi = [max(v[k] for v in verts) for k in range(dim)]
    ranges = [
        range(ceil(lo[k] * d), floor(hi[k] * d) + 1) for k in range(dim)
    ]
    scale = lcm(*(f.denominator for _, f in poly.facets), 1)
    scaled = [
        (normal, int(offset * scale * d)) for normal, offset in poly.facets
    ]
    out = []
    for ks in product(*ranges):
        if all(scale * dot(n, ks) + c > 0 for n, c in scaled):
            out.append(tuple(Fraction(k, d) for k in ks))
    return out


def generic_directions(maxdir: int) -> list:
    dirs = []
    for v in product(range(-maxdir, maxdir + 1), repeat=3):
        if any(v) and gcd(*(abs(x) for x in v)) == 1:
            dirs.append(v)
    return dirs


def _candidate_probes(poly: HPolytope, mode, families, maxdir):
    """(name, facet, direction) triples tried in order at every grid point."""
    if mode == LEMMA_FAMILIES:
        return [(f.name, f.facet, f.direction) for f in families]
    cands = []
    for direction in generic_directions(maxdir):
        for i, (normal, _) in enumerate(poly.facets):
            if dot(direction, normal) == 1:
                cands.append((f"generic{direction}", i, direction))
    return cands


def _classify_grid_point(poly, candidates, u):
    for name, facet, direction in candidates:
        probe = probe_through(poly, facet, direction, u)
        if probe_displaces(poly, probe, u):
            return u, Verdict(True, name, facet, tuple(direction))
    return u, Verdict(False)


_WORKER_STATE = {}


def _worker_init(poly, candidates):
    _WORKER_STATE["poly"] = poly
    _WORKER_STATE["candidates"] = candidates


def _worker_classify(u):
    return _classify_grid_point(_WORKER_STATE["poly"], _WORKER_STATE["candidates"], u)


def sweep(
    poly: HPolytope,
    p: WoodwardParams,
    d: int,
    mode: str = LEMMA_FAMILIES,
    maxdir: int = 3,
    jobs: int | None = None,
) -> SweepResult:
    """Classify every interior grid point of denominator d; deterministic
    grid order, optional process parallelism."""
    families = lemma_probe_families(p) if mode == LEMMA_FAMILIES else []
    candidates = _candidate_probes(poly, mode, families, maxdir)
    points = interior_grid_points(poly, d)
    if jobs is None:
        jobs = 1
    if jobs <= 1 or len(points) < 512:
        results = [_classify_grid_point(poly, candidates, u) for u in points]
    else:
        chunk = max(64, len(points) // (8 * jobs))
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_worker_init, initargs=(poly, candidates)
        ) as pool:
            results = list(pool.map(_worker_classify, points, chunksize=chunk))
    return SweepResult(d, dict(results))


def default_jobs() -> int:
    return os.cpu_count() or 1
