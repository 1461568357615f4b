"""Command-line front end: ``compute``, ``sweep`` and ``validate``.

Exit codes: 0 success, 1 invalid input, 2 numerical failure (quadrature did
not converge, or a validation check failed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .hydrogenic import QuantumState
from .measures import ComplexityReport, analytic_report, oracle_measures
from .quadrature import DEFAULT_REL_TOL, QuadratureError
from .validation import closed_report, run_validation

log = logging.getLogger("hydrocomplexity")

REL_TOL_ENV = "HYDROCOMPLEXITY_REL_TOL"
CSV_COLUMNS = ["D", "n", "mu", "Z", "space", "method", "disequilibrium", "shannon",
               "complexity", "product", "err_est", "error"]
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(ValueError):
    pass


def default_rel_tol() -> float:
    raw = os.environ.get(REL_TOL_ENV)
    if raw is None:
        return DEFAULT_REL_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{REL_TOL_ENV}={raw!r} is not a number") from None


def parse_int_range(text: str) -> list[int]:
    """'3' -> [3]; '2:5' -> [2, 3, 4, 5] (inclusive); '2,4,6' -> [2, 4, 6]."""
    try:
        if ":" in text:
            lo, hi = (int(v) for v in text.split(":"))
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse integer range {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse number list {text!r}") from None


def build_state(D: int, state: str, n: int | None, mu: str | None) -> QuantumState:
    try:
        if mu is not None:
            if n is None:
                raise UsageError("--mu requires --n")
            return QuantumState(D, n, tuple(int(v) for v in mu.split(",")))
        if state == "ground":
            return QuantumState.ground(D)
        if state == "circular":
            return QuantumState.circular(D, n if n is not None else 1)
        raise UsageError("a general state needs --n and --mu")
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def reports_for(state: QuantumState, Z: float, method: str, rel_tol: float) -> list[ComplexityReport]:
    out = []
    if method in ("closed", "all"):
        c = closed_report(state, Z)
        if c is None and method == "closed":
            raise UsageError("closed forms exist only for ground and circular states")
        if c is not None:
            out.append(c)
    if method in ("pipeline", "all"):
        out.append(analytic_report(state, Z, rel_tol))
    if method in ("oracle", "all"):
        out.append(oracle_measures(state, Z, rel_tol))
    return out


def report_rows(state: QuantumState, Z: float, reports, spaces: str) -> list[dict]:
    rows = []
    for rep in reports:
        product = rep.product.value
        for space in ("position", "momentum"):
            if spaces not in ("both", space):
                continue
            m = getattr(rep, space)
            rows.append({
                "D": state.D, "n": state.n, "mu": ",".join(map(str, state.mu)), "Z": Z,
                "space": space, "method": rep.method.value,
                "disequilibrium": m.disequilibrium.value, "shannon": m.shannon.value,
                "complexity": m.complexity.value, "product": product,
                "err_est": m.complexity.err_est, "error": "",
            })
    return rows


def _fmt(v, digits: int) -> str:
    if isinstance(v, float):
        return "" if math.isnan(v) else f"{v:.{digits}g}"
    return str(v)


def render_table(rows: list[dict]) -> str:
    cols = [c for c in CSV_COLUMNS if c != "error" or any(r["error"] for r in rows)]
    cells = [[_fmt(r[c], 9) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def state_json(state: QuantumState, Z: float, reports) -> dict:
    return {
        "D": state.D, "n": state.n, "mu": list(state.mu), "Z": Z,
        "reports": [rep.as_dict() for rep in reports],
    }


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def cmd_compute(args) -> int:
    rel_tol = args.rel_tol if args.rel_tol is not None else default_rel_tol()
    state = build_state(args.dim, args.state, args.n, args.mu)
    reps = reports_for(state, args.z, args.method, rel_tol)
    if args.format == "json":
        _emit(json.dumps(state_json(state, args.z, reps), indent=2) + "\n", args.output)
    else:
        rows = report_rows(state, args.z, reps, args.space)
        _emit(render_csv(rows) if args.format == "csv" else render_table(rows), args.output)
    return EXIT_OK


def _sweep_point(job):
    D, n, kind, Z, method, rel_tol, spaces = job
    state = QuantumState.ground(D) if kind == "ground" else QuantumState.circular(D, n)
    try:
        reps = reports_for(state, Z, method, rel_tol)
    except (QuadratureError, ValueError) as exc:
        row = dict.fromkeys(CSV_COLUMNS, math.nan)
        row.update(D=D, n=state.n, mu=",".join(map(str, state.mu)), Z=Z, space=spaces,
                   method=method, error=f"{type(exc).__name__}: {exc}")
        return [row], None
    return report_rows(state, Z, reps, spaces), state_json(state, Z, reps)


PLOT_SCRIPT = '''"""Plot C vs D and C vs n from a hydrocomplexity sweep CSV (needs matplotlib)."""
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else {csv_path!r}
rows = [r for r in csv.DictReader(open(path)) if not r["error"]]
fig, axes = plt.subplots(1, 2, figsize=(10, 4))
for ax, key in zip(axes, ("D", "n")):
    for space in ("position", "momentum"):
        for method in sorted({{r["method"] for r in rows}}):
            pts = sorted((int(r[key]), float(r["complexity"])) for r in rows
                         if r["space"] == space and r["method"] == method)
            if pts:
                ax.plot(*zip(*pts), marker="o", label=f"{{space}} ({{method}})")
    ax.set_xlabel(key)
    ax.set_ylabel("shape complexity")
    ax.legend()
fig.tight_layout()
plt.show()
'''


def cmd_sweep(args) -> int:
    rel_tol = args.rel_tol if args.rel_tol is not None else default_rel_tol()
    dims = parse_int_range(args.dim)
    ns = [1] if args.state == "ground" else parse_int_range(args.n)
    if not dims or not ns:
        raise UsageError("empty sweep range")
    for D in dims:
        for n in ns:
            build_state(D, args.state, n, None)
    jobs = [(D, n, args.state, args.z, args.method, rel_tol, args.space) for D in dims for n in ns]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(j) for j in jobs]
    rows = [r for rs, _ in results for r in rs]
    failed = sum(1 for r in rows if r["error"])
    if args.format == "json":
        text = json.dumps({"states": [j for _, j in results if j is not None],
                           "errors": [r for r in rows if r["error"]]}, indent=2) + "\n"
    elif args.format == "csv":
        text = render_csv(rows)
    else:
        text = render_table(rows)
    _emit(text, args.output)
    if args.plot_script:
        csv_path = Path(args.plot_script).with_suffix(".csv")
        csv_path.write_text(render_csv(rows), encoding="utf-8")
        Path(args.plot_script).write_text(PLOT_SCRIPT.format(csv_path=str(csv_path)), encoding="utf-8")
    if failed:
        log.warning("%d sweep row(s) failed", failed)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_validate(args) -> int:
    rel_tol = args.rel_tol if args.rel_tol is not None else default_rel_tol()
    dims = parse_int_range(args.dims)
    if not dims:
        raise UsageError("empty --dims")
    summary = run_validation(dims, args.n_max, parse_floats(args.z_list), rel_tol)
    _emit(json.dumps(summary, indent=2) + "\n", args.output)
    for c in summary["checks"]:
        log.info("%s %s residual=%.3e tol=%.1e", "PASS" if c["passed"] else "FAIL",
                 c["name"], c["residual"], c["tolerance"])
    return EXIT_OK if summary["passed"] else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hydrocomplexity",
        description="Shape complexity of D-dimensional hydrogenic states.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--z", type=float, default=1.0, help="nuclear charge Z (default 1)")
        p.add_argument("--space", choices=["position", "momentum", "both"], default="both")
        p.add_argument("--method", choices=["closed", "pipeline", "oracle", "all"], default="all")
        p.add_argument("--rel-tol", type=float, default=None,
                       help=f"quadrature tolerance (default 1e-10 or ${REL_TOL_ENV})")
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("-o", "--output", help="write to a file instead of stdout")

    p = sub.add_parser("compute", help="measures of a single state")
    p.add_argument("--dim", type=int, required=True, help="dimension D >= 2")
    p.add_argument("--state", choices=["ground", "circular", "tower"], default="tower")
    p.add_argument("--n", type=int, help="principal quantum number")
    p.add_argument("--mu", help="hyperangular tower mu_1,...,mu_{D-1}")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="ground or circular states over ranges of D and n")
    p.add_argument("--dim", required=True, help="D, D1:D2 or D1,D2,...")
    p.add_argument("--n", default="1", help="n range for circular states")
    p.add_argument("--state", choices=["ground", "circular"], default="ground")
    p.add_argument("--plot-script", help="also write a matplotlib script (and CSV beside it)")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run the self-consistency checks")
    p.add_argument("--dims", default="2:4")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--z-list", default="1,2,5,10")
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"numerical failure: {exc} (best estimate {exc.value!r} +/- {exc.err_est!r})", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
