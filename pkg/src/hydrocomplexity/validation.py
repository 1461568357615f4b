"""Self-checks shared by ``hydrocomplexity validate`` and the acceptance tests.

Each check returns a :class:`CheckResult` carrying its tolerance and the worst
residual it saw, so the JSON summary is self-describing.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from . import closedform
from .hydrogenic import QuantumState, states
from .measures import (
    ComplexityReport,
    analytic_report,
    complexity_momentum,
    complexity_position,
    oracle_measures,
)
from .quadrature import DEFAULT_REL_TOL, QuadratureError

QUANTITIES = ("disequilibrium", "shannon", "complexity")
SPACES = ("position", "momentum")


@dataclass
class CheckResult:
    name: str
    tolerance: float
    residual: float
    passed: bool
    cases: int
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def measure_diff(quantity: str, a: float, b: float) -> float:
    """Relative difference; entropies are compared on exp-scale, i.e. absolutely
    with a floor of 1 in the denominator."""
    if quantity == "shannon":
        return abs(a - b) / max(1.0, abs(b))
    if a == b:
        return 0.0
    return abs(a - b) / abs(b)


def report_diff(r1: ComplexityReport, r2: ComplexityReport) -> tuple[float, str]:
    worst, where = 0.0, ""
    for sp in SPACES:
        for q in QUANTITIES:
            a = getattr(getattr(r1, sp), q).value
            b = getattr(getattr(r2, sp), q).value
            d = measure_diff(q, a, b)
            if not d <= worst:  # also catches nan
                worst, where = d, f"{sp}.{q}"
    return worst, where


def closed_report(state: QuantumState, Z: float = 1.0) -> ComplexityReport | None:
    """Closed-form report when one exists (ground or circular states)."""
    if state.is_ground:
        return closedform.ground_report(state.D, Z)
    if state.is_circular:
        return closedform.circular_report(state.D, state.n, Z)
    return None


def state_matrix(dims: Iterable[int], n_max: int) -> list[QuantumState]:
    return [s for D in dims for n in range(1, n_max + 1) for s in states(D, n)]


def _finish(name, tol, residual, cases, worst_case, failures) -> CheckResult:
    passed = not failures and residual <= tol
    detail = "; ".join(failures[:5])
    if worst_case and not detail:
        detail = f"worst: {worst_case}"
    return CheckResult(name, tol, residual, passed, cases, detail)


def check_ground_position(
    dims: Sequence[int] = range(2, 11), route_dims: Sequence[int] = range(2, 7),
    rel_tol: float = DEFAULT_REL_TOL, tol: float = 64 * 2.22e-16, route_tol: float = 1e-6,
) -> CheckResult:
    """Closed ground-state C[rho] equals (e/2)^D; pipeline and oracle agree with it."""
    worst, where, failures = 0.0, "", []
    for D in dims:
        c = closedform.ground_report(D).position.complexity.value
        d = abs(c / (math.e / 2) ** D - 1)
        if d > worst:
            worst, where = d, f"D={D}"
    for D in route_dims:
        s = QuantumState.ground(D)
        try:
            p = complexity_position(s, 1.0, rel_tol).value
            o = oracle_measures(s, 1.0, rel_tol).position.complexity.value
        except (QuadratureError, ValueError, OverflowError) as exc:
            failures.append(f"route_agreement D={D}: {type(exc).__name__}: {exc}")
            continue
        d = measure_diff("complexity", p, o)
        if not d <= route_tol:
            failures.append(f"route_agreement D={D}: pipeline {p!r} vs oracle {o!r}")
    return _finish("ground_position", tol, worst, len(dims), where, failures)


REFERENCE_GROUND_MOMENTUM = {2: 1.7926, 3: 2.3545, 4: 3.0799}


def matches_reference(value: float, reference: float, decimals: int = 4) -> bool:
    """Agreement with a reference value to its last decimal place, rounded or truncated."""
    ulp = 10.0**-decimals
    return abs(value - reference) <= ulp / 2 or reference <= value < reference + ulp


def check_ground_momentum_reference(rel_tol: float = DEFAULT_REL_TOL) -> CheckResult:
    failures, worst = [], 0.0
    for D, reference in REFERENCE_GROUND_MOMENTUM.items():
        s = QuantumState.ground(D)
        routes = {
            "closed": lambda: closedform.ground_report(D).momentum.complexity.value,
            "pipeline": lambda: complexity_momentum(s, 1.0, rel_tol).value,
            "oracle": lambda: oracle_measures(s, 1.0, rel_tol).momentum.complexity.value,
        }
        for name, route in routes.items():
            try:
                v = route()
            except (QuadratureError, ValueError, OverflowError) as exc:
                failures.append(f"D={D} {name}: {type(exc).__name__}: {exc}")
                worst = math.inf
                continue
            worst = max(worst, abs(v - reference))
            if not matches_reference(v, reference):
                failures.append(f"D={D} {name}: {v:.6f} vs reference {reference}")
    return _finish("ground_momentum_reference", 1e-4, worst, 9, "", failures)


def check_route_agreement(
    matrix: Sequence[QuantumState], rel_tol: float = DEFAULT_REL_TOL, tol: float = 1e-6, Z: float = 1.0
) -> CheckResult:
    """Pipeline vs oracle (and closed form where available) on all six measures."""
    worst, where, failures = 0.0, "", []
    for s in matrix:
        try:
            a = analytic_report(s, Z, rel_tol)
            o = oracle_measures(s, Z, rel_tol)
        except (QuadratureError, ValueError, OverflowError) as exc:
            failures.append(f"{s.label()}: {type(exc).__name__}: {exc}")
            worst = math.inf
            continue
        pairs = [("pipeline/oracle", a, o)]
        c = closed_report(s, Z)
        if c is not None:
            pairs.append(("closed/oracle", c, o))
        for tag, r1, r2 in pairs:
            d, q = report_diff(r1, r2)
            if not d <= worst:
                worst, where = d, f"{s.label()} {tag} {q}"
            if not d <= tol:
                failures.append(f"{s.label()} {tag} {q} disagree by {d:.3e}")
    return _finish("route_agreement", tol, worst, len(matrix), where, failures)


def check_z_invariance(
    matrix: Sequence[QuantumState], z_list: Sequence[float] = (1, 2, 5, 10),
    rel_tol: float = DEFAULT_REL_TOL, tol: float = 1e-9,
) -> CheckResult:
    """C[rho], C[gamma] computed at several Z agree (pipeline and closed routes)."""
    worst, where, failures = 0.0, "", []
    for s in matrix:
        routes = [lambda Z: analytic_report(s, Z, rel_tol)]
        if closed_report(s) is not None:
            routes.append(lambda Z: closed_report(s, Z))
        for route in routes:
            try:
                reps = [route(float(Z)) for Z in z_list]
            except (QuadratureError, ValueError) as exc:
                failures.append(f"{s.label()}: {exc}")
                worst = math.inf
                continue
            for sp in SPACES:
                ref = getattr(reps[0], sp).complexity.value
                for Z, r in zip(z_list, reps[1:]):
                    d = measure_diff("complexity", getattr(r, sp).complexity.value, ref)
                    if d > worst:
                        worst, where = d, f"{s.label()} {reps[0].method.value} {sp}"
    return _finish("z_invariance", tol, worst, len(matrix), where, failures)


def check_normalization(matrix: Sequence[QuantumState], rel_tol: float = DEFAULT_REL_TOL, tol: float = 1e-9) -> CheckResult:
    worst, where, failures = 0.0, "", []
    for s in matrix:
        try:
            diag = oracle_measures(s, 1.0, rel_tol).diagnostics
        except QuadratureError as exc:
            failures.append(f"{s.label()}: {exc}")
            worst = math.inf
            continue
        for key in ("norm_position", "norm_momentum"):
            d = abs(diag[key][0] - 1.0)
            if d > worst:
                worst, where = d, f"{s.label()} {key}"
    return _finish("normalization", tol, worst, len(matrix), where, failures)


def check_circular_reduction(dims: Sequence[int] = range(2, 11), tol: float = 1e-12) -> CheckResult:
    """circular_report(D, 1) reproduces ground_report(D)."""
    worst, where = 0.0, ""
    for D in dims:
        for Z in (1.0, 3.0):
            d, q = report_diff(closedform.circular_report(D, 1, Z), closedform.ground_report(D, Z))
            if d > worst:
                worst, where = d, f"D={D} Z={Z} {q}"
    return _finish("circular_reduction", tol, worst, len(dims), where, [])


def run_validation(
    dims: Sequence[int] = (2, 3, 4), n_max: int = 2, z_list: Sequence[float] = (1, 2, 5, 10),
    rel_tol: float = DEFAULT_REL_TOL,
) -> dict:
    matrix = state_matrix(dims, n_max)
    circulars = [QuantumState.circular(D, n) for D in dims for n in range(1, n_max + 2)]
    checks = [
        check_ground_position(),
        check_ground_momentum_reference(rel_tol),
        check_route_agreement(matrix + [c for c in circulars if c.n > n_max], rel_tol),
        check_z_invariance(matrix, z_list, rel_tol),
        check_normalization(matrix, rel_tol),
        check_circular_reduction(),
    ]
    return {
        "passed": all(c.passed for c in checks),
        "config": {"dims": list(dims), "n_max": n_max, "z_list": list(z_list), "rel_tol": rel_tol},
        "checks": [c.as_dict() for c in checks],
    }
