"""Quadrature-free expressions for ground (n = 1, all mu = 0) and circular
(all mu = n - 1) states. Gamma ratios are formed in log space."""
from __future__ import annotations

import math

from .hydrogenic import QuantumState
from .measures import ComplexityReport, MeasureResult, Method, SpaceMeasures
from .specfun import digamma, lngamma

__all__ = [
    "ground_report",
    "circular_report",
    "ground_complexity_position",
    "ground_complexity_momentum",
    "circular_complexity_position",
    "circular_complexity_momentum",
    "circular_momentum_constant",
]

_EPS = 2.220446049250313e-16
LNPI = math.log(math.pi)
LN2 = math.log(2.0)


def _check(D, n=1):
    if int(D) != D or D < 2:
        raise ValueError(f"dimension must satisfy D >= 2, got D={D}")
    if int(n) != n or n < 1:
        raise ValueError(f"principal number must satisfy n >= 1, got n={n}")


def _m(v: float, scale: float = 1.0) -> MeasureResult:
    return MeasureResult(v, 16 * _EPS * max(abs(v), scale), Method.CLOSED_FORM)


def _space(log_diseq: float, shannon: float, complexity: float) -> SpaceMeasures:
    # the Z-free complexity comes from its own closed expression rather than
    # exp(log_diseq + shannon), which would cost a few ulps
    return SpaceMeasures(_m(math.exp(log_diseq)), _m(shannon, 1.0), _m(complexity))


def ground_complexity_position(D: int) -> float:
    return (math.e / 2) ** D


def ground_complexity_momentum(D: int) -> float:
    _check(D)
    log_c = (
        D * LN2
        + lngamma((D + 1) / 2)
        + lngamma(2 + 1.5 * D)
        - 0.5 * LNPI
        - lngamma(2 * D + 2)
        + (D + 1) * (digamma(D + 1) - digamma((D + 2) / 2))
    )
    return math.exp(log_c)


def ground_report(D: int, Z: float = 1.0) -> ComplexityReport:
    """Ground-state densities' disequilibria, entropies and complexities."""
    _check(D)
    lz = math.log(Z)
    lg = lngamma((D + 1) / 2)
    log_dq_pos = D * lz - D * math.log(D - 1) - (D - 1) / 2 * LNPI - lg
    s_pos = D * math.log(D - 1) - D * LN2 + (D - 1) / 2 * LNPI + lg + D - D * lz
    log_dq_mom = (
        D * (math.log(2 * D - 2) - lz)
        - (D + 2) / 2 * LNPI
        + 2 * lg
        + lngamma(2 + 1.5 * D)
        - lngamma(2 * D + 2)
    )
    s_mom = (
        (D + 1) / 2 * LNPI
        - D * math.log(D - 1)
        - lg
        + (D + 1) * (digamma(D + 1) - digamma(D / 2 + 1))
        + D * lz
    )
    return ComplexityReport(
        QuantumState.ground(D), Z, Method.CLOSED_FORM,
        _space(log_dq_pos, s_pos, ground_complexity_position(D)),
        _space(log_dq_mom, s_mom, ground_complexity_momentum(D)),
    )


def circular_momentum_constant(n: int, D: int) -> float:
    """The digamma combination appearing in the circular momentum entropy."""
    return (
        (2 * n + D - 1) / (2 * n + D - 3)
        - (D + 1) / (2 * n + D - 2)
        - (n - 1) * digamma(n)
        - (D + 1) / 2 * digamma(n + (D - 2) / 2)
        + (n + (D - 1) / 2) * digamma(n + (D - 3) / 2)
    )


def circular_complexity_position(D: int, n: int) -> float:
    _check(D, n)
    log_c = (
        lngamma(n - 0.5)
        + lngamma(2 * n + (D - 3) / 2)
        - (2 * n + D - 2) * LN2
        - 0.5 * LNPI
        - lngamma(n + (D - 1) / 2)
        + 2 * n + D - 2
        - (n - 1) * (digamma(n) + digamma(n + (D - 1) / 2))
    )
    return math.exp(log_c)


def circular_complexity_momentum(D: int, n: int) -> float:
    _check(D, n)
    log_c = (
        (4 * n + 2 * D - 3) * LN2
        + lngamma(n + (D - 1) / 2)
        + lngamma(2 * n - 1)
        + lngamma(2 * n + 1.5 * D)
        - 0.5 * LNPI
        - lngamma(n)
        - lngamma(4 * n + 2 * D - 2)
        + circular_momentum_constant(n, D)
    )
    return math.exp(log_c)


def circular_report(D: int, n: int, Z: float = 1.0) -> ComplexityReport:
    """Circular-state measures; reduces to :func:`ground_report` at n = 1."""
    _check(D, n)
    lz = math.log(Z)
    q = 2 * n + D - 3
    lg_h = lngamma(n + (D - 1) / 2)
    log_dq_pos = (
        D * lz
        + lngamma(n - 0.5)
        + lngamma(2 * n + (D - 3) / 2)
        - (2 * n - 2) * LN2
        - D / 2 * LNPI
        - D * math.log(q)
        - lngamma(n)
        - 2 * lg_h
    )
    s_pos = (
        2 * n + D - 2
        - (n - 1) * (digamma(n) + digamma(n + (D - 1) / 2))
        - D * LN2
        + D * math.log(q)
        + (D - 1) / 2 * LNPI
        + lngamma(n)
        + lg_h
        - D * lz
    )
    log_dq_mom = (
        (4 * n + D - 4) * LN2
        + D * math.log(q)
        + 2 * lg_h
        + lngamma(2 * n - 1)
        + lngamma(2 * n + 1.5 * D)
        - D * lz
        - (D + 2) / 2 * LNPI
        - 2 * lngamma(n)
        - lngamma(4 * n + 2 * D - 2)
    )
    s_mom = circular_momentum_constant(n, D) + (
        (D + 1) * LN2 + D * lz + (D + 1) / 2 * LNPI + lngamma(n) - D * math.log(q) - lg_h
    )
    return ComplexityReport(
        QuantumState.circular(D, n), Z, Method.CLOSED_FORM,
        _space(log_dq_pos, s_pos, circular_complexity_position(D, n)),
        _space(log_dq_mom, s_mom, circular_complexity_momentum(D, n)),
    )
