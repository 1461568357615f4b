"""Gauss rules for the Laguerre/Gegenbauer/Legendre weights and an adaptive
composite Gauss-Legendre integrator for integrands with log singularities."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .specfun import Family, PolySpec, jacobi_eigenvalues, newton_step, zeroth_moment

__all__ = [
    "WeightFunction",
    "QuadratureRule",
    "QuadratureError",
    "gauss_rule",
    "integrate_adaptive",
    "DEFAULT_REL_TOL",
]

DEFAULT_REL_TOL = 1e-10
MAX_POINTS = 512
HIGH_ORDER = 30
LOW_ORDER = 15
MAX_LEVEL = 60
MAX_PANELS = 20000
_EPS = np.finfo(float).eps


class QuadratureError(ArithmeticError):
    """Adaptive integration did not converge; best estimate attached."""

    def __init__(self, message: str, value: float = math.nan, err_est: float = math.inf):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


@dataclass(frozen=True)
class WeightFunction:
    """``kind`` is one of 'genlaguerre', 'gegenbauer', 'legendre'."""

    kind: str
    param: float = 0.0

    @classmethod
    def gen_laguerre(cls, alpha: float) -> WeightFunction:
        return cls("genlaguerre", float(alpha))

    @classmethod
    def gegenbauer(cls, lam: float) -> WeightFunction:
        return cls("gegenbauer", float(lam))

    @classmethod
    def legendre(cls) -> WeightFunction:
        return cls("legendre", 0.5)

    @property
    def family(self) -> Family:
        return Family.LAGUERRE if self.kind == "genlaguerre" else Family.GEGENBAUER

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, math.inf) if self.kind == "genlaguerre" else (-1.0, 1.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "genlaguerre":
            return x**self.param * np.exp(-x)
        if self.kind == "legendre":
            return np.ones_like(x)
        return (1.0 - x * x) ** (self.param - 0.5)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    weight_id: WeightFunction

    @property
    def domain(self) -> tuple[float, float]:
        return self.weight_id.domain

    @property
    def order(self) -> int:
        return len(self.nodes)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Sum of ``w_i f(x_i)``: the weighted integral of ``f``."""
        return float(np.dot(self.weights, f(self.nodes)))


def _christoffel_log_sums(family: Family, param: float, n: int, x: np.ndarray) -> np.ndarray:
    """log of sum_{j<n} p_j(x)^2 for orthonormal p_j, overflow-safe."""
    spec = PolySpec(family, n - 1, param)
    from .specfun import _coeffs  # shared recurrence table

    a, b = _coeffs(spec.family, spec.param, n)
    sb = np.sqrt(b)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / sb[0])
    total = p * p
    log_scale = np.zeros_like(x)
    for j in range(n - 1):
        p_next = ((x - a[j]) * p - (sb[j] if j else 0.0) * p_prev) / sb[j + 1]
        p_prev, p = p, p_next
        total = total + p * p
        big = np.abs(p) > 1e100
        if big.any():
            s = np.where(big, 1e-100, 1.0)
            p, p_prev, total = p * s, p_prev * s, total * s * s
            log_scale = log_scale + np.where(big, 2 * math.log(1e100), 0.0)
    return np.log(total) + log_scale


@lru_cache(maxsize=512)
def gauss_rule(weight_id: WeightFunction, n_points: int) -> QuadratureRule:
    """n-point Gauss rule for ``weight_id``.

    Nodes are the Golub-Welsch eigenvalues polished by Newton steps on the
    orthonormal polynomial; weights are the Christoffel numbers
    ``1 / sum_j p_j(x_i)^2``, which keep full relative accuracy even where
    the weight is exponentially small.
    """
    if int(n_points) != n_points or not 1 <= n_points <= MAX_POINTS:
        raise ValueError(f"n_points must be an integer in [1, {MAX_POINTS}], got {n_points!r}")
    n = int(n_points)
    fam, param = weight_id.family, weight_id.param
    spec = PolySpec(fam, n, param)
    x = jacobi_eigenvalues(fam, param, n)
    if n > 1:
        for _ in range(2):
            x = x - newton_step(spec, x)
    lo, hi = weight_id.domain
    x = np.clip(np.sort(x), np.nextafter(lo, hi), np.nextafter(hi, lo))
    with np.errstate(under="ignore"):
        w = np.exp(-_christoffel_log_sums(fam, param, n, x))
    # one global renormalisation to the exact zeroth moment
    w *= zeroth_moment(fam, param) / w.sum()
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(x, w, weight_id)


@lru_cache(maxsize=1)
def _gl_pair():
    hi = gauss_rule(WeightFunction.legendre(), HIGH_ORDER)
    lo = gauss_rule(WeightFunction.legendre(), LOW_ORDER)
    nodes = np.concatenate([hi.nodes, lo.nodes])
    return nodes, hi.weights, lo.weights


def _panels_eval(g, lefts: np.ndarray, rights: np.ndarray):
    nodes, w_hi, w_lo = _gl_pair()
    half = 0.5 * (rights - lefts)
    mid = 0.5 * (rights + lefts)
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    vals = np.asarray(g(pts.ravel()), dtype=float).reshape(pts.shape)
    hi_vals, lo_vals = vals[:, :HIGH_ORDER], vals[:, HIGH_ORDER:]
    i_hi = half * (hi_vals @ w_hi)
    i_lo = half * (lo_vals @ w_lo)
    i_abs = half * (np.abs(hi_vals) @ w_hi)
    err = np.maximum(np.abs(i_hi - i_lo), 50 * _EPS * i_abs)
    if not (np.all(np.isfinite(i_hi)) and np.all(np.isfinite(err))):
        raise QuadratureError("integrand produced non-finite values")
    return i_hi, err, i_abs


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float],
    breakpoints: Sequence[float] = (),
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    abs_tol: float = 0.0,
    scale: float = 1.0,
) -> tuple[float, float]:
    """Integrate a vectorised ``f`` over ``interval``; returns (value, err_est).

    Composite Gauss-Legendre: each panel is integrated with 30 and 15 points
    and the difference is the panel's error estimate; the panels carrying
    the most error are bisected until the summed estimate falls below
    ``max(rel_tol*|value|, abs_tol)``. Panels never straddle a breakpoint.

    A semi-infinite interval ``(a, inf)`` is mapped onto ``(0, 1)`` by
    ``x = a + scale*t/(1-t)``; ``scale`` should be the length over which ``f``
    decays.

    Raises :class:`QuadratureError` (carrying the best estimate) when a panel
    would need more than 60 bisections or the panel budget is exhausted.
    """
    a, b = float(interval[0]), float(interval[1])
    if not rel_tol >= 1e-13:
        raise ValueError("rel_tol must be >= 1e-13")
    if math.isinf(a) or not a < b:
        raise ValueError(f"invalid interval {interval!r}")
    bps = sorted(float(p) for p in breakpoints)
    if any(not a < p < b for p in bps):
        raise ValueError("breakpoints must lie strictly inside the interval")

    if math.isinf(b):
        s = float(scale)

        def g(t):
            one_minus = 1.0 - t
            return f(a + s * t / one_minus) * (s / (one_minus * one_minus))

        edges = [0.0] + [(p - a) / (s + p - a) for p in bps] + [1.0]
    else:
        g = f
        edges = [a] + bps + [b]
    edges = sorted(set(edges))

    lefts = np.array(edges[:-1])
    rights = np.array(edges[1:])
    vals, errs, absv = _panels_eval(g, lefts, rights)
    panels = {i: (lefts[i], rights[i], vals[i], errs[i], 0, absv[i]) for i in range(len(lefts))}
    next_id = len(panels)
    total = float(vals.sum())
    total_err = float(errs.sum())
    total_abs = float(absv.sum())

    while True:
        # the per-panel roundoff floors sum to at most 50 eps * total_abs
        target = max(rel_tol * abs(total), abs_tol, 100 * _EPS * total_abs)
        if total_err <= target:
            return total, total_err
        if len(panels) > MAX_PANELS:
            raise QuadratureError("panel budget exhausted", total, total_err)
        # pick the largest-error panels whose removal would meet the target
        order = sorted(panels, key=lambda i: -panels[i][3])
        chosen, remaining = [], total_err
        for i in order:
            chosen.append(i)
            remaining -= panels[i][3]
            if remaining <= 0.5 * target:
                break
        split = []
        for i in chosen:
            lo, hi, v, e, lev, _ = panels[i]
            if lev >= MAX_LEVEL:
                if e > target:
                    raise QuadratureError(
                        f"no convergence after {MAX_LEVEL} bisections near [{lo}, {hi}]",
                        total, total_err,
                    )
                continue
            split.append(i)
        if not split:
            raise QuadratureError("no refinable panel left", total, total_err)
        new_l, new_r, levels = [], [], []
        for i in split:
            lo, hi, v, e, lev, _ = panels.pop(i)
            total -= v
            total_err -= e
            m = 0.5 * (lo + hi)
            new_l += [lo, m]
            new_r += [m, hi]
            levels += [lev + 1, lev + 1]
        vals, errs, absv = _panels_eval(g, np.array(new_l), np.array(new_r))
        for lo, hi, v, e, lev, av in zip(new_l, new_r, vals, errs, levels, absv):
            panels[next_id] = (lo, hi, float(v), float(e), lev, float(av))
            next_id += 1
            total += float(v)
            total_err += float(e)
        # resum to avoid drift from incremental updates
        total = math.fsum(p[2] for p in panels.values())
        total_err = math.fsum(p[3] for p in panels.values())
        total_abs = math.fsum(p[5] for p in panels.values())
