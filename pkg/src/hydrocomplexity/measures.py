"""Disequilibrium, Shannon entropy and shape complexity of hydrogenic densities.

Two independent routes are provided:

* the analytic pipeline: the radial/angular/momentum fourth-power integrals
  ``K1``, ``K2``, ``K3``, the closed constants ``A``, ``B``, ``F`` and the
  entropic functionals ``E1`` (Laguerre) and ``E2`` (Gegenbauer);
* :func:`oracle_measures`: direct factorised quadrature of ``rho**2`` and
  ``-rho ln rho`` (and the momentum analogues), touching none of the above.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import hydrogenic as hyd
from .hydrogenic import QuantumState
from .quadrature import DEFAULT_REL_TOL, QuadratureError, WeightFunction, gauss_rule, integrate_adaptive
from .specfun import Family, PolySpec, digamma, lngamma, poly_eval, poly_log_abs, poly_roots, zeroth_moment

__all__ = [
    "Method",
    "MeasureResult",
    "SpaceMeasures",
    "ComplexityReport",
    "DivergentIntegralError",
    "k1_power",
    "K1",
    "K2",
    "K3",
    "E1_laguerre",
    "E2_gegenbauer",
    "A_const",
    "B_const",
    "F_const",
    "angular_entropy",
    "disequilibrium_position",
    "disequilibrium_momentum",
    "shannon_position",
    "shannon_momentum",
    "complexity_position",
    "complexity_momentum",
    "analytic_report",
    "oracle_measures",
]

_EPS = np.finfo(float).eps
LN2PI = math.log(2 * math.pi)


class Method(str, enum.Enum):
    ANALYTIC_PIPELINE = "pipeline"
    ORACLE = "oracle"
    CLOSED_FORM = "closed"


class DivergentIntegralError(QuadratureError):
    pass


@dataclass(frozen=True)
class MeasureResult:
    value: float
    err_est: float
    method: Method

    def __post_init__(self):
        if not (math.isfinite(self.value) and math.isfinite(self.err_est)):
            raise QuadratureError(f"non-finite measure ({self.value}, {self.err_est})")

    def as_dict(self) -> dict:
        return {"value": self.value, "err_est": self.err_est, "method": self.method.value}


@dataclass(frozen=True)
class SpaceMeasures:
    """Disequilibrium, entropy and complexity of one density."""

    disequilibrium: MeasureResult
    shannon: MeasureResult
    complexity: MeasureResult

    @classmethod
    def assemble(cls, diseq: MeasureResult, shannon: MeasureResult) -> SpaceMeasures:
        c = diseq.value * math.exp(shannon.value)
        rel = math.hypot(diseq.err_est / abs(diseq.value), shannon.err_est)
        return cls(diseq, shannon, MeasureResult(c, abs(c) * rel, diseq.method))

    def as_dict(self) -> dict:
        return {
            "disequilibrium": self.disequilibrium.as_dict(),
            "shannon": self.shannon.as_dict(),
            "complexity": self.complexity.as_dict(),
        }


@dataclass(frozen=True)
class ComplexityReport:
    state: QuantumState
    Z: float
    method: Method
    position: SpaceMeasures
    momentum: SpaceMeasures
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def product(self) -> MeasureResult:
        cp, cm = self.position.complexity, self.momentum.complexity
        v = cp.value * cm.value
        rel = math.hypot(cp.err_est / cp.value, cm.err_est / cm.value)
        return MeasureResult(v, abs(v) * rel, self.method)

    def as_dict(self) -> dict:
        return {
            "method": self.method.value,
            "position": self.position.as_dict(),
            "momentum": self.momentum.as_dict(),
            "product": self.product.as_dict(),
        }


def _ratio_err(v: float) -> float:
    return 8 * _EPS * abs(v)


# ---------------------------------------------------------------------------
# fourth-power integrals


def k1_power(D: int) -> float:
    """Power of x multiplying {w_{2L+1}(x) L^2}^2 in the radial K1 integrand."""
    return 3 - D


def K1(D: int, eta: float, L: float) -> float:
    """Integral over (0, inf) of x^(3-D) * {x^(2L+1) e^-x Lt_{eta-L-1}^{2L+1}(x)^2}^2.

    After x = s/2 this is a generalised-Laguerre weighted integral of a
    polynomial of degree 4k, evaluated exactly by a (2k+2)-point Gauss rule.
    """
    k = int(round(eta - L - 1))
    alpha = 2 * L + 1
    beta = 2 * alpha + k1_power(D)
    if beta <= -1:
        raise DivergentIntegralError(f"K1 integrand ~ x^{beta} at the origin: integral diverges")
    spec = PolySpec.laguerre(k, alpha)
    rule = gauss_rule(WeightFunction.gen_laguerre(beta), 2 * k + 2)
    s = rule.integrate(lambda t: poly_eval(spec, t / 2) ** 4)
    return s * 2.0 ** (-(beta + 1))


def K2(mu, D: int) -> float:
    """Integral of |Y_{l,mu}|^4 over the unit sphere S^{D-1}.

    Factorises into 1/(2 pi) times one Gegenbauer integral per polar angle;
    each is a degree-4k polynomial against the weight of parameter lam + mu',
    integrated exactly.
    """
    state_like = _tower(mu, D)
    val = 1.0 / (2 * math.pi)
    for spec, power in state_like.angular_polys:
        k = spec.degree
        rule = gauss_rule(WeightFunction.gegenbauer(spec.param + power), 2 * k + 1)
        val *= rule.integrate(lambda x, s=spec: poly_eval(s, x) ** 4)
    return val


def _tower(mu, D) -> QuantumState:
    mu = tuple(mu)
    return QuantumState(D, abs(mu[0]) + 1, mu)


def K3(D: int, eta: float, L: float, rel_tol: float = DEFAULT_REL_TOL) -> tuple[float, float]:
    """Momentum fourth-power radial integral; returns (value, err_est).

    The integrand u^(4l+D-1) (1+u^2)^-(4L+8) C^4((1-u^2)/(1+u^2)) is taken
    to t = cos(theta) = (1-u^2)/(1+u^2), where it becomes the smooth
    (1/2) sin(theta/2)^(4l+D-1) cos(theta/2)^(4l+3D+3) C(cos theta)^4.
    """
    k = int(round(eta - L - 1))
    l = int(round(L - (D - 3) / 2))
    spec = PolySpec.gegenbauer(k, L + 1)
    ps, pc = 4 * l + D - 1, 4 * l + 3 * D + 3

    def f(theta):
        return 0.5 * np.sin(theta / 2) ** ps * np.cos(theta / 2) ** pc * poly_eval(spec, np.cos(theta)) ** 4

    return integrate_adaptive(f, (0.0, math.pi), (), rel_tol)


# ---------------------------------------------------------------------------
# entropic functionals


def _e1_quadrature(k: int, alpha: float, rel_tol: float) -> tuple[float, float]:
    spec = PolySpec.laguerre(k, alpha)
    bps = poly_roots(spec) if k else []

    def f(x):
        lp2 = 2 * poly_log_abs(spec, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = -np.exp((alpha + 1) * np.log(x) - x + lp2) * lp2
        return np.where(np.isfinite(lp2), out, 0.0)

    return integrate_adaptive(f, (0.0, math.inf), bps, rel_tol, scale=2 * k + alpha + 2)


def E1_laguerre(k: int, alpha: float, rel_tol: float = DEFAULT_REL_TOL) -> tuple[float, float]:
    """-int_0^inf x w_alpha(x) Lt_k^2 ln Lt_k^2 dx; returns (value, err_est)."""
    if k == 0:
        lg = lngamma(alpha + 1)
        return (alpha + 1) * lg, _ratio_err((alpha + 1) * lg)
    return _e1_quadrature(k, alpha, rel_tol)


def _e2_quadrature(k: int, lam: float, rel_tol: float) -> tuple[float, float]:
    spec = PolySpec.gegenbauer(k, lam)
    bps = sorted(math.acos(r) for r in poly_roots(spec)) if k else []

    def f(theta):
        lp2 = 2 * poly_log_abs(spec, np.cos(theta))
        out = -np.sin(theta) ** (2 * lam) * np.exp(lp2) * lp2
        return np.where(np.isfinite(lp2), out, 0.0)

    return integrate_adaptive(f, (0.0, math.pi), bps, rel_tol, abs_tol=1e-15)


def E2_gegenbauer(k: int, lam: float, rel_tol: float = DEFAULT_REL_TOL) -> tuple[float, float]:
    """-int_{-1}^{1} w_lam(x) Ct_k^2 ln Ct_k^2 dx; returns (value, err_est).

    Evaluated in x = cos(theta), which removes the endpoint branch points of
    the weight; the log singularities sit at the arccos of the roots.
    """
    if k == 0:
        v = math.log(zeroth_moment(Family.GEGENBAUER, lam))
        return v, _ratio_err(v)
    return _e2_quadrature(k, lam, rel_tol)


# ---------------------------------------------------------------------------
# closed constants


def A_const(n: int, l: int, D: int) -> float:
    eta = n + (D - 3) / 2
    L = l + (D - 3) / 2
    return (
        -2 * l * ((2 * eta - 2 * L - 1) / (2 * eta) + digamma(eta + L + 1))
        + (3 * eta**2 - L * (L + 1)) / eta
        + (D + 1) * math.log(eta)
        - (D - 1) * math.log(2)
    )


def B_const(mu, D: int) -> float:
    mu = list(mu)
    mu[-1] = abs(mu[-1])
    total = 0.0
    for j in range(1, D - 1):
        a = (D - j - 1) / 2
        mj, mj1 = mu[j - 1], mu[j]
        if mj1 == 0:
            continue
        total += mj1 * (
            digamma(2 * a + mj + mj1) - digamma(a + mj) - math.log(2) - 1 / (2 * (a + mj))
        )
    return LN2PI - 2 * total


def F_const(n: int, l: int, D: int) -> float:
    eta = n + (D - 3) / 2
    L = l + (D - 3) / 2
    k = n - l - 1
    # 2 eta (2L+1)/(4 eta^2 - 1) with 2L+1 = 2 eta - 1 - 2k; the k = 0 form
    # stays finite at eta = 1/2 (D = 2 ground state).
    if k == 0:
        ratio = 2 * eta / (2 * eta + 1)
    else:
        ratio = 2 * eta * (2 * L + 1) / (4 * eta**2 - 1)
    return (
        -D * math.log(eta)
        + (2 * L + 4) * math.log(2)
        - (2 * L + 4) * (digamma(eta + L + 1) - digamma(eta))
        + (L + 2) / eta
        - (D + 1) * (1 - ratio)
    )


def angular_entropy(mu, D: int, rel_tol: float = DEFAULT_REL_TOL) -> tuple[float, float]:
    """S[Y] = B + sum_j E2 over the polar-angle Gegenbauer factors."""
    st = _tower(mu, D)
    val, err2 = B_const(mu, D), 0.0
    for spec, _ in st.angular_polys:
        e, de = E2_gegenbauer(spec.degree, spec.param, rel_tol)
        val += e
        err2 += de * de
    return val, math.sqrt(err2) + _ratio_err(val)


# ---------------------------------------------------------------------------
# pipeline


def disequilibrium_position(state: QuantumState, Z: float = 1.0) -> MeasureResult:
    D, eta = state.D, state.eta
    v = 2.0 ** (D - 2) / eta ** (D + 2) * Z**D * K1(D, eta, state.L) * K2(state.mu, D)
    return MeasureResult(v, _ratio_err(v) * 4, Method.ANALYTIC_PIPELINE)


def disequilibrium_momentum(state: QuantumState, Z: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> MeasureResult:
    D, eta, L = state.D, state.eta, state.L
    k3, dk3 = K3(D, eta, L, rel_tol)
    pref = 2.0 ** (4 * L + 8) * eta**D / Z**D * K2(state.mu, D)
    return MeasureResult(pref * k3, pref * dk3 + _ratio_err(pref * k3), Method.ANALYTIC_PIPELINE)


def shannon_position(state: QuantumState, Z: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> MeasureResult:
    e1, de1 = E1_laguerre(state.radial_degree, 2 * state.L + 1, rel_tol)
    sy, dsy = angular_entropy(state.mu, state.D, rel_tol)
    v = A_const(state.n, state.l, state.D) + e1 / (2 * state.eta) - state.D * math.log(Z) + sy
    return MeasureResult(v, math.hypot(de1 / (2 * state.eta), dsy) + _ratio_err(v), Method.ANALYTIC_PIPELINE)


def shannon_momentum(state: QuantumState, Z: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> MeasureResult:
    e2, de2 = E2_gegenbauer(state.radial_degree, state.L + 1, rel_tol)
    sy, dsy = angular_entropy(state.mu, state.D, rel_tol)
    v = F_const(state.n, state.l, state.D) + e2 + state.D * math.log(Z) + sy
    return MeasureResult(v, math.hypot(de2, dsy) + _ratio_err(v), Method.ANALYTIC_PIPELINE)


def complexity_position(state: QuantumState, Z: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> MeasureResult:
    """C[rho] = <rho> exp(S[rho]); independent of Z, which only enters the factors."""
    return SpaceMeasures.assemble(
        disequilibrium_position(state, Z), shannon_position(state, Z, rel_tol)
    ).complexity


def complexity_momentum(state: QuantumState, Z: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> MeasureResult:
    return SpaceMeasures.assemble(
        disequilibrium_momentum(state, Z, rel_tol), shannon_momentum(state, Z, rel_tol)
    ).complexity


def analytic_report(state: QuantumState, Z: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> ComplexityReport:
    pos = SpaceMeasures.assemble(disequilibrium_position(state, Z), shannon_position(state, Z, rel_tol))
    mom = SpaceMeasures.assemble(
        disequilibrium_momentum(state, Z, rel_tol), shannon_momentum(state, Z, rel_tol)
    )
    return ComplexityReport(state, Z, Method.ANALYTIC_PIPELINE, pos, mom)


# ---------------------------------------------------------------------------
# oracle


@dataclass(frozen=True)
class _Moments:
    """norm = int f, square = int f^2, entropy = -int f ln f, with errors."""

    norm: tuple[float, float]
    square: tuple[float, float]
    entropy: tuple[float, float]


def _moments(log_f, measure_log, interval, bps, rel_tol, scale=1.0) -> _Moments:
    """Integrals of f, f^2, -f ln f against exp(measure_log) dx, with f = exp(log_f)."""

    def make(kind):
        def g(x):
            lf = log_f(x)
            lm = measure_log(x)
            with np.errstate(invalid="ignore", over="ignore"):
                if kind == "norm":
                    out = np.exp(lf + lm)
                elif kind == "square":
                    out = np.exp(2 * lf + lm)
                else:
                    out = -np.exp(lf + lm) * lf
            return np.where(np.isfinite(lf) & np.isfinite(lm), out, 0.0)

        return g

    kw = dict(scale=scale) if math.isinf(interval[1]) else {}
    return _Moments(
        integrate_adaptive(make("norm"), interval, bps, rel_tol, **kw),
        integrate_adaptive(make("square"), interval, bps, rel_tol, **kw),
        integrate_adaptive(make("entropy"), interval, bps, rel_tol, abs_tol=1e-14, **kw),
    )


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


def _radial_position_moments(state: QuantumState, Z: float, rel_tol: float) -> _Moments:
    lam = state.length_scale(Z)
    bps = [lam * x for x in poly_roots(state.laguerre)] if state.radial_degree else []
    D = state.D
    return _moments(
        lambda r: hyd.log_radial_position_sq(state, Z, r),
        lambda r: (D - 1) * _log(r),
        (0.0, math.inf), bps, rel_tol, scale=lam * 2 * state.eta,
    )


def _radial_momentum_moments(state: QuantumState, Z: float, rel_tol: float) -> _Moments:
    eta = state.eta
    bps = []
    if state.radial_degree:
        # y = (1 - u^2)/(1 + u^2)  <=>  u = sqrt((1 - y)/(1 + y)),  p = Z u / eta
        bps = [Z / eta * math.sqrt((1 - y) / (1 + y)) for y in poly_roots(state.gegenbauer_momentum)]
        bps.sort()
    D = state.D
    return _moments(
        lambda p: hyd.log_radial_momentum_sq(state, Z, p),
        lambda p: (D - 1) * _log(p),
        (0.0, math.inf), bps, rel_tol, scale=Z / eta,
    )


@lru_cache(maxsize=4096)
def _angle_moments(spec: PolySpec, sine_power: int, measure_power: int, rel_tol: float) -> _Moments:
    bps = sorted(math.acos(r) for r in poly_roots(spec)) if spec.degree else []

    def log_f(theta):
        with np.errstate(divide="ignore"):
            return 2 * poly_log_abs(spec, np.cos(theta)) + 2 * sine_power * np.log(np.sin(theta))

    return _moments(log_f, lambda t: measure_power * _log(np.sin(t)), (0.0, math.pi), bps, rel_tol)


def _angular_moments(state: QuantumState, rel_tol: float):
    """Normalisation, int |Y|^4 and S[Y] by per-angle quadrature."""
    D = state.D
    norm, k2, sy = 1.0, 1.0 / (2 * math.pi), LN2PI
    dnorm2 = dk2_rel2 = dsy2 = 0.0
    for j, (spec, power) in enumerate(state.angular_polys, start=1):
        mom = _angle_moments(spec, power, D - 1 - j, rel_tol)
        norm *= mom.norm[0]
        dnorm2 += (mom.norm[1] / mom.norm[0]) ** 2
        k2 *= mom.square[0]
        dk2_rel2 += (mom.square[1] / mom.square[0]) ** 2
        sy += mom.entropy[0]
        dsy2 += mom.entropy[1] ** 2
    return (norm, math.sqrt(dnorm2)), (k2, math.sqrt(dk2_rel2) * k2), (sy, math.sqrt(dsy2))


def oracle_measures(state: QuantumState, Z: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> ComplexityReport:
    """All six measures by direct quadrature of the factorised densities.

    ``diagnostics`` carries the normalisation integrals of both densities.
    """
    (ang_norm, d_ang_norm), (k2, dk2), (sy, dsy) = _angular_moments(state, rel_tol)
    rp = _radial_position_moments(state, Z, rel_tol)
    rm = _radial_momentum_moments(state, Z, rel_tol)

    def space(rad: _Moments) -> SpaceMeasures:
        dq = rad.square[0] * k2
        ddq = math.hypot(rad.square[1] * k2, rad.square[0] * dk2)
        s = rad.entropy[0] + sy
        ds = math.hypot(rad.entropy[1], dsy)
        return SpaceMeasures.assemble(
            MeasureResult(dq, ddq, Method.ORACLE), MeasureResult(s, ds, Method.ORACLE)
        )

    diag = {
        "norm_position": (rp.norm[0] * ang_norm, math.hypot(rp.norm[1], d_ang_norm)),
        "norm_momentum": (rm.norm[0] * ang_norm, math.hypot(rm.norm[1], d_ang_norm)),
        "radial_entropy_position": rp.entropy,
        "radial_entropy_momentum": rm.entropy,
        "angular_entropy": (sy, dsy),
    }
    return ComplexityReport(state, Z, Method.ORACLE, space(rp), space(rm), diag)
