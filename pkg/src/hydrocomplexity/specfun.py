"""Gamma-family functions and orthonormal Laguerre/Gegenbauer polynomials.

The polynomials are always the *orthonormal* versions:

* Laguerre, weight ``x**alpha * exp(-x)`` on ``[0, inf)``, ``alpha > -1``;
  sign convention follows the classical ``L_k^alpha`` (positive at 0).
* Gegenbauer, weight ``(1 - x**2)**(lam - 1/2)`` on ``[-1, 1]``, ``lam > 0``;
  positive leading coefficient.

Values are produced by the forward three-term recurrence of the orthonormal
family, which keeps them O(1) inside the support. Outside the support (large
``x`` for Laguerre) a running rescale keeps the recurrence finite; use
:func:`poly_log_abs` when the value itself may not fit in a double.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "Family",
    "PolySpec",
    "lngamma",
    "digamma",
    "poly_recurrence_coeffs",
    "poly_eval",
    "poly_log_abs",
    "poly_eval_with_derivative",
    "poly_roots",
    "zeroth_moment",
]

# Bernoulli numbers B_2 .. B_14 for the digamma asymptotic series.
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)
_DIGAMMA_SHIFT = 8.0
_RESCALE_AT = 1e150


def lngamma(x: float) -> float:
    """Natural log of the Gamma function for positive real ``x``."""
    if not x > 0:
        raise ValueError(f"lngamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for positive real ``x``.

    Upward recurrence to ``x >= 8`` followed by the asymptotic series
    ``ln x - 1/(2x) - sum B_2k / (2k x^2k)`` truncated after seven terms.
    """
    if not x > 0:
        raise ValueError(f"digamma requires x > 0, got {x!r}")
    x = float(x)
    shift = 0.0
    while x < _DIGAMMA_SHIFT:
        shift += 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        series += b / (2 * k) * power
        power *= inv2
    return math.log(x) - 0.5 / x - series - shift


class Family(enum.Enum):
    LAGUERRE = "laguerre"
    GEGENBAUER = "gegenbauer"


def _check_param(family: Family, param: float) -> None:
    if family is Family.LAGUERRE and not param > -1:
        raise ValueError(f"Laguerre parameter must be > -1, got {param!r}")
    if family is Family.GEGENBAUER and not param > 0:
        raise ValueError(f"Gegenbauer parameter must be > 0, got {param!r}")


@dataclass(frozen=True)
class PolySpec:
    """An orthonormal polynomial: family, degree and family parameter."""

    family: Family
    degree: int
    param: float

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ValueError(f"degree must be a nonnegative integer, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "param", float(self.param))
        _check_param(self.family, self.param)

    @classmethod
    def laguerre(cls, degree: int, alpha: float) -> PolySpec:
        return cls(Family.LAGUERRE, degree, alpha)

    @classmethod
    def gegenbauer(cls, degree: int, lam: float) -> PolySpec:
        return cls(Family.GEGENBAUER, degree, lam)

    @property
    def support(self) -> tuple[float, float]:
        if self.family is Family.LAGUERRE:
            return (0.0, math.inf)
        return (-1.0, 1.0)

    def weight(self, x):
        x = np.asarray(x, dtype=float)
        if self.family is Family.LAGUERRE:
            return x**self.param * np.exp(-x)
        return (1.0 - x * x) ** (self.param - 0.5)


def zeroth_moment(family: Family, param: float) -> float:
    """Integral of the family weight over its support."""
    _check_param(family, param)
    if family is Family.LAGUERRE:
        return math.exp(lngamma(param + 1.0))
    return math.sqrt(math.pi) * math.exp(lngamma(param + 0.5) - lngamma(param + 1.0))


@lru_cache(maxsize=256)
def _coeffs(family: Family, param: float, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n_max, dtype=float)
    if family is Family.LAGUERRE:
        a = 2.0 * k + param + 1.0
        b = k * (k + param)
    else:
        a = np.zeros(n_max)
        b = np.empty(n_max)
        kk = k[1:]
        b[1:] = kk * (kk + 2.0 * param - 1.0) / (4.0 * (kk + param) * (kk + param - 1.0))
    b[0] = zeroth_moment(family, param)
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def poly_recurrence_coeffs(family: Family, param: float, n_max: int) -> list[tuple[float, float]]:
    """Monic recurrence ``pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1}``.

    Returns ``[(a_0, b_0), ..., (a_{n_max-1}, b_{n_max-1})]`` where ``b_0`` is
    the zeroth moment of the weight (Gautschi's convention).
    """
    _check_param(family, param)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a, b = _coeffs(family, float(param), int(n_max))
    return [(float(ak), float(bk)) for ak, bk in zip(a, b)]


def _sign(spec: PolySpec) -> float:
    if spec.family is Family.LAGUERRE and spec.degree % 2:
        return -1.0
    return 1.0


def _recurrence(spec: PolySpec, x: np.ndarray):
    """Orthonormal recurrence with rescaling; returns (p_k, log_scale)."""
    k = spec.degree
    a, b = _coeffs(spec.family, spec.param, k + 1)
    sb = np.sqrt(b)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / sb[0])
    log_scale = np.zeros_like(x)
    for j in range(k):
        p_next = ((x - a[j]) * p - (sb[j] if j else 0.0) * p_prev) / sb[j + 1]
        p_prev, p = p, p_next
        big = np.abs(p) > _RESCALE_AT
        if big.any():
            s = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            p = p * s
            p_prev = p_prev * s
            log_scale = log_scale + np.where(big, math.log(_RESCALE_AT), 0.0)
    return p, log_scale


def poly_eval(spec: PolySpec, x):
    """Value of the orthonormal polynomial at ``x`` (scalar or array)."""
    xa = np.asarray(x, dtype=float)
    p, log_scale = _recurrence(spec, np.atleast_1d(xa).copy())
    with np.errstate(over="ignore"):
        out = _sign(spec) * p * np.exp(log_scale)
    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


def poly_log_abs(spec: PolySpec, x):
    """``ln |p(x)|``; ``-inf`` at roots. Never overflows."""
    xa = np.asarray(x, dtype=float)
    p, log_scale = _recurrence(spec, np.atleast_1d(xa).copy())
    with np.errstate(divide="ignore"):
        out = np.log(np.abs(p)) + log_scale
    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


def poly_eval_with_derivative(spec: PolySpec, x):
    """Value and first derivative of the orthonormal polynomial."""
    p, dp, log_scale = _recurrence_with_derivative(spec, np.atleast_1d(np.asarray(x, dtype=float)))
    s = _sign(spec)
    with np.errstate(over="ignore"):
        factor = s * np.exp(log_scale)
        p, dp = p * factor, dp * factor
    if np.ndim(x) == 0:
        return float(p[0]), float(dp[0])
    return p, dp


def newton_step(spec: PolySpec, x: np.ndarray) -> np.ndarray:
    """``p(x)/p'(x)``, computed without forming the (possibly huge) values."""
    p, dp, _ = _recurrence_with_derivative(spec, np.asarray(x, dtype=float))
    return p / dp


def _recurrence_with_derivative(spec: PolySpec, xa: np.ndarray):
    k = spec.degree
    a, b = _coeffs(spec.family, spec.param, k + 1)
    sb = np.sqrt(b)
    p_prev, dp_prev = np.zeros_like(xa), np.zeros_like(xa)
    p, dp = np.full_like(xa, 1.0 / sb[0]), np.zeros_like(xa)
    log_scale = np.zeros_like(xa)
    for j in range(k):
        c = sb[j] if j else 0.0
        p_next = ((xa - a[j]) * p - c * p_prev) / sb[j + 1]
        dp_next = ((xa - a[j]) * dp + p - c * dp_prev) / sb[j + 1]
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
        big = np.maximum(np.abs(p), np.abs(dp)) > _RESCALE_AT
        if big.any():
            s = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            p, p_prev, dp, dp_prev = p * s, p_prev * s, dp * s, dp_prev * s
            log_scale = log_scale + np.where(big, math.log(_RESCALE_AT), 0.0)
    return p, dp, log_scale


def jacobi_eigenvalues(family: Family, param: float, n: int) -> np.ndarray:
    """Eigenvalues of the n x n Jacobi matrix, ascending (Golub-Welsch nodes)."""
    a, b = _coeffs(family, float(param), n)
    if n == 1:
        return np.array([a[0]])
    return eigh_tridiagonal(a[:n], np.sqrt(b[1:n]), eigvals_only=True)


def poly_roots(spec: PolySpec) -> list[float]:
    """Sorted roots of the orthonormal polynomial of degree >= 1."""
    if spec.degree < 1:
        raise ValueError("poly_roots requires degree >= 1")
    x = jacobi_eigenvalues(spec.family, spec.param, spec.degree)
    for _ in range(2):
        x = x - newton_step(spec, x)
    lo, hi = spec.support
    x = np.clip(np.sort(x), np.nextafter(lo, hi), np.nextafter(hi, lo))
    return [float(v) for v in x]
