"""D-dimensional hydrogenic states: quantum numbers, wavefunction factors and
probability densities in position and momentum space (atomic units).

A state is labelled by the dimension ``D``, the principal number ``n`` and the
hyperangular tower ``mu = (mu_1, ..., mu_{D-1})`` with ``l = mu_1`` and
``m = mu_{D-1}``. The angular factor is

    Y = exp(i m phi)/sqrt(2 pi) * prod_j C_{mu_j - mu_{j+1}}^{alpha_j + mu_{j+1}}(cos t_j) sin(t_j)^mu_{j+1}

with orthonormal Gegenbauer ``C`` and ``alpha_j = (D - j - 1)/2``; only ``|m|``
enters ``|Y|^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .specfun import PolySpec, poly_eval, poly_log_abs

__all__ = [
    "QuantumState",
    "towers",
    "states",
    "energy",
    "radial_position",
    "radial_momentum",
    "radial_momentum_yform",
    "log_radial_position_sq",
    "log_radial_momentum_sq",
    "angular_factor",
    "hypersph_sq",
    "density_position",
    "density_momentum",
]


@dataclass(frozen=True)
class QuantumState:
    D: int
    n: int
    mu: tuple[int, ...]

    def __post_init__(self):
        mu = tuple(int(v) for v in self.mu)
        object.__setattr__(self, "mu", mu)
        if int(self.D) != self.D or self.D < 2:
            raise ValueError(f"dimension must satisfy D >= 2, got D={self.D}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"principal number must satisfy n >= 1, got n={self.n}")
        if len(mu) != self.D - 1:
            raise ValueError(f"tower must have D-1 = {self.D - 1} entries, got {len(mu)}")
        if self.D > 2 and mu[0] < 0:
            raise ValueError(f"l = mu_1 must be >= 0, got {mu[0]}")
        for j in range(len(mu) - 2):
            if mu[j] < mu[j + 1]:
                raise ValueError(f"tower must satisfy mu_{j + 1} >= mu_{j + 2}, got {mu}")
        if len(mu) >= 2 and mu[-2] < abs(mu[-1]):
            raise ValueError(f"tower must satisfy mu_{self.D - 2} >= |mu_{self.D - 1}|, got {mu}")
        if self.n - self.l - 1 < 0:
            raise ValueError(f"need n - l - 1 >= 0, got n={self.n}, l={self.l}")

    @classmethod
    def ground(cls, D: int) -> QuantumState:
        return cls(D, 1, (0,) * (D - 1))

    @classmethod
    def circular(cls, D: int, n: int) -> QuantumState:
        return cls(D, n, (n - 1,) * (D - 1))

    @property
    def l(self) -> int:
        return abs(self.mu[0])

    @property
    def m(self) -> int:
        return self.mu[-1]

    @property
    def eta(self) -> float:
        return self.n + (self.D - 3) / 2

    @property
    def L(self) -> float:
        return self.l + (self.D - 3) / 2

    @property
    def radial_degree(self) -> int:
        return self.n - self.l - 1

    @property
    def alphas(self) -> tuple[float, ...]:
        return tuple((self.D - j - 1) / 2 for j in range(1, self.D - 1))

    def length_scale(self, Z: float) -> float:
        return self.eta / (2.0 * Z)

    @property
    def is_ground(self) -> bool:
        return self.n == 1

    @property
    def is_circular(self) -> bool:
        return all(abs(v) == self.n - 1 for v in self.mu)

    @cached_property
    def angular_polys(self) -> tuple[tuple[PolySpec, int], ...]:
        """Per polar angle j: (Gegenbauer spec, sine power mu_{j+1})."""
        out = []
        mu = list(self.mu)
        mu[-1] = abs(mu[-1])
        for j, alpha in enumerate(self.alphas):
            k = mu[j] - mu[j + 1]
            out.append((PolySpec.gegenbauer(k, alpha + mu[j + 1]), mu[j + 1]))
        return tuple(out)

    @cached_property
    def laguerre(self) -> PolySpec:
        return PolySpec.laguerre(self.radial_degree, 2 * self.L + 1)

    @cached_property
    def gegenbauer_momentum(self) -> PolySpec:
        return PolySpec.gegenbauer(self.radial_degree, self.L + 1)

    def label(self) -> str:
        return f"D={self.D} n={self.n} mu={','.join(map(str, self.mu))}"


def towers(D: int, n: int) -> list[tuple[int, ...]]:
    """Every valid (mu_1, ..., mu_{D-1}) for principal number ``n``, sorted.

    The sign of m = mu_{D-1} is enumerated; for D = 2 the single entry is m
    itself with l = |m|.
    """
    if D < 2 or n < 1:
        raise ValueError("need D >= 2 and n >= 1")
    if D == 2:
        return sorted([(m,) for m in range(-(n - 1), n)], key=lambda t: (abs(t[0]), t[0]))
    out = []

    def extend(prefix):
        if len(prefix) == D - 2:
            last = prefix[-1]
            out.extend(tuple(prefix) + (m,) for m in range(-last, last + 1))
            return
        for v in range(prefix[-1] + 1):
            extend(prefix + [v])

    for l in range(n):
        extend([l])
    return out


def states(D: int, n: int) -> list[QuantumState]:
    return [QuantumState(D, n, mu) for mu in towers(D, n)]


def energy(state: QuantumState, Z: float = 1.0) -> float:
    return -Z * Z / (2.0 * state.eta**2)


def _nonneg(name, v):
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise ValueError(f"{name} must be >= 0")
    return v


def log_radial_position_sq(state: QuantumState, Z: float, r):
    """ln R_{nl}(r)^2, finite except at nodes (and r = 0 for l > 0)."""
    r = _nonneg("r", r)
    lam = state.length_scale(Z)
    x = r / lam
    with np.errstate(divide="ignore"):
        log_x = np.log(x)
    power = 2 * state.l * log_x if state.l else 0.0
    return (
        -state.D * math.log(lam)
        - math.log(2 * state.eta)
        + power
        - x
        + 2 * poly_log_abs(state.laguerre, x)
    )


def radial_position(state: QuantumState, Z: float, r):
    """R_{nl}(r) with the r^l factor taken out of the weight analytically."""
    r = _nonneg("r", r)
    lam = state.length_scale(Z)
    x = r / lam
    pref = math.sqrt(lam ** (-state.D) / (2 * state.eta))
    return pref * x**state.l * np.exp(-x / 2) * poly_eval(state.laguerre, x)


def _u(state, Z, p):
    return state.eta * p / Z


def radial_momentum(state: QuantumState, Z: float, p):
    """M_{nl}(p) in the direct form (power of eta*p/Z and a rational factor)."""
    p = _nonneg("p", p)
    u = _u(state, Z, p)
    u2 = u * u
    y = (1 - u2) / (1 + u2)
    L = state.L
    return (
        2 ** (L + 2)
        * (state.eta / Z) ** (state.D / 2)
        * u**state.l
        / (1 + u2) ** (L + 2)
        * poly_eval(state.gegenbauer_momentum, y)
    )


def radial_momentum_yform(state: QuantumState, Z: float, p):
    """M_{nl}(p) written through y = (1 - u^2)/(1 + u^2) and the Gegenbauer weight.

    Singular-looking at p = 0 for D > 2; use for p > 0.
    """
    p = _nonneg("p", p)
    u = _u(state, Z, p)
    y = (1 - u * u) / (1 + u * u)
    L, D = state.L, state.D
    weight = (1 - y * y) ** (L + 0.5)
    return (
        (state.eta / Z) ** (D / 2)
        * (1 + y) ** 1.5
        * ((1 + y) / (1 - y)) ** ((D - 2) / 4)
        * np.sqrt(weight)
        * poly_eval(state.gegenbauer_momentum, y)
    )


def log_radial_momentum_sq(state: QuantumState, Z: float, p):
    """ln M_{nl}(p)^2."""
    p = _nonneg("p", p)
    u = _u(state, Z, p)
    u2 = u * u
    y = (1 - u2) / (1 + u2)
    L = state.L
    with np.errstate(divide="ignore"):
        power = 2 * state.l * np.log(u) if state.l else 0.0
    return (
        (2 * L + 4) * math.log(2)
        + state.D * math.log(state.eta / Z)
        + power
        - (2 * L + 4) * np.log1p(u2)
        + 2 * poly_log_abs(state.gegenbauer_momentum, y)
    )


def angular_factor(spec: PolySpec, sine_power: int, theta):
    """One polar factor C(cos t) sin(t)^k of the hyperspherical harmonic."""
    theta = np.asarray(theta, dtype=float)
    return poly_eval(spec, np.cos(theta)) * np.sin(theta) ** sine_power


def hypersph_sq(state: QuantumState, angles) -> float:
    """|Y_{l,mu}|^2 at ``angles = (theta_1, ..., theta_{D-2}, phi)``."""
    angles = list(angles)
    if len(angles) != state.D - 1:
        raise ValueError(f"expected {state.D - 1} angles, got {len(angles)}")
    val = 1.0 / (2 * math.pi)
    for (spec, k), theta in zip(state.angular_polys, angles[:-1]):
        val = val * angular_factor(spec, k, theta) ** 2
    return val


def density_position(state: QuantumState, Z: float, r, angles):
    return radial_position(state, Z, r) ** 2 * hypersph_sq(state, angles)


def density_momentum(state: QuantumState, Z: float, p, angles):
    return radial_momentum(state, Z, p) ** 2 * hypersph_sq(state, angles)
