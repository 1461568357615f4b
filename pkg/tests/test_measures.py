import math

import numpy as np
import pytest
from scipy.integrate import dblquad
from scipy.special import digamma, gammaln, roots_gegenbauer, roots_genlaguerre

import oracles
from hydrocomplexity import measures
from hydrocomplexity.hydrogenic import QuantumState, density_position, radial_position, states
from hydrocomplexity.measures import (
    A_const,
    B_const,
    DivergentIntegralError,
    E1_laguerre,
    E2_gegenbauer,
    F_const,
    K1,
    K2,
    K3,
    MeasureResult,
    Method,
    analytic_report,
    angular_entropy,
    complexity_momentum,
    complexity_position,
    disequilibrium_momentum,
    disequilibrium_position,
    oracle_measures,
    shannon_momentum,
    shannon_position,
)
from hydrocomplexity.quadrature import QuadratureError

# Reference values from the 30-digit mpmath oracles in tests/oracles.py.
K1_REF = {(3, 2, 1): 0.15625, (2, 1, 0): 0.25, (3, 1, 0): 0.25, (4, 3, 1): 0.02734375}
K3_REF = {
    (3, 1, 0): 0.0102580334414698165632,
    (2, 1, 0): 0.025,
    (3, 2, 0): 0.0469382742321800697287,
    (5, 3, 1): 0.000315852232338438527986,
}
E1_REF = {(1, 0.0): -6.84520186823894289975, (3, 2.5): -43.1889103230630283767}
E2_REF = {(2, 1.0): -0.215083961377211801940, (3, 1.5): -0.662287370441005367154}


def eta_L(D, n, l):
    return n + (D - 3) / 2, l + (D - 3) / 2


@pytest.mark.parametrize("key", sorted(K1_REF))
def test_K1_reference(key):
    D, n, l = key
    assert K1(D, *eta_L(D, n, l)) == pytest.approx(K1_REF[key], rel=1e-11)


def test_K1_live_oracle():
    assert K1(5, *eta_L(5, 3, 0)) == pytest.approx(float(oracles.K1(5, 3, 0)), rel=1e-11)


def test_K1_divergent_exponent(monkeypatch):
    monkeypatch.setattr(measures, "k1_power", lambda D: -D - 5)
    with pytest.raises(DivergentIntegralError):
        K1(3, 1.0, 0.0)


@pytest.mark.parametrize("D", range(2, 8))
def test_K2_ground_is_inverse_area(D):
    area = 2 * math.pi ** (D / 2) / math.gamma(D / 2)
    assert K2((0,) * (D - 1), D) == pytest.approx(1 / area, rel=1e-14)


def test_K2_examples():
    assert K2((1, 1), 3) == pytest.approx(3 / (10 * math.pi), rel=1e-14)
    assert K2((1, -1), 3) == K2((1, 1), 3)
    for m in (0, 1, -3):
        assert K2((m,), 2) == pytest.approx(1 / (2 * math.pi), rel=1e-14)


@pytest.mark.parametrize("key", sorted(K3_REF))
def test_K3_reference(key):
    D, n, l = key
    v, err = K3(D, *eta_L(D, n, l))
    assert v == pytest.approx(K3_REF[key], rel=1e-10)
    assert err <= 1e-9 * v


def test_K3_live_oracle():
    v, _ = K3(4, *eta_L(4, 3, 1))
    assert v == pytest.approx(float(oracles.K3(4, 3, 1)), rel=1e-10)


@pytest.mark.parametrize("key", sorted(E1_REF))
def test_E1_reference(key):
    v, err = E1_laguerre(*key)
    assert v == pytest.approx(E1_REF[key], rel=1e-10)
    assert err < 1e-8


@pytest.mark.parametrize("key", sorted(E2_REF))
def test_E2_reference(key):
    v, err = E2_gegenbauer(*key)
    assert v == pytest.approx(E2_REF[key], rel=1e-10)
    assert err < 1e-8


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.5, 7.0])
def test_E1_degree_zero(alpha):
    expected = (alpha + 1) * math.lgamma(alpha + 1)
    assert E1_laguerre(0, alpha)[0] == pytest.approx(expected, abs=1e-10)
    assert measures._e1_quadrature(0, alpha, 1e-12)[0] == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5, 2.0, 4.5])
def test_E2_degree_zero(lam):
    expected = 0.5 * math.log(math.pi) + gammaln(lam + 0.5) - gammaln(lam + 1)
    assert E2_gegenbauer(0, lam)[0] == pytest.approx(expected, abs=1e-10)
    assert measures._e2_quadrature(0, lam, 1e-12)[0] == pytest.approx(expected, abs=1e-10)


def test_E1_live_oracle_with_half_integer():
    v, _ = E1_laguerre(2, 1.5)
    guesses = roots_genlaguerre(2, 1.5)[0]
    assert v == pytest.approx(float(oracles.E1(2, 1.5, guesses)), rel=1e-10)


def test_E2_live_oracle():
    v, _ = E2_gegenbauer(4, 2.0)
    guesses = roots_gegenbauer(4, 2.0)[0]
    assert v == pytest.approx(float(oracles.E2(4, 2.0, guesses)), rel=1e-10)


def test_constants_ground_D3():
    # radial entropy of R = 2 e^{-r} against r^2 dr is 3 - ln 4
    assert A_const(1, 0, 3) == pytest.approx(3 - math.log(4), abs=1e-14)
    assert B_const((0, 0), 3) == pytest.approx(math.log(2 * math.pi), abs=1e-15)
    # S[gamma] = F + E2(0, 1) + S[Y], with E2(0, 1) = ln(pi/2) and S[Y] = ln(4 pi)
    s_gamma = math.log(math.pi**2 / 8) + 4 * (float(digamma(4)) - float(digamma(2.5)))
    assert F_const(1, 0, 3) == pytest.approx(s_gamma - math.log(2 * math.pi**2), abs=1e-14)
    assert F_const(1, 0, 2) == pytest.approx(1.5 - math.log(2), abs=1e-14)


@pytest.mark.parametrize("D", range(2, 6))
@pytest.mark.parametrize("n", range(1, 4))
def test_constants_against_oracle_diagnostics(D, n):
    """A, B, F with their E-functionals reproduce the directly integrated entropies."""
    for s in states(D, n):
        diag = oracle_measures(s).diagnostics
        e1, _ = E1_laguerre(s.radial_degree, 2 * s.L + 1)
        srad = A_const(n, s.l, D) + e1 / (2 * s.eta)
        assert srad == pytest.approx(diag["radial_entropy_position"][0], abs=1e-8)
        sy, _ = angular_entropy(s.mu, D)
        assert sy == pytest.approx(diag["angular_entropy"][0], abs=1e-8)
        e2, _ = E2_gegenbauer(s.radial_degree, s.L + 1)
        assert F_const(n, s.l, D) + e2 == pytest.approx(diag["radial_entropy_momentum"][0], abs=1e-8)


def test_hydrogen_ground_values():
    g = QuantumState.ground(3)
    assert disequilibrium_position(g).value == pytest.approx(1 / (8 * math.pi), rel=1e-13)
    assert shannon_position(g).value == pytest.approx(3 + math.log(math.pi), rel=1e-12)
    assert disequilibrium_momentum(g).value == pytest.approx(33 / (16 * math.pi**2), rel=1e-10)
    assert shannon_momentum(g).value == pytest.approx(2.42186234116519356, rel=1e-10)


@pytest.mark.parametrize("state", [QuantumState(3, 3, (1, -1)), QuantumState(5, 2, (1, 0, 0, 0)), QuantumState(2, 3, (2,))])
@pytest.mark.parametrize("Z", [0.5, 3.0, 10.0])
def test_z_scaling_of_measures(state, Z):
    D = state.D
    assert disequilibrium_position(state, Z).value == pytest.approx(Z**D * disequilibrium_position(state).value, rel=1e-13)
    assert disequilibrium_momentum(state, Z).value == pytest.approx(Z**-D * disequilibrium_momentum(state).value, rel=1e-13)
    assert shannon_position(state, Z).value == pytest.approx(shannon_position(state).value - D * math.log(Z), abs=1e-12)
    assert shannon_momentum(state, Z).value == pytest.approx(shannon_momentum(state).value + D * math.log(Z), abs=1e-12)
    assert complexity_position(state, Z).value == pytest.approx(complexity_position(state).value, rel=1e-12)
    assert complexity_momentum(state, Z).value == pytest.approx(complexity_momentum(state).value, rel=1e-12)


def test_entropy_additivity_nested_integral():
    """S[rho] from a 2D (r, theta) integral of the full density equals S[R] + S[Y]."""
    s = QuantumState(3, 3, (1, 0))

    def integrand(theta, r):
        rho = density_position(s, 1.0, r, [theta, 0.0])
        if rho <= 0:
            return 0.0
        return -2 * math.pi * r * r * math.sin(theta) * rho * math.log(rho)

    roots = [0.0, 3.0, 60.0]
    total = 0.0
    for a, b in zip(roots[:-1], roots[1:]):
        v, _ = dblquad(integrand, a, b, 0, math.pi, epsabs=1e-11, epsrel=1e-11)
        total += v
    assert total == pytest.approx(shannon_position(s).value, abs=1e-7)


@pytest.mark.parametrize("D", range(2, 6))
@pytest.mark.parametrize("n", range(1, 4))
def test_complexity_lower_bound(D, n):
    for s in states(D, n):
        r = analytic_report(s)
        assert r.position.complexity.value >= 1.0
        assert r.momentum.complexity.value >= 1.0
        assert r.product.value == pytest.approx(r.position.complexity.value * r.momentum.complexity.value)


def test_report_structure():
    r = analytic_report(QuantumState(4, 2, (1, 1, 0)), Z=2.0)
    assert r.method is Method.ANALYTIC_PIPELINE
    d = r.as_dict()
    for space in ("position", "momentum"):
        for q in ("disequilibrium", "shannon", "complexity"):
            assert set(d[space][q]) >= {"value", "err_est", "method"}
    assert r.position.complexity.value == pytest.approx(
        r.position.disequilibrium.value * math.exp(r.position.shannon.value), rel=1e-14
    )


def test_measure_result_rejects_nonfinite():
    with pytest.raises(QuadratureError):
        MeasureResult(float("nan"), 0.0, Method.ORACLE)
    with pytest.raises(QuadratureError):
        MeasureResult(float("inf"), 0.0, Method.ORACLE)


def test_oracle_normalisation_diagnostic():
    d = oracle_measures(QuantumState(5, 3, (2, 1, 1, -1)), Z=3.0).diagnostics
    assert d["norm_position"][0] == pytest.approx(1.0, abs=1e-10)
    assert d["norm_momentum"][0] == pytest.approx(1.0, abs=1e-10)


def test_K1_matches_trapezoid_fourth_moment():
    # the radial fourth moment that K1 encodes, on a fine grid
    s = QuantumState(3, 2, (1, 0))
    r = np.linspace(0, 80, 200001)
    f = radial_position(s, 1.0, r) ** 4 * r**2
    approx = np.trapezoid(f, r)
    assert approx == pytest.approx(disequilibrium_position(s).value / K2(s.mu, 3), rel=1e-8)
