import math

import mpmath as mp
import pytest

from hydrocomplexity.closedform import (
    circular_complexity_momentum,
    circular_complexity_position,
    circular_momentum_constant,
    circular_report,
    ground_complexity_momentum,
    ground_complexity_position,
    ground_report,
)
from hydrocomplexity.hydrogenic import QuantumState
from hydrocomplexity.measures import Method, analytic_report, oracle_measures
from hydrocomplexity.validation import report_diff

mp.mp.dps = 30
psi = lambda z: mp.digamma(z)  # noqa: E731
G = mp.gamma


def ref_ground_momentum(D):
    return (
        2**D * G(mp.mpf(D + 1) / 2) * G(2 + mp.mpf(3 * D) / 2) / (mp.sqrt(mp.pi) * G(2 * D + 2))
        * mp.exp((D + 1) * (psi(D + 1) - psi(mp.mpf(D + 2) / 2)))
    )


def ref_circular_position(D, n):
    return (
        G(n - mp.mpf(1) / 2) * G(2 * n + mp.mpf(D - 3) / 2) / (2 ** (2 * n + D - 2) * mp.sqrt(mp.pi) * G(n + mp.mpf(D - 1) / 2))
        * mp.exp(2 * n + D - 2 - (n - 1) * (psi(n) + psi(n + mp.mpf(D - 1) / 2)))
    )


def ref_A(n, D):
    return (
        mp.mpf(2 * n + D - 1) / (2 * n + D - 3)
        - mp.mpf(D + 1) / (2 * n + D - 2)
        - (n - 1) * psi(n)
        - mp.mpf(D + 1) / 2 * psi(n + mp.mpf(D - 2) / 2)
        + (n + mp.mpf(D - 1) / 2) * psi(n + mp.mpf(D - 3) / 2)
    )


def ref_circular_momentum(D, n):
    return (
        2 ** (4 * n + 2 * D - 3) * G(n + mp.mpf(D - 1) / 2) * G(2 * n - 1) * G(2 * n + mp.mpf(3 * D) / 2)
        / (mp.sqrt(mp.pi) * G(n) * G(4 * n + 2 * D - 2))
        * mp.exp(ref_A(n, D))
    )


@pytest.mark.parametrize("D", range(2, 11))
def test_ground_position_exact(D):
    assert ground_complexity_position(D) == (math.e / 2) ** D
    assert abs(ground_complexity_position(D) - float(mp.exp(D) / 2**D)) <= 4 * 2.2e-16 * (math.e / 2) ** D


def test_ground_momentum_low_dimensions():
    assert ground_complexity_momentum(2) == pytest.approx(2 * math.exp(1.5) / 5, rel=1e-12)
    assert ground_complexity_momentum(3) == pytest.approx(66 * math.exp(-10 / 3), rel=1e-12)
    assert ground_complexity_momentum(4) == pytest.approx(math.exp(35 / 12) / 6, rel=1e-12)
    assert round(ground_complexity_momentum(3), 4) == 2.3545
    assert round(ground_complexity_momentum(4), 4) == 3.0799
    assert math.floor(ground_complexity_momentum(2) * 1e4) / 1e4 == 1.7926


@pytest.mark.parametrize("D", range(2, 11))
def test_ground_momentum_reference(D):
    assert ground_complexity_momentum(D) == pytest.approx(float(ref_ground_momentum(D)), rel=1e-12)


@pytest.mark.parametrize("D", range(2, 9))
@pytest.mark.parametrize("n", range(1, 6))
def test_circular_reference(D, n):
    assert circular_complexity_position(D, n) == pytest.approx(float(ref_circular_position(D, n)), rel=1e-12)
    assert circular_momentum_constant(n, D) == pytest.approx(float(ref_A(n, D)), abs=1e-12)
    assert circular_complexity_momentum(D, n) == pytest.approx(float(ref_circular_momentum(D, n)), rel=1e-12)


def test_circular_example_value():
    assert circular_complexity_position(3, 2) == pytest.approx(1.8115096, abs=5e-8)


@pytest.mark.parametrize("D", range(2, 11))
def test_reduction_to_ground(D):
    assert circular_complexity_position(D, 1) == pytest.approx(ground_complexity_position(D), rel=1e-12)
    assert circular_complexity_momentum(D, 1) == pytest.approx(ground_complexity_momentum(D), rel=1e-12)
    diff, where = report_diff(circular_report(D, 1, 1.7), ground_report(D, 1.7))
    assert diff <= 1e-12, where


def test_ground_position_monotone_in_dimension():
    vals = [ground_complexity_position(D) for D in range(2, 20)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    vals = [ground_complexity_momentum(D) for D in range(2, 20)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_report_z_terms():
    g1, g5 = ground_report(3, 1.0), ground_report(3, 5.0)
    assert g1.method is Method.CLOSED_FORM
    assert g1.position.disequilibrium.value == pytest.approx(1 / (8 * math.pi), rel=1e-14)
    assert g1.position.shannon.value == pytest.approx(3 + math.log(math.pi), rel=1e-14)
    assert g1.momentum.disequilibrium.value == pytest.approx(33 / (16 * math.pi**2), rel=1e-14)
    assert g5.position.disequilibrium.value == pytest.approx(125 * g1.position.disequilibrium.value, rel=1e-13)
    assert g5.momentum.shannon.value == pytest.approx(g1.momentum.shannon.value + 3 * math.log(5), abs=1e-13)
    assert g5.position.complexity.value == pytest.approx(g1.position.complexity.value, rel=1e-13)


@pytest.mark.parametrize("D", range(2, 7))
@pytest.mark.parametrize("n", range(1, 6))
def test_three_routes_circular(D, n):
    closed = circular_report(D, n)
    state = QuantumState.circular(D, n)
    diff, where = report_diff(closed, analytic_report(state))
    assert diff <= 1e-6, where
    diff, where = report_diff(closed, oracle_measures(state))
    assert diff <= 1e-6, where


def test_invalid_arguments():
    with pytest.raises(ValueError):
        ground_report(1)
    with pytest.raises(ValueError):
        circular_report(3, 0)


@pytest.mark.parametrize("D", range(2, 9))
@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("Z", [1.0, 4.0])
def test_report_complexity_is_product_of_factors(D, n, Z):
    for rep in (circular_report(D, n, Z), ground_report(D, Z)):
        for space in (rep.position, rep.momentum):
            assert space.complexity.value == pytest.approx(
                space.disequilibrium.value * math.exp(space.shannon.value), rel=1e-13
            )
