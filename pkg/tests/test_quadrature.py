"""Gamma function and quadrature: frozen examples, oracles, and properties."""

import math

import numpy as np
import pytest

from renewalkit import (
    Exponential,
    GammaDist,
    QuadratureSpec,
    ValidationError,
    Weibull,
    gamma_fn,
    integrate_box,
    integrate_semi_infinite,
)
from renewalkit.errors import QuadratureError

SQRT_PI = 1.7724538509055159


# -- gamma function ----------------------------------------------------------


def test_gamma_classical_values():
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-12)
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-12)  # Gamma(n) = (n-1)!
    assert gamma_fn(0.5) == pytest.approx(SQRT_PI, rel=1e-12)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.5, 3.7, 10.0])
def test_gamma_recurrence(x):
    # Gamma(x + 1) = x * Gamma(x)
    assert gamma_fn(x + 1.0) == pytest.approx(x * gamma_fn(x), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_gamma_domain_error(x):
    with pytest.raises(ValidationError):
        gamma_fn(x)


def test_gamma_overflow_reported():
    with pytest.raises(OverflowError):
        gamma_fn(200.0)


# -- semi-infinite integrals -------------------------------------------------


def test_unit_exponential_mass():
    assert integrate_semi_infinite(lambda t: math.exp(-t), 0.0) == pytest.approx(1.0, abs=1e-10)


def test_first_moment_of_exponential():
    assert integrate_semi_infinite(lambda t: t * math.exp(-t), 0.0) == pytest.approx(
        1.0, abs=1e-10
    )


def test_stretched_exponential():
    # substituting u = sqrt(t) gives 2 * int u e^-u du = 2; also checked
    # against a high-resolution trapezoid oracle with an analytic tail bound
    value = integrate_semi_infinite(lambda t: math.exp(-math.sqrt(t)), 0.0)
    assert value == pytest.approx(2.0, abs=1e-9)

    grid = np.linspace(0.0, 400.0, 4_000_001)
    oracle = np.trapezoid(np.exp(-np.sqrt(grid)), grid)
    tail_bound = 2.0 * 21.0 * math.exp(-20.0)  # 2(sqrt(t)+1)e^-sqrt(t) at t=400
    assert abs(value - oracle) < 1e-6 + tail_bound


@pytest.mark.parametrize("transform", ["log-map", "exp-substitution"])
def test_both_tail_transforms(transform):
    spec = QuadratureSpec(tail_transform=transform)
    assert integrate_semi_infinite(lambda t: math.exp(-t), 0.0, spec) == pytest.approx(
        1.0, abs=1e-9
    )
    # shifted lower bound
    assert integrate_semi_infinite(lambda t: math.exp(-t), 2.0, spec) == pytest.approx(
        math.exp(-2.0), rel=1e-9
    )


def test_pdf_normalization_all_laws():
    laws = [
        Weibull(m=0.5, a=1.0),
        Weibull(m=0.585, a=4.0),
        Weibull(m=1.0, a=0.5),
        Weibull(m=2.0, a=1.0),
        Exponential(mean_duration=3.0),
        GammaDist(k=2.0, theta=1.5),
    ]
    for law in laws:
        mass = integrate_semi_infinite(lambda t: float(law.pdf(t)), 0.0)
        assert mass == pytest.approx(1.0, abs=1e-8), law


def test_determinism():
    f = lambda t: math.exp(-math.sqrt(t))
    assert integrate_semi_infinite(f, 0.0) == integrate_semi_infinite(f, 0.0)


def test_nonconvergence_carries_estimate():
    starved = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=1)
    with pytest.raises(QuadratureError) as excinfo:
        integrate_semi_infinite(lambda t: math.exp(-math.sqrt(t)), 0.0, starved)
    assert math.isfinite(excinfo.value.estimate)
    assert excinfo.value.error_bound > 0.0


def test_bad_lower_bound():
    with pytest.raises(ValidationError):
        integrate_semi_infinite(lambda t: 1.0, -1.0)


# -- wedge integrals ---------------------------------------------------------


def _mc_wedge_oracle(f, n=1_000_000, seed=123):
    # importance sample: tau ~ Exp(1), s | tau ~ U(0, tau);
    # int_0^inf ds int_s^inf dtau f = E[tau * f(s, tau) / e^-tau]
    rng = np.random.default_rng(seed)
    tau = rng.standard_exponential(n)
    s = rng.uniform(0.0, tau)
    vals = tau * np.asarray([f(si, ti) for si, ti in zip(s, tau)]) * np.exp(tau)
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n))


def test_box_exponential():
    # inner integral gives e^-s, outer gives 1
    value = integrate_box(lambda s, tau: math.exp(-tau))
    assert value == pytest.approx(1.0, abs=1e-8)
    mc, se = _mc_wedge_oracle(lambda s, tau: math.exp(-tau), n=200_000)
    assert abs(value - mc) < 4.0 * se


def test_box_zero():
    assert integrate_box(lambda s, tau: 0.0) == pytest.approx(0.0, abs=1e-12)


def test_box_weighted_by_s():
    # int_0^inf s e^-s ds = 1
    value = integrate_box(lambda s, tau: s * math.exp(-tau))
    assert value == pytest.approx(1.0, abs=1e-8)
    mc, se = _mc_wedge_oracle(lambda s, tau: s * math.exp(-tau), n=200_000)
    assert abs(value - mc) < 4.0 * se


# -- spec validation ---------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [
        {"abs_tol": 0.0},
        {"rel_tol": -1.0},
        {"max_subdivisions": 0},
        {"tail_transform": "cosine"},
    ],
)
def test_quadrature_spec_validation(kwargs):
    with pytest.raises(ValidationError):
        QuadratureSpec(**kwargs)
