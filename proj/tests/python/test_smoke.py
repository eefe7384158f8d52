"""Smoke tests of the python bindings against frozen reference values."""

import math

import pytest

import ewens_pitman as ep


def test_rate_functions():
    assert ep.rate_k(0.5, 1.0) == pytest.approx(0.25, abs=1e-14)
    assert ep.rate_k(0.5, -1.0) == math.inf
    assert ep.rate_m(0.5, 1, 1.0) == pytest.approx(1.0, abs=1e-13)
    assert ep.legendre_rate(0.5, 2.0) == pytest.approx(ep.rate_k(0.5, 2.0), rel=1e-8)
    assert ep.legendre_rate(0.5, 1.0, l=2) == pytest.approx(ep.rate_m(0.5, 2, 1.0), rel=1e-8)
    h, value = ep.entropy_form(0.5, 1.0)
    assert h == pytest.approx(-math.log(2.0), abs=1e-14)
    assert value == pytest.approx(0.25, abs=1e-13)
    assert ep.critical_alpha(4.0) == pytest.approx(0.25, abs=1e-6)


def test_exact_law_and_moments():
    probs = ep.law_kn(0.5, 0.5, 2)
    assert probs[1] == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert probs[2] == pytest.approx(2.0 / 3.0, abs=1e-14)
    law = ep.law_multiplicities(0.5, 0.5, 2)
    assert len(law) == 2
    assert sum(p for _, p in law) == pytest.approx(1.0, abs=1e-14)
    # E[K~_1 | K_8 = 3] = (theta + j alpha)/(theta + n)
    assert ep.posterior_moment_k(0.5, 1.0, 8, 3, 1, 1) == pytest.approx(2.5 / 9, abs=1e-12)
    assert ep.stirling2(4, 2) == 7.0
    assert ep.beta_moments(1.0, 1.0, 2) == pytest.approx([1.0, 0.5, 1.0 / 3.0])


def test_series_and_scaled_logmgf():
    # n = 1 the series is 1/(1-y)
    assert ep.mgf_kn_series_log(0.5, 1, 0.5) == pytest.approx(math.log(2.0), abs=1e-12)
    # frozen from the acceptance run: alpha=0.5, theta=0, beta_n = n^{1/4}
    value, err = ep.scaled_logmgf(0.5, 0.0, 1.0, 0.25, 0.0, 1000, 1.0)
    assert err is None
    assert value == pytest.approx(0.872553, abs=1e-5)
    valid, _ = ep.validate_schedule(1.0, 0.25, 0.0, 0.5)
    assert valid
    invalid, reason = ep.validate_schedule(1.0, 0.0, 0.3, 0.5)
    assert not invalid and "ln n" in reason


def test_samplers_are_seeded():
    a = ep.sample_kn(0.5, 1.0, 1000, seed=42, stream=3)
    b = ep.sample_kn(0.5, 1.0, 1000, seed=42, stream=3)
    c = ep.sample_kn(0.5, 1.0, 1000, seed=42, stream=4)
    assert a == b
    assert 1 <= a <= 1000
    assert (a != c) or (ep.sample_kn(0.5, 1.0, 1000, seed=43, stream=3) != a)
    sticks, residual = ep.sample_gem(0.5, 1.0, 100, seed=7)
    assert sum(sticks) + residual == pytest.approx(1.0, abs=1e-12)
    path = ep.sample_path(0.5, 1.0, [1, 10], 2, seed=9)
    assert path[0][0] == 1 and path[0][1] == 1
    z = ep.sample_posterior_k(0.5, 1.0, 8, 3, 5, seed=11)
    assert 0 <= z <= 5


def test_validation_errors_become_value_errors():
    with pytest.raises(ValueError):
        ep.law_kn(1.5, 1.0, 5)
    with pytest.raises(ValueError):
        ep.mgf_kn_series_log(0.5, 5, 1.5)
    with pytest.raises(ValueError):
        ep.posterior_moment_k(0.5, 1.0, 8, 0, 1, 1)
