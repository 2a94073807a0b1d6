"""Tests for the series evaluator, the Marcum base case, and the errRR metric."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nuttallq import (ConvergenceError, DomainError, MomentQuery,
                      consistency_deviation, gamma_ratio_q, gamma_shape_ratio,
                      marcum_q, nuttall_q_series)

# Golden fixture rows (eta, mu, x, y, double-precision value, 50-digit value).
GOLDEN_TABLE1 = [
    (1.0, 1.0, 0.1, 1.5, 0.6644091427683566, 0.66440914276835656),
    (5.0, 10.0, 0.1, 1.5, 252472.22699183668, 252472.226991836658),
    (50.0, 30.0, 0.1, 1.5, 1.1944632251434243e+86, 1.19446322514344860e+86),
    (1.0, 1.0, 1.2, 5.0, 0.5457546041478581, 0.54575460414785805),
    (5.0, 10.0, 1.2, 5.0, 419098.1927146542, 419098.192714654143),
    (50.0, 30.0, 1.2, 5.0, 6.809314196073125e+86, 6.80931419607285639e+86),
    (1.0, 1.0, 5.0, 10.0, 1.4822515303982464, 1.48225153039824667),
    (5.0, 10.0, 5.0, 10.0, 1654969.264263704, 1654969.26426370245),
    (50.0, 30.0, 5.0, 10.0, 1.1734657613338925e+89, 1.17346576133388184e+89),
]


@pytest.mark.parametrize("eta,mu,x,y,val_dp,val_ref", GOLDEN_TABLE1)
def test_golden_table1(eta, mu, x, y, val_dp, val_ref):
    out = nuttall_q_series(MomentQuery(eta, mu, x, y))
    assert out.converged
    assert out.value == pytest.approx(val_dp, rel=5e-14)
    assert out.value == pytest.approx(val_ref, rel=5e-14)


def test_trivial_whole_half_line():
    out = nuttall_q_series(MomentQuery(0.0, 2.0, 3.0, 0.0))
    assert out.value == 1.0 and out.converged


def test_trivial_x_zero_single_term():
    out = nuttall_q_series(MomentQuery(2.0, 1.0, 0.0, 1.0))
    assert out.value == pytest.approx(5.0 * math.exp(-1.0), rel=1e-14)
    assert out.terms_used == 1


def test_outcome_metadata_contract():
    out = nuttall_q_series(MomentQuery(3.0, 4.0, 6.0, 2.0), tol=1e-12,
                           max_terms=500)
    assert out.converged
    assert out.est_error <= 1e-12
    assert out.terms_used <= 500


def test_non_convergence_is_explicit():
    out = nuttall_q_series(MomentQuery(2.0, 2.0, 15.0, 3.0), max_terms=4)
    assert not out.converged
    assert out.terms_used <= 4
    with pytest.raises(ConvergenceError):
        marcum_q(2.0, 15.0, 3.0, max_terms=4)


def test_marcum_trivial_points():
    assert marcum_q(4.0, 7.0, 0.0) == 1.0
    assert marcum_q(1.0, 0.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-15)


def test_marcum_equals_series_eta0_bitwise():
    for mu, x, y in ((1.0, 0.5, 2.0), (3.5, 4.0, 1.0), (10.0, 12.0, 18.0)):
        assert marcum_q(mu, x, y) == nuttall_q_series(MomentQuery(0.0, mu, x, y)).value


def test_marcum_reduction_full_half_line():
    for mu in (1.0, 2.5, 10.0, 40.0):
        for x in (0.3, 2.0, 11.0, 20.0):
            assert abs(marcum_q(mu, x, 0.0) - 1.0) <= 1e-14


def test_marcum_stays_in_unit_interval():
    for mu in (0.5, 1.0, 5.0, 20.0):
        for x in (0.0, 1.0, 10.0, 20.0):
            for y in (0.0, 0.5, 5.0, 40.0):
                v = marcum_q(mu, x, y)
                assert 0.0 <= v <= 1.0


def test_small_x_limit_matches_closed_form():
    # For x -> 0+ the value tends to Gamma(eta+mu, y)/Gamma(mu).
    for eta, mu, y in ((3.0, 2.0, 1.5), (1.0, 1.0, 4.0), (10.0, 5.0, 8.0)):
        closed = gamma_shape_ratio(eta, mu).value() * gamma_ratio_q(eta + mu, y)
        got = nuttall_q_series(MomentQuery(eta, mu, 1e-8, y)).value
        assert got == pytest.approx(closed, rel=1e-6)


def test_monotone_in_y_and_x():
    # eta + mu kept small enough that y resolves strictly in doubles.
    ys = [0.1, 1.0, 3.0, 7.0, 12.0, 20.0]
    xs = [0.1, 1.0, 3.0, 7.0, 12.0, 20.0]
    for eta, mu in ((1.0, 1.0), (4.0, 2.5), (2.0, 5.0)):
        for x in (0.5, 5.0, 15.0):
            vals = [nuttall_q_series(MomentQuery(eta, mu, x, y)).value for y in ys]
            assert all(v >= 0.0 for v in vals)
            assert all(a > b for a, b in zip(vals, vals[1:])), (eta, mu, x)
        for y in (0.5, 5.0, 15.0):
            vals = [nuttall_q_series(MomentQuery(eta, mu, x, y)).value for x in xs]
            assert all(a <= b * (1 + 1e-13) for a, b in zip(vals, vals[1:])), (eta, mu, y)


def test_real_eta_supported():
    out = nuttall_q_series(MomentQuery(1.5, 2.5, 3.0, 4.0))
    assert out.converged and out.value > 0.0


def test_consistency_deviation_reference_points():
    assert consistency_deviation(MomentQuery(1.0, 1.0, 0.1, 1.5)) <= 1e-12
    assert consistency_deviation(MomentQuery(5.0, 10.0, 5.0, 10.0)) <= 1e-12


def test_consistency_deviation_vanishing_forcing_term():
    # At y = 0 both sides reduce to the same analytic value.
    assert consistency_deviation(MomentQuery(1.0, 2.0, 2.0, 0.0)) <= 1e-14


def test_consistency_domain_errors():
    with pytest.raises(DomainError):
        consistency_deviation(MomentQuery(1.0, 1.0, 0.0, 1.0))
    with pytest.raises(DomainError):
        consistency_deviation(MomentQuery(0.5, 1.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        consistency_deviation(MomentQuery(0.0, 1.0, 1.0, 1.0))


def test_query_and_tolerance_validation():
    with pytest.raises(DomainError):
        MomentQuery(-1.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        MomentQuery(1.0, 0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        MomentQuery(1.0, 1.0, -0.1, 1.0)
    with pytest.raises(DomainError):
        MomentQuery(1.0, 1.0, 1.0, -0.1)
    with pytest.raises(DomainError):
        MomentQuery(1.0, math.inf, 1.0, 1.0)
    q = MomentQuery(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        nuttall_q_series(q, tol=1e-5)
    with pytest.raises(DomainError):
        nuttall_q_series(q, tol=1e-16)
    with pytest.raises(DomainError):
        nuttall_q_series(q, max_terms=0)


@settings(max_examples=150, deadline=None)
@given(eta=st.floats(0.0, 30.0), mu=st.floats(0.1, 30.0),
       x=st.floats(0.0, 20.0), y=st.floats(0.0, 20.0))
def test_series_positive_and_converged(eta, mu, x, y):
    out = nuttall_q_series(MomentQuery(eta, mu, x, y))
    assert out.converged
    assert out.value >= 0.0
    assert math.isfinite(out.value)


@settings(max_examples=100, deadline=None)
@given(mu=st.floats(0.2, 40.0), x=st.floats(0.0, 20.0),
       y=st.floats(0.0, 30.0), dy=st.floats(0.1, 10.0))
def test_series_decreasing_in_y(mu, x, y, dy):
    a = nuttall_q_series(MomentQuery(2.0, mu, x, y)).value
    b = nuttall_q_series(MomentQuery(2.0, mu, x, y + dy)).value
    assert b <= a * (1.0 + 1e-12)
