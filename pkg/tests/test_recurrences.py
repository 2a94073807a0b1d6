"""Tests for the inhomogeneous ladder and the homogeneous three-term route."""

import math

import pytest

from nuttallq import (DomainError, MomentQuery, marcum_q,
                      nuttall_q_homogeneous, nuttall_q_ladder,
                      nuttall_q_series)


def _series(eta, mu, x, y):
    out = nuttall_q_series(MomentQuery(eta, mu, x, y))
    assert out.converged
    return out.value


def _homogeneous_rows(eta_top, mu_start, n_cols, x, y):
    """Rows 0..eta_top over mu = mu_start + m, row 0 from Marcum."""
    row = [marcum_q(mu_start + m, x, y) for m in range(n_cols)]
    for e in range(1, eta_top + 1):
        s0 = _series(e, mu_start, x, y)
        s1 = _series(e, mu_start + 1.0, x, y) if n_cols >= 2 else 0.0
        row = nuttall_q_homogeneous(e, row, s0, s1, x, y, mu_start, n_cols)
    return row


def test_ladder_y_zero_eta0_row_exact():
    table = nuttall_q_ladder(0, 2.0, 6, 3.0, 0.0)
    assert table.values[0] == (1.0,) * 6


def test_ladder_y_zero_recurrence_identity():
    # Forcing term vanishes; each entry is the previous plus eta * row below.
    table = nuttall_q_ladder(2, 1.0, 5, 3.0, 0.0)
    for e in (1, 2):
        for m in range(1, 5):
            assert table.values[e][m] == pytest.approx(
                table.values[e][m - 1] + e * table.values[e - 1][m], rel=1e-15)


def test_ladder_matches_series_reference_point():
    table = nuttall_q_ladder(2, 1.0, 10, 2.0, 3.0)
    assert table.entry(2, 9) == pytest.approx(_series(2.0, 10.0, 2.0, 3.0),
                                              rel=1e-13)


def test_ladder_matches_series_along_rows():
    table = nuttall_q_ladder(3, 1.0, 25, 1.2, 5.0)
    for e in range(4):
        for m in (0, 4, 12, 24):
            ref = _series(float(e), 1.0 + m, 1.2, 5.0)
            assert table.entry(e, m) == pytest.approx(ref, rel=1e-12), (e, m)


def test_ladder_seed_tag_and_shape():
    table = nuttall_q_ladder(2, 1.5, 4, 1.0, 2.0)
    assert table.eta_max == 2 and table.n_cols == 4
    assert table.mu_start == 1.5
    assert table.seed_method == "row0:marcum_q,col0:series"
    assert len(table.values) == 3 and all(len(r) == 4 for r in table.values)
    assert all(v >= 0.0 and math.isfinite(v) for r in table.values for v in r)
    assert all(0.0 <= v <= 1.0 for v in table.values[0])


def test_ladder_rejects_x_zero():
    with pytest.raises(DomainError):
        nuttall_q_ladder(2, 1.0, 5, 0.0, 3.0)


def test_ladder_rejects_bad_dimensions():
    with pytest.raises(DomainError):
        nuttall_q_ladder(-1, 1.0, 5, 1.0, 1.0)
    with pytest.raises(DomainError):
        nuttall_q_ladder(1, 1.0, 0, 1.0, 1.0)
    with pytest.raises(DomainError):
        nuttall_q_ladder(1, 0.0, 5, 1.0, 1.0)


def test_homogeneous_reference_errors():
    # eta=2, x=2, y=3: recurrence vs series at N = 10 ... 60.
    row2 = _homogeneous_rows(2, 1.0, 60, 2.0, 3.0)
    for n in (10, 20, 30, 40, 50, 60):
        e_r = abs(1.0 - _series(2.0, float(n), 2.0, 3.0) / row2[n - 1])
        assert e_r <= 1e-13, (n, e_r)


def test_homogeneous_y_zero_degenerates():
    # c = 0, so Q_{eta,mu+2} = Q_{eta,mu+1} + eta Q_{eta-1,mu+2}.
    row1 = _homogeneous_rows(1, 1.0, 10, 3.0, 0.0)
    for m in range(10):
        ref = _series(1.0, 1.0 + m, 3.0, 0.0)
        assert row1[m] == pytest.approx(ref, rel=1e-12)


def test_homogeneous_validation():
    prev = [1.0, 1.0, 1.0]
    with pytest.raises(DomainError):
        nuttall_q_homogeneous(0, prev, 1.0, 1.0, 1.0, 1.0, 1.0, 3)
    with pytest.raises(DomainError):
        nuttall_q_homogeneous(1, prev, 1.0, 1.0, 0.0, 1.0, 1.0, 3)
    with pytest.raises(DomainError):
        nuttall_q_homogeneous(1, prev, 1.0, 1.0, 1.0, 1.0, 1.0, 4)
    with pytest.raises(DomainError):
        nuttall_q_homogeneous(1.5, prev, 1.0, 1.0, 1.0, 1.0, 1.0, 3)


def test_homogeneous_short_rows():
    prev = [1.0]
    assert nuttall_q_homogeneous(1, prev, 0.25, 0.0, 1.0, 1.0, 1.0, 1) == [0.25]


def test_three_method_agreement_region_grid():
    # Pairwise series/ladder/homogeneous agreement across the working region.
    etas = list(range(2, 48, 5))          # 2, 7, ..., 47
    mu_cols = list(range(0, 46, 5))       # mu = 2, 7, ..., 47 with mu_start=2
    mu_start = 2.0
    n_cols = 46
    eta_top = max(etas)
    for x in (0.1, 5.0, 10.0, 15.0, 20.0):
        for y in (0.1, 5.0, 10.0, 15.0, 20.0):
            table = nuttall_q_ladder(eta_top, mu_start, n_cols, x, y)
            hom_rows = {0: list(table.values[0])}
            row = hom_rows[0]
            for e in range(1, eta_top + 1):
                row = nuttall_q_homogeneous(
                    e, row, _series(e, mu_start, x, y),
                    _series(e, mu_start + 1.0, x, y), x, y, mu_start, n_cols)
                hom_rows[e] = row
            for eta in etas:
                for m in mu_cols:
                    s = _series(float(eta), mu_start + m, x, y)
                    lad = table.entry(eta, m)
                    hom = hom_rows[eta][m]
                    assert lad == pytest.approx(s, rel=1e-12), (eta, m, x, y)
                    assert hom == pytest.approx(s, rel=1e-12), (eta, m, x, y)
                    assert hom == pytest.approx(lad, rel=1e-12), (eta, m, x, y)
