"""Pinned-distortion program: scan/refine solver, frontier extraction,
and the closed-form geometry of the binding-classification window."""

import math

import pytest

from rdpc import (
    DomainError,
    GaussianPairSource,
    Region,
    eval_at,
    gaussian_recon_stats,
    pc_frontier_given_rd,
    rate_given_pcd,
    rdc_gaussian,
)

SRC = GaussianPairSource(0.0, 0.0, 1.0, 0.49, 0.63)
H_S = SRC.h_s


def _k_of(c):
    return (1.0 - math.exp(2.0 * (c - H_S))) / SRC.rho**2


def _kl_of_spread(s):
    # KL(N(0, s^2) || N(0, 1)) for the unit-variance source
    return 0.5 * math.log(s * s) + (1.0 - s * s) / (2.0 * s * s)


def test_unconstrained_perception_spot_value():
    pt = rate_given_pcd(SRC, 0.5, math.inf, H_S - 0.3)
    assert pt.feasible
    assert pt.region is Region.CLASSIFICATION_LIMITED
    assert pt.rate == pytest.approx(0.407118343711173, abs=1e-6)
    assert math.sqrt(pt.witness.var_xh) == pytest.approx(
        0.98513371810627, abs=1e-6
    )
    # covariance is pinned by the exact-distortion requirement
    assert pt.witness.cov_xxh == pytest.approx(
        (1.0 + pt.witness.var_xh - 0.5) / 2.0, abs=1e-12
    )


def test_binding_window_roots_share_the_rate():
    k = _k_of(H_S - 0.3)
    half_width = math.sqrt(k - 1.0 + 0.5)
    lo = math.sqrt(k) - half_width
    hi = math.sqrt(k) + half_width
    assert lo == pytest.approx(0.507545311677235, abs=1e-12)
    assert hi == pytest.approx(0.98513371810627, abs=1e-12)
    at_lo = eval_at(SRC, 0.5, lo)
    at_hi = eval_at(SRC, 0.5, hi)
    assert at_lo.rate == pytest.approx(at_hi.rate, abs=1e-9)
    assert at_lo.perception_kl == pytest.approx(0.762807597141059, abs=1e-9)
    assert at_hi.perception_kl == pytest.approx(0.000226594209846093, abs=1e-9)


def test_tie_breaks_toward_lower_perception():
    pt = rate_given_pcd(SRC, 0.5, math.inf, H_S - 0.3)
    # of the two equal-rate roots the solver must report the mild one
    assert math.sqrt(pt.witness.var_xh) > 0.9


def test_perception_budget_raises_the_rate():
    free = rate_given_pcd(SRC, 0.5, math.inf, H_S - 0.3)
    tight = rate_given_pcd(SRC, 0.5, 1e-4, H_S - 0.3)
    assert tight.region is Region.PERCEPTION_LIMITED
    assert tight.rate > free.rate
    rates = [
        rate_given_pcd(SRC, 0.5, p, H_S - 0.3).rate
        for p in (1e-4, 1e-3, 1e-2, math.inf)
    ]
    assert all(b <= a + 1e-9 for a, b in zip(rates, rates[1:]))


def test_witness_meets_all_three_constraints():
    for d, p, c in [(0.5, 0.0001, H_S - 0.3), (0.5, math.inf, H_S - 0.3),
                    (1.2, 0.01, H_S)]:
        pt = rate_given_pcd(SRC, d, p, c)
        stats = gaussian_recon_stats(SRC, pt.witness)
        assert stats.distortion == pytest.approx(d, abs=1e-9)
        assert stats.perception <= p + 1e-9
        assert stats.cond_entropy_s <= c + 1e-7
        assert stats.mutual_info == pytest.approx(pt.rate, abs=1e-9)


def test_relaxing_the_pin_recovers_the_distortion_program():
    # with P unconstrained, pinning the distortion at its bound costs
    # nothing whenever that bound is active in the relaxed program
    for d, c in [(0.2, H_S - 0.5), (0.5, H_S - 0.2), (1.0, H_S - 0.5)]:
        pinned = rate_given_pcd(SRC, d, math.inf, c)
        relaxed = rdc_gaussian(SRC, d, c)
        assert pinned.feasible == relaxed.feasible
        assert pinned.rate >= relaxed.rate - 1e-6


def test_zero_rate_needs_inflated_spread():
    pt = rate_given_pcd(SRC, 1.5, math.inf, H_S + 0.1)
    assert pt.region is Region.ZERO_RATE
    assert pt.rate == pytest.approx(0.0, abs=1e-9)
    assert pt.witness.cov_xxh == pytest.approx(0.0, abs=1e-9)
    assert pt.witness.var_xh == pytest.approx(0.5, abs=1e-6)


def test_doubled_variance_is_free_in_every_sense():
    pt = rate_given_pcd(SRC, 2.0, 0.0, H_S + 0.1)
    assert pt.rate == pytest.approx(0.0, abs=1e-9)
    assert pt.witness.var_xh == pytest.approx(1.0, abs=1e-6)
    rows = pc_frontier_given_rd(SRC, 2.0, 0.0, [H_S + 0.1])
    assert rows[0].feasible
    assert rows[0].min_p <= 1e-9


def test_overconstrained_instances_are_infeasible():
    starved = rate_given_pcd(SRC, 0.5, 0.0, 0.3)
    assert not starved.feasible
    assert starved.region is Region.INFEASIBLE
    assert math.isnan(starved.rate)
    with pytest.raises(DomainError):
        rate_given_pcd(SRC, -0.1, math.inf, H_S)
    with pytest.raises(DomainError):
        rate_given_pcd(SRC, 0.5, -1.0, H_S)


def test_frontier_row_matches_window_root_formula():
    # min P at a loose C is the divergence at the upper edge of the
    # rate-capped window: ratio == 1 - e^{-2 R}
    cap = 1.0 - math.exp(-0.8)
    s_hi = math.sqrt(cap) + math.sqrt(cap - 0.5)
    rows = pc_frontier_given_rd(SRC, 0.5, 0.4, [H_S - 0.1])
    assert rows[0].feasible
    assert rows[0].min_p == pytest.approx(_kl_of_spread(s_hi), abs=1e-6)
    assert rows[0].sigma_xh == pytest.approx(s_hi, abs=1e-5)
    assert rows[0].rate <= 0.4 + 1e-9


def test_frontier_narrow_band_rows_are_found():
    # the feasible spread band at this (D, C, R) is thinner than the scan
    # step; the boundary-root seeds must keep the row alive
    k = _k_of(H_S - 0.68)
    root = math.sqrt(k) + math.sqrt(k - 1.0 + 0.1)
    rows = pc_frontier_given_rd(SRC, 0.1, 1.3, [H_S - 0.68])
    assert rows[0].feasible
    assert rows[0].min_p == pytest.approx(_kl_of_spread(root), abs=1e-6)


def test_frontier_relaxes_with_c_and_marks_dead_rows():
    # C where k = 0.6: tighter than the zero-divergence level (0.5625)
    # but inside the rate cap, so min P is positive; looser C rows fall
    # to zero once s = sigma_x re-enters the window
    c_mid = H_S + 0.5 * math.log(1.0 - 0.81 * 0.6)
    c_grid = [H_S - 1.0, c_mid, H_S - 0.2, H_S - 0.05]
    rows = pc_frontier_given_rd(SRC, 0.5, 0.5, c_grid)
    assert not rows[0].feasible and math.isnan(rows[0].min_p)
    live = [r.min_p for r in rows if r.feasible]
    assert len(live) == 3
    assert live[0] == pytest.approx(
        _kl_of_spread(math.sqrt(0.6) + math.sqrt(0.1)), abs=1e-6
    )
    assert live[1] <= 1e-9 and live[2] <= 1e-9
    assert all(b <= a + 1e-9 for a, b in zip(live, live[1:]))
