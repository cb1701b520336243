"""Self-check suites: invariants, oracle cross-checks, and gap probes.

Each suite exercises one slice of the package at documented tolerances
and reports measured extremes next to the tolerance it compared against,
so a report is useful even when everything passes. Suites draw any
randomness from a generator seeded by (seed, fixed per-suite index);
results are therefore reproducible and independent of which other suites
run alongside, and the worker count only partitions oracle grids whose
reduction is order-independent, so reports are byte-identical across
worker counts.

One suite is special: the binary perception probe measures the distance
between the closed-form rate at C = 0.6 and the brute-force optimum on
the zero-total-variation line. That difference is an open question, not
a defect, so it is reported as a gap probe and never fails the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .closed_form import (
    rdc_binary,
    rdc_binary_witness,
    rdc_gaussian,
    rpc_binary,
    rpc_binary_witness,
    rpc_gaussian,
    rpc_gaussian_witness,
)
from .entropy import (
    binary_convolution,
    binary_entropy,
    binary_entropy_inv,
    gaussian_diff_entropy,
    gaussian_kl,
    numeric_kl,
)
from .errors import DomainError
from .oracle import (
    _h2_bits_arr,
    binary_channel_stats,
    binary_min_rate,
    gaussian_min_rate,
    gaussian_recon_stats,
    mrs_gerber_check,
)
from .results import BinaryChannel, Region
from .restoration import (
    bayes_threshold_clean,
    default_model,
    error_rate_of_gain,
    error_rate_reoptimized,
    frontier,
    kl_of_gain,
    monte_carlo_mse,
    mse_of_gain,
    sweep,
)
from .rpc_given_d import eval_at, pc_frontier_given_rd, rate_given_pcd
from .sources import BinaryPairSource, GaussianMixture2, GaussianPairSource


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    measured: dict[str, float]
    tolerances: dict[str, float]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": dict(self.measured),
            "tolerances": dict(self.tolerances),
        }


@dataclass(frozen=True)
class GapProbe:
    instance: str
    closed_form: float
    oracle: float
    gap: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "closed_form": self.closed_form,
            "oracle": self.oracle,
            "gap": self.gap,
        }


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    suites: list[SuiteResult]
    gap_probes: list[GapProbe] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "all_passed": self.all_passed,
            "suites": [s.to_dict() for s in self.suites],
            "gap_probes": [g.to_dict() for g in self.gap_probes],
        }


class _Recorder:
    """Accumulates named measurements against tolerances.

    ``worst(name, value, tol)`` keeps the largest value seen per name and
    fails the suite if it ever exceeds the tolerance; ``flag`` records a
    boolean condition as 0/1 with tolerance 0.
    """

    def __init__(self) -> None:
        self.measured: dict[str, float] = {}
        self.tolerances: dict[str, float] = {}
        self.ok = True

    def worst(self, name: str, value: float, tol: float) -> None:
        prev = self.measured.get(name, -math.inf)
        self.measured[name] = max(prev, value)
        self.tolerances[name] = tol
        if not (value <= tol):
            self.ok = False

    def flag(self, name: str, condition: bool) -> None:
        self.worst(name, 0.0 if condition else 1.0, 0.0)

    def result(self, name: str) -> SuiteResult:
        return SuiteResult(
            name=name, passed=self.ok,
            measured=self.measured, tolerances=self.tolerances,
        )


def _rng_for(seed: int, suite_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, suite_index])


def _max_increase(values: Sequence[float]) -> float:
    """Largest step up along a sequence expected to be non-increasing.

    Consecutive infinities (an infeasible prefix) are not an increase.
    """
    worst = 0.0
    for left, right in zip(values, values[1:]):
        if math.isinf(left) and math.isinf(right):
            continue
        worst = max(worst, right - left)
    return worst


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _suite_entropy(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    rng = _rng_for(seed, 0)

    hs = rng.uniform(0.0, 1.0, size=2000)
    rt = max(abs(binary_entropy(binary_entropy_inv(float(h))) - h) for h in hs)
    rec.worst("entropy_inverse_roundtrip", rt, 1e-12)

    rec.worst("h2_quarter", abs(binary_entropy(0.25) - 0.811278124459133), 1e-12)
    rec.worst("h2_tenth", abs(binary_entropy(0.1) - 0.468995593589281), 1e-12)
    rec.worst(
        "hinv_0p6", abs(binary_entropy_inv(0.6) - 0.146102403411887), 1e-11
    )
    # convolving the label noise with the classification-tight crossover
    # must land exactly on the entropy inverse it was derived from
    c1 = (binary_entropy_inv(0.6) - 0.1) / 0.8
    rec.worst(
        "convolution_identity",
        abs(binary_convolution(0.1, c1) - binary_entropy_inv(0.6)),
        1e-12,
    )

    rec.worst(
        "gauss_h_s", abs(gaussian_diff_entropy(0.49) - 1.06226358926594), 1e-12
    )
    rec.worst(
        "gauss_h_unit_arg",
        abs(gaussian_diff_entropy(1.0 / (2.0 * math.pi * math.e))),
        1e-12,
    )
    rec.worst("gauss_kl_self", abs(gaussian_kl(0.3, 1.2, 0.3, 1.2)), 0.0)

    def norm_pdf(mu: float, var: float) -> Callable[[float], float]:
        z = 1.0 / math.sqrt(2.0 * math.pi * var)
        return lambda x: z * math.exp(-0.5 * (x - mu) ** 2 / var)

    same = numeric_kl(norm_pdf(0, 1), norm_pdf(0, 1), (-14.0, 14.0))
    rec.worst("numeric_kl_self", abs(same), 1e-8)
    got = numeric_kl(norm_pdf(0, 1), norm_pdf(0.3, 1.21), (-16.0, 16.0))
    rec.worst(
        "numeric_kl_vs_closed", abs(got - gaussian_kl(0, 1, 0.3, 1.21)), 1e-6
    )
    return rec.result("entropy")


def _h2_inv_arr(h: np.ndarray) -> np.ndarray:
    """Vectorized inverse of the binary entropy onto [0, 1/2] by bisection."""
    lo = np.zeros_like(h)
    hi = np.full_like(h, 0.5)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = _h2_bits_arr(mid) < h
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _mgl_margins(
    a: np.ndarray, p1: np.ndarray, pa: np.ndarray, pb: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """(lhs, rhs) of the conditional-entropy lower bound, elementwise.

    Same joint-law formulas the scalar checker uses, restated on arrays
    so a hundred thousand draws stay affordable.
    """
    b1 = (a - p1) / (1.0 - 2.0 * p1)
    q0 = (1.0 - b1) * pa + b1 * pb
    info = _h2_bits_arr(q0) - (
        (1.0 - b1) * _h2_bits_arr(pa) + b1 * _h2_bits_arr(pb)
    )
    np.clip(info, 0.0, None, out=info)
    with np.errstate(divide="ignore", invalid="ignore"):
        x1_g0 = np.clip(np.where(q0 > 0, b1 * pb / np.where(q0 > 0, q0, 1), 0), 0, 1)
        x1_g1 = np.clip(
            np.where(q0 < 1, b1 * (1 - pb) / np.where(q0 < 1, 1 - q0, 1), 0), 0, 1
        )
    conv0 = p1 * (1.0 - x1_g0) + x1_g0 * (1.0 - p1)
    conv1 = p1 * (1.0 - x1_g1) + x1_g1 * (1.0 - p1)
    lhs = q0 * _h2_bits_arr(conv0) + (1.0 - q0) * _h2_bits_arr(conv1)
    h_x_given = np.clip(_h2_bits_arr(b1) - info, 0.0, 1.0)
    eps = _h2_inv_arr(h_x_given)
    rhs = _h2_bits_arr(p1 * (1.0 - eps) + eps * (1.0 - p1))
    return lhs, rhs


def _suite_mgl(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    rng = _rng_for(seed, 1)
    n = 100_000
    a_vals = rng.uniform(0.02, 0.5, size=n)
    p1_vals = a_vals * rng.uniform(0.1, 0.95, size=n)
    pa_vals = rng.uniform(0.0, 1.0, size=n)
    pb_vals = rng.uniform(0.0, 1.0, size=n)

    lhs, rhs = _mgl_margins(a_vals, p1_vals, pa_vals, pb_vals)
    rec.worst("min_margin_deficit", float(np.max(rhs - lhs)), 1e-10)
    floor = _h2_bits_arr(p1_vals)
    rec.worst("label_floor_deficit", float(np.max(floor - lhs)), 1e-12)

    # the array path must agree with the scalar checker it restates
    for i in range(0, n, n // 100):
        src = BinaryPairSource(float(a_vals[i]), float(p1_vals[i]))
        ch = BinaryChannel(float(pa_vals[i]), float(pb_vals[i]))
        chk = mrs_gerber_check(src, ch)
        rec.worst("scalar_array_lhs_mismatch", abs(chk.lhs - float(lhs[i])), 1e-12)
        rec.worst("scalar_array_rhs_mismatch", abs(chk.rhs - float(rhs[i])), 1e-9)

    # complementary backward conditionals are the equality case
    equality_instances = [
        (BinaryPairSource(0.3, 0.1), 0.3, 0.6),
        (BinaryPairSource(0.3, 0.1), 0.3, 0.8),
        (BinaryPairSource(0.2, 0.05), 0.4, 0.5),
    ]
    for src, d, c in equality_instances:
        wit = rdc_binary_witness(src, d, c)
        chk = mrs_gerber_check(src, wit)
        rec.worst("equality_gap", abs(chk.lhs - chk.rhs), 1e-10)
    return rec.result("mgl")


def _suite_convexity(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    rng = _rng_for(seed, 2)

    bsrc = BinaryPairSource(0.3, 0.1)
    floor_b = binary_entropy(bsrc.p1)
    n = 10_000
    d1 = rng.uniform(0.0, 0.6, n)
    d2 = rng.uniform(0.0, 0.6, n)
    c1 = rng.uniform(floor_b + 1e-6, 1.0, n)
    c2 = rng.uniform(floor_b + 1e-6, 1.0, n)
    lam = rng.uniform(0.0, 1.0, n)
    worst = -math.inf
    for i in range(n):
        r1 = rdc_binary(bsrc, float(d1[i]), float(c1[i])).rate
        r2 = rdc_binary(bsrc, float(d2[i]), float(c2[i])).rate
        dm = lam[i] * d1[i] + (1 - lam[i]) * d2[i]
        cm = lam[i] * c1[i] + (1 - lam[i]) * c2[i]
        rm = rdc_binary(bsrc, float(dm), float(cm)).rate
        worst = max(worst, rm - (lam[i] * r1 + (1 - lam[i]) * r2))
    rec.worst("binary_convexity_violation", worst, 1e-9)

    gsrc = GaussianPairSource(0.0, 0.0, 1.0, 0.49, 0.63)
    floor_g = 0.5 * math.log(1.0 - gsrc.rho**2) + gsrc.h_s
    d1 = rng.uniform(0.05, 2.5, n)
    d2 = rng.uniform(0.05, 2.5, n)
    c1 = rng.uniform(floor_g + 1e-6, gsrc.h_s + 0.4, n)
    c2 = rng.uniform(floor_g + 1e-6, gsrc.h_s + 0.4, n)
    lam = rng.uniform(0.0, 1.0, n)
    worst = -math.inf
    for i in range(n):
        r1 = rdc_gaussian(gsrc, float(d1[i]), float(c1[i])).rate
        r2 = rdc_gaussian(gsrc, float(d2[i]), float(c2[i])).rate
        dm = lam[i] * d1[i] + (1 - lam[i]) * d2[i]
        cm = lam[i] * c1[i] + (1 - lam[i]) * c2[i]
        rm = rdc_gaussian(gsrc, float(dm), float(cm)).rate
        worst = max(worst, rm - (lam[i] * r1 + (1 - lam[i]) * r2))
    rec.worst("gaussian_convexity_violation", worst, 1e-9)

    def monotone_increase(rates: np.ndarray) -> float:
        along_d = float(np.max(np.diff(rates, axis=0))) if rates.shape[0] > 1 else -math.inf
        along_c = float(np.max(np.diff(rates, axis=1))) if rates.shape[1] > 1 else -math.inf
        return max(along_d, along_c)

    m = 200
    dgrid = np.linspace(0.0, 0.6, m)
    cgrid = np.linspace(floor_b + 1e-9, 1.05, m)
    rates = np.empty((m, m))
    for i, dv in enumerate(dgrid):
        for j, cv in enumerate(cgrid):
            rates[i, j] = rdc_binary(bsrc, float(dv), float(cv)).rate
    rec.worst("binary_monotonicity_increase", monotone_increase(rates), 1e-12)

    dgrid = np.linspace(0.01, 2.5, m)
    cgrid = np.linspace(floor_g + 1e-9, gsrc.h_s + 0.4, m)
    for i, dv in enumerate(dgrid):
        for j, cv in enumerate(cgrid):
            rates[i, j] = rdc_gaussian(gsrc, float(dv), float(cv)).rate
    rec.worst("gaussian_monotonicity_increase", monotone_increase(rates), 1e-12)
    return rec.result("convexity")


_BINARY_ORACLE_SOURCES = (BinaryPairSource(0.3, 0.1), BinaryPairSource(0.45, 0.2))
_BINARY_ORACLE_DC = ((0.1, 0.85), (0.3, 0.6), (0.3, 1.0), (0.02, 0.95), (0.25, 0.5))


def _suite_oracle_rdc_binary(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    for src in _BINARY_ORACLE_SOURCES:
        for d, c in _BINARY_ORACLE_DC:
            closed = rdc_binary(src, d, c)
            got = binary_min_rate(
                src, {"D": d, "C": c}, resolution=1e-3, refine=True,
                workers=workers,
            )
            rec.flag("feasibility_agreement", closed.feasible == got.feasible)
            if closed.feasible and got.feasible:
                rec.worst("max_rate_diff", abs(closed.rate - got.rate), 1e-3)
                stats = binary_channel_stats(src, got.argmin)
                rec.worst(
                    "argmin_distortion_excess", stats.distortion - d, 1e-9
                )
                rec.worst(
                    "argmin_cond_entropy_excess", stats.cond_entropy_s - c, 1e-9
                )
    return rec.result("oracle-rdc-binary")


def _suite_oracle_rdc_gaussian(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    src = GaussianPairSource(0.0, 0.0, 1.0, 0.49, 0.63)
    h = src.h_s
    cases = [
        (0.1, h - 0.5), (0.5, h - 0.5), (0.3, h - 0.2),
        (0.8, h - 0.7), (1.5, h + 0.14), (0.5, 0.2),
    ]
    for d, c in cases:
        closed = rdc_gaussian(src, d, c)
        got = gaussian_min_rate(
            src, {"D": d, "C": c}, refine=True, workers=workers
        )
        rec.flag("feasibility_agreement", closed.feasible == got.feasible)
        if closed.feasible and got.feasible:
            rec.worst("max_rate_diff", abs(closed.rate - got.rate), 1e-3)
            stats = gaussian_recon_stats(src, got.argmin)
            rec.worst("argmin_mse_excess", stats.distortion - d, 1e-9)
            rec.worst("argmin_cond_entropy_excess", stats.cond_entropy_s - c, 1e-9)
    return rec.result("oracle-rdc-gaussian")


def _suite_oracle_rpc_gaussian(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    src = GaussianPairSource(0.0, 0.0, 1.0, 0.49, 0.63)
    h = src.h_s
    # the closed form ignores P entirely; the oracle must reproduce its
    # rate even when the divergence budget is squeezed to 5e-4 nats
    cases = [
        (0.0005, h - 0.5), (0.001, h - 0.3), (0.01, h - 0.5),
        (1.0, h - 0.5), (0.05, h + 0.1), (10.0, 0.2),
    ]
    for p, c in cases:
        closed = rpc_gaussian(src, p, c)
        got = gaussian_min_rate(
            src, {"P": p, "C": c}, refine=True, workers=workers
        )
        rec.flag("feasibility_agreement", closed.feasible == got.feasible)
        if closed.feasible and got.feasible:
            rec.worst("max_rate_diff", abs(closed.rate - got.rate), 1e-3)
            stats = gaussian_recon_stats(src, got.argmin)
            rec.worst("argmin_kl_excess_over_p", stats.perception - p, 1e-9)
            if p < 1e-3:
                rec.worst("tight_p_argmin_kl", stats.perception, 1e-3)
            rec.worst("argmin_cond_entropy_excess", stats.cond_entropy_s - c, 1e-9)
    return rec.result("oracle-rpc-gaussian")


def _suite_rpc_binary_gap_probe(
    seed: int, workers: int
) -> tuple[SuiteResult, list[GapProbe]]:
    rec = _Recorder()
    src = BinaryPairSource(0.3, 0.1)
    c = 0.6

    closed_rate = rpc_binary(src, 0.05, c).rate
    relaxed = binary_min_rate(
        src, {"C": c, "P": 0.05}, resolution=1e-3, workers=workers
    )
    rec.worst("oracle_vs_closed_form_p0.05", abs(relaxed.rate - closed_rate), 1e-3)
    tv_at_relaxed = binary_channel_stats(src, relaxed.argmin).perception
    rec.worst("relaxed_argmin_tv", tv_at_relaxed, 0.05 + 1e-9)

    line_wit = rpc_binary_witness(src, c)
    line_stats = binary_channel_stats(src, line_wit)
    rec.worst("line_witness_tv", abs(line_stats.perception), 1e-12)
    rec.worst("line_witness_cond_entropy_err", abs(line_stats.cond_entropy_s - c), 1e-9)

    probe = binary_min_rate(
        src, {"C": c, "P": 0.0}, resolution=1e-3, workers=workers
    )
    rec.worst(
        "probe_vs_line_witness", abs(probe.rate - line_stats.mutual_info), 1e-3
    )
    probe_tv = binary_channel_stats(src, probe.argmin).perception
    rec.worst("probe_argmin_tv", probe_tv, 1e-6 + 1e-9)

    gap = GapProbe(
        instance="binary a=0.3 p1=0.1 C=0.6, perception 0.05 vs <=1e-6",
        closed_form=closed_rate,
        oracle=probe.rate,
        gap=probe.rate - closed_rate,
    )
    return rec.result("rpc-binary-gap-probe"), [gap]


def _suite_restoration(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    rng = _rng_for(seed, 7)
    model = default_model()

    rec.worst(
        "bayes_threshold_err",
        abs(model.threshold_c0 - 0.423648930193602), 1e-12,
    )
    sym = GaussianMixture2(0.5, 0.5, -2.0, 2.0, 1.0, 1.0)
    rec.worst("symmetric_threshold", abs(bayes_threshold_clean(sym)), 1e-12)

    grid = [round(0.05 + 0.01 * k, 10) for k in range(146)]
    curve = sweep(model, grid)
    mse_arg = min(curve, key=lambda q: q.mse).a
    eps_best = min(curve, key=lambda q: q.error_rate)
    kl_arg = min(curve, key=lambda q: q.kl).a
    rec.worst("mse_argmin_err", abs(mse_arg - 2.0 / 3.0), 0.01)
    rec.worst("error_rate_argmin_err", abs(eps_best.a - 0.50), 0.02)
    rec.worst("error_rate_min_err", abs(eps_best.error_rate - 0.204), 0.003)
    rec.worst("kl_argmin_err", abs(kl_arg - 0.81), 0.02)

    # scaling gain and threshold together leaves the error rate alone
    for lam in (0.5, 2.0, 3.0):
        scaled = error_rate_of_gain(
            model, lam * 0.7, threshold=lam * model.threshold_c0
        )
        rec.worst(
            "threshold_homogeneity",
            abs(scaled - error_rate_of_gain(model, 0.7)), 1e-12,
        )

    control = [error_rate_reoptimized(model, a) for a in grid]
    rec.worst("reoptimized_control_spread", max(control) - min(control), 1e-9)

    for a in (0.5, float(rng.uniform(0.3, 1.2))):
        est, se = monte_carlo_mse(model, a, 1_000_000, seed=seed)
        rec.worst(
            "monte_carlo_sigmas",
            abs(est - mse_of_gain(model, a)) / se, 4.0,
        )

    def shape_checks(tag: str, rows: Sequence, expect_tradeoff: bool) -> None:
        vals = [r.value for r in rows if r.feasible]
        rec.flag(f"{tag}_has_feasible", len(vals) >= 2)
        rec.worst(f"{tag}_monotone_increase", _max_increase(vals), 1e-10)
        if expect_tradeoff:
            rec.flag(f"{tag}_non_constant", max(vals) - min(vals) > 1e-6)
        else:
            rec.worst(f"{tag}_collapse_spread", max(vals) - min(vals), 1e-9)

    dp = frontier(model, "kl", "mse", [0.5, 0.7, 0.8, 1.0, 1.3], grid_points=73)
    rec.flag("dp_infeasible_below_mse_min", not dp[0].feasible)
    shape_checks("dp", dp[1:], expect_tradeoff=True)
    dc = frontier(model, "error_rate", "mse", [0.7, 0.8, 1.0, 1.3], grid_points=73)
    shape_checks("dc", dc, expect_tradeoff=True)
    pc = frontier(
        model, "kl", "error_rate", [0.2045, 0.206, 0.21, 0.3], grid_points=73
    )
    shape_checks("pc", pc, expect_tradeoff=True)

    clean = default_model(sigma_n=0.0)
    curve0 = sweep(clean, grid)
    rec.worst("clean_mse_argmin_err", abs(min(curve0, key=lambda q: q.mse).a - 1.0), 0.011)
    rec.worst("clean_eps_argmin_err", abs(min(curve0, key=lambda q: q.error_rate).a - 1.0), 0.011)
    rec.worst("clean_kl_argmin_err", abs(min(curve0, key=lambda q: q.kl).a - 1.0), 0.011)
    dp0 = frontier(clean, "kl", "mse", [0.1, 0.5, 1.0], grid_points=73)
    shape_checks("clean_dp", dp0, expect_tradeoff=False)
    return rec.result("restoration")


def _suite_rpc_given_d(seed: int, workers: int) -> SuiteResult:
    rec = _Recorder()
    src = GaussianPairSource(0.0, 0.0, 1.0, 0.49, 0.63)
    h = src.h_s

    spot = rate_given_pcd(src, 0.5, math.inf, h - 0.3)
    rec.worst("spot_rate_err", abs(spot.rate - 0.407118343711173), 1e-6)
    rec.flag("spot_region", spot.region is Region.CLASSIFICATION_LIMITED)
    assert spot.witness is not None
    s_star = math.sqrt(spot.witness.var_xh)
    rec.worst("spot_spread_err", abs(s_star - 0.98513371810627), 1e-6)
    # both boundary roots of the binding classification constraint carry
    # the same rate; the solver must return the lower-perception one
    k = (1.0 - math.exp(2.0 * ((h - 0.3) - h))) / src.rho**2
    disc = math.sqrt(src.var_x * (k - 1.0) + 0.5)
    root_lo = math.sqrt(src.var_x * k) - disc
    root_hi = math.sqrt(src.var_x * k) + disc
    rate_lo = eval_at(src, 0.5, root_lo).rate
    rate_hi = eval_at(src, 0.5, root_hi).rate
    rec.worst("root_rate_asymmetry", abs(rate_lo - rate_hi), 1e-9)
    rec.flag(
        "tie_breaks_to_lower_perception",
        eval_at(src, 0.5, s_star).perception_kl
        <= eval_at(src, 0.5, root_lo).perception_kl,
    )

    for d in (0.2, 0.5, 1.0, 1.6):
        for c in (h - 0.5, h - 0.2, h + 0.1):
            pinned = rate_given_pcd(src, d, math.inf, c)
            free = rdc_gaussian(src, d, c)
            rec.flag("relaxation_feasibility", pinned.feasible == free.feasible)
            if pinned.feasible and free.feasible:
                rec.worst("relaxation_deficit", free.rate - pinned.rate, 1e-6)

    def rate_or_inf(d: float, p: float, c: float) -> float:
        tp = rate_given_pcd(src, d, p, c)
        return tp.rate if tp.feasible else math.inf

    p_grid = (0.001, 0.01, 0.1, math.inf)
    c_grid = (h - 0.4, h - 0.2, h)
    for c in c_grid:
        rates = [rate_or_inf(0.5, p, c) for p in p_grid]
        rec.worst("monotone_in_p_increase", _max_increase(rates), 1e-9)
    for p in p_grid:
        rates = [rate_or_inf(0.5, p, c) for c in c_grid]
        rec.worst("monotone_in_c_increase", _max_increase(rates), 1e-9)
    d_rates = [
        rate_or_inf(float(d), math.inf, h - 0.3) for d in np.linspace(0.2, 2.0, 8)
    ]
    rec.worst("monotone_in_d_increase_unbounded_p", _max_increase(d_rates), 1e-9)

    twice_var = rate_given_pcd(src, 2.0 * src.var_x, 0.0, h + 0.1)
    rec.worst("zero_rate_at_twice_variance", abs(twice_var.rate), 1e-9)
    rec.flag("zero_rate_region", twice_var.region is Region.ZERO_RATE)
    zero_row = pc_frontier_given_rd(src, 2.0 * src.var_x, 0.0, [h + 0.1])[0]
    rec.worst("zero_min_p_at_twice_variance", abs(zero_row.min_p), 1e-9)

    c_scan = [h - 0.68, h - 0.55, h - 0.4, h - 0.25, h - 0.1, h + 0.05]
    level = 1.3

    def spread(d: float) -> float:
        rows = pc_frontier_given_rd(src, d, level, c_scan)
        vals = [r.min_p for r in rows if r.feasible]
        rec.flag(f"frontier_feasible_d{d}", len(vals) >= 2)
        return max(vals) - min(vals) if vals else 0.0

    spread_half = spread(0.5)
    spread_tenth = spread(0.1)
    rec.flag("frontier_non_constant_d0.5", spread_half > 1e-6)
    rec.flag("frontier_shrinks_with_d", spread_tenth < spread_half)

    # witnesses satisfy what they claim
    for d, p, c in ((0.5, 0.0001, h - 0.3), (0.5, math.inf, h - 0.3), (1.2, 0.01, h)):
        tp = rate_given_pcd(src, d, p, c)
        if not tp.feasible:
            continue
        assert tp.witness is not None
        stats = gaussian_recon_stats(src, tp.witness)
        rec.worst("witness_mse_pin_err", abs(stats.distortion - d), 1e-9)
        rec.worst("witness_kl_excess", stats.perception - p, 1e-9)
        rec.worst("witness_cond_entropy_excess", stats.cond_entropy_s - c, 1e-7)
        rec.worst("witness_rate_err", abs(stats.mutual_info - tp.rate), 1e-9)
    return rec.result("rpc-given-d")


_PLAIN_SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "entropy": _suite_entropy,
    "mgl": _suite_mgl,
    "convexity": _suite_convexity,
    "oracle-rdc-binary": _suite_oracle_rdc_binary,
    "oracle-rdc-gaussian": _suite_oracle_rdc_gaussian,
    "oracle-rpc-gaussian": _suite_oracle_rpc_gaussian,
    "restoration": _suite_restoration,
    "rpc-given-d": _suite_rpc_given_d,
}

SUITE_NAMES = (
    "entropy",
    "mgl",
    "convexity",
    "oracle-rdc-binary",
    "oracle-rdc-gaussian",
    "oracle-rpc-gaussian",
    "rpc-binary-gap-probe",
    "restoration",
    "rpc-given-d",
)


def run_suites(
    names: Iterable[str] | None = None,
    *,
    seed: int = 0,
    workers: int = 1,
) -> VerifyReport:
    """Run the named suites (all of them by default) and build a report.

    The report captures the seed but deliberately not the worker count:
    identical (suite selection, seed) must yield identical reports no
    matter how the oracle grids were partitioned.
    """
    selected = list(names) if names is not None else list(SUITE_NAMES)
    unknown = [n for n in selected if n not in SUITE_NAMES]
    if unknown:
        raise DomainError(f"unknown suites: {unknown}; choose from {SUITE_NAMES}")

    suites: list[SuiteResult] = []
    probes: list[GapProbe] = []
    for name in selected:
        if name == "rpc-binary-gap-probe":
            result, found = _suite_rpc_binary_gap_probe(seed, workers)
            suites.append(result)
            probes.extend(found)
        else:
            suites.append(_PLAIN_SUITES[name](seed, workers))
    return VerifyReport(seed=seed, suites=suites, gap_probes=probes)
