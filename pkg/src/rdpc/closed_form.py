"""Exact tradeoff rates for the four constrained programs, with witnesses.

Two source families (binary pair, jointly Gaussian pair) times two
constraint pairs: distortion+classification and perception+classification.
Each solver returns a :class:`~rdpc.results.TradeoffPoint` carrying the
minimal rate, the active-constraint region label, and an explicit
achievability witness that the oracle module can re-evaluate.

Units follow the package convention: bits for binary sources, nats for
Gaussian ones. Boundary comparisons use a 1e-12 slack so exact-boundary
inputs classify as feasible.
"""

from __future__ import annotations

import math

from .entropy import (
    binary_entropy,
    binary_entropy_inv,
    discrete_entropy_bits,
)
from .errors import DomainError, WitnessUnavailableError
from .optimize import bisect_root
from .results import (
    BinaryChannel,
    GaussianReconstruction,
    Region,
    TradeoffPoint,
    Unit,
)
from .sources import BinaryPairSource, GaussianPairSource, gaussian_derived

_TOL = 1e-12


# ---------------------------------------------------------------------------
# binary pair source
# ---------------------------------------------------------------------------

def _c1(src: BinaryPairSource, c: float) -> float:
    """Distortion-equivalent level of a classification bound C (bits).

    Inverts the label entropy constraint into a crossover probability:
    c1 = (Hinv(min(C,1)) - p1) / (1 - 2 p1), clamped at 0 for C within
    rounding of the floor H(p1). Always <= 1/2.
    """
    c_eff = min(c, 1.0)
    raw = (binary_entropy_inv(c_eff) - src.p1) / (1.0 - 2.0 * src.p1)
    return max(raw, 0.0)


def _backward_witness(src: BinaryPairSource, eps: float) -> BinaryChannel:
    """Channel realizing X = Xhat xor Bern(eps) with the correct X marginal.

    The reconstruction weight w = P(Xhat=0) = (1 - eps - b) / (1 - 2 eps)
    is solved from the marginal constraint; the forward conditionals are
    then read off the joint. Conditionals of X given Xhat come out
    complementary (eps, 1-eps), which is what makes the label-entropy
    bound tight.
    """
    b1 = src.marginal_x1
    if b1 < 1e-15:
        # degenerate source: X is constant, the constant channel is exact
        return BinaryChannel(1.0, 1.0)
    if eps <= 1e-15:
        return BinaryChannel(1.0, 0.0)
    if eps >= 0.5 - _TOL:
        return BinaryChannel(1.0, 1.0)
    w = (1.0 - eps - b1) / (1.0 - 2.0 * eps)
    if w < -1e-12 or w > 1.0 + 1e-12:
        raise WitnessUnavailableError(
            f"reconstruction weight {w} outside [0,1] for eps={eps}"
        )
    w = min(max(w, 0.0), 1.0)
    p_a = min(max(w * (1.0 - eps) / (1.0 - b1), 0.0), 1.0)
    p_b = min(max(w * eps / b1, 0.0), 1.0)
    return BinaryChannel(p_a, p_b)


def _classify_rdc_binary(
    src: BinaryPairSource, d: float, c: float
) -> tuple[float, Region, float | None]:
    """Shared branch logic: returns (rate, region, eps-for-witness)."""
    b = src.b
    c1 = _c1(src, c)
    if c1 <= b + _TOL and d >= c1 - _TOL:
        eps = min(c1, b)
        rate = max(0.0, binary_entropy(b) - binary_entropy(eps))
        return rate, Region.CLASSIFICATION_LIMITED, eps
    if d <= b + _TOL and d < c1:
        eps = min(d, b)
        rate = max(0.0, binary_entropy(b) - binary_entropy(eps))
        return rate, Region.DISTORTION_LIMITED, eps
    return 0.0, Region.ZERO_RATE, None


def rdc_binary(src: BinaryPairSource, d: float, c: float) -> TradeoffPoint:
    """Minimal rate under Hamming distortion <= d and H(S|Xhat) <= c bits.

    Three branches: the classification bound dominates when its
    distortion-equivalent level c1 is the smaller requirement (ties at
    d == c1 are labelled classification-limited; the rates agree), the
    distortion bound dominates when d < c1, and the rate is zero once the
    looser of the two exceeds the source marginal b. Infeasible iff
    c < H(p1).
    """
    if d < 0.0:
        raise DomainError(f"distortion bound must be nonnegative: {d}")
    if c < binary_entropy(src.p1) - _TOL:
        return TradeoffPoint(
            rate=math.nan, unit=Unit.BITS, feasible=False,
            region=Region.INFEASIBLE, c=c, d=d,
        )
    rate, region, eps = _classify_rdc_binary(src, d, c)
    if region is Region.ZERO_RATE:
        witness = BinaryChannel(1.0, 1.0)
    else:
        witness = _backward_witness(src, eps if eps is not None else 0.0)
    return TradeoffPoint(
        rate=rate, unit=Unit.BITS, feasible=True, region=region,
        c=c, d=d, witness=witness,
    )


def rdc_binary_witness(src: BinaryPairSource, d: float, c: float) -> BinaryChannel:
    """Achievability channel for a feasible binary distortion instance."""
    if c < binary_entropy(src.p1) - _TOL:
        raise WitnessUnavailableError("instance is infeasible, no witness exists")
    _, region, eps = _classify_rdc_binary(src, d, c)
    if region is Region.ZERO_RATE:
        return BinaryChannel(1.0, 1.0)
    return _backward_witness(src, eps if eps is not None else 0.0)


def g_function(src: BinaryPairSource, p_a: float) -> float:
    """Label conditional entropy H(S|Xhat) along the zero-divergence line.

    On the line the reconstruction marginal matches the source, forcing
    p_b = (1-b)(1-p_a)/b. The value is computed as the entropy of the
    four-atom joint of (S, Xhat) minus H(b); it decreases from H(a) at
    p_a = 1-b down to H(p1) at p_a = 1.
    """
    b = src.b
    if b < 1e-15:
        raise DomainError("source marginal is degenerate; the line is undefined")
    p_b = (1.0 - b) * (1.0 - p_a) / b
    if p_b < -1e-12 or p_b > 1.0 + 1e-12:
        raise DomainError(
            f"p_a={p_a} implies p_b={p_b} outside [0,1]; "
            f"the line only exists for p_a in [{(1 - 2 * b) / (1 - b)}, 1]"
        )
    p1 = src.p1
    one_b = 1.0 - b
    s = (1.0 - 2.0 * p1) * one_b * p_a
    atom_s0_x0 = s + p1 * one_b
    atom_s1_x0 = -s + (1.0 - p1) * one_b
    atom_s0_x1 = -s + p1 * b + one_b * (1.0 - 2.0 * p1)
    atom_s1_x1 = s + (1.0 - p1) * b - one_b * (1.0 - 2.0 * p1)
    joint = [atom_s0_x0, atom_s0_x1, atom_s1_x0, atom_s1_x1]
    return discrete_entropy_bits(joint) - binary_entropy(b)


def rpc_binary_witness(src: BinaryPairSource, c: float) -> BinaryChannel:
    """Zero-divergence channel with H(S|Xhat) = c, via inverting g.

    Bisection runs on the decreasing branch p_a in [1-b, 1]. The returned
    channel always has TV(p_X, p_Xhat) = 0; its mutual information may
    strictly exceed the closed-form rate for interior c (see the gap probe
    in the verify suite), so callers must not assume rate equality.
    """
    b = src.b
    if b < 1e-15:
        return BinaryChannel(1.0, 1.0)
    h_a = binary_entropy(src.a)
    h_p1 = binary_entropy(src.p1)
    if c < h_p1 - _TOL or c > 1.0 + _TOL:
        raise DomainError(f"no zero-divergence channel reaches c={c}")
    if c >= h_a - _TOL:
        return BinaryChannel(1.0 - b, 1.0 - b)
    if c <= h_p1 + _TOL:
        return BinaryChannel(1.0, 0.0)
    p_a = bisect_root(
        lambda x: g_function(src, x) - c, 1.0 - b, 1.0, xtol=1e-13
    )
    p_b = min(max((1.0 - b) * (1.0 - p_a) / b, 0.0), 1.0)
    return BinaryChannel(p_a, p_b)


def rpc_binary(src: BinaryPairSource, p: float, c: float) -> TradeoffPoint:
    """Minimal rate under TV(p_X, p_Xhat) <= p and H(S|Xhat) <= c bits.

    The rate does not depend on p: a zero-divergence channel attains every
    feasible classification level, so the perception bound is never the
    binding constraint. Zero rate for c >= H(a); infeasible for c < H(p1).
    """
    if p < 0.0:
        raise DomainError(f"perception bound must be nonnegative: {p}")
    h_p1 = binary_entropy(src.p1)
    h_a = binary_entropy(src.a)
    if c < h_p1 - _TOL:
        return TradeoffPoint(
            rate=math.nan, unit=Unit.BITS, feasible=False,
            region=Region.INFEASIBLE, c=c, p=p,
        )
    if c >= h_a - _TOL:
        b = src.b
        witness = BinaryChannel(1.0 - b, 1.0 - b)
        return TradeoffPoint(
            rate=0.0, unit=Unit.BITS, feasible=True, region=Region.ZERO_RATE,
            c=c, p=p, witness=witness,
        )
    rate = max(0.0, binary_entropy(src.b) - binary_entropy(_c1(src, c)))
    return TradeoffPoint(
        rate=rate, unit=Unit.BITS, feasible=True,
        region=Region.CLASSIFICATION_LIMITED, c=c, p=p,
        witness=rpc_binary_witness(src, c),
    )


# ---------------------------------------------------------------------------
# Gaussian pair source
# ---------------------------------------------------------------------------

def _gaussian_k(src: GaussianPairSource, c: float) -> float:
    """Correlation budget implied by a classification bound c (nats).

    k = (1 - e^{2(c - h(S))}) / rho^2 is the squared source-reconstruction
    correlation needed to push H(S|Xhat) down to c; clamped to 1 at the
    feasibility floor.
    """
    rho2 = src.rho**2
    k = (1.0 - math.exp(2.0 * (c - src.h_s))) / rho2
    return min(k, 1.0)


def _rdc_gaussian_core(
    src: GaussianPairSource, d: float, c: float
) -> tuple[float, Region, GaussianReconstruction | None, float]:
    """Returns (rate, region, witness, d_star)."""
    vx = src.var_x
    h = src.h_s

    if c >= h - _TOL:
        # classification constraint is vacuous: plain rate-distortion
        d_star = vx
        if d > vx + _TOL:
            return 0.0, Region.ZERO_RATE, GaussianReconstruction(src.mu_x, 0.0, 0.0), d_star
        if d == 0.0:
            rate = math.inf
            wit = GaussianReconstruction(src.mu_x, vx, vx)
        else:
            rate = max(0.0, 0.5 * math.log(vx / d))
            v = max(vx - d, 0.0)
            wit = GaussianReconstruction(src.mu_x, v, v)
        return rate, Region.DISTORTION_LIMITED, wit, d_star

    k = _gaussian_k(src, c)
    d_star = vx * (1.0 - k)
    if d <= d_star + _TOL:
        if d == 0.0:
            rate = math.inf
            wit = GaussianReconstruction(src.mu_x, vx, vx)
        else:
            rate = max(0.0, 0.5 * math.log(vx / d))
            v = max(vx - d, 0.0)
            wit = GaussianReconstruction(src.mu_x, v, v)
        return rate, Region.DISTORTION_LIMITED, wit, d_star
    one_minus_k = 1.0 - k
    rate = math.inf if one_minus_k <= 0.0 else -0.5 * math.log(one_minus_k)
    wit = GaussianReconstruction(src.mu_x, vx * k, vx * k)
    return rate, Region.CLASSIFICATION_LIMITED, wit, d_star


def rdc_gaussian(src: GaussianPairSource, d: float, c: float) -> TradeoffPoint:
    """Minimal rate under MSE <= d and H(S|Xhat) <= c nats.

    The crossover distortion d* = var_x (1 - k) splits the surface: below
    it the program is plain rate-distortion (rate 0.5 ln(var_x/d), +inf
    sentinel at d = 0), above it the classification bound pins the rate at
    -0.5 ln(1 - k) independent of d. Zero rate once both constraints are
    slack at the constant reconstruction. Infeasible below the floor
    0.5 ln(1 - rho^2) + h(S).
    """
    if d < 0.0:
        raise DomainError(f"distortion bound must be nonnegative: {d}")
    floor = gaussian_derived(src).feasibility_floor_c
    if c < floor - _TOL:
        return TradeoffPoint(
            rate=math.nan, unit=Unit.NATS, feasible=False,
            region=Region.INFEASIBLE, c=c, d=d,
        )
    rate, region, wit, _ = _rdc_gaussian_core(src, d, c)
    return TradeoffPoint(
        rate=rate, unit=Unit.NATS, feasible=True, region=region,
        c=c, d=d, witness=wit,
    )


def rdc_gaussian_region(
    src: GaussianPairSource, d: float, c: float
) -> tuple[Region, float]:
    """Active-constraint label plus the boundary distortion d*.

    d* is reported as NaN for infeasible instances (no boundary exists).
    """
    if d < 0.0:
        raise DomainError(f"distortion bound must be nonnegative: {d}")
    floor = gaussian_derived(src).feasibility_floor_c
    if c < floor - _TOL:
        return Region.INFEASIBLE, math.nan
    _, region, _, d_star = _rdc_gaussian_core(src, d, c)
    return region, d_star


def rpc_gaussian_witness(src: GaussianPairSource, c: float) -> GaussianReconstruction:
    """Distribution-matching reconstruction attaining the Gaussian rate.

    Keeps the source law exactly (mu_xh = mu_x, var_xh = var_x, so KL = 0)
    and tilts only the covariance; at the feasibility floor the covariance
    saturates Cauchy-Schwarz and the rate diverges.
    """
    floor = gaussian_derived(src).feasibility_floor_c
    if c < floor - _TOL:
        raise DomainError(f"c={c} is below the feasibility floor {floor}")
    vx = src.var_x
    if src.cov == 0.0 or c >= src.h_s:
        return GaussianReconstruction(src.mu_x, vx, 0.0)
    inner = max(0.0, 1.0 - math.exp(2.0 * (c - src.h_s)))
    theta2 = math.sqrt(src.var_s * vx**3 * inner) / abs(src.cov)
    return GaussianReconstruction(src.mu_x, vx, min(theta2, vx))


def rpc_gaussian(src: GaussianPairSource, p: float, c: float) -> TradeoffPoint:
    """Minimal rate under KL(p_X || p_Xhat) <= p and H(S|Xhat) <= c nats.

    Like the binary case the answer ignores p: matching the source
    distribution costs nothing in rate here, so only the classification
    bound matters. Zero rate for c >= h(S); infeasible below the floor.
    """
    if p < 0.0:
        raise DomainError(f"perception bound must be nonnegative: {p}")
    floor = gaussian_derived(src).feasibility_floor_c
    if c < floor - _TOL:
        return TradeoffPoint(
            rate=math.nan, unit=Unit.NATS, feasible=False,
            region=Region.INFEASIBLE, c=c, p=p,
        )
    if c >= src.h_s - _TOL:
        return TradeoffPoint(
            rate=0.0, unit=Unit.NATS, feasible=True, region=Region.ZERO_RATE,
            c=c, p=p, witness=GaussianReconstruction(src.mu_x, src.var_x, 0.0),
        )
    k = _gaussian_k(src, c)
    rate = math.inf if k >= 1.0 else -0.5 * math.log(1.0 - k)
    return TradeoffPoint(
        rate=rate, unit=Unit.NATS, feasible=True,
        region=Region.CLASSIFICATION_LIMITED, c=c, p=p,
        witness=rpc_gaussian_witness(src, c),
    )
