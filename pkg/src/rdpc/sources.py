"""Source models and their derived information quantities.

Three fixed families: a binary pair (source bit X with a hidden label S
reached through a binary symmetric channel), a jointly Gaussian pair, and
a two-component Gaussian mixture used by the restoration example. All are
immutable after construction and freely shareable across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import binary_entropy, gaussian_diff_entropy
from .errors import DegenerateSourceError, DomainError

_DEGENERATE_EPS = 1e-12


@dataclass(frozen=True)
class BinaryPairSource:
    """X ~ Bern(marginal) observed through S = X xor Bern(p1), S ~ Bern(a).

    The admissible regime is ``0 <= p1 <= a <= 1/2`` with ``p1 < 1/2``
    strictly. ``a > 1/2`` is rejected rather than folded: the closed forms
    below assume the stated regime and silently folding the label marginal
    would change the meaning of the inputs.
    """

    a: float
    p1: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.a <= 1.0):
            raise DomainError(f"probabilities out of range: {self}")
        if 1.0 - 2.0 * self.p1 < _DEGENERATE_EPS:
            raise DegenerateSourceError(
                "label channel crossover at or above 1/2: the label carries "
                "no usable information and the classification constraint "
                "degenerates"
            )
        if self.a > 0.5:
            raise DomainError(f"label probability a={self.a} must be <= 1/2")
        if self.a < self.p1:
            raise DomainError(
                f"need p1 <= a <= 1/2, got a={self.a}, p1={self.p1}"
            )

    @property
    def marginal_x1(self) -> float:
        """Raw P(X=1) implied by (a, p1), before any folding."""
        return (self.a - self.p1) / (1.0 - 2.0 * self.p1)

    @property
    def b(self) -> float:
        """Folded source marginal min{P(X=1), 1-P(X=1)}, in [0, 1/2]."""
        raw = self.marginal_x1
        return min(raw, 1.0 - raw)


@dataclass(frozen=True)
class BinaryDerived:
    b: float
    h_a: float
    h_p1: float
    feasibility_floor_c: float


def binary_derived(src: BinaryPairSource) -> BinaryDerived:
    """Marginal and entropy summary of a binary pair source (bits).

    The feasibility floor is H(p1): by data processing no reconstruction
    can drive H(S|Xhat) below the label-channel noise entropy.
    """
    h_p1 = binary_entropy(src.p1)
    return BinaryDerived(
        b=src.b,
        h_a=binary_entropy(src.a),
        h_p1=h_p1,
        feasibility_floor_c=h_p1,
    )


@dataclass(frozen=True)
class GaussianPairSource:
    """Jointly Gaussian (X, S) with covariance ``cov`` between them.

    Variances are strict; |cov| up to the Cauchy-Schwarz bound is allowed,
    with the fully correlated case reported through a -inf feasibility
    floor rather than rejected.
    """

    mu_x: float
    mu_s: float
    var_x: float
    var_s: float
    cov: float

    def __post_init__(self) -> None:
        if self.var_x <= 0.0 or self.var_s <= 0.0:
            raise DomainError(f"variances must be positive: {self}")
        bound = math.sqrt(self.var_s * self.var_x)
        if abs(self.cov) > bound * (1.0 + 1e-12):
            raise DomainError(
                f"|cov|={abs(self.cov)} exceeds Cauchy-Schwarz bound {bound}"
            )

    @property
    def rho(self) -> float:
        r = self.cov / math.sqrt(self.var_s * self.var_x)
        return max(-1.0, min(1.0, r))

    @property
    def h_s(self) -> float:
        """Differential entropy of the label, nats."""
        return gaussian_diff_entropy(self.var_s)


@dataclass(frozen=True)
class GaussianDerived:
    rho: float
    h_s: float
    feasibility_floor_c: float


def gaussian_derived(src: GaussianPairSource) -> GaussianDerived:
    """Correlation, label entropy, and the classification feasibility floor.

    Floor = 0.5*ln(1-rho^2) + h(S) in nats; -inf when |rho| = 1 (the label
    is a deterministic function of the source, so any C is reachable).
    """
    rho = src.rho
    one_minus = 1.0 - rho * rho
    if one_minus <= 0.0:
        floor = -math.inf
    else:
        floor = 0.5 * math.log(one_minus) + src.h_s
    return GaussianDerived(rho=rho, h_s=src.h_s, feasibility_floor_c=floor)


@dataclass(frozen=True)
class GaussianMixture2:
    """Two-component Gaussian mixture w1*N(m1,v1) + w2*N(m2,v2)."""

    w1: float
    w2: float
    m1: float
    m2: float
    v1: float
    v2: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.w1 <= 1.0 and 0.0 <= self.w2 <= 1.0):
            raise DomainError(f"weights out of range: ({self.w1}, {self.w2})")
        if abs(self.w1 + self.w2 - 1.0) > 1e-12:
            raise DomainError(f"weights must sum to 1: {self.w1 + self.w2}")
        if self.v1 <= 0.0 or self.v2 <= 0.0:
            raise DomainError(f"variances must be positive: ({self.v1}, {self.v2})")

    def density(self, x: float) -> float:
        d1 = math.exp(-0.5 * (x - self.m1) ** 2 / self.v1) / math.sqrt(
            2.0 * math.pi * self.v1
        )
        d2 = math.exp(-0.5 * (x - self.m2) ** 2 / self.v2) / math.sqrt(
            2.0 * math.pi * self.v2
        )
        return self.w1 * d1 + self.w2 * d2

    def log_density(self, x: float) -> float:
        """Log of ``density``, stable far into the tails where the plain
        density underflows to zero."""
        parts = []
        for w, m, v in ((self.w1, self.m1, self.v1), (self.w2, self.m2, self.v2)):
            if w > 0.0:
                parts.append(
                    math.log(w)
                    - 0.5 * (x - m) ** 2 / v
                    - 0.5 * math.log(2.0 * math.pi * v)
                )
        if not parts:
            return -math.inf
        top = max(parts)
        i_top = parts.index(top)
        rest = sum(math.exp(t - top) for j, t in enumerate(parts) if j != i_top)
        return top + math.log1p(rest)

    def second_moment(self) -> float:
        return self.w1 * (self.m1**2 + self.v1) + self.w2 * (self.m2**2 + self.v2)

    def widest_sd(self) -> float:
        return math.sqrt(max(self.v1, self.v2))

    def support_12sd(self) -> tuple[float, float]:
        """Interval covering both components out to 12 widest-component
        standard deviations; the quadrature default."""
        spread = 12.0 * self.widest_sd()
        return (min(self.m1, self.m2) - spread, max(self.m1, self.m2) + spread)
