"""Shared result and carrier types.

These are deliberately dumb containers: construction validates cheap
structural invariants only, and every type knows how to serialize itself
into plain dicts for the JSON/CSV layer. Infeasible results carry
``rate=nan`` (there is no minimum over an empty set), never an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Union

from .errors import DomainError


class Unit(str, Enum):
    BITS = "bits"
    NATS = "nats"


class Region(str, Enum):
    """Which constraint is active at the optimum (or why there is none)."""

    DISTORTION_LIMITED = "distortion_limited"
    CLASSIFICATION_LIMITED = "classification_limited"
    PERCEPTION_LIMITED = "perception_limited"
    ZERO_RATE = "zero_rate"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class BinaryChannel:
    """Conditional law of a binary reconstruction given the binary source.

    ``p_a = P(Xhat=0 | X=0)`` and ``p_b = P(Xhat=0 | X=1)``.
    """

    p_a: float
    p_b: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p_a <= 1.0 and 0.0 <= self.p_b <= 1.0):
            raise DomainError(f"channel probabilities out of range: {self}")

    def to_dict(self) -> dict[str, float]:
        return {"p_a": self.p_a, "p_b": self.p_b}


@dataclass(frozen=True)
class GaussianReconstruction:
    """Jointly Gaussian reconstruction: mean, variance, and covariance
    with the source. ``var_xh`` may be zero (constant reconstruction)."""

    mu_xh: float
    var_xh: float
    cov_xxh: float

    def __post_init__(self) -> None:
        if self.var_xh < 0.0:
            raise DomainError(f"variance must be nonnegative: {self.var_xh}")

    def to_dict(self) -> dict[str, float]:
        return {"mu_xh": self.mu_xh, "var_xh": self.var_xh, "cov_xxh": self.cov_xxh}


Witness = Union[BinaryChannel, GaussianReconstruction]


@dataclass(frozen=True)
class TradeoffPoint:
    """A solved instance of one of the constrained rate programs.

    ``d`` / ``p`` are None for programs without that constraint. ``rate``
    is NaN when infeasible and may be ``inf`` at degenerate boundaries
    (exact reconstruction demanded).
    """

    rate: float
    unit: Unit
    feasible: bool
    region: Region
    c: float
    d: float | None = None
    p: float | None = None
    witness: Witness | None = None

    def __post_init__(self) -> None:
        if self.feasible and not math.isnan(self.rate) and self.rate < 0.0:
            raise DomainError(f"negative rate on a feasible point: {self.rate}")
        if (self.region is Region.INFEASIBLE) == self.feasible:
            raise DomainError("region/feasibility flags disagree")

    def to_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "p": self.p,
            "c": self.c,
            "rate": self.rate,
            "unit": self.unit.value,
            "feasible": self.feasible,
            "region": self.region.value,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class ChannelStats:
    """Exact constraint functionals of one channel / reconstruction.

    ``perception`` is total variation for binary sources and KL for
    Gaussian ones; ``distortion`` is Hamming respectively mean-squared
    error. Sentinels: ``mutual_info`` and ``perception`` may be ``inf``.
    """

    mutual_info: float
    distortion: float
    perception: float
    cond_entropy_s: float
    unit: Unit

    def to_dict(self) -> dict[str, Any]:
        return {
            "mutual_info": self.mutual_info,
            "distortion": self.distortion,
            "perception": self.perception,
            "cond_entropy_s": self.cond_entropy_s,
            "unit": self.unit.value,
        }


@dataclass(frozen=True)
class OracleResult:
    """Outcome of a brute-force constrained minimization.

    ``rate`` is recomputed from ``argmin`` after the search so the two
    always agree; ``feasible_points`` counts grid cells that passed the
    slack-widened feasibility screen. ``constraints`` echoes the effective
    bounds used (a requested P=0 is executed as P<=1e-6).
    """

    rate: float
    unit: Unit
    argmin: Witness | None
    grid_resolution: float
    refined: bool
    feasible: bool
    feasible_points: int
    constraints: dict[str, float]

    def to_dict(self) -> dict[str, Any]:
        return {
            "rate": self.rate,
            "unit": self.unit.value,
            "argmin": self.argmin.to_dict() if self.argmin else None,
            "grid_resolution": self.grid_resolution,
            "refined": self.refined,
            "feasible": self.feasible,
            "feasible_points": self.feasible_points,
            "constraints": dict(self.constraints),
        }
