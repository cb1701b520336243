"""Small deterministic 1-D search routines.

Nothing here is clever: a bracketing bisection and a golden-section
minimizer, both with fixed iteration caps so callers get predictable
runtimes. They operate on plain floats and are safe to call from any
number of threads.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import DomainError

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Root of ``f`` on ``[lo, hi]`` by bisection.

    Requires a sign change (an endpoint value of exactly 0 is accepted).
    Bisection is deliberately preferred over faster derivative-based
    methods: several of our targets (binary entropy near 0, the conditional
    entropy along a zero-divergence line) have unbounded slope at one end
    of the bracket.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise DomainError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or (hi - lo) * 0.5 < xtol:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def bisect_predicate(
    pred: Callable[[float], bool],
    lo: float,
    hi: float,
    *,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Boundary of a monotone boolean predicate.

    ``pred(hi)`` must be True and ``pred(lo)`` False; returns a point where
    the predicate holds, within ``xtol`` of the switch. Used to trim
    feasible intervals whose edge is defined by a constraint rather than
    by a smooth function value.
    """
    if not pred(hi):
        raise DomainError("predicate must hold at the upper end of the bracket")
    if pred(lo):
        return lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo < xtol:
            break
    return hi


def golden_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    xtol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[lo, hi]`` by golden-section search.

    Returns ``(argmin, value)``. The interval shrinks by the inverse golden
    ratio each step, reusing one interior evaluation, so the cost is one
    call per iteration after the first two.
    """
    if hi < lo:
        raise DomainError(f"empty bracket [{lo}, {hi}]")
    a, b = lo, hi
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = f(x2)
    # include the endpoints: constrained minima often sit on the bracket edge
    candidates = [(f(a), a), (f1, x1), (f2, x2), (f(b), b)]
    best = min(candidates, key=lambda t: (t[0], t[1]))
    return best[1], best[0]
