"""Orness and maximum-entropy OWA weights.

The max-entropy weights for a target orness are geometric,
``w_i ∝ h^(n-i)``, with ``h`` the positive root of

    Σ_{i=1..n} ((n-i)/(n-1) - orn) h^(n-i) = 0.

``h > 1`` puts weight on the top positions (orn > 0.5), ``h < 1`` on the
bottom ones.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError

RESIDUAL_TOL = 1e-13
INTERVAL_TOL = 1e-14
_MAX_ITER = 500


def orness(weights: Sequence[float]) -> float:
    """Yager orness ``Σ (n-i) w_i / (n-1)``.  A single weight has orness 0.5."""
    w = np.asarray(weights, dtype=float)
    n = w.size
    if n == 0:
        raise DomainError("empty weight vector")
    if n == 1:
        return 0.5
    return float(np.dot(np.arange(n - 1, -1, -1), w) / (n - 1))


def _geometric(n: int, h: float) -> np.ndarray:
    # scale by the largest power so that h far from 1 cannot overflow
    k = np.arange(n - 1, -1, -1, dtype=float)
    if h >= 1.0:
        w = np.exp((k - (n - 1)) * math.log(h))
    else:
        w = np.exp(k * math.log(h))
    return w / w.sum()


def _residual(n: int, orn: float, h: float) -> float:
    """Orness of the weights generated by ``h``, minus the target.

    This is the root polynomial divided by Σ h^k: same sign, same root,
    but bounded in [-1, 1] for any h.
    """
    return orness(_geometric(n, h)) - orn


def _poly_and_slope(n: int, orn: float, h: float) -> tuple[float, float]:
    coeffs = [k / (n - 1) - orn for k in range(n)]
    p = dp = 0.0
    for k in range(n - 1, -1, -1):
        dp = dp * h + p
        p = p * h + coeffs[k]
    return p, dp


def solve_h(n: int, orn: float) -> float:
    """Positive root of the max-entropy weight polynomial for ``0 < orn < 1``."""
    if n < 2:
        raise DomainError("solve_h needs n >= 2")
    if not 0.0 < orn < 1.0:
        raise DomainError(f"solve_h needs 0 < orn < 1, got {orn!r}")
    if orn == 0.5:
        return 1.0
    # residual is increasing in h: orness grows as weight moves to the top
    if orn < 0.5:
        lo, hi = 1e-12, 1.0
    else:
        lo, hi = 1.0, 2.0
        while _residual(n, orn, hi) < 0:
            lo, hi = hi, hi * 2.0
            if hi > 1e300:
                raise DomainError(f"could not bracket root for n={n}, orn={orn}")
    h = 0.5 * (lo + hi)
    for _ in range(_MAX_ITER):
        r = _residual(n, orn, h)
        if abs(r) < RESIDUAL_TOL:
            return h
        if r < 0:
            lo = h
        else:
            hi = h
        if hi - lo < INTERVAL_TOL * max(1.0, hi):
            return h
        p, dp = _poly_and_slope(n, orn, h)
        step = h - p / dp if dp != 0 and math.isfinite(p) and math.isfinite(dp) else None
        h = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
    return h


@lru_cache(maxsize=1024)
def _maxent_cached(n: int, orn: float) -> tuple[float, ...]:
    if n == 1:
        return (1.0,)
    if orn == 1.0:
        return (1.0,) + (0.0,) * (n - 1)
    if orn == 0.0:
        return (0.0,) * (n - 1) + (1.0,)
    if orn == 0.5:
        return (1.0 / n,) * n
    return tuple(_geometric(n, solve_h(n, orn)))


def maxent_weights(n: int, orn: float = 0.5) -> np.ndarray:
    """Maximum-entropy weight vector of length ``n`` with the given orness.

    ``orn`` 1 and 0 give the limit vectors [1, 0, ..., 0] and [0, ..., 0, 1].
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"weight count must be a positive integer, got {n!r}")
    orn = float(orn)
    if not 0.0 <= orn <= 1.0:
        raise DomainError(f"orness must lie in [0, 1], got {orn!r}")
    return np.array(_maxent_cached(int(n), orn))
