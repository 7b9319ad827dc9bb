"""Similarity indices between sets and permutations."""

from __future__ import annotations

import math
from typing import Collection, Sequence

import numpy as np

from .errors import DomainError
from .owa import maxent_weights

WEIGHT_SUM_TOL = 1e-9


def prefix_set(perm: Sequence[int], depth: int) -> frozenset[int]:
    """Set of the first ``depth`` elements; saturates at the whole permutation."""
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    return frozenset(perm[:depth])


def jaccard(a: Collection[int], b: Collection[int]) -> float:
    a, b = set(a), set(b)
    union = len(a | b)
    if union == 0:
        raise DomainError("Jaccard index of two empty sets is undefined")
    return len(a & b) / union


def ordered_degree(s: Sequence[int], t: Sequence[int]) -> float:
    """exp(-Σ |rank_s(x) - rank_t(x)| / |s ∪ t|) over the shared elements x."""
    rank_t = {x: i for i, x in enumerate(t)}
    shift = sum(abs(i - rank_t[x]) for i, x in enumerate(s) if x in rank_t)
    return math.exp(-shift / len(set(s) | set(t)))


def cumulative_jaccard(s: Sequence[int], t: Sequence[int], weights: Sequence[float]) -> float:
    """Depth-weighted sum of prefix Jaccard indices, one weight per depth."""
    w = np.asarray(weights, dtype=float)
    depth = w.size
    if not 1 <= depth <= max(len(s), len(t)):
        raise DomainError(f"depth {depth} outside 1..{max(len(s), len(t))}")
    if np.any(w < 0) or np.any(w > 1) or abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError("depth weights must lie in [0, 1] and sum to 1")
    return float(sum(w[d - 1] * jaccard(prefix_set(s, d), prefix_set(t, d)) for d in range(1, depth + 1)))


def cumulative_jaccard_orness(
    s: Sequence[int], t: Sequence[int], orn: float = 0.5, depth: int | None = None
) -> float:
    """Cumulative Jaccard index with max-entropy weights of the given orness.

    ``depth`` defaults to the longer permutation's length.
    """
    if depth is None:
        depth = max(len(s), len(t))
    return cumulative_jaccard(s, t, maxent_weights(depth, orn))
