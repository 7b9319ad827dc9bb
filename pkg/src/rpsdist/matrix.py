"""Weighting matrices over an event universe, their spectrum and the PD correction.

Three kinds are supported:

* ``jaccard`` -- Jaccard index of the underlying element sets,
* ``ordered-degree`` -- Jaccard index times ordered degree,
* ``cumulative-jaccard`` -- cumulative Jaccard index with max-entropy weights.

For the cumulative kind, a pair (a, b) is evaluated at depth
``min(t, max(|a|, |b|))`` with a freshly generated weight vector of that
length, so every diagonal entry is exactly 1 whatever ``t`` is.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, TextIO

import numpy as np

from .core import Event, Frame
from .errors import DomainError
from .owa import maxent_weights
from .similarity import cumulative_jaccard, jaccard, ordered_degree

KINDS = ("jaccard", "ordered-degree", "cumulative-jaccard")
KIND_ALIASES = {"d": "jaccard", "j": "jaccard", "rd": "ordered-degree", "od": "ordered-degree", "cd": "cumulative-jaccard"}

SYMMETRY_TOL = 1e-12
DEFAULT_EPSILON = 1e-12

# entries per chunk of the (rows, universe, depth) work arrays
_CHUNK_BUDGET = 1 << 22


def normalize_kind(kind: str) -> str:
    kind = KIND_ALIASES.get(kind.lower(), kind.lower())
    if kind not in KINDS:
        raise DomainError(f"unknown matrix kind {kind!r}; expected one of {KINDS}")
    return kind


@dataclass(frozen=True, eq=False)
class WeightingMatrix:
    universe: tuple[Event, ...]
    entries: np.ndarray = field(repr=False)
    kind: str
    orn: float | None = None
    t: int | None = None
    corrected: bool = False

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        n = len(self.universe)
        if entries.shape != (n, n):
            raise DomainError(f"entries shape {entries.shape} does not match universe size {n}")
        entries.setflags(write=False)
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.universe)

    @cached_property
    def lambda_min(self) -> float:
        return min_eigenvalue(self.entries)

    @property
    def is_positive_definite(self) -> bool:
        return self.lambda_min > 0


def pair_entry(a: Event, b: Event, kind: str, orn: float = 0.5, t: int | None = None) -> float:
    """One matrix entry computed straight from the similarity definitions."""
    if a == b:
        return 1.0
    if not set(a) & set(b):
        return 0.0
    if kind == "jaccard":
        return jaccard(a, b)
    if kind == "ordered-degree":
        return jaccard(a, b) * ordered_degree(a, b)
    depth = max(len(a), len(b)) if t is None else min(t, max(len(a), len(b)))
    return cumulative_jaccard(a, b, maxent_weights(depth, orn))


def _check_params(universe, kind, orn, t):
    if not universe:
        raise DomainError("universe is empty")
    if len(set(universe)) != len(universe):
        raise DomainError("universe entries must be pairwise distinct")
    if kind == "cumulative-jaccard":
        if orn is None or not 0.0 <= orn <= 1.0:
            raise DomainError(f"orness must lie in [0, 1], got {orn!r}")
        if t is not None and (not isinstance(t, (int, np.integer)) or t < 1):
            raise DomainError(f"depth t must be a positive integer, got {t!r}")


def _entries_scalar(universe, kind, orn, t):
    n = len(universe)
    m = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = pair_entry(universe[i], universe[j], kind, orn, t)
    return m


def _entries_vectorized(universe, kind, orn, t):
    n = len(universe)
    lengths = np.array([len(e) for e in universe])
    depth = int(lengths.max())
    n_elem = max(max(e) for e in universe)

    # prefix bitmasks, saturating at the full event
    prefix = np.zeros((n, depth), dtype=np.uint64)
    for r, e in enumerate(universe):
        mask = 0
        for d in range(depth):
            if d < len(e):
                mask |= 1 << (e[d] - 1)
            prefix[r, d] = mask
    full = prefix[:, -1]

    if kind == "cumulative-jaccard":
        table = np.zeros((depth, depth))
        for k in range(1, depth + 1):
            table[k - 1, :k] = maxent_weights(k, orn)
    if kind == "ordered-degree":
        rank = np.zeros((n, n_elem + 1), dtype=np.int64)
        for r, e in enumerate(universe):
            rank[r, list(e)] = np.arange(1, len(e) + 1)

    out = np.empty((n, n))
    rows = max(1, _CHUNK_BUDGET // (n * depth))
    for lo in range(0, n, rows):
        hi = min(n, lo + rows)
        inter_full = np.bitwise_count(full[lo:hi, None] & full[None, :]).astype(float)
        union_full = np.bitwise_count(full[lo:hi, None] | full[None, :]).astype(float)
        if kind == "jaccard":
            block = inter_full / union_full
        elif kind == "ordered-degree":
            ri, rj = rank[lo:hi, None, :], rank[None, :, :]
            shift = np.where((ri > 0) & (rj > 0), np.abs(ri - rj), 0).sum(axis=-1)
            block = inter_full / union_full * np.exp(-shift / union_full)
        else:
            p = prefix[lo:hi, None, :]
            q = prefix[None, :, :]
            jd = np.bitwise_count(p & q) / np.bitwise_count(p | q)
            pair_depth = np.maximum(lengths[lo:hi, None], lengths[None, :])
            if t is not None:
                pair_depth = np.minimum(pair_depth, t)
            block = np.einsum("ijd,ijd->ij", jd, table[pair_depth - 1])
        block[inter_full == 0] = 0.0
        out[lo:hi] = block
    np.fill_diagonal(out, 1.0)
    return out


def build_matrix(
    universe: Sequence[Event], kind: str = "cumulative-jaccard", orn: float = 0.5, t: int | None = None
) -> WeightingMatrix:
    """Build the weighting matrix of ``kind`` over ``universe``.

    ``orn`` and ``t`` only matter for the cumulative kind; ``t=None`` uses the
    full pair depth.
    """
    universe = tuple(tuple(e) for e in universe)
    kind = normalize_kind(kind)
    _check_params(universe, kind, orn, t)
    if max(max(e) for e in universe) <= 64:
        entries = _entries_vectorized(universe, kind, orn, t)
    else:
        entries = _entries_scalar(universe, kind, orn, t)
    params = (float(orn), t) if kind == "cumulative-jaccard" else (None, None)
    return WeightingMatrix(universe, entries, kind, *params)


def min_eigenvalue(m: WeightingMatrix | np.ndarray) -> float:
    """Smallest eigenvalue of a symmetric matrix (LAPACK ``syevd``)."""
    if isinstance(m, WeightingMatrix):
        return m.lambda_min
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if not np.allclose(a, a.T, rtol=0.0, atol=SYMMETRY_TOL * scale):
        raise DomainError("matrix is not symmetric")
    return float(np.linalg.eigvalsh(a)[0])


def is_positive_definite(m: WeightingMatrix | np.ndarray) -> bool:
    return min_eigenvalue(m) > 0


def correct_matrix(
    m: WeightingMatrix, epsilon: float = DEFAULT_EPSILON, *, force: bool = False, typeset_divisor: bool = False
) -> WeightingMatrix:
    """Shift the spectrum so the smallest eigenvalue becomes positive.

    For ``lambda_min <= 0`` (or ``force``) returns
    ``(M + s I) / (1 + s)`` with ``s = |lambda_min| + epsilon``; the divisor
    keeps the diagonal at 1.  ``typeset_divisor=True`` divides by ``s``
    instead, which rescales the whole matrix by about ``1/s``; it exists
    for comparison only.  Positive definite matrices are returned untouched
    unless ``force`` is set.
    """
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    lam = m.lambda_min
    if lam > 0 and not force:
        return m
    shift = abs(lam) + epsilon
    divisor = shift if typeset_divisor else 1.0 + shift
    entries = (m.entries + shift * np.eye(len(m))) / divisor
    return WeightingMatrix(m.universe, entries, m.kind, m.orn, m.t, corrected=True)


def write_csv(m: WeightingMatrix, frame: Frame, fh: TextIO, decimals: int = 6) -> None:
    """Labelled CSV: header row and first column hold the events."""
    labels = [frame.format_event(e) for e in m.universe]
    w = csv.writer(fh, lineterminator="\n")
    w.writerow([""] + labels)
    for label, row in zip(labels, m.entries):
        w.writerow([label] + [f"{x:.{decimals}f}" for x in row])


def to_csv(m: WeightingMatrix, frame: Frame, decimals: int = 6) -> str:
    buf = io.StringIO()
    write_csv(m, frame, buf, decimals)
    return buf.getvalue()
