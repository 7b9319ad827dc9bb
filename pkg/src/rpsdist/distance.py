"""Quadratic-form distances between permutation mass functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    UNIVERSE_POLICIES,
    BeliefVector,
    MassFunction,
    PermutationMassFunction,
    forget_order,
    truncate,
    vectorize,
    vectorize_bpa,
)
from .errors import DomainError, IndefiniteMatrixError
from .matrix import DEFAULT_EPSILON, WeightingMatrix, build_matrix, correct_matrix

MEASURES = ("cumulative-jaccard", "ordered-degree", "jousselme")
MEASURE_ALIASES = {"cd": "cumulative-jaccard", "proposed": "cumulative-jaccard", "rd": "ordered-degree",
                   "chen": "ordered-degree", "d": "jousselme", "bpa": "jousselme"}
CORRECTIONS = ("auto", "always", "never")

# δMδ down to this value is rounding noise on a PSD matrix
NEGATIVE_FORM_TOL = 1e-12


def _check_universe(v1: BeliefVector, v2: BeliefVector, m: WeightingMatrix) -> None:
    if v1.universe != v2.universe or v1.universe != m.universe:
        raise DomainError("belief vectors and weighting matrix must share one universe")


def quadratic_form(v1: BeliefVector, v2: BeliefVector, m: WeightingMatrix) -> float:
    """Raw ``δ M δ`` with ``δ = v1 - v2``; may be negative on indefinite M."""
    _check_universe(v1, v2, m)
    delta = v1.coords - v2.coords
    return float(delta @ m.entries @ delta)


def _finish(q: float) -> float:
    if q < 0:
        if q < -NEGATIVE_FORM_TOL:
            raise IndefiniteMatrixError(
                f"quadratic form is {q:.3e} < 0; the weighting matrix is indefinite and needs correction"
            )
        q = 0.0
    return math.sqrt(0.5 * q)


def quadratic_form_distance(v1: BeliefVector, v2: BeliefVector, m: WeightingMatrix) -> float:
    """sqrt(½ δ M δ)."""
    return _finish(quadratic_form(v1, v2, m))


def inner_product(v1: BeliefVector, v2: BeliefVector, m: WeightingMatrix) -> float:
    """Σ_i Σ_j v1_i v2_j M_ij, summed term by term over the non-zero coordinates."""
    _check_universe(v1, v2, m)
    total = 0.0
    for i, a in enumerate(v1.coords):
        if a == 0:
            continue
        for j, b in enumerate(v2.coords):
            if b != 0:
                total += a * b * m.entries[i, j]
    return total


def expanded_form_distance(v1: BeliefVector, v2: BeliefVector, m: WeightingMatrix) -> float:
    """sqrt(½ (‖v1‖² + ‖v2‖² - 2⟨v1, v2⟩)); equal to the quadratic form."""
    q = inner_product(v1, v1, m) + inner_product(v2, v2, m) - 2.0 * inner_product(v1, v2, m)
    return _finish(q)


@dataclass(frozen=True)
class DistanceResult:
    value: float
    lambda_min: float
    corrected: bool
    universe_size: int

    def as_dict(self) -> dict:
        return {"value": self.value, "lambda_min": self.lambda_min,
                "corrected": self.corrected, "universe_size": self.universe_size}


@dataclass(frozen=True)
class DistanceRequest:
    """Parameters of one distance evaluation.

    ``correction=None`` picks ``auto`` for the cumulative Jaccard measure and
    ``never`` for the two baselines.  ``t`` truncates the cumulative Jaccard
    depth; for the ordered-degree baseline it truncates the focal sets
    themselves before comparing.
    """

    pmf_a: PermutationMassFunction
    pmf_b: PermutationMassFunction
    measure: str = "cumulative-jaccard"
    orn: float = 0.5
    t: int | None = None
    universe: str = "focal-union"
    correction: str | None = None
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        measure = MEASURE_ALIASES.get(self.measure, self.measure)
        if measure not in MEASURES:
            raise DomainError(f"unknown measure {self.measure!r}; expected one of {MEASURES}")
        object.__setattr__(self, "measure", measure)
        if self.pmf_a.frame != self.pmf_b.frame:
            raise DomainError("both PMFs must share one frame")
        if not 0.0 <= self.orn <= 1.0:
            raise DomainError(f"orness must lie in [0, 1], got {self.orn!r}")
        if self.t is not None and (isinstance(self.t, bool) or not isinstance(self.t, int) or self.t < 1):
            raise DomainError(f"depth t must be a positive integer, got {self.t!r}")
        if self.universe not in UNIVERSE_POLICIES:
            raise DomainError(f"unknown universe policy {self.universe!r}; expected one of {UNIVERSE_POLICIES}")
        if self.correction is not None and self.correction not in CORRECTIONS:
            raise DomainError(f"unknown correction {self.correction!r}; expected one of {CORRECTIONS}")

    @property
    def effective_correction(self) -> str:
        if self.correction is not None:
            return self.correction
        return "auto" if self.measure == "cumulative-jaccard" else "never"


def apply_correction(m: WeightingMatrix, policy: str, epsilon: float = DEFAULT_EPSILON) -> WeightingMatrix:
    """``auto`` corrects iff lambda_min <= 0, ``always`` shifts unconditionally."""
    if policy == "never":
        return m
    if policy == "auto":
        return correct_matrix(m, epsilon)
    if policy == "always":
        return correct_matrix(m, epsilon, force=True)
    raise DomainError(f"unknown correction {policy!r}; expected one of {CORRECTIONS}")


def _prepare(req: DistanceRequest) -> tuple[list[BeliefVector], WeightingMatrix]:
    a, b = req.pmf_a, req.pmf_b
    if req.measure == "jousselme":
        if req.universe == "full-pes":
            raise DomainError("the Jousselme measure works on unordered sets; use the focal-union universe")
        vecs = vectorize_bpa([forget_order(a), forget_order(b)])
        return vecs, build_matrix(vecs[0].universe, "jaccard")
    if req.measure == "ordered-degree":
        if req.t is not None:
            a, b = truncate(a, req.t), truncate(b, req.t)
        vecs = vectorize([a, b], req.universe)
        return vecs, build_matrix(vecs[0].universe, "ordered-degree")
    vecs = vectorize([a, b], req.universe)
    return vecs, build_matrix(vecs[0].universe, "cumulative-jaccard", req.orn, req.t)


def rps_distance(req: DistanceRequest) -> DistanceResult:
    """Vectorize, build the weighting matrix, check its spectrum, correct, evaluate."""
    (va, vb), m = _prepare(req)
    lam = m.lambda_min
    used = apply_correction(m, req.effective_correction, req.epsilon)
    value = quadratic_form_distance(va, vb, used)
    return DistanceResult(value, lam, used.corrected, len(m))


def distance(pmf_a: PermutationMassFunction, pmf_b: PermutationMassFunction, **options) -> float:
    """Shorthand for ``rps_distance(DistanceRequest(pmf_a, pmf_b, **options)).value``."""
    return rps_distance(DistanceRequest(pmf_a, pmf_b, **options)).value


def jousselme_distance(m1: MassFunction, m2: MassFunction) -> float:
    """Jousselme distance over the union of the two sets of focal sets."""
    if m1.frame != m2.frame:
        raise DomainError("both mass functions must share one frame")
    v1, v2 = vectorize_bpa([m1, m2])
    return quadratic_form_distance(v1, v2, build_matrix(v1.universe, "jaccard"))


def chen_rps_distance(
    pmf_a: PermutationMassFunction,
    pmf_b: PermutationMassFunction,
    universe: str = "focal-union",
    correction: str = "never",
    t: int | None = None,
) -> float:
    """Baseline distance weighted by Jaccard index times ordered degree."""
    req = DistanceRequest(pmf_a, pmf_b, "ordered-degree", t=t, universe=universe, correction=correction)
    return rps_distance(req).value


def pairwise_distances(
    pmfs: Sequence[PermutationMassFunction],
    measure: str = "cumulative-jaccard",
    orn: float = 0.5,
    t: int | None = None,
    universe: str = "focal-union",
    correction: str | None = None,
    epsilon: float = DEFAULT_EPSILON,
) -> tuple[np.ndarray, DistanceResult]:
    """All pairwise distances over one shared universe and one shared matrix.

    Sharing the (corrected) matrix is what makes the result a metric on the
    whole collection.  Returns the distance matrix and the diagnostics of the
    matrix used (``value`` is 0 there).
    """
    pmfs = list(pmfs)
    if len(pmfs) < 1:
        raise DomainError("need at least one PMF")
    measure = MEASURE_ALIASES.get(measure, measure)
    if measure == "jousselme":
        vecs = vectorize_bpa([forget_order(p) for p in pmfs])
        m = build_matrix(vecs[0].universe, "jaccard")
    elif measure == "ordered-degree":
        if t is not None:
            pmfs = [truncate(p, t) for p in pmfs]
        vecs = vectorize(pmfs, universe)
        m = build_matrix(vecs[0].universe, "ordered-degree")
    elif measure == "cumulative-jaccard":
        vecs = vectorize(pmfs, universe)
        m = build_matrix(vecs[0].universe, "cumulative-jaccard", orn, t)
    else:
        raise DomainError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    if correction is None:
        correction = "auto" if measure == "cumulative-jaccard" else "never"
    used = apply_correction(m, correction, epsilon)
    k = len(vecs)
    out = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            out[i, j] = out[j, i] = quadratic_form_distance(vecs[i], vecs[j], used)
    return out, DistanceResult(0.0, m.lambda_min, used.corrected, len(m))
