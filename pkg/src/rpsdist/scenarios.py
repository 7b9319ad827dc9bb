"""The worked PMFs used by the reproduction harness and the test suite."""

from __future__ import annotations

from .core import PermutationMassFunction as PMF


def cj_pair() -> tuple[tuple[int, ...], tuple[int, ...]]:
    """S = (τ₃τ₂τ₄), T = (τ₁τ₂τ₃τ₄)."""
    return (3, 2, 4), (1, 2, 3, 4)


def two_sources() -> tuple[PMF, PMF]:
    """Two PMFs over three elements, with overlapping but reordered focal sets."""
    p1 = PMF(3, {(1,): 0.4, (1, 3): 0.3, (3, 1): 0.3})
    p2 = PMF(3, {(2,): 0.4, (1, 3): 0.1, (1, 2, 3): 0.15, (2, 3, 1): 0.35})
    return p1, p2


def disjoint() -> tuple[PMF, PMF]:
    return PMF(5, {(1, 2, 3): 1.0}), PMF(5, {(4, 5): 1.0})


def bayesian() -> tuple[PMF, PMF]:
    return (PMF(3, {(1,): 0.25, (2,): 0.5, (3,): 0.25}),
            PMF(3, {(1,): 1 / 3, (2,): 1 / 3, (3,): 1 / 3}))


def propensity_triple() -> tuple[PMF, PMF, PMF]:
    """(τ₁τ₂), (τ₁τ₂τ₃) and (τ₃τ₁τ₂), each with mass 1."""
    return PMF(3, {(1, 2): 1.0}), PMF(3, {(1, 2, 3): 1.0}), PMF(3, {(3, 1, 2): 1.0})


SWAPS = ((2, 1, 3, 4, 5), (1, 3, 2, 4, 5), (1, 2, 4, 3, 5), (1, 2, 3, 5, 4), (1, 2, 3, 4, 5))


def swap_pair(x: tuple[int, ...]) -> tuple[PMF, PMF]:
    """Eight-element frame; the second PMF puts all mass on the permutation ``x``."""
    p1 = PMF(8, {(6,): 0.2, (7, 8): 0.3, (1, 2, 3, 4, 5): 0.5})
    return p1, PMF(8, {x: 1.0})


def growing_x(k: int, reverse: bool = False) -> tuple[PMF, PMF]:
    """Ten-element frame with X = (τ₁..τ_k), or (τ_k..τ₁) when ``reverse``.

    Returns the varying PMF and its comparison target, (τ₁τ₂τ₃) or
    (τ₃τ₂τ₁).  When X coincides with the existing (τ₁..τ₅) focal set their
    masses are merged.
    """
    x = tuple(range(1, k + 1))
    if reverse:
        x = x[::-1]
    masses = {(4,): 0.05, (2, 3): 0.05, (1, 2, 3, 4, 5): 0.1}
    masses[x] = masses.get(x, 0.0) + 0.8
    target = (3, 2, 1) if reverse else (1, 2, 3)
    return PMF(10, masses), PMF(10, {target: 1.0})


def depth_pair() -> tuple[PMF, PMF]:
    """Seven-element frame; a five-long and two-long focal set against one seven-long."""
    return (PMF(7, {(2, 3, 1, 4, 5): 0.4, (2, 3): 0.6}),
            PMF(7, {(2, 3, 1, 4, 5, 6, 7): 1.0}))
