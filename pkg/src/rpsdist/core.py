"""Frames, permutation events, mass functions and their vector forms.

Events are plain tuples of 1-based element indices, e.g. ``(1, 3)`` is the
ordered focal set (τ₁τ₃).  The empty event never appears anywhere: its mass
is fixed to zero, so it is left out of every universe.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import DomainError

Event = tuple[int, ...]

MASS_TOL = 1e-9

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class Frame:
    """Frame of discernment τ₁..τ_N.  Labels default to ``τ₁``, ``τ₂``, ..."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise DomainError(f"frame size must be a positive integer, got {self.size!r}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.size:
                raise DomainError(f"expected {self.size} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise DomainError("frame labels must be pairwise distinct")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "Frame":
        labels = tuple(labels)
        return cls(len(labels), labels)

    def label(self, index: int) -> str:
        if self.labels is None:
            return "τ" + str(index).translate(_SUBSCRIPTS)
        return self.labels[index - 1]

    def index(self, label: str) -> int:
        if self.labels is None:
            raise DomainError("frame has no labels")
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise DomainError(f"unknown element label {label!r}") from None

    def check_event(self, event: Sequence[int]) -> Event:
        event = tuple(event)
        if not event:
            raise DomainError("empty event is not allowed")
        if len(set(event)) != len(event):
            raise DomainError(f"event {event} repeats an element")
        for i in event:
            if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= self.size:
                raise DomainError(f"element index {i!r} outside 1..{self.size}")
        return tuple(int(i) for i in event)

    def format_event(self, event: Sequence[int]) -> str:
        return "(" + "".join(self.label(i) for i in event) + ")"


def _as_frame(frame: Frame | int) -> Frame:
    return frame if isinstance(frame, Frame) else Frame(frame)


class EventCode(NamedTuple):
    """The (l, o) pair: subset bit code and 1-based order index."""

    l: int
    o: int


def pes_size(n: int) -> int:
    """Number of non-empty permutation events over an ``n``-element frame."""
    return sum(math.perm(n, k) for k in range(1, n + 1))


def enumerate_pes(frame: Frame | int) -> list[Event]:
    """All non-empty permutation events, sorted by ascending l then o."""
    n = _as_frame(frame).size
    out = []
    for l in range(1, 1 << n):
        members = [i + 1 for i in range(n) if l >> i & 1]
        # permutations of a sorted input come out in lexicographic order
        out.extend(itertools.permutations(members))
    return out


def encode_event(event: Sequence[int], frame: Frame | int) -> EventCode:
    event = _as_frame(frame).check_event(event)
    l = sum(1 << (i - 1) for i in event)
    # Lehmer code of the sequence gives its lexicographic rank
    k = len(event)
    rank = 0
    for pos, x in enumerate(event):
        smaller_later = sum(1 for y in event[pos + 1:] if y < x)
        rank += smaller_later * math.factorial(k - 1 - pos)
    return EventCode(l, rank + 1)


def decode_event(code: tuple[int, int], frame: Frame | int) -> Event:
    frame = _as_frame(frame)
    l, o = code
    if not 1 <= l < (1 << frame.size):
        raise DomainError(f"set code {l} outside 1..{(1 << frame.size) - 1}")
    members = [i + 1 for i in range(frame.size) if l >> i & 1]
    k = len(members)
    if not 1 <= o <= math.factorial(k):
        raise DomainError(f"order index {o} outside 1..{k}! for set code {l}")
    rank = o - 1
    out = []
    for pos in range(k):
        f = math.factorial(k - 1 - pos)
        digit, rank = divmod(rank, f)
        out.append(members.pop(digit))
    return tuple(out)


def event_sort_key(event: Event) -> tuple[int, Event]:
    """Sort key equivalent to ordering by (l, o)."""
    # permutations sharing l compare lexicographically exactly as o does
    return sum(1 << (i - 1) for i in event), event


def _check_masses(values: Iterable[float], what: str) -> None:
    total = 0.0
    for m in values:
        # merged masses may round a hair above 1
        if not math.isfinite(m) or m < 0 or m > 1 + MASS_TOL:
            raise DomainError(f"{what} mass {m!r} outside [0, 1]")
        total += m
    if abs(total - 1.0) > MASS_TOL:
        raise DomainError(f"{what} masses sum to {total!r}, not 1")


@dataclass(frozen=True)
class PermutationMassFunction:
    """Permutation mass function over ``frame``.

    ``masses`` maps events to masses.  Zero entries are dropped; the
    remaining keys are the ordered focal sets.  Masses must sum to 1 within
    1e-9 and are never renormalized.
    """

    frame: Frame
    masses: Mapping[Event, float]

    def __post_init__(self):
        frame = _as_frame(self.frame)
        checked = {}
        for event, m in self.masses.items():
            key = frame.check_event(event)
            if key in checked:
                raise DomainError(f"duplicate event {key}")
            checked[key] = float(m)
        _check_masses(checked.values(), "permutation")
        focal = {e: checked[e] for e in sorted(checked, key=event_sort_key) if checked[e] > 0}
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "masses", MappingProxyType(focal))

    @classmethod
    def from_codes(cls, frame: Frame | int, codes: Mapping[tuple[int, int], float]):
        """Build from ``{(l, o): mass}``."""
        frame = _as_frame(frame)
        return cls(frame, {decode_event(c, frame): m for c, m in codes.items()})

    @property
    def focal_sets(self) -> tuple[Event, ...]:
        return tuple(self.masses)

    def __getitem__(self, event: Sequence[int]) -> float:
        return self.masses.get(tuple(event), 0.0)


@dataclass(frozen=True)
class MassFunction:
    """Classical mass function (BPA) with frozenset keys, closed world."""

    frame: Frame
    masses: Mapping[frozenset[int], float]

    def __post_init__(self):
        frame = _as_frame(self.frame)
        checked = {}
        for subset, m in self.masses.items():
            key = frozenset(frame.check_event(sorted(subset)))
            if key in checked:
                raise DomainError(f"duplicate subset {sorted(key)}")
            checked[key] = float(m)
        _check_masses(checked.values(), "set")
        order = sorted(checked, key=lambda s: event_sort_key(tuple(sorted(s))))
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "masses", MappingProxyType({s: checked[s] for s in order if checked[s] > 0}))

    def __getitem__(self, subset: Iterable[int]) -> float:
        return self.masses.get(frozenset(subset), 0.0)


def forget_order(pmf: PermutationMassFunction) -> MassFunction:
    """Sum the masses of ordered events sharing an element set."""
    acc: dict[frozenset[int], float] = {}
    for event, m in pmf.masses.items():
        key = frozenset(event)
        acc[key] = acc.get(key, 0.0) + m
    return MassFunction(pmf.frame, acc)


def truncate(pmf: PermutationMassFunction, depth: int) -> PermutationMassFunction:
    """Keep only the first ``depth`` elements of every focal set, merging collisions."""
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    acc: dict[Event, float] = {}
    for event, m in pmf.masses.items():
        key = event[:depth]
        acc[key] = acc.get(key, 0.0) + m
    return PermutationMassFunction(pmf.frame, acc)


@dataclass(frozen=True, eq=False)
class BeliefVector:
    """Masses laid out along an ordered universe of events."""

    universe: tuple[Event, ...]
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        if coords.shape != (len(self.universe),):
            raise DomainError("coordinate count does not match universe size")
        coords.setflags(write=False)
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.universe)


UNIVERSE_POLICIES = ("focal-union", "full-pes")


def focal_union(masses: Iterable[Mapping[Event, float]]) -> tuple[Event, ...]:
    events = set()
    for m in masses:
        events.update(m)
    return tuple(sorted(events, key=event_sort_key))


def vectorize(pmfs: Iterable[PermutationMassFunction], universe: str = "focal-union") -> list[BeliefVector]:
    """Lay several PMFs out along one shared universe."""
    pmfs = list(pmfs)
    if not pmfs:
        raise DomainError("nothing to vectorize")
    frame = pmfs[0].frame
    if any(p.frame != frame for p in pmfs[1:]):
        raise DomainError("all PMFs must share one frame")
    if universe == "full-pes":
        basis = tuple(enumerate_pes(frame))
    elif universe == "focal-union":
        basis = focal_union(p.masses for p in pmfs)
    else:
        raise DomainError(f"unknown universe policy {universe!r}; expected one of {UNIVERSE_POLICIES}")
    return [BeliefVector(basis, [p.masses.get(e, 0.0) for e in basis]) for p in pmfs]


def vectorize_bpa(bpas: Iterable[MassFunction]) -> list[BeliefVector]:
    """Focal-union vectors for mass functions; sets are stored as sorted tuples."""
    bpas = list(bpas)
    if not bpas:
        raise DomainError("nothing to vectorize")
    frame = bpas[0].frame
    if any(b.frame != frame for b in bpas[1:]):
        raise DomainError("all mass functions must share one frame")
    basis = focal_union([{tuple(sorted(s)): m for s, m in b.masses.items()} for b in bpas])
    return [BeliefVector(basis, [b.masses.get(frozenset(e), 0.0) for e in basis]) for b in bpas]
