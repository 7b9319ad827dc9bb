"""JSON documents holding a frame and named permutation mass functions.

    {
      "frame": ["a", "b", "c"],
      "pmfs": {
        "Perm1": [{"event": ["a"], "mass": 0.4}, {"event": ["a", "c"], "mass": 0.6}],
        "Perm2": [{"event": ["c", "b", "a"], "mass": 1.0}]
      }
    }

A document with a top-level ``assignments`` list instead of ``pmfs`` holds a
single PMF, named by ``name`` (default ``"pmf"``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import Frame, PermutationMassFunction
from .errors import DomainError


class DocumentError(DomainError):
    pass


@dataclass(frozen=True)
class PmfDocument:
    frame: Frame
    pmfs: dict[str, PermutationMassFunction]

    def __getitem__(self, name: str) -> PermutationMassFunction:
        try:
            return self.pmfs[name]
        except KeyError:
            raise DocumentError(f"no PMF named {name!r}; available: {', '.join(self.pmfs)}") from None


def _parse_pmf(frame: Frame, entries, where: str) -> PermutationMassFunction:
    if not isinstance(entries, list):
        raise DocumentError(f"{where}: expected a list of {{event, mass}} objects")
    masses = {}
    for i, item in enumerate(entries):
        at = f"{where}[{i}]"
        if not isinstance(item, dict) or set(item) != {"event", "mass"}:
            raise DocumentError(f"{at}: expected an object with exactly the fields 'event' and 'mass'")
        labels, mass = item["event"], item["mass"]
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise DocumentError(f"{at}.event: expected a list of element labels")
        if isinstance(mass, bool) or not isinstance(mass, (int, float)):
            raise DocumentError(f"{at}.mass: expected a number")
        try:
            event = frame.check_event([frame.index(x) for x in labels])
        except DomainError as exc:
            raise DocumentError(f"{at}.event: {exc}") from None
        if event in masses:
            raise DocumentError(f"{at}.event: duplicate event {labels}")
        masses[event] = float(mass)
    try:
        return PermutationMassFunction(frame, masses)
    except DomainError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def parse_document(data) -> PmfDocument:
    if not isinstance(data, dict):
        raise DocumentError("document: expected a JSON object")
    labels = data.get("frame")
    if not isinstance(labels, list) or not labels or not all(isinstance(x, str) for x in labels):
        raise DocumentError("frame: expected a non-empty list of element labels")
    try:
        frame = Frame.from_labels(labels)
    except DomainError as exc:
        raise DocumentError(f"frame: {exc}") from None
    if "pmfs" in data:
        if not isinstance(data["pmfs"], dict) or not data["pmfs"]:
            raise DocumentError("pmfs: expected a non-empty object mapping names to assignment lists")
        pmfs = {name: _parse_pmf(frame, entries, f"pmfs.{name}") for name, entries in data["pmfs"].items()}
    elif "assignments" in data:
        name = data.get("name", "pmf")
        pmfs = {name: _parse_pmf(frame, data["assignments"], "assignments")}
    else:
        raise DocumentError("document: expected a 'pmfs' or 'assignments' field")
    return PmfDocument(frame, pmfs)


def loads(text: str) -> PmfDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_document(data)


def load(path: str | Path) -> PmfDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    return loads(text)


def to_data(doc: PmfDocument) -> dict:
    frame = doc.frame
    return {
        "frame": [frame.label(i) for i in range(1, frame.size + 1)],
        "pmfs": {
            name: [{"event": [frame.label(i) for i in e], "mass": m} for e, m in pmf.masses.items()]
            for name, pmf in doc.pmfs.items()
        },
    }


def dumps(doc: PmfDocument) -> str:
    return json.dumps(to_data(doc), indent=2, ensure_ascii=False) + "\n"
