"""Recompute every published numeric table and compare with the stored references.

Reference values live in ``rpsdist/data/<table_id>.csv`` (``key,reference,source``
with ``#`` comment lines).  A table passes when every row is within 5e-4,
the rounding of four printed decimals; eigenvalue rows use
``max(5e-4, 1e-3 * |reference|)``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from . import scenarios
from .core import enumerate_pes, forget_order
from .distance import DistanceRequest, chen_rps_distance, distance, jousselme_distance, rps_distance
from .matrix import KINDS, build_matrix
from .owa import maxent_weights
from .similarity import cumulative_jaccard, cumulative_jaccard_orness

TOLERANCE = 5e-4
EIGEN_REL_TOL = 1e-3


@dataclass(frozen=True)
class Row:
    key: str
    computed: float
    reference: float
    source: str
    tolerance: float

    @property
    def abs_error(self) -> float:
        return abs(self.computed - self.reference)

    @property
    def passed(self) -> bool:
        return self.abs_error <= self.tolerance


@dataclass
class ReproReport:
    table_id: str
    rows: list[Row] = field(default_factory=list)

    @property
    def max_abs_error(self) -> float:
        return max((r.abs_error for r in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[Row]:
        return [r for r in self.rows if not r.passed]

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.table_id}: {status} rows={len(self.rows)} max_abs_error={self.max_abs_error:.6f}"
        for r in self.failures:
            line += f"\n  {r.key}: computed={r.computed:.6f} reference={r.reference:.6f} ({r.source})"
        return line

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "computed", "reference", "abs_error", "tolerance", "pass", "source"])
        for r in self.rows:
            w.writerow([r.key, f"{r.computed:.6f}", f"{r.reference:.6f}", f"{r.abs_error:.6f}",
                        f"{r.tolerance:.6f}", "true" if r.passed else "false", r.source])
        return buf.getvalue()


def load_reference(table_id: str) -> list[tuple[str, float, str]]:
    text = resources.files("rpsdist").joinpath("data", f"{table_id}.csv").read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    return [(r["key"], float(r["reference"]), r["source"]) for r in csv.DictReader(lines)]


def _example_4_1(long: bool) -> dict[str, float]:
    s, t = scenarios.cj_pair()
    out = {f"w{i}": w for i, w in enumerate(maxent_weights(4, 0.7), 1)}
    out["cj_orn0.7"] = cumulative_jaccard(s, t, maxent_weights(4, 0.7))
    for depth in range(1, 5):
        out[f"cj_orn0.5_t{depth}"] = cumulative_jaccard_orness(s, t, 0.5, depth)
    return out


def _table3(long: bool) -> dict[str, float]:
    s, t = scenarios.cj_pair()
    out = {f"orn{o / 10:.1f}": cumulative_jaccard_orness(s, t, o / 10) for o in range(11)}
    out["orn0.5_lower"] = out["orn0.5"]
    return out


def _example_4_2(long: bool) -> dict[str, float]:
    p1, p2 = scenarios.two_sources()
    full = rps_distance(DistanceRequest(p1, p2, universe="full-pes", correction="never"))
    return {
        "cd_entry_t1t3_t1t2t3": cumulative_jaccard_orness((1, 3), (1, 2, 3), 0.5),
        "distance_focal_union": distance(p1, p2),
        "distance_full_pes_uncorrected": full.value,
        "distance_full_pes_corrected": distance(p1, p2, universe="full-pes", correction="auto"),
        "lambda_min_full_pes": full.lambda_min,
    }


def _table4(long: bool) -> dict[str, float]:
    out = {}
    for n in range(1, 7 if long else 6):
        universe = enumerate_pes(n)
        for kind in KINDS:
            out[f"N{n}_{kind}"] = build_matrix(universe, kind, 0.5).lambda_min
    return out


def _example_5_1(long: bool) -> dict[str, float]:
    p1, p2 = scenarios.disjoint()
    return {"proposed": distance(p1, p2), "chen": chen_rps_distance(p1, p2)}


def _example_5_2(long: bool) -> dict[str, float]:
    p1, p2 = scenarios.bayesian()
    return {"proposed": distance(p1, p2), "chen": chen_rps_distance(p1, p2),
            "jousselme": jousselme_distance(forget_order(p1), forget_order(p2))}


def _table6(long: bool) -> dict[str, float]:
    pmfs = scenarios.propensity_triple()
    out = {}
    for a, b in ((0, 1), (0, 2), (1, 2)):
        tag = f"d{a + 1}{b + 1}"
        out[f"chen_{tag}"] = chen_rps_distance(pmfs[a], pmfs[b])
        out[f"proposed_{tag}"] = distance(pmfs[a], pmfs[b])
    return out


def _three_columns(p1, p2) -> dict[str, float]:
    return {"jousselme": jousselme_distance(forget_order(p1), forget_order(p2)),
            "chen": chen_rps_distance(p1, p2), "proposed": distance(p1, p2)}


def _table7(long: bool) -> dict[str, float]:
    out = {}
    for i, x in enumerate(scenarios.SWAPS, 1):
        for col, v in _three_columns(*scenarios.swap_pair(x)).items():
            out[f"swap{i}_{col}"] = v
    return out


def _table8(long: bool) -> dict[str, float]:
    out = {}
    for block, reverse in (("forward", False), ("reverse", True)):
        for k in range(1, 11):
            for col, v in _three_columns(*scenarios.growing_x(k, reverse)).items():
                out[f"{block}_k{k}_{col}"] = v
    return out


def _table9(long: bool) -> dict[str, float]:
    p1, p2 = scenarios.depth_pair()
    out = {}
    for t in range(1, 8):
        out[f"t{t}_chen"] = chen_rps_distance(p1, p2, t=t)
        out[f"t{t}_proposed"] = distance(p1, p2, t=t)
    return out


def _orness_sweep(reverse: bool) -> dict[str, float]:
    out = {}
    for k in range(1, 11):
        p1, p2 = scenarios.growing_x(k, reverse)
        for o in range(10):
            out[f"k{k}_orn{o / 10:.1f}"] = distance(p1, p2, orn=o / 10)
    return out


TABLES: dict[str, Callable[[bool], dict[str, float]]] = {
    "example4.1": _example_4_1,
    "table3": _table3,
    "example4.2": _example_4_2,
    "table4": _table4,
    "example5.1": _example_5_1,
    "example5.2": _example_5_2,
    "table6": _table6,
    "table7": _table7,
    "table8": _table8,
    "table9": _table9,
    "table10": lambda long: _orness_sweep(False),
    "table11": lambda long: _orness_sweep(True),
}


def reproduce_table(table_id: str, long: bool = False) -> ReproReport:
    """Recompute one table; rows absent from the computation (N=6 eigen rows
    without ``long``) are skipped."""
    if table_id not in TABLES:
        raise KeyError(f"unknown table {table_id!r}; known: {', '.join(TABLES)}")
    computed = TABLES[table_id](long)
    report = ReproReport(table_id)
    for key, ref, source in load_reference(table_id):
        if key not in computed:
            continue
        tol = max(TOLERANCE, EIGEN_REL_TOL * abs(ref)) if table_id == "table4" else TOLERANCE
        report.rows.append(Row(key, float(computed[key]), ref, source, tol))
    return report


def reproduce(table_ids=None, out_dir: str | Path | None = None, long: bool = False) -> list[ReproReport]:
    reports = [reproduce_table(t, long) for t in (table_ids or list(TABLES))]
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in reports:
            (out / f"{r.table_id}.csv").write_text(r.to_csv(), encoding="utf-8", newline="")
    return reports
