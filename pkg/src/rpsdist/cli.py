"""Command-line front end.

Exit codes: 0 success, 1 reproduction mismatch, 2 invalid input,
3 indefinite weighting matrix used without correction.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import document
from .core import Frame, enumerate_pes, focal_union
from .distance import CORRECTIONS, MEASURES, DistanceRequest, apply_correction, rps_distance
from .errors import DomainError, IndefiniteMatrixError
from .matrix import KIND_ALIASES, KINDS, build_matrix, normalize_kind, write_csv
from .owa import maxent_weights, orness
from .reproduce import TABLES, reproduce

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_INDEFINITE = 0, 1, 2, 3

MAX_FULL_PES = 7
LARGE_FULL_PES = 7


def _unit_interval(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def cmd_dist(args, out) -> int:
    doc = document.load(args.input)
    req = DistanceRequest(doc[args.a], doc[args.b], measure=args.measure, orn=args.orn, t=args.t,
                          universe=args.universe, correction=args.correction, epsilon=args.epsilon)
    result = rps_distance(req)
    if args.format == "json":
        out.write(json.dumps(result.as_dict()) + "\n")
    else:
        out.write("value,lambda_min,corrected,universe_size\n")
        out.write(f"{result.value:.6f},{result.lambda_min:.6f},{str(result.corrected).lower()},{result.universe_size}\n")
    return EXIT_OK


def cmd_weights(args, out) -> int:
    w = maxent_weights(args.n, args.orn)
    if args.format == "json":
        out.write(json.dumps({"weights": w.tolist(), "orness": orness(w)}) + "\n")
    else:
        out.write("weights: " + " ".join(f"{x:.6f}" for x in w) + "\n")
        out.write(f"orness: {orness(w):.6f}\n")
    return EXIT_OK


def cmd_matrix(args, out) -> int:
    if args.full_pes is not None:
        n = args.full_pes
        if n > MAX_FULL_PES:
            raise DomainError(f"full PES over {n} elements is out of reach (limit {MAX_FULL_PES})")
        if n >= LARGE_FULL_PES and not args.allow_large:
            raise DomainError(f"full PES over {n} elements needs --allow-large")
        frame = Frame(n)
        universe = enumerate_pes(frame)
    else:
        doc = document.load(args.input)
        names = args.pmfs or list(doc.pmfs)
        frame = doc.frame
        universe = focal_union(doc[name].masses for name in names)
    m = build_matrix(universe, args.kind, args.orn, args.t)
    lam = m.lambda_min
    m = apply_correction(m, args.correction, args.epsilon)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(m, frame, fh)
        out.write(f"lambda_min: {lam:.6f}\n")
        if m.corrected:
            out.write(f"lambda_min_corrected: {m.lambda_min:.6f}\n")
    else:
        write_csv(m, frame, out)
        print(f"lambda_min: {lam:.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    if args.tables == "all":
        ids = list(TABLES)
    else:
        ids = [t.strip() for t in args.tables.split(",") if t.strip()]
        unknown = [t for t in ids if t not in TABLES]
        if unknown:
            raise DomainError(f"unknown table(s) {', '.join(unknown)}; known: {', '.join(TABLES)}")
    reports = reproduce(ids, args.out, long=args.long)
    for r in reports:
        out.write(r.summary() + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rpsdist", description="Distances between random permutation sets.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="distance between two PMFs of a JSON document")
    d.add_argument("input", help="PMF document (JSON)")
    d.add_argument("a", help="name of the first PMF")
    d.add_argument("b", help="name of the second PMF")
    d.add_argument("--measure", default="cumulative-jaccard",
                   choices=list(MEASURES) + ["cd", "rd", "chen", "proposed", "d", "bpa"])
    d.add_argument("--orn", type=_unit_interval, default=0.5)
    d.add_argument("--t", type=_positive_int, default=None, help="truncation depth")
    d.add_argument("--universe", choices=["focal-union", "full-pes"], default="focal-union")
    d.add_argument("--correction", choices=CORRECTIONS, default=None,
                   help="default: auto for cumulative-jaccard, never for the baselines")
    d.add_argument("--epsilon", type=float, default=1e-12)
    d.add_argument("--format", choices=["json", "csv"], default="json")
    d.set_defaults(func=cmd_dist)

    w = sub.add_parser("weights", help="max-entropy weights of a given orness")
    w.add_argument("--n", type=_positive_int, required=True)
    w.add_argument("--orn", type=_unit_interval, required=True)
    w.add_argument("--format", choices=["text", "json"], default="text")
    w.set_defaults(func=cmd_weights)

    m = sub.add_parser("matrix", help="weighting matrix as labelled CSV, plus its smallest eigenvalue")
    src = m.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="PMF document; the universe is the union of its focal sets")
    src.add_argument("--full-pes", type=_positive_int, metavar="N", help="use every permutation event over N elements")
    m.add_argument("--pmfs", nargs="+", help="restrict the focal-set union to these PMFs")
    m.add_argument("--kind", choices=list(KINDS) + sorted(KIND_ALIASES), default="cumulative-jaccard")
    m.add_argument("--orn", type=_unit_interval, default=0.5)
    m.add_argument("--t", type=_positive_int, default=None)
    m.add_argument("--correction", choices=CORRECTIONS, default="never")
    m.add_argument("--epsilon", type=float, default=1e-12)
    m.add_argument("--out", help="write the CSV here instead of stdout")
    m.add_argument("--allow-large", action="store_true", help=f"permit --full-pes {LARGE_FULL_PES}")
    m.set_defaults(func=cmd_matrix)

    r = sub.add_parser("reproduce", help="recompute the reference tables and compare")
    r.add_argument("--tables", default="all", help=f"'all' or a comma list of: {', '.join(TABLES)}")
    r.add_argument("--out", help="directory for one CSV per table")
    r.add_argument("--long", action="store_true", help="include the 1956-dimensional eigenvalue rows")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "kind", None):
        args.kind = normalize_kind(args.kind)
    try:
        return args.func(args, out)
    except IndefiniteMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDEFINITE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
