"""Command-line front end.

    cayley-chroma chi MATRIX [--format text|json] [--certify] [--verify] ...
    cayley-chroma fuzz --rows M --cols R --entry-bound B --count K|all --seed S

Exit codes for ``chi``: 0 chromatic number emitted, 2 uncolorable (loops),
3 rank >= 3 (bounds only), 1 input error, 4 internal certificate failure.
``fuzz`` exits 1 when any contradiction is found.
"""

from __future__ import annotations

import argparse
import dataclasses
import itertools
import json
import math
import random
import re
import sys
import time
from collections import Counter

from . import chromatic as C
from .cayley import BudgetExceeded, FiniteAbelianGroup, ball, cayley_graph, quotient_group, write_edge_list
from .intmat import (
    IntMatrix,
    SignedPermWitness,
    UnimodularWitness,
    random_signed_permutation,
    random_unimodular,
)
from .oracle import SandwichConfig, default_budget, sandwich_verify, verify_certificate

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_LOOPS, EXIT_UNSUPPORTED, EXIT_INTERNAL = 0, 1, 2, 3, 4

_INT = re.compile(r"[+-]?\d+")


class MatrixParseError(ValueError):
    pass


def parse_matrix(text: str) -> IntMatrix:
    """Parse whitespace-separated rows (``#`` comments) or ``{"matrix": [[...]]}``."""
    if not text.strip():
        raise MatrixParseError("empty input")
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for tok in line.split():
            if not _INT.fullmatch(tok):
                raise MatrixParseError(f"line {lineno}: {tok!r} is not an integer")
            row.append(int(tok))
        rows.append(row)
    return _build(rows)


def _parse_json(text: str) -> IntMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"invalid JSON: {exc}") from None
    rows = doc.get("matrix") if isinstance(doc, dict) else None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MatrixParseError('JSON input needs a "matrix" array of arrays')
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise MatrixParseError(f"{x!r} is not an integer")
    return _build(rows)


def _build(rows) -> IntMatrix:
    if not rows or not rows[0]:
        raise MatrixParseError("empty matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise MatrixParseError("ragged rows")
    return IntMatrix(rows)


def format_matrix(M: IntMatrix) -> str:
    """Canonical text form; ``parse_matrix`` inverts it exactly."""
    return "".join(" ".join(str(x) for x in row) + "\n" for row in M.rows)


# --------------------------------------------------------------------------
# JSON serialization


def to_jsonable(obj):
    if isinstance(obj, IntMatrix):
        return obj.tolist()
    if isinstance(obj, SignedPermWitness):
        return obj.P.tolist()
    if isinstance(obj, UnimodularWitness):
        return obj.U.tolist()
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {"type": type(obj).__name__}
        for f in dataclasses.fields(obj):
            if f.name in ("report", "coloring"):
                continue
            out[f.name] = to_jsonable(getattr(obj, f.name))
        return out
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return obj


def result_json(result) -> dict:
    if isinstance(result, C.Uncolorable):
        return {"status": "uncolorable", "loop": to_jsonable(result.witness)}
    if isinstance(result, C.Chi):
        return {"status": "chi", "chi": result.k}
    lo, hi = result.report if result.report else (None, None)
    return {
        "status": "unsupported-exact",
        "lower": to_jsonable(result.lower),
        "upper": result.upper,
        "lower_witness": to_jsonable(lo),
        "upper_witness": to_jsonable(hi),
    }


def sandwich_json(rep) -> dict:
    out = {"status": rep.status, "summary": str(rep), "contradiction": rep.contradiction}
    out["lower"] = to_jsonable(rep.lower)
    if rep.upper is not None:
        out["upper"] = to_jsonable(rep.upper)
        out["upper"]["coloring"] = list(rep.upper.coloring.colors)
    else:
        out["upper"] = None
    return out


def describe_sandwich(rep) -> str:
    parts = [f"verified: {rep}"]
    lo, hi = rep.lower, rep.upper
    if lo is not None:
        where = f"ball radius {lo.radius} ({lo.ball_vertices} vertices)" if lo.kind in ("ball", "loop") else lo.kind
        parts.append(f"lower {lo.value} via {where}")
    if hi is not None:
        where = "whole graph" if hi.modulus is None else f"modulus {hi.modulus}"
        parts.append(f"upper {hi.value} via {where} ({hi.vertices} vertices)")
    if rep.contradiction:
        parts.append(f"CONTRADICTION: {rep.contradiction}")
    return "; ".join(parts)


# --------------------------------------------------------------------------
# Commands


def _config_from_args(args, base: SandwichConfig) -> SandwichConfig:
    changes = {}
    if args.ball_radius:
        changes["radii"] = tuple(args.ball_radius)
    if args.moduli:
        changes["moduli"] = tuple(args.moduli)
    if args.budget_nodes is not None:
        changes["budget_nodes"] = args.budget_nodes
    return dataclasses.replace(base, **changes)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _dump_graph(M: IntMatrix, path: str, cfg: SandwichConfig) -> None:
    group = quotient_group(M)
    if isinstance(group, FiniteAbelianGroup):
        g = cayley_graph(group, cfg.quotient_cap)
    else:
        g = ball(M, max(cfg.radii), cfg.ball_cap)
    with open(path, "w") as fh:
        write_edge_list(g, fh)


def cmd_chi(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        M = parse_matrix(_read_input(args.path))
    except (OSError, MatrixParseError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    cfg = _config_from_args(args, SandwichConfig())
    started = time.perf_counter()
    result = C.chi(M, cfg)
    if not verify_certificate(M, result):
        print(f"internal error: certificate for {M} failed re-verification", file=err)
        return EXIT_INTERNAL
    report = sandwich_verify(M, result, cfg) if args.verify and not isinstance(result, C.UnsupportedExact) else None
    elapsed = time.perf_counter() - started
    if args.dump_graph:
        try:
            _dump_graph(M, args.dump_graph, cfg)
        except BudgetExceeded as exc:
            print(f"warning: graph not exported: {exc}", file=err)

    if args.format == "json":
        doc = {"schema": SCHEMA_VERSION, "input": M.tolist(), "result": result_json(result)}
        if args.certify and isinstance(result, C.Chi):
            doc["certificate"] = to_jsonable(result.certificate)
        if report is not None:
            doc["sandwich"] = sandwich_json(report)
        if args.timing:
            doc["timing_seconds"] = elapsed
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(f"{result}\n")
        if isinstance(result, C.Uncolorable):
            w = result.witness
            out.write(f"loop: e_{w.index + 1} = M @ {list(w.coefficients)}\n")
        if args.certify and isinstance(result, C.Chi):
            out.write("certificate: " + json.dumps(to_jsonable(result.certificate), sort_keys=True) + "\n")
        if report is not None:
            out.write(describe_sandwich(report) + "\n")
        if args.timing:
            out.write(f"time: {elapsed:.3f}s\n")
    if isinstance(result, C.Uncolorable):
        return EXIT_LOOPS
    if isinstance(result, C.UnsupportedExact):
        return EXIT_UNSUPPORTED
    return EXIT_OK


FUZZ_CONFIG = SandwichConfig(radii=(1, 2, 3), moduli=tuple(range(2, 9)), budget_nodes=5000, ball_cap=3000, quotient_cap=5000)


def _fuzz_matrices(rows, cols, bound, count, rng):
    if count == "all":
        for entries in itertools.product(range(-bound, bound + 1), repeat=rows * cols):
            yield IntMatrix([entries[i * cols:(i + 1) * cols] for i in range(rows)], cols)
        return
    for _ in range(count):
        yield IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols)


def run_fuzz(rows, cols, bound, count, seed, cfg=FUZZ_CONFIG):
    """Returns (summary lines, contradiction lines)."""
    rng = random.Random(seed)
    outcomes, statuses = Counter(), Counter()
    problems = []
    total = 0
    for M in _fuzz_matrices(rows, cols, bound, count, rng):
        total += 1
        result = C.chi(M, cfg)
        P = random_signed_permutation(rows, rng)
        U = random_unimodular(cols, rng)
        if not verify_certificate(M, result):
            problems.append(f"certificate failed: {M.tolist()} -> {result}")
        if isinstance(result, C.Chi):
            outcomes[f"chi={result.k}"] += 1
        elif isinstance(result, C.Uncolorable):
            outcomes["uncolorable"] += 1
        else:
            outcomes["unsupported-exact"] += 1
        if not isinstance(result, C.UnsupportedExact):
            rep = sandwich_verify(M, result, cfg)
            statuses[rep.status] += 1
            if rep.contradiction:
                problems.append(f"sandwich: {M.tolist()} -> {result}: {rep.contradiction}")
            conj = P @ M @ U
            other = C.chi(conj, cfg)
            if not C.same_answer(result, other):
                problems.append(f"invariance: {M.tolist()} -> {result} but {conj.tolist()} -> {other}")
    checked = sum(statuses.values())
    resolved = statuses["confirmed"] + statuses["loops-confirmed"]
    lines = [
        f"matrices: {total} ({rows}x{cols}, entries in [-{bound}, {bound}], seed {seed})",
        "outcomes: " + ", ".join(f"{k} {v}" for k, v in sorted(outcomes.items())),
        "sandwich: " + ", ".join(f"{k} {v}" for k, v in sorted(statuses.items())),
        f"resolution rate: {resolved}/{checked}" + (f" ({resolved / checked:.3f})" if checked else ""),
        f"contradictions: {len(problems)}",
    ]
    return lines, problems


def cmd_fuzz(args, out=None) -> int:
    out = out or sys.stdout
    if args.rows < 1 or args.cols < 1 or args.entry_bound < 0:
        print("error: --rows and --cols must be >= 1, --entry-bound >= 0", file=sys.stderr)
        return EXIT_INPUT
    cfg = _config_from_args(args, FUZZ_CONFIG)
    count = args.count if args.count == "all" else int(args.count)
    lines, problems = run_fuzz(args.rows, args.cols, args.entry_bound, count, args.seed, cfg)
    for line in lines + problems:
        out.write(line + "\n")
    return 1 if problems else 0


def _moduli(text: str) -> list[int]:
    vals = [int(x) for x in text.split(",") if x.strip()]
    if any(v < 2 for v in vals):
        raise argparse.ArgumentTypeError("moduli must be >= 2")
    return vals


def _count(text: str):
    if text == "all":
        return text
    if not text.isdigit():
        raise argparse.ArgumentTypeError("count must be a nonnegative integer or 'all'")
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayley-chroma", description="Chromatic numbers of Abelian Cayley graphs from Heuberger matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def bounds_flags(p):
        p.add_argument("--ball-radius", type=int, nargs="+", metavar="R", help="radii of the lower-bound balls")
        p.add_argument("--moduli", type=_moduli, metavar="N,...", help="quotient moduli for upper bounds")
        p.add_argument("--budget-nodes", type=int, metavar="K", help=f"search nodes per exact coloring (default {default_budget()})")

    p = sub.add_parser("chi", help="compute the chromatic number of one matrix")
    p.add_argument("path", help="matrix file (text or JSON); '-' reads stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--certify", action="store_true", help="print the full certificate")
    p.add_argument("--verify", action="store_true", help="run the ball/quotient sandwich check")
    p.add_argument("--dump-graph", metavar="PATH", help="write the finite graph (or largest ball) as an edge list")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identical output)")
    bounds_flags(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("fuzz", help="random or exhaustive consistency sweep")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--entry-bound", type=int, required=True)
    p.add_argument("--count", type=_count, default="100")
    p.add_argument("--seed", type=int, default=0)
    bounds_flags(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
