"""Command-line interface: ``relgraph {solve,curate,generate,verify,oracle}``.

Exit codes: 0 ok, 1 verification failure or negative oracle answer,
2 usage or validation error, 3 oracle cutoff refusal, 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import oracles
from .budget import Metric
from .certificates import Nil, Problem
from .errors import ContractError, CutoffError, ParseError
from .generators import (BLOWUP, ROBUST, VARIANTS, gen_barrier, gen_domset_blowup,
                         gen_ham_robust, write_meta)
from .graph import Instance
from .graphio import read_graph_file, write_graph_file
from .records import RelRecord, certificate_to_json, verify_record
from .solvers import SOLVERS, solve, supported_pairs

log = logging.getLogger("relgraph")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CUTOFF = 3
EXIT_IO = 4

GRAPH_SUFFIXES = {".txt", ".col", ".edges", ".graph"}


class UsageError(Exception):
    pass


def _check_pair(problem: str, kind: str) -> None:
    if (Problem(problem), Metric(kind)) not in SOLVERS:
        raise UsageError(f"no solver for {problem} under {kind}; supported: {supported_pairs()}")


def _instance(graph, problem: Problem, k: int | None) -> Instance:
    if problem.needs_threshold and k is None:
        raise UsageError(f"--k is required for {problem.value}")
    if not problem.needs_threshold:
        k = None
    try:
        return Instance(graph, k)
    except ContractError as exc:
        raise UsageError(str(exc)) from exc


def _emit(lines, output: str | None) -> None:
    text = "".join(line + "\n" for line in lines)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ solve

def cmd_solve(args) -> int:
    _check_pair(args.problem, args.dist)
    graph = read_graph_file(args.input)
    problem = Problem(args.problem)
    inst = _instance(graph, problem, args.k)
    ans = solve(problem, args.dist, inst, seed=args.seed)
    rec = RelRecord.from_answer(problem, args.dist, inst, ans, source=str(args.input), seed=args.seed)
    _emit([rec.to_json()], args.output)
    return EXIT_OK


# ----------------------------------------------------------------- curate

def parse_k_policy(text: str):
    """``fixed:<k>``, ``fraction:<p>`` (k = floor(p n)) or ``file`` (k from <stem>.k)."""
    name, _, arg = text.partition(":")
    if name == "fixed":
        try:
            k = int(arg)
        except ValueError as exc:
            raise UsageError(f"bad k-policy {text!r}") from exc
        if k < 0:
            raise UsageError("fixed k must be non-negative")
        return ("fixed", k)
    if name == "fraction":
        try:
            p = Fraction(arg)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad k-policy {text!r}") from exc
        if not 0 <= p <= 1:
            raise UsageError("fraction must lie in [0, 1]")
        return ("fraction", p)
    if name == "file" and not arg:
        return ("file", None)
    raise UsageError(f"bad k-policy {text!r}; use fixed:<k>, fraction:<p> or file")


def _policy_k(policy, path: Path, n: int) -> int:
    name, arg = policy
    if name == "fixed":
        return min(arg, n)
    if name == "fraction":
        return math.floor(arg * n)
    kfile = path.with_suffix(".k")
    k = int(kfile.read_text(encoding="utf-8").strip())
    if not 0 <= k <= n:
        raise ContractError(f"{kfile}: k={k} outside [0, {n}]")
    return k


def _curate_one(task):
    """Worker: returns (record line, distance, budget text, positive) or (None, error)."""
    path, problem, kind, policy, seed = task
    path = Path(path)
    try:
        graph = read_graph_file(path)
        k = _policy_k(policy, path, graph.n) if problem.needs_threshold else None
    except (OSError, ParseError, ContractError, ValueError) as exc:
        return None, f"{path}: {exc}"
    inst = Instance(graph, k)
    ans = solve(problem, kind, inst, seed=seed)
    rec = RelRecord.from_answer(problem, kind, inst, ans, source=str(path), seed=seed)
    rep = verify_record(rec, graph, cross_check=False)
    if not rep.ok:
        return None, f"{path}: self-check failed: {rep.failures()[0].line()}"
    return (rec.to_json(), ans.distance, ans.budget.text, ans.positive), None


def _input_files(in_dir: Path) -> list[Path]:
    if not in_dir.is_dir():
        raise OSError(f"{in_dir} is not a directory")
    return sorted(p for p in in_dir.iterdir() if p.is_file() and p.suffix in GRAPH_SUFFIXES)


def cmd_curate(args) -> int:
    _check_pair(args.problem, args.dist)
    problem, kind = Problem(args.problem), Metric(args.dist)
    policy = parse_k_policy(args.k_policy)
    files = _input_files(Path(args.in_dir))
    tasks = [(str(p), problem, kind, policy, None if args.seed is None else args.seed + i)
             for i, p in enumerate(files)]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_curate_one, tasks, chunksize=4))
    else:
        results = [_curate_one(t) for t in tasks]

    lines, hist, skipped = [], Counter(), 0
    positive = negative = 0
    worst = None
    for out, err in results:
        if err is not None:
            log.warning("skipping %s", err)
            skipped += 1
            continue
        line, d, budget, pos = out
        lines.append(line)
        hist[d] += 1
        positive += pos
        negative += not pos
        if worst is None or d > worst[0]:
            worst = (d, budget)
    summary = {
        "records": len(lines),
        "positive": positive,
        "negative": negative,
        "skipped": skipped,
        "distance_histogram": {str(d): hist[d] for d in sorted(hist)},
        "max_distance": worst[0] if worst else 0,
        "budget_at_max_distance": worst[1] if worst else None,
    }
    lines.append(json.dumps({"summary": summary}, separators=(", ", ": ")))
    _emit(lines, args.out)
    return EXIT_IO if skipped else EXIT_OK


# --------------------------------------------------------------- generate

def cmd_generate(args) -> int:
    source = read_graph_file(args.source)
    if args.reduction == BLOWUP:
        if args.k is None:
            raise UsageError("--k is required for domset-blowup")
        inst, meta = gen_domset_blowup(source, args.k, args.beta)
        graph = inst.graph
    else:
        build = gen_ham_robust if args.reduction == ROBUST else gen_barrier
        graph, meta = build(source, args.s, args.t, args.beta)
    prefix = Path(args.out_prefix)
    write_graph_file(prefix.with_name(prefix.name + ".txt"), graph)
    prefix.with_name(prefix.name + ".meta").write_text(write_meta(meta), encoding="utf-8")
    print(f"q = {meta.q}")
    print(f"n = {graph.n}")
    return EXIT_OK


# ----------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    text = Path(args.record).read_text(encoding="utf-8")
    records = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", lineno) from exc
        if isinstance(obj, dict) and set(obj) == {"summary"}:
            continue
        records.append((lineno, RelRecord.from_dict(obj)))
    shared = read_graph_file(args.graph) if args.graph else None
    failed = 0
    for lineno, rec in records:
        if shared is not None:
            graph = shared
        elif rec.source:
            graph = read_graph_file(rec.source)
        else:
            raise UsageError(f"record on line {lineno} names no source; pass --graph")
        rep = verify_record(rec, graph, cross_check=not args.no_oracle)
        if rep.ok:
            continue
        failed += 1
        for check in rep.failures():
            print(f"record {lineno}: {check.line()}")
    print(f"{len(records) - failed}/{len(records)} records verified")
    return EXIT_FAIL if failed else EXIT_OK


# ----------------------------------------------------------------- oracle

def cmd_oracle(args) -> int:
    graph = read_graph_file(args.input)
    problem = Problem(args.problem)
    inst = _instance(graph, problem, args.k)
    try:
        cert = oracles.oracle_solve(problem, inst, args.cutoff)
    except CutoffError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CUTOFF
    if isinstance(cert, Nil):
        print("negative")
        return EXIT_FAIL
    print("positive")
    print(json.dumps(certificate_to_json(cert)))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relgraph", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    problems = [p.value for p in Problem]
    metrics = [m.value for m in Metric]

    p = sub.add_parser("solve", help="solve one instance and print its record")
    p.add_argument("--problem", required=True, choices=problems)
    p.add_argument("--dist", required=True, choices=metrics)
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("curate", help="solve every graph in a directory into a JSONL dataset")
    p.add_argument("--problem", required=True, choices=problems)
    p.add_argument("--dist", required=True, choices=metrics)
    p.add_argument("--in-dir", required=True)
    p.add_argument("--out")
    p.add_argument("--k-policy", default="fraction:1/2",
                   help="fixed:<k>, fraction:<p> or file (default fraction:1/2)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_curate)

    p = sub.add_parser("generate", help="build a robust gadget instance")
    p.add_argument("--reduction", required=True, choices=VARIANTS)
    p.add_argument("--source", required=True)
    p.add_argument("--beta", required=True, type=_fraction)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int, help="start terminal (default: lower degree-1 vertex)")
    p.add_argument("--t", type=int, help="end terminal (default: higher degree-1 vertex)")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="replay the checks of a record file")
    p.add_argument("--record", required=True)
    p.add_argument("--graph", help="source graph (default: each record's source field)")
    p.add_argument("--no-oracle", action="store_true", help="skip the exact cross-check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact answer for a small instance")
    p.add_argument("--problem", required=True, choices=problems)
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--cutoff", type=int)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
