"""Command line interface.

Subcommands: count (run the engine on one instance), oracle (brute-force
reference count), verify (judge a claimed count), run (execute solvers
under resource limits), score (turn run results into a leaderboard),
select (draw a stratified benchmark), convert (rewrite between formats).

Counting output discipline: exactly one ``s <tag> <value>`` solution line
on stdout, statistics as ``c`` comment lines, diagnostics on stderr.  Exit
codes follow the solver convention: 0 after a solution, 20 on a resource
abort (including termination signals, which flush partial statistics
first), other codes for failures.  The instance track is inferred from the
file extension; when that is ambiguous the track flag is required.
"""

from __future__ import annotations

import argparse
import os
import signal
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from . import counter, formats, harness, oracle
from .core import Formula, WeightFunction


def _resolve_track(path, track_flag):
    if track_flag:
        return track_flag
    try:
        return formats.track_for_path(path)
    except ValueError as exc:
        raise SystemExit("error: %s" % exc)


def _load_document(path, track, strict):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        raise SystemExit(1)
    try:
        return formats.parse_document(raw, track, strict=strict)
    except formats.FormatError as exc:
        print("error: %s: %s" % (path, exc), file=sys.stderr)
        raise SystemExit(1)


def _solver_config(args):
    return counter.SolverConfig(
        heuristic=getattr(args, "heuristic", "occurrence"),
        cache_enabled=not getattr(args, "no_cache", False),
        cache_bytes=getattr(args, "cache_bytes", counter.DEFAULT_CACHE_BYTES),
        seed=getattr(args, "seed", 0),
        precision=getattr(args, "precision", 20),
        log10=getattr(args, "log10", False),
    )


class _AbortHandler:
    """Flush partial statistics and exit with the resource-abort code."""

    def __init__(self, stats):
        self.stats = stats
        self.previous = []

    def __enter__(self):
        def handler(signum, frame):
            for line in self.stats.comment_lines():
                print(line)
            print("c aborted by signal %d" % signum)
            sys.stdout.flush()
            os._exit(harness.EXIT_RESOURCE)

        try:
            for signum in (signal.SIGTERM, signal.SIGINT):
                self.previous.append((signum, signal.signal(signum, handler)))
        except ValueError:
            self.previous = []  # not in the main thread, run unguarded
        return self

    def __exit__(self, *exc):
        for signum, old in self.previous:
            signal.signal(signum, old)
        return False


def cmd_count(args):
    track = _resolve_track(args.instance, args.track)
    document = _load_document(args.instance, track, args.strict)
    formula = Formula.from_document(document)
    config = _solver_config(args)
    stats = counter.SolverStats()
    with _AbortHandler(stats):
        try:
            if track == "mc":
                value = counter.count(formula, config, stats)
            elif track == "wmc":
                weights = WeightFunction.from_document(document)
                value = counter.wcount(formula, weights, config, stats)
            else:
                value = counter.pcount(formula, document.projection_vars, config, stats)
        except counter.ResourceExhausted as exc:
            for line in stats.comment_lines():
                print(line)
            print("c aborted: %s" % exc)
            sys.stdout.flush()
            return harness.EXIT_RESOURCE
    for line in stats.comment_lines():
        print(line)
    solution = counter.render_count(value, track, config)
    print(solution)
    if args.out:
        Path(args.out).write_text(solution + "\n")
    return 0


def cmd_oracle(args):
    track = _resolve_track(args.instance, args.track)
    document = _load_document(args.instance, track, args.strict)
    formula = Formula.from_document(document)
    limit = oracle.OracleLimit(max_vars=args.max_vars, max_clauses=args.max_clauses)
    try:
        if args.method == "ie":
            if track != "mc":
                print("error: inclusion-exclusion counts the mc track only",
                      file=sys.stderr)
                return 2
            value = oracle.ie_count(formula, limit)
        elif track == "mc":
            value = oracle.enum_count(formula, limit)
        elif track == "wmc":
            value = oracle.enum_wcount(
                formula, WeightFunction.from_document(document), limit
            )
        else:
            value = oracle.enum_pcount(formula, document.projection_vars, limit)
    except oracle.TooLarge as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    config = counter.SolverConfig(precision=args.precision, log10=args.log10)
    print(counter.render_count(value, track, config))
    return 0


def _parse_track_value(token, track):
    try:
        if track == "wmc":
            value = Fraction(Decimal(token))
        else:
            value = int(token)
    except (ValueError, InvalidOperation):
        raise SystemExit("error: unreadable %s value %r" % (track, token))
    if value < 0:
        raise SystemExit("error: negative %s value %r" % (track, token))
    return value


def cmd_verify(args):
    track = _resolve_track(args.instance, args.track)
    document = _load_document(args.instance, track, args.strict)
    formula = Formula.from_document(document)
    claimed = _parse_track_value(args.claimed, track)
    if args.reference is not None:
        reference = _parse_track_value(args.reference, track)
    else:
        limit = oracle.OracleLimit(max_vars=args.max_vars)
        try:
            if track == "mc":
                reference = oracle.enum_count(formula, limit)
            elif track == "wmc":
                reference = oracle.enum_wcount(
                    formula, WeightFunction.from_document(document), limit
                )
            else:
                reference = oracle.enum_pcount(
                    formula, document.projection_vars, limit
                )
        except oracle.TooLarge as exc:
            print("error: %s; pass --reference" % exc, file=sys.stderr)
            return 1
    verdict = harness.score(reference, claimed)
    print(verdict)
    return 0 if verdict.credited else 1


def cmd_run(args):
    config = harness.load_config(args.config)
    entries = harness.load_manifest(args.manifest)
    if not entries:
        print("error: empty manifest", file=sys.stderr)
        return 1
    wall = args.timeout if args.timeout is not None else config.wall_seconds
    memory = args.memory if args.memory is not None else config.memory_bytes
    limits = {
        track: harness.ResourceLimits.for_track(
            track, wall_seconds=wall, memory_bytes=memory
        )
        for track in formats.TRACKS
    }
    jobs = args.jobs if args.jobs is not None else config.jobs
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = harness.run_many(
        entries, config.solvers, out_dir, limits_overrides=limits, jobs=jobs
    )
    results_path = out_dir / "results.jsonl"
    harness.write_results(results, results_path)
    for result in results:
        print(
            "%-12s %-30s %-6s %8.2fs"
            % (result.solver, result.instance, result.status, result.wall_time)
        )
    print("wrote %s" % results_path)
    return 0


def cmd_score(args):
    entries = harness.load_manifest(args.manifest)
    runs = harness.read_results(args.results)
    references = harness.references_by_instance(entries)
    exact = frozenset(args.exact_solver or [])
    records = harness.score_records_from_runs(runs, references, exact)
    board = harness.rank(records, runs)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    harness.write_tables(out_dir, board, runs)
    with open(out_dir / "scores.csv", "w") as fh:
        fh.write("instance,solver,accuracy\n")
        for record in records:
            fh.write("%s,%s,%s\n" % (record.instance, record.solver, record.accuracy))
    sys.stdout.write(harness.leaderboard_csv(board))
    return 0


def cmd_select(args):
    pool = []
    for lineno, raw in enumerate(Path(args.pool).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            print("error: pool line %d: expected 'instance runtime'" % lineno,
                  file=sys.stderr)
            return 1
        runtime = None if tokens[1].lower() in ("na", "-", "none") else float(tokens[1])
        pool.append((tokens[0], runtime))
    distribution = None
    if args.distribution:
        parts = args.distribution.split(",")
        if len(parts) != 4:
            print("error: distribution needs four comma-separated counts",
                  file=sys.stderr)
            return 1
        counts = [int(p) for p in parts]
        distribution = dict(zip(("very-easy", "easy", "medium", "hard"), counts))
    try:
        result = harness.select_instances(pool, distribution, seed=args.seed)
    except harness.InsufficientPool as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "public.txt").write_text(
        "".join("%s\n" % inst for inst in result.public)
    )
    (out_dir / "private.txt").write_text(
        "".join("%s\n" % inst for inst in result.private)
    )
    with open(out_dir / "numbering.csv", "w") as fh:
        fh.write("number,instance,set\n")
        for number, inst in result.numbering:
            fh.write(
                "%d,%s,%s\n" % (number, inst, "private" if number % 2 else "public")
            )
    print(
        "selected %d instances: %d public, %d private"
        % (len(result.numbering), len(result.public), len(result.private))
    )
    return 0


def cmd_convert(args):
    source_track = _resolve_track(args.instance, args.track)
    document = _load_document(args.instance, source_track, args.strict)
    base = document if isinstance(document, formats.CnfDocument) else document.base
    target = args.to
    if target == "mc":
        converted = base
    elif target == "wmc":
        weights = dict(document.weights) if source_track == "wmc" else {}
        converted = formats.WcnfDocument(base=base, weights=weights)
    else:
        if args.project:
            projection = frozenset(
                int(tok) for tok in args.project.replace(",", " ").split()
            )
        elif source_track == "pmc":
            projection = document.projection_vars
        else:
            projection = frozenset(range(1, base.num_vars + 1))
        converted = formats.PcnfDocument(base=base, projection_vars=projection)
    text = formats.serialize(converted)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="countkit",
        description="Exact model counting toolkit and benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_flags(p):
        p.add_argument("instance", help="instance file")
        p.add_argument("--track", choices=formats.TRACKS,
                       help="instance track; default inferred from extension")
        p.add_argument("--strict", action="store_true",
                       help="enforce the format to the letter")

    p = sub.add_parser("count", help="count models with the search engine")
    add_instance_flags(p)
    p.add_argument("--heuristic", choices=counter.HEURISTICS, default="occurrence")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-cache", action="store_true",
                   help="disable the component cache")
    p.add_argument("--cache-bytes", type=int, default=counter.DEFAULT_CACHE_BYTES)
    p.add_argument("--precision", type=int, default=20,
                   help="fraction digits for weighted output")
    p.add_argument("--log10", action="store_true",
                   help="report the base-10 logarithm of the weighted count")
    p.add_argument("--out", help="also write the solution line to this file")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="count by brute force for verification")
    add_instance_flags(p)
    p.add_argument("--method", choices=("enum", "ie"), default="enum")
    p.add_argument("--max-vars", type=int, default=oracle.DEFAULT_LIMIT.max_vars)
    p.add_argument("--max-clauses", type=int,
                   default=oracle.DEFAULT_LIMIT.max_clauses)
    p.add_argument("--precision", type=int, default=20)
    p.add_argument("--log10", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="judge a claimed count for an instance")
    add_instance_flags(p)
    p.add_argument("claimed", help="the claimed count")
    p.add_argument("--reference",
                   help="trusted reference count; default: brute force")
    p.add_argument("--max-vars", type=int, default=oracle.DEFAULT_LIMIT.max_vars)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="run solvers on a benchmark under limits")
    p.add_argument("--manifest", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="results directory")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--timeout", type=float, default=None,
                   help="wall seconds, overriding config and track defaults")
    p.add_argument("--memory", type=int, default=None,
                   help="memory budget in bytes")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("score", help="score run results into a leaderboard")
    p.add_argument("--manifest", required=True)
    p.add_argument("--results", required=True, help="results.jsonl from run")
    p.add_argument("--out", required=True, help="tables directory")
    p.add_argument("--exact-solver", action="append",
                   help="solver id whose answers anchor unknown references")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("select", help="draw a stratified benchmark selection")
    p.add_argument("--pool", required=True,
                   help="file of 'instance runtime' lines, na for unsolved")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution",
                   help="counts for very-easy,easy,medium,hard (default 20,20,90,70)")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("convert", help="rewrite an instance in another format")
    add_instance_flags(p)
    p.add_argument("--to", choices=formats.TRACKS, required=True)
    p.add_argument("--project",
                   help="projection variables for pcnf output, e.g. '1 2 3'")
    p.add_argument("--out", help="output path; default stdout")
    p.set_defaults(func=cmd_convert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except formats.FormatError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
