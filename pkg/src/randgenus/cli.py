"""Command line entry point: ``randgenus gen|trace|genus|cycles|experiment``.

Exit codes: 0 success, 1 usage error, 2 budget exceeded (heuristic
fallback), 3 I/O or parse error. Data goes to stdout or ``--out``;
diagnostics, including wall-clock timings, go to stderr.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from .anneal import AnnealConfig, heuristic_genus
from .embedding import (
    DisconnectedGraph,
    InvalidRotation,
    canonical_rotation,
    format_rotation,
    parse_rotation,
    trace_faces,
)
from .experiments import (
    CSV_COLUMNS,
    SUMMARY_COLUMNS,
    records_to_csv,
    run_sweep,
    summarize,
    summary_to_csv,
    summary_to_gnuplot,
)
from .graph import (
    DEFAULT_CYCLE_BUDGET,
    GraphFormatError,
    WorkBudgetExceeded,
    count_short_cycles,
    format_graph,
    short_cycle_bound,
    read_graph,
)
from .random_graph import SampleConfig, SamplingError, sample_at
from .search import DEFAULT_GENUS_BUDGET, exact_genus, genus_bounds

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes; 0 = one per CPU (default 1)")
    common.add_argument("--quiet", action="store_true", help="suppress diagnostics")
    common.add_argument("--format", choices=("text", "csv", "json-lines"), default="text",
                        help="stdout data format (default text)")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock times in data output (breaks byte-identity)")
    return common


def build_parser():
    common = _common()
    parser = _Parser(prog="randgenus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="sample random d-regular graphs")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--simple", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--connected", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-rejects", type=int, default=100_000)
    p.add_argument("--out", help="file (count 1) or directory; default stdout")

    p = sub.add_parser("trace", parents=[common], help="trace faces of a rotation system")
    p.add_argument("--graph", required=True)
    p.add_argument("--rotation", help="rotation file; default ascending dart ids")

    p = sub.add_parser("genus", parents=[common], help="compute or bound the genus")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=("exact", "anneal", "bounds"), default="exact")
    p.add_argument("--budget", type=int, default=DEFAULT_GENUS_BUDGET,
                   help="face-link steps for exact search")
    p.add_argument("--seed", type=int, default=0, help="annealing seed")
    p.add_argument("--witness-out")

    p = sub.add_parser("cycles", parents=[common], help="short-cycle census")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--budget", type=int, default=DEFAULT_CYCLE_BUDGET)

    p = sub.add_parser("experiment", parents=[common], help="Monte Carlo genus sweep")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--n-step", type=int, default=2)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("exact", "anneal"), default="exact")
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--exact-max", type=int, default=16)
    p.add_argument("--budget", type=int, default=DEFAULT_GENUS_BUDGET)
    p.add_argument("--simple", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--connected", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out", help="records CSV; default stdout")
    p.add_argument("--summary-out", help="per-n summary CSV")
    p.add_argument("--plot-out", help="gnuplot-ready summary series")
    return parser


def _emit(args, rows, columns):
    """Write dict rows to stdout in the selected format."""
    out = sys.stdout
    if args.format == "json-lines":
        for row in rows:
            out.write(json.dumps({c: row[c] for c in columns}) + "\n")
    elif args.format == "csv":
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join("" if row[c] is None else str(row[c]) for c in columns) + "\n")
    else:
        for row in rows:
            for c in columns:
                out.write(f"{c}: {row[c]}\n")


def _diag(args, message):
    if not args.quiet:
        print(message, file=sys.stderr)


def _workers(args):
    if args.threads < 0:
        raise UsageError("--threads must be >= 0")
    return args.threads or os.cpu_count() or 1


def cmd_gen(args):
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    try:
        cfg = SampleConfig(args.d, args.n, args.seed, args.simple, args.connected,
                           args.max_rejects)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    graphs = [sample_at(cfg, i) for i in range(args.count)]
    if args.out is None:
        sys.stdout.write("\n".join(format_graph(g) for g in graphs))
        return EXIT_OK
    out = Path(args.out)
    if args.count == 1 and not out.is_dir():
        out.write_text(format_graph(graphs[0]), encoding="utf-8")
    else:
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            (out / f"graph_{i:04d}.txt").write_text(format_graph(g), encoding="utf-8")
    _diag(args, f"wrote {args.count} graph(s) to {out}")
    return EXIT_OK


def cmd_trace(args):
    g = read_graph(args.graph)
    if args.rotation:
        rot = parse_rotation(g, Path(args.rotation).read_text(encoding="utf-8"))
    else:
        rot = canonical_rotation(g)
    emb = trace_faces(g, rot)
    hist = " ".join(f"{k}:{v}" for k, v in emb.histogram().items())
    row = {"V": emb.num_vertices, "E": emb.num_edges, "F": emb.F,
           "face_lengths": hist, "genus": emb.genus, "alpha": emb.alpha}
    _emit(args, [row], ("V", "E", "F", "face_lengths", "genus", "alpha"))
    return EXIT_OK


def cmd_genus(args):
    g = read_graph(args.graph)
    if args.mode == "exact":
        res = exact_genus(g, args.budget, workers=_workers(args),
                          fallback=AnnealConfig(seed=args.seed))
    elif args.mode == "anneal":
        res = heuristic_genus(g, AnnealConfig(seed=args.seed))
    else:
        res = genus_bounds(g)
    row = {"mode": res.mode, "genus_lower": res.genus_lower,
           "genus_upper": res.genus_upper, "alpha": res.alpha,
           "F": res.embedding.F if res.embedding else None,
           "rotations_examined": res.rotations_examined, "steps": res.steps}
    columns = ["mode", "genus_lower", "genus_upper", "alpha", "F",
               "rotations_examined", "steps"]
    if args.timing:
        row["elapsed"] = round(res.elapsed, 6)
        columns.append("elapsed")
    _emit(args, [row], columns)
    _diag(args, f"elapsed {res.elapsed:.3f}s")
    if args.witness_out and res.witness is not None:
        Path(args.witness_out).write_text(format_rotation(g, res.witness), encoding="utf-8")
    if res.extra.get("budget_exceeded"):
        _diag(args, "budget exceeded: result is a heuristic upper bound")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_cycles(args):
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    g = read_graph(args.graph)
    try:
        census = count_short_cycles(g, args.m, args.budget)
    except WorkBudgetExceeded as exc:
        _diag(args, str(exc))
        return EXIT_BUDGET
    d = g.regular_degree()
    rows = [{"length": t, "count": census.counts.get(t, 0)} for t in range(1, args.m + 1)]
    if args.format == "text":
        for r in rows:
            sys.stdout.write(f"length {r['length']}: {r['count']}\n")
        sys.stdout.write(f"total: {census.total}\n")
        sys.stdout.write(f"total_without_loops: {census.up_to(args.m, min_len=2)}\n")
        if d is not None and d >= 2 and args.m >= 2:
            finite, cap = short_cycle_bound(d, args.m, g.num_vertices)
            sys.stdout.write(f"expected_cycles: {finite!r}\nexpected_cycles_cap: {cap!r}\n")
    else:
        _emit(args, rows, ("length", "count"))
    return EXIT_OK


def cmd_experiment(args):
    if args.n_step < 1 or args.n_min > args.n_max or args.samples < 1:
        raise UsageError("need n-step >= 1, n-min <= n-max and samples >= 1")
    n_values = list(range(args.n_min, args.n_max + 1, args.n_step))
    try:
        records = run_sweep(args.d, n_values, args.samples, args.seed, args.mode, args.m,
                            args.exact_max, args.budget,
                            require_simple=args.simple, require_connected=args.connected,
                            workers=_workers(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = records_to_csv(records, timing=args.timing)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    elif args.format == "json-lines":
        for rec in records:
            sys.stdout.write(json.dumps(dict(zip(CSV_COLUMNS, rec.row(args.timing)))) + "\n")
    else:
        sys.stdout.write(text)
    try:
        rows = summarize(records)
    except ValueError as exc:
        _diag(args, str(exc))
        rows = []
    if args.summary_out and rows:
        Path(args.summary_out).write_text(summary_to_csv(rows), encoding="utf-8")
    if args.plot_out and rows:
        Path(args.plot_out).write_text(summary_to_gnuplot(rows), encoding="utf-8")
    for r in rows:
        _diag(args, " ".join(f"{c}={getattr(r, c)!r}" for c in SUMMARY_COLUMNS))
    failed = [r for r in records if r.status != "ok"]
    if failed:
        _diag(args, f"{len(failed)} record(s) not exact/ok")
    if any(r.status == "budget_exceeded" for r in records):
        return EXIT_BUDGET
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "trace": cmd_trace, "genus": cmd_genus,
            "cycles": cmd_cycles, "experiment": cmd_experiment}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"randgenus {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DisconnectedGraph as exc:
        print(f"randgenus {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SamplingError as exc:
        print(f"randgenus {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphFormatError, InvalidRotation, OSError) as exc:
        print(f"randgenus {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
