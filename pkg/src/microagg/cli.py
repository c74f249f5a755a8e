"""Command line interface: cluster data, benchmark solvers, verify oracles.

Exit codes: 0 success, 2 input error (unreadable file, parse failure,
empty input), 64 usage error (bad flags or flag combinations).
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import oracle
from .costs import SumMode
from .solvers import Algorithm, SolverOptions, segment_costs, solve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_USAGE = 64


class CliInputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; the contract here is 64
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_values(source: str, column: str | None = None):
    """Parse floats from a file path or '-' (stdin).

    Plain mode: whitespace/newline-delimited numbers, one value per row.
    CSV mode (column given): the named column of a headered CSV.  Errors
    carry 1-based line numbers; non-finite values are rejected.
    """
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliInputError(f"cannot read {source}: {exc}") from None
    values: list[float] = []
    if column is not None:
        reader = csv.DictReader(text.splitlines())
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise CliInputError(f"column {column!r} not found in CSV header")
        for lineno, row in enumerate(reader, start=2):
            raw = row.get(column)
            v = _parse_float(raw, lineno)
            values.append(v)
    else:
        for lineno, line in enumerate(text.splitlines(), start=1):
            for token in line.split():
                values.append(_parse_float(token, lineno))
    if not values:
        raise CliInputError("empty input")
    return np.asarray(values, dtype=np.float64), len(values)


def _parse_float(token, lineno: int) -> float:
    try:
        v = float(token)
    except (TypeError, ValueError):
        raise CliInputError(f"line {lineno}: cannot parse {token!r} "
                            "as a number") from None
    if not math.isfinite(v):
        raise CliInputError(f"line {lineno}: non-finite value {token!r}")
    return v


def _fmt(v: float) -> str:
    return repr(float(v))


def cmd_cluster(args) -> int:
    try:
        values, _ = read_values(args.input, args.column)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    opts = SolverOptions(algorithm=args.algorithm, sum_mode=args.sum_mode,
                         rebase=args.rebase)
    t0 = time.perf_counter()
    result = solve(values, args.k, args.cost, opts)
    elapsed = time.perf_counter() - t0

    lines: list[str] = []
    if args.output_mode == "labels":
        lines = [str(int(l)) for l in result.labels]
    elif args.output_mode == "representatives":
        sizes = result.cluster_sizes()
        x_sorted = np.sort(values, kind="stable")
        costs = segment_costs(x_sorted, result.boundaries, result.cost_kind)
        lines = ["cluster,representative,size,cost"]
        for c in range(result.num_clusters):
            lines.append(f"{c},{_fmt(result.representatives[c])},"
                         f"{int(sizes[c])},{_fmt(costs[c])}")
    elif args.output_mode == "both":
        lines = ["label,representative"]
        for l in result.labels:
            lines.append(f"{int(l)},{_fmt(result.representatives[l])}")
    else:  # anonymized-column
        lines = [_fmt(result.representatives[l]) for l in result.labels]

    out_text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out_text)
    else:
        sys.stdout.write(out_text)
    if not result.size_feasible:
        print("warning: constraint unsatisfiable, single cluster",
              file=sys.stderr)
    print(f"# total_cost={_fmt(result.total_cost)} "
          f"clusters={result.num_clusters} "
          f"algorithm={result.algorithm_used} "
          f"elapsed={elapsed:.6f}s", file=sys.stderr)
    return EXIT_OK


BENCH_HEADER = "algorithm,sum_mode,n,k,repeat,seconds,total_cost"


def _bench_cell(algorithm: str, sum_mode: str, k: int, rep: int,
                data_sorted: np.ndarray):
    opts = SolverOptions(algorithm=algorithm, sum_mode=SumMode.coerce(sum_mode))
    t0 = time.perf_counter()
    result = solve(data_sorted, k, "sse", opts, presorted=True)
    seconds = time.perf_counter() - t0
    return (algorithm, sum_mode, data_sorted.shape[0], k, rep, seconds,
            result.total_cost)


def cmd_bench(args) -> int:
    ks = args.k_list
    if args.n < 2 * max(ks):
        print(f"error: --n must be at least 2*max(k)={2 * max(ks)}",
              file=sys.stderr)
        return EXIT_USAGE
    algorithms = args.algorithms
    rng = np.random.default_rng(args.seed)
    data = rng.random(args.n)
    rows = []
    sort_seconds = []
    for rep in range(args.repeats):
        t0 = time.perf_counter()
        data_sorted = np.sort(data, kind="stable")
        sort_seconds.append(time.perf_counter() - t0)
    for rep, secs in enumerate(sort_seconds):
        rows.append(("sort", "none", args.n, 0, rep, secs, 0.0))

    cells = []
    for algorithm in algorithms:
        for sum_mode in args.sum_modes:
            if (algorithm in (Algorithm.CLASSIC_N2, Algorithm.WILBER)
                    and sum_mode == "partial"):
                print(f"note: skipping {algorithm}/partial "
                      "(unbounded window queries)", file=sys.stderr)
                continue
            for k in ks:
                for rep in range(args.repeats):
                    cells.append((algorithm, sum_mode, k, rep))
    if args.parallel:
        with ThreadPoolExecutor() as pool:
            rows.extend(pool.map(
                lambda c: _bench_cell(c[0], c[1], c[2], c[3], data_sorted),
                cells))
    else:
        for c in cells:
            rows.append(_bench_cell(c[0], c[1], c[2], c[3], data_sorted))

    lines = [f"# seed={args.seed} parallel={str(args.parallel).lower()}",
             BENCH_HEADER]
    for algorithm, sum_mode, n, k, rep, secs, cost in rows:
        lines.append(f"{algorithm},{sum_mode},{n},{k},{rep},"
                     f"{secs:.6f},{_fmt(cost)}")
    out_text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out_text)
    else:
        sys.stdout.write(out_text)
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    for rep in oracle.verify_counterexamples():
        status = "PASS" if rep.passed else "FAIL"
        ok = ok and rep.passed
        print(f"counterexample {rep.name}: {status} "
              f"(non-contiguous {rep.unordered_cost:g} vs "
              f"contiguous {list(rep.ordered_costs)})")
    rng = np.random.default_rng(7)
    sweeps = 0
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 9))
        vals = sorted(int(v) for v in rng.integers(-3, 4, size=n))
        for k in range(1, n + 1):
            for kind in oracle.MEMBER_KINDS:
                a = oracle.exhaustive_all_partitions(vals, k, kind)
                b = oracle.exhaustive_ordered(vals, k, kind)
                worst = max(worst, abs(a.min_cost - b.min_cost))
                sweeps += 1
                if abs(a.min_cost - b.min_cost) > 1e-9:
                    ok = False
    status = "PASS" if worst <= 1e-9 else "FAIL"
    print(f"ordered-equivalence sweep: {status} "
          f"({sweeps} cases, worst gap {worst:.2e})")
    return EXIT_OK if ok else 1


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def build_parser() -> _Parser:
    parser = _Parser(prog="microagg",
                     description="Optimal univariate microaggregation")
    # verify exists for validation workflows but is not advertised
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{cluster,bench}")

    p_cluster = sub.add_parser("cluster", help="cluster/anonymize a column")
    p_cluster.add_argument("input", help="input path, or - for stdin")
    p_cluster.add_argument("--column", default=None,
                           help="CSV column name (plain numbers otherwise)")
    p_cluster.add_argument("--k", type=int, required=True,
                           help="minimum cluster size")
    p_cluster.add_argument("--cost", default="sse",
                           choices=["sse", "sae", "maxdist", "roundup",
                                    "rounddown"])
    p_cluster.add_argument("--algorithm", default="auto",
                           choices=["auto", "classic", "simple", "simple+",
                                    "staggered", "wilber"])
    p_cluster.add_argument("--sum-mode", default="full",
                           choices=["full", "partial", "alternative"])
    p_cluster.add_argument("--rebase", action="store_true")
    p_cluster.add_argument("--output-mode", default="labels",
                           choices=["labels", "representatives", "both",
                                    "anonymized-column"])
    p_cluster.add_argument("--output", default=None, help="output path")
    p_cluster.set_defaults(fn=cmd_cluster)

    p_bench = sub.add_parser("bench", help="runtime benchmark, CSV output")
    p_bench.add_argument("--n", type=int, required=True)
    p_bench.add_argument("--k-list", type=_int_list, required=True)
    p_bench.add_argument("--algorithms", default="all")
    p_bench.add_argument("--sum-modes", type=lambda s: s.split(","),
                         default=["full"])
    p_bench.add_argument("--repeats", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--parallel", action="store_true")
    p_bench.add_argument("--output", default=None)
    p_bench.set_defaults(fn=cmd_bench)

    p_verify = sub.add_parser("verify")  # unadvertised validation entry
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench":
        if args.repeats < 1:
            parser.error("--repeats must be >= 1")
        if args.algorithms == "all":
            args.algorithms = list(Algorithm.ALL)
        else:
            args.algorithms = [tok for tok in args.algorithms.split(",") if tok]
        for a in args.algorithms:
            try:
                Algorithm.coerce(a)
            except ValueError:
                parser.error(f"unknown algorithm {a!r}")
        if not args.k_list or min(args.k_list) < 1:
            parser.error("--k-list must contain integers >= 1")
    try:
        return args.fn(args)
    except ValueError as exc:
        # invalid flag combinations surface from the library as ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
