"""Command-line interface.

Data (CSV) goes to stdout or ``--out``; diagnostics go to stderr.
Exit codes: 0 success, 1 validation mismatch, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import itertools
import sys
import time

import numpy as np

from . import closedform, oracle, repcode
from ._validation import probability_grid
from .entropy import (
    DEFAULT_MAX_K,
    DEFAULT_MAX_NU,
    CapExceeded,
    CIResult,
    coherent_information,
)
from .gf2 import BitMatrix
from .graphstate import (
    BipartiteGraphState,
    GraphFormatError,
    biadjacency,
    block_graph,
    classify,
    complete_bipartite,
    equitable_split,
    from_biadjacency,
    random_graph,
    read_graph,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
FAMILIES = ("star", "complete", "rank2type1", "rank2type2")
TOLERANCE = 1e-9


class InputError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"


def _split_blocks(n: int, given: list[int | None], parts: int, name: str) -> list[int]:
    if all(v is not None for v in given):
        return list(given)
    if n is None:
        raise InputError(f"{name}: give every class size or the total")
    try:
        return list(equitable_split(n, parts))
    except ValueError as exc:
        raise InputError(f"{name}: {exc}") from None


def family_graph(args) -> BipartiteGraphState:
    fam = args.family
    if fam in ("star", "complete"):
        if args.nA is None or args.nB is None:
            raise InputError(f"family {fam} needs --nA and --nB")
        if args.nA < 1 or args.nB < 1:
            raise InputError("--nA and --nB must be >= 1")
        return complete_bipartite(args.nA, args.nB)
    if fam == "rank2type1":
        rows = _split_blocks(args.nA, [args.n1, args.n2], 2, "rank2type1 rows")
        cols = _split_blocks(args.nB, [args.n1B, args.n2B], 2, "rank2type1 columns")
        pattern = ((1, 0), (0, 1))
    elif fam == "rank2type2":
        rows = _split_blocks(args.nA, [args.n1, args.n2, args.n3], 3, "rank2type2 rows")
        cols = _split_blocks(args.nB, [args.n1B, args.n2B], 2, "rank2type2 columns")
        pattern = ((0, 1), (1, 1), (1, 0))
    else:
        raise InputError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    if min(rows + cols) < 1:
        raise InputError("block sizes must be >= 1")
    return block_graph(rows, cols, pattern)


def load_graph(args) -> BipartiteGraphState:
    if args.graph and args.family:
        raise InputError("give either --graph or --family, not both")
    if args.graph:
        try:
            return read_graph(args.graph)
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc}") from None
        except GraphFormatError as exc:
            raise InputError(f"{args.graph}: {exc}") from None
    if args.family:
        return family_graph(args)
    raise InputError("no graph given; use --graph FILE or --family NAME")


def evaluate(g: BipartiteGraphState, P: float, args) -> CIResult:
    if args.method == "oracle":
        return oracle.oracle_ci(g, P)
    return coherent_information(
        g, P, args.method, max_nu=args.max_nu, max_k=args.max_k, n_jobs=args.jobs
    )


def _side_fields(res: CIResult, side: str):
    H_A, I_A = (res.H_A, res.I_A) if side in ("a", "both") else (None, None)
    H_B, I_B = (res.H_B, res.I_B) if side in ("b", "both") else (None, None)
    return H_A, H_B, I_A, I_B


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


# -- subcommands ----------------------------------------------------------


def cmd_compute(args) -> int:
    g = load_graph(args)
    P = _parse_probability(args.p)
    res = evaluate(g, P, args)
    H_A, H_B, I_A, I_B = _side_fields(res, args.side)
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["n_A", "n_B", "P", "rank", "K_A", "K_B", "H_A", "H_B", "H_AB", "I_A", "I_B", "method"])
        w.writerow([fmt(v) for v in (g.n_A, g.n_B, P, res.rank, res.K_A, res.K_B,
                                     H_A, H_B, res.H_AB, I_A, I_B, res.method)])
    return EXIT_OK


def cmd_sweep(args) -> int:
    g = load_graph(args)
    try:
        grid = probability_grid(args.p_start, args.p_end, args.steps)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = []
    for P in grid:
        res = evaluate(g, float(P), args)
        H_A, H_B, I_A, I_B = _side_fields(res, args.side)
        rows.append([fmt(v) for v in (P, H_A, H_B, res.H_AB, I_A, I_B, res.method)])
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["P", "H_A", "H_B", "H_AB", "I_A", "I_B", "method"])
        w.writerows(rows)
    return EXIT_OK


def cmd_classify(args) -> int:
    g = load_graph(args)
    gab = biadjacency(g)
    with _output(args.out) as fh:
        for side in "AB":
            print(str(classify(gab, side)), file=fh)
    return EXIT_OK


def _exhaustive_graphs(max_n: int):
    """Every distinct biadjacency matrix with n_A + n_B <= max_n."""
    for n in range(2, max_n + 1):
        for n_A in range(1, n):
            n_B = n - n_A
            for code in range(1 << (n_A * n_B)):
                rows = tuple((code >> (i * n_B)) & ((1 << n_B) - 1) for i in range(n_A))
                yield from_biadjacency(BitMatrix(n_A, n_B, rows))


def _random_graphs(count: int, sizes: list[int], seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.choice(sizes))
        n_A = int(rng.integers(1, n))
        yield random_graph(n_A, n - n_A, rng, density=float(rng.uniform(0.2, 0.8)),
                           local_density=0.3)


def oracle_check(graphs, p_grid, fault: float = 0.0, log=None):
    """Compare engine paths against the oracle; return (checks, worst, failures)."""
    worst = 0.0
    checks = 0
    failures = []
    for g in graphs:
        for P in p_grid:
            ref = oracle.oracle_ci(g, P)
            candidates = {
                "general": coherent_information(g, P, "general"),
                "auto": coherent_information(g, P, "auto"),
            }
            try:
                candidates["closedform"] = coherent_information(g, P, "closedform")
            except ValueError:
                pass
            for name, res in candidates.items():
                for side in "AB":
                    got = getattr(res, f"H_{side}") + (fault if name == "general" and side == "A" else 0.0)
                    dev = abs(got - getattr(ref, f"H_{side}"))
                    checks += 1
                    worst = max(worst, dev)
                    if dev >= TOLERANCE:
                        failures.append((g, P, name, side, dev))
    return checks, worst, failures


def cmd_oracle_check(args) -> int:
    if args.max_n > oracle.MAX_REDUCED_QUBITS or args.max_n < 2:
        raise InputError(f"--max-n must be between 2 and {oracle.MAX_REDUCED_QUBITS}")
    p_grid = [_parse_probability(x) for x in args.p_grid.split(",")]
    exhaustive_max = min(args.max_n, args.exhaustive_max)
    graphs = list(_exhaustive_graphs(exhaustive_max))
    n_exhaustive = len(graphs)
    if args.random:
        sizes = list(range(exhaustive_max + 1, args.max_n + 1)) or list(range(2, args.max_n + 1))
        graphs += list(_random_graphs(args.random, sizes, args.seed))
    t0 = time.perf_counter()
    checks, worst, failures = oracle_check(graphs, p_grid, fault=args.inject_fault)
    elapsed = time.perf_counter() - t0
    status = "FAIL" if failures else "PASS"
    with _output(args.out) as fh:
        print(f"graphs: {n_exhaustive} exhaustive (n <= {exhaustive_max}) + "
              f"{len(graphs) - n_exhaustive} random (seed {args.seed})", file=fh)
        print(f"P grid: {', '.join(fmt(p) for p in p_grid)}", file=fh)
        print(f"comparisons: {checks}", file=fh)
        print(f"worst |H_engine - H_oracle|: {worst:.3e}", file=fh)
        for g, P, name, side, dev in failures[:10]:
            print(f"mismatch: n_A={g.n_A} n_B={g.n_B} edges={sorted(g.edges)} "
                  f"P={P} method={name} side={side} dev={dev:.3e}", file=fh)
        print(f"{status} (tolerance {TOLERANCE:g})", file=fh)
    print(f"oracle-check finished in {elapsed:.1f} s", file=sys.stderr)
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_repcode(args) -> int:
    try:
        ns = [int(x) for x in args.n.split(",")]
    except ValueError:
        raise InputError(f"bad --n list {args.n!r}") from None
    for n in ns:
        if n < 1 or n % 2 == 0:
            raise InputError(f"repetition code length must be odd, got {n}")
        if args.variant == "all" and n > repcode.MAX_SIMULATED_N:
            raise InputError(f"--variant all simulates n <= {repcode.MAX_SIMULATED_N}")
    if args.p is not None:
        ps = [_parse_probability(x) for x in args.p.split(",")]
    else:
        try:
            ps = list(probability_grid(args.p_start, args.p_end, args.steps))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    print(f"# convention: {repcode.NOISE_CONVENTION}", file=sys.stderr)
    rows = []
    for n, p in itertools.product(ns, ps):
        p = float(p)
        lam = repcode.rep_code_state_bob_noise(n, p).lambda_plus
        if args.variant == "bob-only":
            ci = repcode.ci_bell(repcode.BellDiagonalState(lam, 1 - lam))
        else:
            ci = repcode.rep_code_ci_all_noise(n, p, decoder=args.decoder)
        rows.append([fmt(n), fmt(p), fmt(lam), fmt(ci)])
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["n", "p", "lambda_plus", "CI"])
        w.writerows(rows)
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def _parse_probability(text) -> float:
    try:
        p = float(text)
    except (TypeError, ValueError):
        raise InputError(f"not a probability: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise InputError(f"probability out of range: {p}")
    return p


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph")
    g.add_argument("--graph", metavar="FILE", help="graph file ('nA nB' then 'u v' per line)")
    g.add_argument("--family", choices=FAMILIES, help="named graph family")
    for name in ("nA", "nB", "n1", "n2", "n3", "n1B", "n2B"):
        g.add_argument(f"--{name}", type=int, help=f"family parameter {name}")


def _add_engine_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", choices=("auto", "general", "closedform", "oracle"), default="auto")
    p.add_argument("--side", choices=("a", "b", "both"), default="both")
    p.add_argument("--max-nu", type=int, default=DEFAULT_MAX_NU)
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    p.add_argument("--jobs", type=int, default=None, help="worker threads (-1: all cores)")
    p.add_argument("--out", metavar="FILE", help="write data here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphci",
        description="Coherent information of dephased graph states across a bipartition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="entropies and coherent information at one P")
    _add_graph_args(p)
    _add_engine_args(p)
    p.add_argument("--p", required=True, help="probability a qubit stays in |+>")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="CSV over an evenly spaced P grid")
    _add_graph_args(p)
    _add_engine_args(p)
    p.add_argument("--p-start", type=float, default=0.0)
    p.add_argument("--p-end", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0, help="unused; accepted for uniformity")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("classify", help="row structure of each side")
    _add_graph_args(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("oracle-check", help="compare the engine with density matrices")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--exhaustive-max", type=int, default=6,
                   help="enumerate every biadjacency matrix up to this many qubits")
    p.add_argument("--p-grid", default="0.1,0.25,0.5,0.75,0.9")
    p.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="extra seeded random graphs above --exhaustive-max")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", type=float, default=0.0, help=argparse.SUPPRESS)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("repcode", help="repetition-code decoding of star graphs")
    p.add_argument("--n", default="1,3,5,7,9", help="comma-separated odd code lengths")
    p.add_argument("--p", help="comma-separated probabilities (overrides the grid)")
    p.add_argument("--p-start", type=float, default=0.5)
    p.add_argument("--p-end", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--variant", choices=("bob-only", "all"), default="bob-only")
    p.add_argument("--decoder", choices=("majority", "gates"), default="majority")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_repcode)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"graphci: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"graphci: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"graphci: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
