"""``dgp`` command line: solve, reduce, verify.

Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from .core import (DGPError, Graph, InvalidPartitionError, InvariantError, PreconditionError,
                   SolveReport, partition_density)
from .cubic import approx_cubic
from .dense import brooks_clique_partition, eptas, solve_min_degree_n3
from .exact import SearchConfig, solve_exact
from .formats import (ParseError, format_graph, format_partition, format_rat, format_report,
                      parse_graph, parse_partition, parse_rat, parse_report, parse_rx3c)
from .reductions import (ReductionArtifact, extract_cut, extract_dominating_set,
                         extract_exact_cover, reduce_ds_to_bipartite, reduce_minuncut_to_dense,
                         reduce_rx3c_to_cubic, triple_instance)

log = logging.getLogger("dgp")

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 2, 3, 4
ALGOS = ("exact", "dense3", "brooks", "cubic43", "eptas", "auto")


def thread_limit() -> int:
    # the search is serial; the variable is validated so scripts fail loudly
    raw = os.environ.get("DGP_THREADS", "")
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"DGP_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise PreconditionError(f"DGP_THREADS must be a positive integer, got {raw!r}")
    return value


def pick_algorithm(g: Graph, max_n: int) -> str:
    if g.n and g.min_degree >= g.n - 3:
        return "dense3"
    if g.n and g.is_cubic():
        return "cubic43"
    if g.n <= max_n:
        return "exact"
    return "brooks"


def run_solver(g: Graph, algo: str, eps=None, t: int = 4, max_n: int = 12) -> SolveReport:
    cfg = SearchConfig(max_n=max_n)
    if algo == "auto":
        algo = pick_algorithm(g, max_n)
    if algo == "exact":
        return solve_exact(g, cfg)
    if algo == "dense3":
        return solve_min_degree_n3(g)
    if algo == "brooks":
        return brooks_clique_partition(g)
    if algo == "cubic43":
        return approx_cubic(g)
    if algo == "eptas":
        return eptas(g, eps, t, cfg)
    raise DGPError(f"unknown algorithm {algo!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    threads = thread_limit()
    g = parse_graph(_read(args.input))
    eps = parse_rat(args.eps)
    start = time.perf_counter()
    rep = run_solver(g, args.algo, eps=eps, t=args.t, max_n=args.max_n)
    wall = time.perf_counter() - start
    rep.verify(g)
    extra = {"threads": threads}
    if args.seed is not None:
        extra["seed"] = args.seed
    _emit(format_report(rep, g, wall, extra), args.out)
    if args.partition_out:
        Path(args.partition_out).write_text(format_partition(rep.partition))
    return EXIT_OK


def cmd_reduce(args) -> int:
    text = _read(args.input)
    if args.source == "rx3c":
        art = reduce_rx3c_to_cubic(parse_rx3c(text))
    else:
        if args.k is None:
            raise PreconditionError(f"{args.source} reduction needs --k")
        g = parse_graph(text)
        if args.source == "ds":
            art = reduce_ds_to_bipartite(g, args.k, intermediate=args.intermediate)
        else:
            g, k = triple_instance(g, args.k)
            art = reduce_minuncut_to_dense(g, k)
    prefix = args.out or Path(args.input).with_suffix("").as_posix() + f".{args.source}"
    Path(prefix + ".dgp").write_text(format_graph(art.graph))
    Path(prefix + ".meta.json").write_text(art.dumps())
    sys.stdout.write(f"graph: {prefix}.dgp\nmeta: {prefix}.meta.json\n"
                     f"n: {art.graph.n}\nm: {art.graph.m}\ntarget: {format_rat(art.target)}\n")
    return EXIT_OK


_EXTRACTORS = {"rx3c": extract_exact_cover, "ds": extract_dominating_set, "minuncut": extract_cut}


def _witness_text(w) -> str:
    if w is None:
        return "none"
    if hasattr(w, "A"):
        return f"A={sorted(w.A)} B={sorted(w.B)} uncut={w.uncut}"
    return " ".join(map(str, w))


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    text = _read(args.partition)
    claimed = None
    if text.lstrip().startswith("algorithm:"):
        rep_in = parse_report(text)
        part, claimed = rep_in["partition"], rep_in["density"]
    else:
        part = parse_partition(text)
    dens = partition_density(g, part)
    extra: dict = {}
    if claimed is not None:
        extra["claimed"] = format_rat(claimed)
        extra["matches_claim"] = str(claimed == dens).lower()
    if args.meta:
        art = ReductionArtifact.from_metadata(g, json.loads(_read(args.meta)))
        extra["target"] = format_rat(art.target)
        extra["meets_target"] = str(dens >= art.target).lower()
        extra["witness"] = _witness_text(_EXTRACTORS[art.kind](art, part))
    rep = SolveReport(part, dens, "verify")
    _emit(format_report(rep, g, None, extra), args.out)
    if claimed is not None and claimed != dens:
        log.error("claimed density %s but blocks give %s", claimed, dens)
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dgp", description="Max Dense Graph Partition tools")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve or approximate a graph file")
    p.add_argument("input")
    p.add_argument("--algo", choices=ALGOS, default="auto")
    p.add_argument("--eps", default="1/2", help="eptas accuracy as num/den")
    p.add_argument("--t", type=int, default=4, help="eptas degree slack: min degree >= n-t")
    p.add_argument("--seed", type=int, default=None, help="recorded in the report")
    p.add_argument("--max-n", type=int, default=12, help="largest n for exact search")
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--partition-out", help="also write the partition file here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="build a reduction instance")
    p.add_argument("source", choices=("rx3c", "ds", "minuncut"))
    p.add_argument("input")
    p.add_argument("--k", type=int)
    p.add_argument("--intermediate", action="store_true", help="ds: emit G' instead of G''")
    p.add_argument("--out", help="output prefix; writes <prefix>.dgp and <prefix>.meta.json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="recompute a partition's density")
    p.add_argument("graph")
    p.add_argument("partition", help="partition file or solve report")
    p.add_argument("--meta", help="reduction metadata; enables witness extraction")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="dgp: %(message)s")
    try:
        return args.func(args)
    except (ParseError, InvalidPartitionError) as exc:
        print(f"dgp: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DGPError as exc:
        print(f"dgp: precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvariantError as exc:
        print(f"dgp: internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
