"""Text formats: graphs, partitions, RX3C instances and solve reports.

Graph files are DIMACS-like::

    # comment
    p dgp <n> <m>
    e <u> <v>

with 0-based ids. Partition files hold one block per line, ids separated by
spaces. Rationals are always written as ``num/den``.
"""

from __future__ import annotations

from fractions import Fraction

from .core import DGPError, Graph, Partition, Rat, SolveReport


class ParseError(DGPError):
    pass


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {no}: expected an integer, got {tok!r}") from None


def parse_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for no, tok in _lines(text):
        if tok[0] == "p":
            if n is not None:
                raise ParseError(f"line {no}: second header")
            if len(tok) != 4 or tok[1] != "dgp":
                raise ParseError(f"line {no}: header must be 'p dgp <n> <m>'")
            n, m = _int(tok[2], no), _int(tok[3], no)
            if n < 0 or m < 0:
                raise ParseError(f"line {no}: negative size")
        elif tok[0] == "e":
            if n is None:
                raise ParseError(f"line {no}: edge before header")
            if len(tok) != 3:
                raise ParseError(f"line {no}: edge must be 'e <u> <v>'")
            u, v = _int(tok[1], no), _int(tok[2], no)
            if u == v:
                raise ParseError(f"line {no}: self-loop on {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"line {no}: vertex out of range 0..{n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"line {no}: duplicate edge {key}")
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(f"line {no}: unknown record {tok[0]!r}")
    if n is None:
        raise ParseError("missing 'p dgp' header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    out = [f"p dgp {g.n} {g.m}"]
    out += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def parse_partition(text: str) -> Partition:
    blocks = []
    for no, tok in _lines(text):
        blocks.append([_int(t, no) for t in tok])
    return Partition(blocks)


def format_partition(p: Partition) -> str:
    return "".join(" ".join(map(str, b)) + "\n" for b in p)


def parse_rx3c(text: str):
    """``p rx3c <q>`` then one ``s a b c`` line per set."""
    from .reductions import Rx3cInstance
    q = None
    sets = []
    for no, tok in _lines(text):
        if tok[0] == "p" and len(tok) == 3 and tok[1] == "rx3c":
            q = _int(tok[2], no)
        elif tok[0] == "s" and len(tok) == 4:
            sets.append(tuple(_int(t, no) for t in tok[1:]))
        else:
            raise ParseError(f"line {no}: expected 'p rx3c <q>' or 's <a> <b> <c>'")
    if q is None:
        raise ParseError("missing 'p rx3c' header")
    return Rx3cInstance(q, tuple(sets))


def format_rx3c(inst) -> str:
    return f"p rx3c {inst.q}\n" + "".join(f"s {a} {b} {c}\n" for a, b, c in inst.sets)


def parse_rat(text: str) -> Rat:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {text!r}") from None


def format_rat(x: Rat) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_report(rep: SolveReport, g: Graph, wall_time: float | None = None,
                  extra: dict | None = None) -> str:
    lines = [f"algorithm: {rep.algorithm}", f"n: {g.n}", f"m: {g.m}",
             f"density: {format_rat(rep.density)}",
             f"density_decimal: {float(rep.density):.10f}",
             "blocks: " + " | ".join(" ".join(map(str, b)) for b in rep.partition),
             f"optimal: {str(rep.optimal).lower()}"]
    if rep.upper_bound is not None:
        lines.append(f"upper_bound: {format_rat(rep.upper_bound)}")
    if wall_time is not None:
        lines.append(f"wall_time: {wall_time:.6f}")
    for key, val in sorted({**rep.info, **(extra or {})}.items()):
        if isinstance(val, Fraction):
            val = format_rat(val)
        elif isinstance(val, bool):
            val = str(val).lower()
        lines.append(f"info.{key}: {val}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    out = {}
    for no, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.startswith("#"):
            continue
        if ":" not in raw:
            raise ParseError(f"line {no}: expected 'key: value'")
        key, val = raw.split(":", 1)
        out[key.strip()] = val.strip()
    for key in ("algorithm", "density", "blocks"):
        if key not in out:
            raise ParseError(f"report is missing {key!r}")
    out["density"] = parse_rat(out["density"])
    out["partition"] = Partition([int(t) for t in b.split()] for b in out["blocks"].split("|"))
    return out
