"""Exact Max Dense Graph Partition by branch and bound.

The search builds one block at a time, always the block holding the
smallest unassigned vertex. With ``prune_connected`` only connected blocks
are tried (splitting a disconnected block never lowers the density). With
``prune_bound`` a node is dropped when an upper bound on what the remaining
vertices can contribute cannot reach the incumbent. Three bounds are used:

* the per-vertex utility cap: a vertex's share ``d(B)/|B|`` of its block is
  at most the best ``|E(S)|/|S|^2`` over connected sets ``S`` containing it;
* ``(r - 1)/2`` for ``r`` remaining vertices;
* ``max(d(R), (r - 2)/2)``: one block, or at least two blocks of cliques.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import _kernel
from .core import (DGPError, Graph, Partition, PreconditionError, Rat, SolveReport,
                   block_density, connected_components)


@dataclass(frozen=True)
class SearchConfig:
    max_n: int = 12
    prune_connected: bool = True
    prune_bound: bool = True

    def __post_init__(self):
        if self.max_n < 1:
            raise DGPError("max_n must be at least 1")


def enumerate_rgs(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every restricted growth string of length ``n`` in lexicographic order."""
    if n <= 0:
        if n == 0:
            yield ()
        return
    a = [0] * n
    mx = [0] * n  # mx[i] = max(a[0..i])
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] > mx[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        mx[i] = max(mx[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            mx[j] = mx[i]


def enumerate_partitions(n: int) -> Iterator[Partition]:
    if n > 12:
        raise PreconditionError("partition enumeration limited to n <= 12")
    for labels in enumerate_rgs(n):
        yield Partition.from_labels(labels)


def _max_edges_bound(degrees: list[int], s: int) -> int:
    top = sorted(degrees, reverse=True)[:s]
    return min(s * (s - 1) // 2, sum(min(d, s - 1) for d in top) // 2)


def size_caps(g: Graph) -> list[Rat]:
    """``caps[b]`` bounds ``|E(S)|/|S|^2`` over all sets with ``|S| >= b``.

    Non-increasing in ``b``; ``caps[0] == caps[1]``.
    """
    n = g.n
    degs = g.degrees
    raw = [Fraction(0)] * (n + 2)
    for s in range(1, n + 1):
        raw[s] = Fraction(_max_edges_bound(degs, s), s * s)
    caps = [Fraction(0)] * (n + 2)
    running = Fraction(0)
    for s in range(n, 0, -1):
        running = max(running, raw[s])
        caps[s] = running
    caps[0] = caps[1]
    return caps[: n + 1]


def utility_caps(g: Graph, backend: str | None = None) -> list[Rat]:
    """Best utility each vertex can get in any connected block containing it."""
    caps = size_caps(g)
    pairs = _kernel.utility_maxima(g.n, g.masks, [c.numerator for c in caps],
                                   [c.denominator for c in caps], backend=backend)
    return [Fraction(e, s * s) for e, s in pairs]


def _ceil_scaled(q: Fraction, scale: int) -> int:
    return -((-q.numerator * scale) // q.denominator)


def local_search_partition(g: Graph) -> Partition:
    """Cheap heuristic: single-vertex moves to improve density, from two starts.

    Blocks of the result are connected.
    """
    best = None
    for start in (connected_components(g), [[v] for v in range(g.n)]):
        p = _improve(g, start)
        d = sum((block_density(g, b) for b in p), Fraction(0))
        if best is None or d > best[0]:
            best = (d, p)
    blocks = []
    for b in best[1]:
        blocks.extend(connected_components(g, b))
    return Partition(blocks)


def _improve(g: Graph, blocks: list[list[int]]) -> list[list[int]]:
    label = {}
    members: dict[int, set[int]] = {}
    edges: dict[int, int] = {}
    for i, b in enumerate(blocks):
        members[i] = set(b)
        edges[i] = g.induced_edge_count(b)
        for v in b:
            label[v] = i
    fresh = len(blocks)

    def dens(e, s):
        return Fraction(e, s) if s else Fraction(0)

    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            src = label[v]
            s_src = len(members[src])
            links = {}
            for w in g.adj[v]:
                links[label[w]] = links.get(label[w], 0) + 1
            k_src = links.get(src, 0)
            base = dens(edges[src], s_src)
            after_src = dens(edges[src] - k_src, s_src - 1)
            best_gain, target = Fraction(0), None
            for dst, k in links.items():
                if dst == src:
                    continue
                s_dst = len(members[dst])
                gain = (after_src - base) + dens(edges[dst] + k, s_dst + 1) - dens(edges[dst], s_dst)
                if gain > best_gain:
                    best_gain, target = gain, dst
            if s_src > 1 and after_src - base > best_gain:
                best_gain, target = after_src - base, -1
            if target is None:
                continue
            if target == -1:
                target = fresh
                fresh += 1
                members[target] = set()
                edges[target] = 0
                k = 0
            else:
                k = links[target]
            members[src].discard(v)
            edges[src] -= k_src
            if not members[src]:
                del members[src]
                del edges[src]
            members[target].add(v)
            edges[target] += k
            label[v] = target
            improved = True
    return [sorted(m) for m in members.values()]


def solve_exact(g: Graph, cfg: SearchConfig | None = None, backend: str | None = None) -> SolveReport:
    """Maximum-density partition of ``g``.

    Among optimal partitions the one with fewest blocks is returned, ties
    broken by the smallest restricted growth string. With connectivity
    pruning on, only partitions into connected blocks are compared.
    """
    cfg = cfg or SearchConfig()
    if g.n == 0:
        raise DGPError("empty graph")
    if g.n > cfg.max_n:
        raise PreconditionError(
            f"instance too large for exact search: n={g.n} > max_n={cfg.max_n}")
    n = g.n
    scale = math.lcm(*range(1, n + 1))
    if scale % 2:
        scale *= 2
    if cfg.prune_bound:
        ucap = [_ceil_scaled(u, scale) for u in utility_caps(g, backend)]
        gcap = [_ceil_scaled(c, scale) for c in size_caps(g)]
    else:
        ucap = [0] * n
        gcap = [0] * (n + 1)
    seed = local_search_partition(g)
    seed_value = sum(g.induced_edge_count(b) * (scale // len(b)) for b in seed)
    value, labels = _kernel.best_partition(
        n, g.masks, scale, ucap, gcap, cfg.prune_connected, cfg.prune_bound,
        seed_value, list(seed.rgs()), backend=backend)
    part = Partition.from_labels(labels)
    dens = Fraction(value, scale)
    report = SolveReport(part, dens, "exact", upper_bound=dens, optimal=True,
                         info={"backend": backend or _kernel.BACKEND})
    report.verify(g)
    return report
