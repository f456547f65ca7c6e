"""Solvers for graphs whose complement has small maximum degree.

``H`` below always denotes the complement of the input graph ``G``: its
edges are exactly the missing edges of ``G``. A proper colouring of ``H``
partitions ``G`` into cliques.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import (DGPError, Graph, InvariantError, Partition, PreconditionError, Rat,
                   SolveReport, complement, connected_components, is_clique,
                   partition_density)
from .exact import SearchConfig, solve_exact

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComplementStats:
    q: int
    o: int
    p_o: int
    d_n1: int
    n1: int
    n2: int
    paths: tuple[tuple[int, ...], ...] = ()
    cycles: tuple[tuple[int, ...], ...] = ()
    isolated: tuple[int, ...] = ()


def _check_min_degree(g: Graph, t: int) -> None:
    for v in range(g.n):
        if g.degree(v) < g.n - t:
            raise PreconditionError(
                f"degree condition violated: vertex {v} has degree {g.degree(v)} "
                f"< n-{t} = {g.n - t}")


def _walk(h: Graph, comp: list[int]) -> tuple[tuple[int, ...], bool]:
    """Order the vertices of a path or cycle component; report whether it is a cycle."""
    ends = [v for v in comp if h.degree(v) <= 1]
    start = ends[0] if ends else comp[0]
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in h.adj[cur] if w != prev and w != start]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return tuple(order), not ends


def analyze_complement(g: Graph) -> ComplementStats:
    """Decompose the missing-edge graph of ``g`` (requires min degree >= n-3)."""
    _check_min_degree(g, 3)
    h = complement(g)
    paths, cycles, isolated = [], [], []
    for comp in connected_components(h):
        if len(comp) == 1:
            isolated.append(comp[0])
            continue
        order, is_cycle = _walk(h, comp)
        if len(order) != len(comp):
            raise InvariantError("complement component is not a path or cycle")
        (cycles if is_cycle else paths).append(order)
    n = g.n
    o = sum(1 for c in cycles if len(c) % 2)
    p_o = sum(1 for p in paths if len(p) % 2)
    d = len(isolated)
    return ComplementStats(q=h.m, o=o, p_o=p_o, d_n1=d,
                           n1=(n - d - p_o - o) // 2, n2=(n + d + p_o + o) // 2,
                           paths=tuple(paths), cycles=tuple(cycles), isolated=tuple(isolated))


def two_part_coloring(stats: ComplementStats, n: int) -> list[int]:
    """Colour 1/2 per vertex: odd paths and cycles start (and odd paths end) on 2."""
    color = [2] * n
    for seq in stats.paths + stats.cycles:
        first = 2 if len(seq) % 2 else 1
        other = 3 - first
        for i, v in enumerate(seq):
            color[v] = first if i % 2 == 0 else other
    return color


def solve_min_degree_n3(g: Graph) -> SolveReport:
    """Optimal partition when every vertex misses at most two others."""
    if g.n == 0:
        raise DGPError("empty graph")
    stats = analyze_complement(g)
    n = g.n
    whole = Partition.whole(n)
    whole_density = Fraction(n - 1, 2) - Fraction(stats.q, n)
    color = two_part_coloring(stats, n)
    v1 = [v for v in range(n) if color[v] == 1]
    v2 = [v for v in range(n) if color[v] == 2]
    info = {"q": stats.q, "o": stats.o, "p_o": stats.p_o, "d_n1": stats.d_n1,
            "n1": stats.n1, "n2": stats.n2}
    if not v1:
        return SolveReport(whole, whole_density, "dense3", optimal=True,
                           info=info | {"parts": 1})
    split = Partition([v1, v2])
    split_density = Fraction(n - 2, 2) - Fraction(stats.o, stats.n2)
    if len(v2) != stats.n2 or partition_density(g, split) != split_density:
        raise InvariantError("two-part colouring does not match its closed form")
    if split_density > whole_density:
        return SolveReport(split, split_density, "dense3", optimal=True,
                           info=info | {"parts": 2})
    return SolveReport(whole, whole_density, "dense3", optimal=True, info=info | {"parts": 1})


# ------------------------------------------------------------ Brooks colouring

def _greedy_in_order(h: Graph, order: list[int], color: dict[int, int]) -> None:
    for v in order:
        used = {color[w] for w in h.adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c


def _bfs_order(h: Graph, root: int, allowed: set[int]) -> list[int]:
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in h.adj[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def _articulation_point(h: Graph, comp: list[int]) -> int | None:
    allowed = set(comp)
    for x in comp:
        rest = allowed - {x}
        if rest and len(connected_components(h, rest)) > 1:
            return x
    return None


def _color_rooted(h: Graph, verts: set[int], root: int) -> dict[int, int]:
    """Greedy colouring farthest-first from ``root``; every vertex but the root
    still has its BFS parent uncoloured when its turn comes."""
    order = _bfs_order(h, root, verts)
    color: dict[int, int] = {}
    _greedy_in_order(h, order[::-1], color)
    return color


def _color_component(h: Graph, comp: list[int]) -> dict[int, int]:
    verts = set(comp)
    size = len(comp)
    deg = {v: sum(1 for w in h.adj[v] if w in verts) for v in comp}
    top = max(deg.values())
    if size * (size - 1) // 2 == sum(deg.values()) // 2:
        return {v: i for i, v in enumerate(comp)}
    if top <= 2:
        order, is_cycle = _walk(h, comp)
        color = {v: i % 2 for i, v in enumerate(order)}
        if is_cycle and size % 2:
            color[order[-1]] = 2
        return color
    low = [v for v in comp if deg[v] < top]
    if low:
        return _color_rooted(h, verts, low[0])
    for v in comp:
        nb = [w for w in h.adj[v] if w in verts]
        for i, u in enumerate(nb):
            for w in nb[i + 1:]:
                if h.has_edge(u, w):
                    continue
                rest = verts - {u, w}
                if len(connected_components(h, rest)) != 1:
                    continue
                color = {u: 0, w: 0}
                order = _bfs_order(h, v, rest)
                _greedy_in_order(h, order[::-1], color)
                return color
    x = _articulation_point(h, comp)
    if x is None:
        raise InvariantError("regular 2-connected component without a Brooks triple")
    color = {x: 0}
    for piece in connected_components(h, verts - {x}):
        sub = _color_rooted(h, set(piece) | {x}, x)
        swap = sub[x]
        for v in piece:
            c = sub[v]
            color[v] = 0 if c == swap else (swap if c == 0 else c)
    return color


def brooks_coloring(h: Graph) -> list[int]:
    """Proper colouring of ``h`` using at most ``Δ_C`` colours on every
    component ``C`` that is neither complete nor an odd cycle, ``Δ_C + 1`` on
    those. Colours are reused across components."""
    color = [-1] * h.n
    for comp in connected_components(h):
        local = _color_component(h, comp)
        top = max(sum(1 for w in h.adj[v] if w in local) for v in comp)
        limit = max(local.values()) + 1
        odd_cycle = top == 2 and len(comp) % 2 == 1 and all(h.degree(v) == 2 for v in comp)
        complete = len(comp) * (len(comp) - 1) == sum(h.degree(v) for v in comp)
        allowed = top + 1 if (complete or odd_cycle) else max(top, 1)
        if limit > allowed:
            raise InvariantError(f"component coloured with {limit} > {allowed} colours")
        for v, c in local.items():
            color[v] = c
    for u, v in h.edges():
        if color[u] == color[v]:
            raise InvariantError(f"colouring conflict on edge ({u}, {v})")
    return color


def brooks_clique_partition(g: Graph) -> SolveReport:
    """Partition ``g`` into cliques via a Brooks colouring of its complement."""
    if g.n == 0:
        raise DGPError("empty graph")
    h = complement(g)
    color = brooks_coloring(h)
    k = max(color) + 1
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(color):
        classes.setdefault(c, []).append(v)
    part = Partition(classes.values())
    for b in part:
        if not is_clique(g, b):
            raise InvariantError(f"colour class {b} is not a clique")
    dens = Fraction(g.n - k, 2)
    return SolveReport(part, dens, "brooks", upper_bound=Fraction(g.n - 1, 2), optimal=False,
                       info={"colors": k, "delta_complement": h.max_degree})


def eptas(g: Graph, eps: Rat, t: int, cfg: SearchConfig | None = None) -> SolveReport:
    """(1+eps)-approximation on graphs with minimum degree at least ``n - t``.

    Large instances get the clique partition from colouring the complement;
    small ones are solved exactly. When the complement has a ``K_t``
    component the colouring needs ``t`` colours, so the size threshold is
    re-checked against the colours actually used before trusting it.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise DGPError("eps must be positive")
    if t < 4:
        raise DGPError("t must be at least 4")
    if g.n == 0:
        raise DGPError("empty graph")
    _check_min_degree(g, t)
    n = g.n
    threshold = (t - 1) + Fraction(t - 2) / eps
    info = {"threshold": threshold, "t": t, "eps": eps}
    if n >= threshold:
        rep = brooks_clique_partition(g)
        colors = rep.info["colors"]
        if colors <= t - 1 or n >= colors + Fraction(colors - 1) / eps:
            rep.algorithm = "eptas"
            rep.info |= info | {"branch": "coloring"}
            return rep
        log.info("complement needs %d colours; falling back to exact search", colors)
        branch = "exact-fallback"
    else:
        branch = "exact"
    rep = solve_exact(g, cfg or SearchConfig())
    rep.algorithm = "eptas"
    rep.info |= info | {"branch": branch}
    return rep
