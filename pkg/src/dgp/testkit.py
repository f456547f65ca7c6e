"""Brute-force oracles and seeded graph generators for the test suites.

The oracles here deliberately share no search code with the solvers they
check: partitions are enumerated by inserting vertices one at a time into
existing blocks, and densities are recomputed from raw edge lists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import DGPError, Graph, Partition, PreconditionError, Rat, complement


@dataclass(frozen=True)
class Seeded:
    seed: int

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _rng(seed) -> random.Random:
    if isinstance(seed, Seeded):
        return seed.rng()
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


# ---------------------------------------------------------------- oracles

def _all_set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _all_set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
        yield [[first]] + sub


def oracle_best_partition(g: Graph) -> tuple[Partition, Rat]:
    """Exhaustive optimum, no pruning. Ties go to the first partition found."""
    if g.n > 10:
        raise PreconditionError("oracle_best_partition limited to n <= 10")
    if g.n == 0:
        raise DGPError("empty graph")
    edge_list = list(g.edges())
    best_val, best_blocks = None, None
    for blocks in _all_set_partitions(list(range(g.n))):
        where = {}
        for i, b in enumerate(blocks):
            for v in b:
                where[v] = i
        inside = [0] * len(blocks)
        for u, v in edge_list:
            if where[u] == where[v]:
                inside[where[u]] += 1
        val = sum(Fraction(inside[i], len(b)) for i, b in enumerate(blocks))
        if best_val is None or val > best_val:
            best_val, best_blocks = val, blocks
    return Partition(best_blocks), best_val


def oracle_max_matching(g: Graph) -> int:
    if g.n > 16:
        raise PreconditionError("oracle_max_matching limited to n <= 16")

    def best(free: frozenset) -> int:
        if not free:
            return 0
        v = min(free)
        rest = free - {v}
        top = best(rest)
        for w in g.adj[v]:
            if w in rest:
                top = max(top, 1 + best(rest - {w}))
        return top

    return best(frozenset(range(g.n)))


def oracle_min_dominating_set(g: Graph) -> int:
    if g.n > 16:
        raise PreconditionError("oracle_min_dominating_set limited to n <= 16")
    closed = [set(g.adj[v]) | {v} for v in range(g.n)]
    everything = set(range(g.n))
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            covered = set()
            for v in combo:
                covered |= closed[v]
            if covered == everything:
                return k
    return g.n


def oracle_exact_cover(inst) -> bool:
    """Whether ``inst.sets`` contains an exact cover of ``0..3q-1``."""
    universe = 3 * inst.q
    if universe > 48:
        raise PreconditionError("oracle_exact_cover limited to |X| <= 48")
    sets = [frozenset(s) for s in inst.sets]

    def search(uncovered: frozenset) -> bool:
        if not uncovered:
            return True
        x = min(uncovered)
        return any(x in s and s <= uncovered and search(uncovered - s) for s in sets)

    return search(frozenset(range(universe)))


def oracle_max_cut(g: Graph) -> int:
    if g.n > 16:
        raise PreconditionError("oracle_max_cut limited to n <= 16")
    if g.n == 0:
        return 0
    edge_list = list(g.edges())
    best = 0
    for bits in range(1 << (g.n - 1)):
        cut = sum(1 for u, v in edge_list if ((bits >> u) ^ (bits >> v)) & 1)
        best = max(best, cut)
    return best


def oracle_utility_scan(g: Graph, groups=()) -> dict:
    """Scan every partition and record the largest vertex utilities seen.

    Returns ``vertex`` (max utility of any vertex), ``other`` (max utility
    inside a block that is not a triangle, a diamond or a 5-vertex block
    with 7 edges) and ``groups`` (for each given vertex group, the max of
    the summed utilities of its members).
    """
    if g.n > 10:
        raise PreconditionError("oracle_utility_scan limited to n <= 10")
    special = {(3, 3), (4, 5), (5, 7)}
    edge_list = list(g.edges())
    groups = [tuple(x) for x in groups]
    top = Fraction(0)
    other = Fraction(0)
    group_top = [Fraction(0)] * len(groups)
    for blocks in _all_set_partitions(list(range(g.n))):
        where = {}
        for i, b in enumerate(blocks):
            for v in b:
                where[v] = i
        inside = [0] * len(blocks)
        for u, v in edge_list:
            if where[u] == where[v]:
                inside[where[u]] += 1
        util = [Fraction(inside[i], len(b) ** 2) for i, b in enumerate(blocks)]
        top = max(top, max(util))
        for i, b in enumerate(blocks):
            if (len(b), inside[i]) not in special:
                other = max(other, util[i])
        for j, grp in enumerate(groups):
            group_top[j] = max(group_top[j], sum(util[where[v]] for v in grp))
    return {"vertex": top, "other": other, "groups": group_top}


def is_dominating_set(g: Graph, vertices) -> bool:
    covered = set()
    for v in vertices:
        covered.add(v)
        covered.update(g.adj[v])
    return covered == set(range(g.n))


# ------------------------------------------------------------- generators

def gen_random_graph(n: int, p: float, seed) -> Graph:
    rng = _rng(seed)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def gen_random_cubic(n: int, seed, max_tries: int = 10_000) -> Graph:
    """Uniform-ish simple cubic graph by the pairing model with rejection."""
    if n < 4 or n % 2:
        raise DGPError("random cubic graph needs even n >= 4")
    rng = _rng(seed)
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        pairs = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in pairs:
                ok = False
                break
            pairs.add(e)
        if ok:
            return Graph(n, pairs)
    raise DGPError(f"pairing model failed {max_tries} times for n={n}")


def gen_random_max_degree(n: int, max_deg: int, seed, density: float = 0.7) -> Graph:
    """Random graph with maximum degree at most ``max_deg``."""
    rng = _rng(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < max_deg and deg[v] < max_deg and rng.random() < density:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def gen_paths_and_cycles(n: int, seed) -> Graph:
    """Random disjoint union of paths, cycles and isolated vertices on ``n`` vertices."""
    rng = _rng(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = []
    i = 0
    while i < n:
        size = rng.randint(1, min(n - i, 7))
        seg = order[i:i + size]
        edges.extend(zip(seg, seg[1:]))
        if size >= 3 and rng.random() < 0.5:
            edges.append((seg[-1], seg[0]))
        i += size
    return Graph(n, edges)


def gen_min_degree_n3(n: int, seed) -> Graph:
    """Graph with minimum degree at least ``n - 3``: complement of paths and cycles."""
    if n < 3:
        raise DGPError("gen_min_degree_n3 needs n >= 3")
    return complement(gen_paths_and_cycles(n, seed))


def gen_min_degree(n: int, t: int, seed, density: float = 0.7) -> Graph:
    """Graph with minimum degree at least ``n - t``."""
    return complement(gen_random_max_degree(n, t - 1, seed, density))


def gen_regular(n: int, d: int, seed, max_tries: int = 10_000) -> Graph:
    """Random simple ``d``-regular graph by pairing, only joining legal point pairs."""
    if n * d % 2 or d >= n or d < 0:
        raise DGPError(f"no {d}-regular graph on {n} vertices")
    rng = _rng(seed)
    if 2 * d > n - 1:
        return complement(gen_regular(n, n - 1 - d, rng, max_tries))
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(d)]
        pairs: set = set()
        while points:
            legal = [(i, j) for i in range(len(points)) for j in range(i + 1, len(points))
                     if points[i] != points[j]
                     and (min(points[i], points[j]), max(points[i], points[j])) not in pairs]
            if not legal:
                break
            i, j = rng.choice(legal)
            u, v = points[i], points[j]
            pairs.add((min(u, v), max(u, v)))
            del points[j], points[i]
        if not points:
            return Graph(n, pairs)
    raise DGPError(f"pairing model failed for {d}-regular n={n}")


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    """``G_{a,b}`` with side A = ``0..a-1`` and side B = ``a..a+b-1``."""
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def prism() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def diamond() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def complement_of(n: int, missing) -> Graph:
    """``K_n`` minus the given edges."""
    return complement(Graph(n, missing))


_NAMED = {
    "petersen": petersen,
    "prism": prism,
    "k33": lambda: complete_bipartite(3, 3),
    "diamond": diamond,
    "k6-minus-c5": lambda: complement_of(6, [(i, (i + 1) % 5) for i in range(5)]),
    "k6-minus-pm": lambda: complement_of(6, [(0, 1), (2, 3), (4, 5)]),
    "k5-minus-2k2": lambda: complement_of(5, [(0, 1), (2, 3)]),
    "cube": lambda: Graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3)
                               if u < u ^ (1 << b)]),
}


def gen_named(name: str) -> Graph:
    """Named graphs: petersen, prism, k33, diamond, cube, k<n>, c<n>, p<n>, k<a>,<b>, ..."""
    key = name.lower()
    if key in _NAMED:
        return _NAMED[key]()
    if key.startswith("k") and "," in key:
        a, b = key[1:].split(",")
        return complete_bipartite(int(a), int(b))
    if key[0] in "kcp" and key[1:].isdigit():
        size = int(key[1:])
        return {"k": complete_graph, "c": cycle_graph, "p": path_graph}[key[0]](size)
    raise DGPError(f"unknown named graph {name!r}")


NAMED_GRAPHS = ["petersen", "prism", "k33", "k4", "c5", "diamond", "cube", "k6-minus-c5",
                "k6-minus-pm", "k5-minus-2k2", "p4", "k2,3", "c6"]
