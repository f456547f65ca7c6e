"""Hardness constructions as executable builders with witness extraction.

Three sources are supported:

* RX3C (exact cover by 3-sets, each element in exactly three sets) maps to a
  cubic graph whose optimum reaches ``7|X|/6`` iff an exact cover exists.
* Dominating Set maps to a bipartite graph ``G'`` and its densified version
  ``G''``; both reach their targets iff a dominating set of size ``k`` exists.
* Min UnCut on cubic graphs maps to an ``(n^2-4)``-regular graph.

Every extractor validates the recovered witness against the source instance
and raises :class:`InvariantError` if a partition meets the target but the
witness is wrong.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

from .core import (DGPError, Graph, InvariantError, Partition, PreconditionError, Rat,
                   complement, disjoint_union, is_connected, partition_density)


@dataclass(frozen=True)
class Rx3cInstance:
    q: int
    sets: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        sets = tuple(tuple(sorted(int(x) for x in s)) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if self.q < 1:
            raise DGPError("malformed RX3C instance: q must be positive")
        universe = 3 * self.q
        if len(sets) != universe:
            raise DGPError(f"malformed RX3C instance: {len(sets)} sets, expected {universe}")
        count = [0] * universe
        for s in sets:
            if len(s) != 3 or len(set(s)) != 3:
                raise DGPError(f"malformed RX3C instance: {s} is not a 3-set")
            for x in s:
                if not 0 <= x < universe:
                    raise DGPError(f"malformed RX3C instance: element {x} out of range")
                count[x] += 1
        bad = [x for x in range(universe) if count[x] != 3]
        if bad:
            raise DGPError(f"malformed RX3C instance: element {bad[0]} occurs {count[bad[0]]} times")

    def is_exact_cover(self, ids) -> bool:
        seen = [x for i in ids for x in self.sets[i]]
        return len(seen) == 3 * self.q and set(seen) == set(range(3 * self.q))


def gen_rx3c(q: int, seed, planted: bool = True, max_tries: int = 10_000) -> Rx3cInstance:
    """Random RX3C instance; ``planted`` seeds a hidden exact cover first."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    universe = 3 * q
    for _ in range(max_tries):
        sets = []
        pool = [x for x in range(universe) for _ in range(2 if planted else 3)]
        if planted:
            perm = list(range(universe))
            rng.shuffle(perm)
            sets = [tuple(perm[i:i + 3]) for i in range(0, universe, 3)]
        rng.shuffle(pool)
        triples = [tuple(pool[i:i + 3]) for i in range(0, len(pool), 3)]
        if all(len(set(t)) == 3 for t in triples):
            return Rx3cInstance(q, tuple(sets + triples))
    raise DGPError(f"could not sample an RX3C instance with q={q}")


@dataclass
class CutWitness:
    A: frozenset
    B: frozenset
    uncut: int
    moves: int = 0

    @classmethod
    def of(cls, g: Graph, side_a, moves: int = 0) -> "CutWitness":
        a = frozenset(side_a)
        b = frozenset(range(g.n)) - a
        return cls(a, b, g.induced_edge_count(a) + g.induced_edge_count(b), moves)

    def cut(self, g: Graph) -> int:
        return g.m - self.uncut


@dataclass
class ReductionArtifact:
    kind: str
    graph: Graph
    target: Rat
    vertex_roles: list[str]
    source_map: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def role_ids(self, role: str) -> list[int]:
        return [v for v, r in enumerate(self.vertex_roles) if r == role]

    def metadata(self) -> dict:
        return {"kind": self.kind,
                "target": [self.target.numerator, self.target.denominator],
                "roles": self.vertex_roles,
                "source_map": self.source_map,
                "params": self.params}

    def dumps(self) -> str:
        return json.dumps(self.metadata())

    @classmethod
    def from_metadata(cls, graph: Graph, meta) -> "ReductionArtifact":
        if isinstance(meta, str):
            meta = json.loads(meta)
        num, den = meta["target"]
        smap = [tuple(x) if isinstance(x, list) else x for x in meta["source_map"]]
        return cls(meta["kind"], graph, Fraction(num, den), list(meta["roles"]), smap,
                   dict(meta["params"]))


def _source_graph(art: ReductionArtifact) -> Graph:
    return Graph(art.params["n"], [tuple(e) for e in art.params["edges"]])


# ------------------------------------------------------------------- RX3C

def reduce_rx3c_to_cubic(inst: Rx3cInstance) -> ReductionArtifact:
    """Element ``x`` becomes vertex ``x``; set ``s`` becomes a triangle on
    ``3q + 3s + {0,1,2}``, each corner joined to its element."""
    universe = 3 * inst.q
    roles = ["type1"] * universe + ["type2"] * (3 * len(inst.sets))
    smap: list = list(range(universe))
    edges = []
    for s, triple in enumerate(inst.sets):
        base = universe + 3 * s
        edges += [(base, base + 1), (base, base + 2), (base + 1, base + 2)]
        for pos, x in enumerate(triple):
            edges.append((x, base + pos))
            smap.append((s, x))
    g = Graph(4 * universe, edges)
    if not g.is_cubic():
        raise InvariantError("RX3C image is not cubic")
    return ReductionArtifact("rx3c", g, Fraction(7 * universe, 6), roles, smap,
                             {"q": inst.q, "sets": [list(s) for s in inst.sets]})


def _rx3c_source(art: ReductionArtifact) -> Rx3cInstance:
    return Rx3cInstance(art.params["q"], tuple(tuple(s) for s in art.params["sets"]))


def rx3c_forward_partition(art: ReductionArtifact, cover) -> Partition:
    """Covered sets give three element-corner pairs; the rest stay triangles."""
    inst = _rx3c_source(art)
    if not inst.is_exact_cover(cover):
        raise DGPError(f"not an exact cover: {sorted(cover)}")
    universe = 3 * inst.q
    chosen = set(cover)
    blocks = []
    for s, triple in enumerate(inst.sets):
        base = universe + 3 * s
        if s in chosen:
            blocks += [(x, base + pos) for pos, x in enumerate(triple)]
        else:
            blocks.append((base, base + 1, base + 2))
    return Partition(blocks)


def extract_exact_cover(art: ReductionArtifact, p: Partition) -> list[int] | None:
    if partition_density(art.graph, p) < art.target:
        return None
    inst = _rx3c_source(art)
    universe = 3 * inst.q
    blocks = set(p.blocks)
    cover = [s for s in range(len(inst.sets))
             if tuple(range(universe + 3 * s, universe + 3 * s + 3)) not in blocks]
    if not inst.is_exact_cover(cover):
        raise InvariantError(f"partition meets the RX3C target but {cover} is not an exact cover")
    return cover


# ---------------------------------------------------------- Dominating Set

def ds_parameters(n: int, k: int) -> dict:
    c = 1
    while c * (n - k + 1) - 1 <= n:
        c += 1
    big_n = c * (n - k + 1) - 1
    if gcd(big_n, n - k + 1) != 1 or not n < big_n <= 2 * n:
        raise InvariantError(f"bad N={big_n} for n={n}, k={k}")
    v1 = k * (n - k) + n + 1
    v2 = (k + 1) * big_n
    return {"c": c, "N": big_n, "V1": v1, "V2": v2, "pad1": k * n * v1, "pad2": k * n * v2}


def reduce_ds_to_bipartite(g: Graph, k: int, intermediate: bool = False) -> ReductionArtifact:
    """Dominating Set instance ``(g, k)`` to the bipartite graph ``G''``
    (or ``G'`` when ``intermediate``)."""
    n = g.n
    if not 1 <= k or not 2 * k < n:
        raise PreconditionError(f"need 1 <= k < n/2, got k={k}, n={n}")
    if not is_connected(g):
        raise PreconditionError("dominating-set source graph must be connected")
    par = ds_parameters(n, k)
    big_n = par["N"]
    roles: list[str] = []
    smap: list = []

    def add(role, key):
        roles.append(role)
        smap.append(key)
        return len(roles) - 1

    orig = [add("original", i) for i in range(n)]
    w = {(i, j): add("w", (i, j)) for j in range(k) for i in range(n - k)}
    z = add("z", 0)
    copy = [add("copy", i) for i in range(n)]
    x = {(r, j): add("x", (r, j)) for j in range(k) for r in range(1, big_n + 1)}
    zs = [add("z_i", i) for i in range(big_n - n)]
    side1 = orig + list(w.values()) + [z]
    side2 = copy + list(x.values()) + zs
    edges = [(orig[i], copy[i]) for i in range(n)]
    for a, b in g.edges():
        edges += [(orig[a], copy[b]), (orig[b], copy[a])]
    for (i, j), wv in w.items():
        edges += [(wv, x[r, j]) for r in range(1, big_n)]
        edges += [(wv, c) for c in copy]
    edges += [(v, xv) for v in orig for xv in x.values()]
    edges += [(z, t) for t in zs]
    edges += [(z, xv) for (r, _), xv in x.items() if r >= 2]
    edges += [(v, t) for v in orig for t in zs]
    d0 = Fraction((n - k + 1) * big_n, n - k + 1 + big_n)
    target = (k + 1) * d0
    if not intermediate:
        pads = {name: [add(name, i) for i in range(par["pad1" if "V1" in name else "pad2"])]
                for name in ("pad-V1u", "pad-V1d", "pad-V2u", "pad-V2d")}
        edges += [(a, b) for a in pads["pad-V1u"] for b in pads["pad-V2u"]]
        edges += [(a, b) for a in pads["pad-V1d"] for b in pads["pad-V2d"]]
        edges += [(a, b) for a in pads["pad-V1u"] for b in side1]
        edges += [(a, b) for a in pads["pad-V2d"] for b in side2]
        target = (2 * k * n + 1) * target
    h = Graph(len(roles), edges)
    if not intermediate and h.min_degree < par["pad1"]:
        raise InvariantError(f"G'' minimum degree {h.min_degree} below {par['pad1']}")
    params = {"n": n, "k": k, "edges": [list(e) for e in g.edges()],
              "intermediate": intermediate, **par}
    return ReductionArtifact("ds", h, target, roles, smap, params)


def _closed(g: Graph, v: int) -> set[int]:
    return set(g.adj[v]) | {v}


def _private_order(g: Graph, dom: list[int]) -> list[tuple[int, list[int]]] | None:
    """An order of ``dom`` where each vertex newly dominates someone."""
    for perm in permutations(dom):
        covered: set[int] = set()
        out = []
        for v in perm:
            new = sorted(_closed(g, v) - covered)
            if not new:
                break
            covered |= set(new)
            out.append((v, new))
        else:
            return out
    return None


def ds_forward_partition(art: ReductionArtifact, dom) -> Partition:
    """Partition reaching the target from a dominating set of size at most ``k``.
    Small sets are padded with extra vertices; brute force, for test-scale sources."""
    g = _source_graph(art)
    k, n, big_n = art.params["k"], art.params["n"], art.params["N"]
    dom = sorted(set(dom))
    if len(dom) > k or not _is_dominating(g, dom):
        raise DGPError(f"{dom} is not a dominating set of size <= {k}")
    order = None
    for extra in combinations([v for v in range(n) if v not in dom], k - len(dom)):
        order = _private_order(g, dom + list(extra))
        if order is not None:
            break
    if order is None:
        raise PreconditionError("no size-k dominating set with private neighbours extends the input")
    index = {(r, key): v for v, (r, key) in enumerate(zip(art.vertex_roles, art.source_map))}
    taken: set[int] = set()
    blocks = []
    for j, (v, new) in enumerate(order):
        block = [index["original", v]] + [index["copy", u] for u in new]
        block += [index["w", (i, j)] for i in range(n - k)]
        block += [index["x", (r, j)] for r in range(1, big_n - len(new) + 1)]
        blocks.append(block)
        taken.update(block)
    base = [v for v in range(len(art.vertex_roles))
            if v not in taken and not art.vertex_roles[v].startswith("pad")]
    blocks.append(base)
    if not art.params["intermediate"]:
        blocks.append(art.role_ids("pad-V1u") + art.role_ids("pad-V2u"))
        blocks.append(art.role_ids("pad-V1d") + art.role_ids("pad-V2d"))
    return Partition(blocks)


def _is_dominating(g: Graph, vertices) -> bool:
    covered: set[int] = set()
    for v in vertices:
        covered |= _closed(g, v)
    return len(covered) == g.n


def _complete_bipartite_block(h: Graph, block, side1: set[int]) -> bool:
    a = [v for v in block if v in side1]
    b = [v for v in block if v not in side1]
    return bool(a) and bool(b) and all(h.has_edge(u, v) for u in a for v in b)


def extract_dominating_set(art: ReductionArtifact, p: Partition) -> list[int] | None:
    if partition_density(art.graph, p) < art.target:
        return None
    side1 = {v for v, r in enumerate(art.vertex_roles)
             if r in ("original", "w", "z", "pad-V1u", "pad-V1d")}
    if not all(_complete_bipartite_block(art.graph, b, side1) for b in p):
        return None
    w_blocks = [b for b in p if any(art.vertex_roles[v] == "w" for v in b)]
    dom = sorted(art.source_map[v] for b in w_blocks for v in b
                 if art.vertex_roles[v] == "original")
    g = _source_graph(art)
    if len(dom) > art.params["k"] or not _is_dominating(g, dom):
        raise InvariantError(f"partition meets the dominating-set target but {dom} is invalid")
    return dom


# ---------------------------------------------------------------- Min UnCut

def triple_instance(g: Graph, k: int) -> tuple[Graph, int]:
    if not g.is_cubic():
        raise PreconditionError("Min UnCut source must be cubic")
    if g.n % 6 == 0:
        return g, k
    return disjoint_union(g, g, g), 3 * k


def reduce_minuncut_to_dense(g: Graph, k: int) -> ReductionArtifact:
    """Complement of ``g`` plus ``(n^2-n)/6`` copies of ``K_{3,3}``; vertices
    ``0..n-1`` are ``g``'s, then each copy contributes ``L`` then ``R`` triples."""
    n = g.n
    if not g.is_cubic():
        raise PreconditionError("Min UnCut source must be cubic")
    if n % 6:
        raise PreconditionError(f"Min UnCut source needs n divisible by 6, got n={n}; "
                                "use triple_instance first")
    if not 0 <= 2 * k <= n:
        raise PreconditionError(f"need 0 <= k <= n/2, got k={k}")
    copies = (n * n - n) // 6
    roles = ["original"] * n
    smap: list = list(range(n))
    edges = list(g.edges())
    for c in range(copies):
        base = n + 6 * c
        roles += ["pad-L"] * 3 + ["pad-R"] * 3
        smap += [(c, i) for i in range(6)]
        edges += [(base + i, base + 3 + j) for i in range(3) for j in range(3)]
    h = complement(Graph(n * n, edges))
    if not h.is_regular(n * n - 4):
        raise InvariantError("Min UnCut image is not (n^2-4)-regular")
    target = Fraction(n * n, 2) - 1 - Fraction(2 * k, n * n)
    return ReductionArtifact("minuncut", h, target, roles, smap,
                             {"n": n, "k": k, "edges": [list(e) for e in g.edges()],
                              "copies": copies})


def minuncut_forward_partition(art: ReductionArtifact, w: CutWitness) -> Partition:
    return Partition([sorted(w.A) + art.role_ids("pad-L"), sorted(w.B) + art.role_ids("pad-R")])


def extract_cut(art: ReductionArtifact, p: Partition) -> CutWitness | None:
    if len(p) != 2 or partition_density(art.graph, p) < art.target:
        return None
    g = _source_graph(art)
    w = CutWitness.of(g, [v for v in p.blocks[0] if v < g.n])
    if w.uncut > art.params["k"]:
        raise InvariantError(f"partition meets the Min UnCut target but uncut={w.uncut}")
    return w


def local_search_cut(g: Graph) -> CutWitness:
    """Flip the lowest-id vertex with two same-side neighbours until none is left."""
    if not g.is_cubic():
        raise PreconditionError("local_search_cut needs a cubic graph")
    side = [0 if v < g.n // 2 else 1 for v in range(g.n)]
    moves = 0
    while True:
        for v in range(g.n):
            if sum(1 for u in g.adj[v] if side[u] == side[v]) >= 2:
                side[v] ^= 1
                moves += 1
                break
        else:
            break
    return CutWitness.of(g, [v for v in range(g.n) if side[v] == 0], moves)


def cubic_cut_identity_check(g: Graph, w: CutWitness) -> bool:
    ea, eb = g.induced_edge_count(w.A), g.induced_edge_count(w.B)
    return 3 * len(w.A) + 2 * eb == 3 * len(w.B) + 2 * ea
