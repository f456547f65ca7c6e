"""4/3-approximation for cubic graphs and its upper-bound certificate.

The partition takes each ``K4`` component whole, then vertex-disjoint
diamonds (``K4`` minus an edge), then triangles, then a maximum matching of
what is left; unmatched vertices become singletons.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import (DGPError, Graph, InvariantError, Partition, PreconditionError, Rat,
                   SolveReport, connected_components, partition_density)
from .matching import maximum_matching

log = logging.getLogger(__name__)


@dataclass
class CubicDecomposition:
    k4_components: list[tuple[int, ...]] = field(default_factory=list)
    diamonds: list[tuple[int, ...]] = field(default_factory=list)
    triangles: list[tuple[int, ...]] = field(default_factory=list)
    matching: list[tuple[int, int]] = field(default_factory=list)
    leftover: list[int] = field(default_factory=list)

    def blocks(self) -> list[tuple[int, ...]]:
        return (self.k4_components + self.diamonds + self.triangles
                + [tuple(p) for p in self.matching] + [(v,) for v in self.leftover])


def _require_cubic(g: Graph) -> None:
    for v in range(g.n):
        if g.degree(v) != 3:
            raise PreconditionError(f"graph not cubic: vertex {v} has degree {g.degree(v)}")
    if g.n == 0:
        raise PreconditionError("graph not cubic: no vertices")


def k4_components(g: Graph) -> list[tuple[int, ...]]:
    return [tuple(c) for c in connected_components(g)
            if len(c) == 4 and g.induced_edge_count(c) == 6]


def _all_diamonds(g: Graph, allowed: set[int]) -> list[tuple[int, ...]]:
    found = set()
    for b in allowed:
        for c in g.adj[b]:
            if c <= b or c not in allowed:
                continue
            common = [x for x in g.adj[b] if x in allowed and g.has_edge(c, x)]
            if len(common) == 2 and not g.has_edge(*common):
                found.add(tuple(sorted((b, c, *common))))
    return sorted(found)


def _all_triangles(g: Graph, allowed: set[int]) -> list[tuple[int, ...]]:
    tris = []
    for a in sorted(allowed):
        for b, c in combinations([x for x in g.adj[a] if x > a and x in allowed], 2):
            if g.has_edge(b, c):
                tris.append((a, b, c))
    return sorted(tris)


def _greedy_disjoint(cands, used: set[int]) -> list[tuple[int, ...]]:
    taken = []
    for s in cands:
        if used.isdisjoint(s):
            taken.append(s)
            used.update(s)
    return taken


def find_diamonds_and_triangles(g: Graph) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Greedy, lexicographic, vertex-disjoint diamonds then triangles."""
    _require_cubic(g)
    if k4_components(g):
        raise PreconditionError("graph has a K4 component; split it off first")
    everything = set(range(g.n))
    all_d = _all_diamonds(g, everything)
    used: set[int] = set()
    diamonds = _greedy_disjoint(all_d, used)
    triangles = _greedy_disjoint(_all_triangles(g, everything - used), used)
    in_diamond = [set(d) for d in all_d]
    loose = [t for t in _all_triangles(g, everything)
             if not any(set(t) <= d for d in in_diamond)]
    if len(diamonds) != len(all_d) or len(triangles) != len(loose):
        log.warning("greedy extraction kept %d/%d diamonds and %d/%d triangles",
                    len(diamonds), len(all_d), len(triangles), len(loose))
    return diamonds, triangles


def cubic_upper_bound(g: Graph) -> Rat:
    """Upper bound on every partition's density of a cubic graph without K4 components."""
    diamonds, triangles = find_diamonds_and_triangles(g)
    d, t = len(diamonds), len(triangles)
    return Fraction(5, 4) * d + t + Fraction(g.n - 3 * t - 4 * d, 4)


def decompose_cubic(g: Graph) -> CubicDecomposition:
    _require_cubic(g)
    dec = CubicDecomposition(k4_components=k4_components(g))
    in_k4 = {v for c in dec.k4_components for v in c}
    rest = [v for v in range(g.n) if v not in in_k4]
    if not rest:
        return dec
    sub, back = g.induced_subgraph(rest)
    diamonds, triangles = find_diamonds_and_triangles(sub)
    dec.diamonds = [tuple(back[v] for v in d) for d in diamonds]
    dec.triangles = [tuple(back[v] for v in t) for t in triangles]
    used = {v for s in dec.diamonds + dec.triangles for v in s}
    remaining = [v for v in rest if v not in used]
    if remaining:
        residual, back2 = g.induced_subgraph(remaining)
        pairs = maximum_matching(residual)
        dec.matching = [(back2[u], back2[v]) for u, v in pairs]
    matched = {v for p in dec.matching for v in p}
    dec.leftover = [v for v in remaining if v not in matched]
    return dec


def leftover_budget_check(g: Graph, dec: CubicDecomposition) -> bool:
    return 4 * len(dec.leftover) <= g.n


def approx_cubic(g: Graph) -> SolveReport:
    dec = decompose_cubic(g)
    part = Partition(dec.blocks())
    dens = (Fraction(3, 2) * len(dec.k4_components) + Fraction(5, 4) * len(dec.diamonds)
            + len(dec.triangles) + Fraction(len(dec.matching), 2))
    if partition_density(g, part) != dens:
        raise InvariantError("cubic partition density does not match its closed form")
    in_k4 = {v for c in dec.k4_components for v in c}
    rest = [v for v in range(g.n) if v not in in_k4]
    bound = Fraction(3, 2) * len(dec.k4_components)
    if rest:
        bound += cubic_upper_bound(g.induced_subgraph(rest)[0])
    return SolveReport(part, dens, "cubic43", upper_bound=bound, optimal=dens == bound,
                       info={"k4": len(dec.k4_components), "diamonds": len(dec.diamonds),
                             "triangles": len(dec.triangles), "matching": len(dec.matching),
                             "leftover": len(dec.leftover),
                             "leftover_ok": leftover_budget_check(g, dec)})
