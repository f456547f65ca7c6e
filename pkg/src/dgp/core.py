"""Graphs, partitions and exact densities.

Every density-like quantity in the package is a :class:`fractions.Fraction`
(aliased as :data:`Rat`); nothing is ever rounded.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Rat = Fraction


class DGPError(ValueError):
    """Base class for errors raised by this package."""


class PreconditionError(DGPError):
    """An algorithm was called on an input outside its domain."""


class InvalidPartitionError(DGPError):
    def __init__(self, detail: str = ""):
        msg = "invalid partition"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InvariantError(RuntimeError):
    """An internal guarantee was violated; indicates a bug, not bad input."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Immutable once built. ``adj[v]`` is the sorted tuple of neighbours of
    ``v``; ``masks[v]`` is the same set as an integer bitmask.
    """

    __slots__ = ("n", "adj", "masks", "_nbrs", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise DGPError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DGPError(f"edge ({u}, {v}) references a vertex outside 0..{n - 1}")
            if u == v:
                raise DGPError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self._nbrs = tuple(frozenset(s) for s in nbrs)
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self.masks = tuple(sum(1 << w for w in s) for s in nbrs)
        self.m = sum(len(s) for s in nbrs) // 2

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        adj = [list(a) for a in adj]
        for v, nb in enumerate(adj):
            for w in nb:
                if 0 <= w < len(adj) and v not in adj[w]:
                    raise DGPError(f"adjacency not symmetric between {v} and {w}")
        return cls(len(adj), ((v, w) for v, nb in enumerate(adj) for w in nb if v < w))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees)
        if len(degs) > 1:
            return False
        return d is None or not degs or degs == {d}

    def is_cubic(self) -> bool:
        return self.n > 0 and self.is_regular(3)

    def induced_edge_count(self, vertices: Iterable[int]) -> int:
        s = set(vertices)
        return sum(1 for u in s for v in self._nbrs[u] if v in s) // 2

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Return ``G[vertices]`` relabelled to ``0..k-1`` and the id map back."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u in order for v in self.adj[u]
                 if v in index and u < v]
        return Graph(len(order), edges), order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty vertex blocks, stored canonically.

    Each block is a sorted tuple and blocks are ordered by their smallest
    vertex, so two equal partitions compare equal.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]]):
        canon = []
        seen: set[int] = set()
        for b in blocks:
            blk = tuple(sorted(set(b)))
            if not blk:
                raise InvalidPartitionError("empty block")
            for v in blk:
                if v in seen:
                    raise InvalidPartitionError(f"vertex {v} appears in two blocks")
                seen.add(v)
            canon.append(blk)
        canon.sort()
        object.__setattr__(self, "blocks", tuple(canon))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls([v] for v in range(n))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls([range(n)])

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(groups.values())

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.blocks)

    def vertices(self) -> set[int]:
        return {v for b in self.blocks for v in b}

    def check(self, n: int) -> None:
        """Raise :class:`InvalidPartitionError` unless this partitions ``0..n-1``."""
        total = 0
        for b in self.blocks:
            if b[0] < 0 or b[-1] >= n:
                raise InvalidPartitionError(f"block references vertex outside 0..{n - 1}")
            total += len(b)
        if total != n:
            raise InvalidPartitionError(f"blocks cover {total} of {n} vertices")

    def block_of(self, v: int) -> tuple[int, ...]:
        for b in self.blocks:
            if v in b:
                return b
        raise InvalidPartitionError(f"vertex {v} is in no block")

    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string: label of each vertex's block.

        Blocks are labelled in order of their smallest vertex, which is the
        canonical encoding used for tie-breaking.
        """
        n = sum(len(b) for b in self.blocks)
        labels = [0] * n
        for i, b in enumerate(self.blocks):
            for v in b:
                labels[v] = i
        return tuple(labels)


@dataclass
class SolveReport:
    partition: Partition
    density: Rat
    algorithm: str
    upper_bound: Rat | None = None
    optimal: bool = False
    info: dict = field(default_factory=dict)

    def verify(self, g: Graph) -> None:
        got = partition_density(g, self.partition)
        if got != self.density:
            raise InvariantError(
                f"{self.algorithm}: reported density {self.density} but blocks give {got}")


def density(g: Graph) -> Rat:
    if g.n == 0:
        raise DGPError("empty graph")
    return Rat(g.m, g.n)


def block_density(g: Graph, block: Iterable[int]) -> Rat:
    block = list(block)
    return Rat(g.induced_edge_count(block), len(block))


def partition_density(g: Graph, p: Partition) -> Rat:
    p.check(g.n)
    return sum((block_density(g, b) for b in p.blocks), Rat(0))


def utility(g: Graph, p: Partition, v: int) -> Rat:
    """Density of ``v``'s block divided by the block size."""
    if not 0 <= v < g.n:
        raise DGPError(f"vertex {v} not in graph")
    p.check(g.n)
    block = p.block_of(v)
    return block_density(g, block) / len(block)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    edges = []
    for u in range(g.n):
        rest = full & ~g.masks[u] & ~((1 << (u + 1)) - 1)
        while rest:
            low = rest & -rest
            edges.append((u, low.bit_length() - 1))
            rest ^= low
    return Graph(g.n, edges)


def missing_edge_count(g: Graph, vertices: Iterable[int]) -> int:
    s = set(vertices)
    k = len(s)
    return k * (k - 1) // 2 - g.induced_edge_count(s)


def density_upper_bound(n: int, k: int) -> Rat:
    """Largest density any ``k``-block partition of an ``n``-vertex graph can have."""
    if not 1 <= k <= n:
        raise DGPError(f"block count {k} outside 1..{n}")
    return Rat(n - k, 2)


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph, within: Iterable[int] | None = None) -> bool:
    return len(connected_components(g, within)) <= 1


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(sorted(set(vertices)), 2))
