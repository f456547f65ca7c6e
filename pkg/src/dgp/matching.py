"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from __future__ import annotations

from collections import deque

from .core import Graph


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """Return a maximum matching as sorted ``(u, v)`` pairs with ``u < v``.

    Runs one alternating-tree search per exposed vertex, contracting odd
    cycles (blossoms) by relabelling their vertices to a common base.
    O(n^3).
    """
    n = g.n
    adj = g.adj
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    def find_path(root: int) -> int:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return _augment(to, parent, match)
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for v in range(n):
        if match[v] == -1:
            find_path(v)
    return sorted((v, match[v]) for v in range(n) if match[v] > v)


def _augment(v: int, parent: list[int], match: list[int]) -> int:
    end = v
    while v != -1:
        pv = parent[v]
        nxt = match[pv]
        match[v], match[pv] = pv, v
        v = nxt
    return end


def is_matching(g: Graph, pairs) -> bool:
    seen = set()
    for u, v in pairs:
        if not g.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True
