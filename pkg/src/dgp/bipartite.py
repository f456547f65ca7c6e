"""Complete bipartite graphs: closed-form density and the optimal-split test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DGPError, Partition, Rat


@dataclass(frozen=True)
class BipartiteSplit:
    """Per-block side counts ``(n_i, m_i)`` of a partition of ``G_{n,m}``."""
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(a), int(b)) for a, b in self.blocks))
        if not self.blocks:
            raise DGPError("invalid split: no blocks")
        for a, b in self.blocks:
            if a < 0 or b < 0 or a + b == 0:
                raise DGPError(f"invalid split: block ({a}, {b})")

    def sides(self) -> tuple[int, int]:
        return sum(a for a, _ in self.blocks), sum(b for _, b in self.blocks)

    def density(self) -> Rat:
        return sum((Fraction(a * b, a + b) for a, b in self.blocks), Fraction(0))


def complete_bipartite_density(n: int, m: int) -> Rat:
    if n < 1 or m < 1:
        raise DGPError(f"complete bipartite graph needs both sides non-empty, got ({n}, {m})")
    return Fraction(n * m, n + m)


def split_of(n: int, partition: Partition) -> BipartiteSplit:
    """Side counts of a partition of ``G_{n,m}`` whose side A is ``0..n-1``."""
    return BipartiteSplit(tuple((sum(1 for v in b if v < n), sum(1 for v in b if v >= n))
                                for b in partition))


def is_optimal_bipartite_partition(n: int, m: int, split: BipartiteSplit) -> bool:
    # cross-multiplied so one-sided blocks never divide by zero
    if split.sides() != (n, m):
        raise DGPError(f"invalid split: covers {split.sides()}, expected ({n}, {m})")
    return all(a >= 1 and b >= 1 and a * m == b * n for a, b in split.blocks)


def two_block_gap(n: int, m: int, n1: int, m1: int) -> tuple[Rat, Rat]:
    """``d(G_{n,m})`` minus the density of splitting off ``G_{n1,m1}``, computed
    directly and by the closed form ``(n*m1 - m*n1)^2 / ((n+m-n1-m1)(n1+m1)(n+m))``."""
    if not (0 <= n1 <= n and 0 <= m1 <= m and 0 < n1 + m1 < n + m):
        raise DGPError("two_block_gap needs a proper non-empty sub-block")
    whole = complete_bipartite_density(n, m)
    parts = Fraction(n1 * m1, n1 + m1) + Fraction((n - n1) * (m - m1), n + m - n1 - m1)
    closed = Fraction((n * m1 - m * n1) ** 2, (n + m - n1 - m1) * (n1 + m1) * (n + m))
    return whole - parts, closed
