import random
from fractions import Fraction

import pytest

from dgp import (DGPError, Graph, Partition, PreconditionError, SearchConfig,
                 enumerate_partitions, partition_density, solve_exact)
from dgp.cubic import approx_cubic
from dgp.dense import brooks_clique_partition
from dgp.exact import enumerate_rgs, local_search_partition, size_caps, utility_caps
from dgp.testkit import (complete_bipartite, complete_graph, cycle_graph, gen_random_cubic,
                         gen_random_graph, oracle_best_partition)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_k4_single_block():
    rep = solve_exact(complete_graph(4))
    assert rep.partition == Partition.whole(4)
    assert rep.density == Fraction(3, 2)
    assert rep.optimal


def test_c5():
    rep = solve_exact(cycle_graph(5))
    assert rep.density == Fraction(7, 6)
    assert sorted(len(b) for b in rep.partition) == [2, 3]
    assert rep.partition == Partition([[0, 1, 2], [3, 4]])


def test_complete_bipartite_single_block():
    rep = solve_exact(complete_bipartite(2, 3))
    assert rep.partition == Partition.whole(5)
    assert rep.density == Fraction(6, 5)


@pytest.mark.parametrize("n", range(1, 11))
def test_enumeration_counts_bell(n):
    parts = list(enumerate_partitions(n)) if n <= 8 else None
    if parts is not None:
        assert len(parts) == BELL[n]
        assert len(set(parts)) == BELL[n]
    else:
        assert sum(1 for _ in enumerate_rgs(n)) == BELL[n]


def test_enumeration_limit():
    with pytest.raises(PreconditionError):
        next(enumerate_partitions(13))


def test_too_large():
    with pytest.raises(PreconditionError, match="instance too large for exact search"):
        solve_exact(complete_graph(13))
    with pytest.raises(DGPError):
        SearchConfig(max_n=0)


def test_empty_graph():
    with pytest.raises(DGPError, match="empty graph"):
        solve_exact(Graph(0))


@pytest.mark.parametrize("n", range(1, 13))
def test_clique_is_single_block(n):
    rep = solve_exact(complete_graph(n))
    assert rep.density == Fraction(n - 1, 2) and len(rep.partition) == 1


def test_pruning_does_not_change_optimum():
    rng = random.Random(21)
    off = SearchConfig(prune_connected=False, prune_bound=False)
    for trial in range(80):
        n = rng.randint(1, 8)
        g = gen_random_graph(n, rng.random(), rng)
        a = solve_exact(g)
        b = solve_exact(g, off)
        assert a.density == b.density
        assert partition_density(g, a.partition) == a.density


def test_matches_oracle_small():
    rng = random.Random(3)
    for trial in range(60):
        n = rng.randint(1, 7)
        g = gen_random_graph(n, rng.random(), rng)
        assert solve_exact(g).density == oracle_best_partition(g)[1]


def test_tie_break_fewest_blocks_then_rgs():
    # two disjoint edges: one optimum with 2 blocks
    g = Graph(4, [(0, 1), (2, 3)])
    rep = solve_exact(g)
    assert rep.partition == Partition([[0, 1], [2, 3]])
    # without connectivity pruning the disconnected merge has the same density
    # but one block fewer
    off = solve_exact(g, SearchConfig(prune_connected=False))
    assert off.density == rep.density == 1


def test_beats_every_heuristic():
    for s in range(20):
        g = gen_random_cubic(10, seed=s)
        best = solve_exact(g).density
        assert best >= approx_cubic(g).density
        assert best >= brooks_clique_partition(g).density
        assert best >= partition_density(g, local_search_partition(g))


def test_caps_are_bounds():
    from itertools import combinations
    from dgp.core import is_connected
    for s in range(20):
        g = gen_random_graph(7, 0.5, seed=s)
        caps = size_caps(g)
        ucap = utility_caps(g)
        assert all(caps[i] >= caps[i + 1] for i in range(len(caps) - 1))
        for k in range(1, 8):
            for sub in combinations(range(7), k):
                u = Fraction(g.induced_edge_count(sub), k * k)
                assert u <= caps[k]
                if is_connected(g, sub):
                    assert all(u <= ucap[v] for v in sub)


def test_local_search_blocks_connected():
    from dgp.core import is_connected
    for s in range(30):
        g = gen_random_graph(12, 0.3, seed=s)
        p = local_search_partition(g)
        p.check(g.n)
        assert all(is_connected(g, b) for b in p)
