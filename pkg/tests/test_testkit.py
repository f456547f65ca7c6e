import random
from fractions import Fraction

import pytest

from dgp import DGPError, Partition, PreconditionError, solve_exact
from dgp.testkit import (NAMED_GRAPHS, Seeded, complete_graph, cycle_graph, gen_min_degree,
                         gen_min_degree_n3, gen_named, gen_random_cubic, gen_random_graph,
                         gen_regular, oracle_best_partition, oracle_max_cut,
                         oracle_max_matching, oracle_min_dominating_set, path_graph, petersen,
                         prism)


def girth(g):
    best = None
    for root in range(g.n):
        dist, parent, queue = {root: 0}, {root: -1}, [root]
        for v in queue:
            for w in g.adj[v]:
                if w not in dist:
                    dist[w], parent[w] = dist[v] + 1, v
                    queue.append(w)
                elif parent[v] != w:
                    cyc = dist[v] + dist[w] + 1
                    best = cyc if best is None else min(best, cyc)
    return best


def test_oracle_partition_examples():
    assert oracle_best_partition(cycle_graph(5))[1] == Fraction(7, 6)
    assert oracle_best_partition(complete_graph(4))[1] == Fraction(3, 2)
    p, val = oracle_best_partition(path_graph(4))
    assert val == 1 and p == Partition([[0, 1], [2, 3]])


def test_oracle_limits():
    with pytest.raises(PreconditionError):
        oracle_best_partition(cycle_graph(11))
    with pytest.raises(PreconditionError):
        oracle_max_cut(cycle_graph(17))


def test_source_oracle_examples():
    assert oracle_max_cut(prism()) == 7
    assert oracle_min_dominating_set(cycle_graph(4)) == 2
    assert oracle_max_matching(petersen()) == 5


def test_named_graphs():
    g = gen_named("petersen")
    assert (g.n, g.m, girth(g)) == (10, 15, 5)
    for name in NAMED_GRAPHS:
        assert gen_named(name).n >= 1
    with pytest.raises(DGPError):
        gen_named("nonsense")


def test_generators_post_conditions():
    for s in range(1000):
        rng = random.Random(s)
        n = 2 * rng.randint(2, 7)
        g = gen_random_cubic(n, Seeded(s))
        assert g.is_cubic() and g.n == n
        m = rng.randint(3, 14)
        assert gen_min_degree_n3(m, s).min_degree >= m - 3
        t = rng.randint(2, 6)
        assert gen_min_degree(m, t, s).min_degree >= m - t
        d = rng.randint(0, m - 1)
        if m * d % 2 == 0:
            assert gen_regular(m, d, s).is_regular(d)


def test_generators_deterministic():
    assert gen_random_cubic(10, Seeded(7)) == gen_random_cubic(10, Seeded(7))
    assert gen_random_graph(9, 0.5, 3) == gen_random_graph(9, 0.5, 3)


def test_generator_infeasible():
    with pytest.raises(DGPError):
        gen_random_cubic(7, 0)
    with pytest.raises(DGPError):
        gen_min_degree_n3(2, 0)
    with pytest.raises(DGPError):
        gen_regular(5, 3, 0)


def test_oracle_agrees_with_exact():
    rng = random.Random(99)
    for trial in range(200):
        n = rng.randint(1, 8)
        g = gen_random_graph(n, rng.random(), rng)
        assert oracle_best_partition(g)[1] == solve_exact(g).density
