"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

All comparisons are exact rational comparisons.
"""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

import pytest

from dgp import (Graph, Partition, SearchConfig, complement, density_upper_bound,
                 enumerate_partitions, partition_density, solve_exact)
from dgp.bipartite import is_optimal_bipartite_partition, split_of
from dgp.core import is_connected, missing_edge_count
from dgp.cubic import approx_cubic, find_diamonds_and_triangles, k4_components
from dgp.dense import brooks_clique_partition, eptas, solve_min_degree_n3
from dgp.formats import format_graph, format_partition, parse_graph, parse_partition, parse_report
from dgp.reductions import (CutWitness, Rx3cInstance, cubic_cut_identity_check,
                            extract_exact_cover, gen_rx3c, local_search_cut,
                            minuncut_forward_partition, reduce_minuncut_to_dense,
                            reduce_rx3c_to_cubic, rx3c_forward_partition, triple_instance)
from dgp.testkit import (NAMED_GRAPHS, complete_bipartite, complete_graph, gen_min_degree,
                         gen_min_degree_n3, gen_named, gen_random_cubic, gen_random_graph,
                         gen_regular, oracle_best_partition, oracle_exact_cover,
                         oracle_utility_scan, petersen, prism)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\nFAIL criterion {number}: {title} "
                      f"({time.perf_counter() - start:.1f}s)")
            raise
        with capsys.disabled():
            print(f"\nPASS criterion {number}: {title} ({time.perf_counter() - start:.1f}s)")
    return run


def random_corpus(count, max_n, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        yield gen_random_graph(n, rng.random(), rng)


def connected_cubic_corpus(count):
    sizes = [4, 6, 8, 10, 12]
    out, s = [], 0
    while len(out) < count:
        g = gen_random_cubic(sizes[s % len(sizes)], seed=5000 + s)
        s += 1
        if is_connected(g):
            out.append(g)
    return out + [petersen(), prism(), complete_bipartite(3, 3), complete_graph(4)]


def test_criterion_01_oracle_equivalence(criterion):
    with criterion(1, "exact search equals brute-force oracle"):
        start = time.perf_counter()
        graphs = list(random_corpus(200, 8, 101)) + [gen_named(n) for n in NAMED_GRAPHS]
        for g in graphs:
            assert solve_exact(g).density == oracle_best_partition(g)[1]
        assert time.perf_counter() - start < 60


def test_criterion_02_block_count_bound(criterion):
    with criterion(2, "every partition satisfies d <= (n - |P|)/2"):
        graphs = list(random_corpus(40, 8, 202))
        graphs += [gen_named(n) for n in NAMED_GRAPHS if gen_named(n).n <= 8]
        for g in graphs:
            for p in enumerate_partitions(g.n):
                assert partition_density(g, p) <= density_upper_bound(g.n, len(p))


def test_criterion_03_complete_bipartite(criterion):
    with criterion(3, "complete bipartite optimum and ratio characterisation"):
        for n in range(1, 10):
            for m in range(1, 11 - n):
                assert solve_exact(complete_bipartite(n, m)).density == Fraction(n * m, n + m)
        for n in range(1, 8):
            for m in range(1, 9 - n):
                g = complete_bipartite(n, m)
                best = Fraction(n * m, n + m)
                for p in enumerate_partitions(n + m):
                    hit = partition_density(g, p) == best
                    assert hit == is_optimal_bipartite_partition(n, m, split_of(n, p))


def test_criterion_04_min_degree_n3(criterion):
    with criterion(4, "min degree >= n-3 solver equals exact"):
        start = time.perf_counter()
        rng = random.Random(404)
        for s in range(200):
            g = gen_min_degree_n3(rng.randint(3, 12), 4000 + s)
            assert solve_min_degree_n3(g).density == solve_exact(g).density
        tie = gen_named("k6-minus-pm")
        assert solve_min_degree_n3(tie).density == solve_exact(tie).density == 2
        whole = solve_min_degree_n3(gen_named("k5-minus-2k2"))
        assert whole.partition == Partition.whole(5) and whole.density == Fraction(8, 5)
        assert time.perf_counter() - start < 120


def test_criterion_05_cubic_ratio(criterion):
    with criterion(5, "cubic 4/3 ratio and upper-bound certificate"):
        start = time.perf_counter()
        for g in connected_cubic_corpus(100):
            rep = approx_cubic(g)
            best = solve_exact(g).density
            assert 4 * rep.density >= 3 * best
            assert rep.density <= best <= rep.upper_bound
        pet = approx_cubic(petersen())
        assert pet.density == Fraction(5, 2) and pet.optimal
        assert time.perf_counter() - start < 300


def test_criterion_06_utility_caps(criterion):
    with criterion(6, "vertex utility <= 1/3 and diamond sum <= 5/4"):
        gadget = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 4)]
        two_diamonds = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
        graphs = [prism(), complete_bipartite(3, 3), gen_named("cube"), petersen(),
                  Graph(8, two_diamonds + [(u + 4, v + 4) for u, v in two_diamonds]
                        + [(0, 4), (3, 7)]),
                  Graph(10, gadget + [(u + 5, v + 5) for u, v in gadget] + [(4, 9)])]
        graphs += [gen_random_cubic(8, seed=s) for s in range(4)]
        graphs += [gen_random_cubic(10, seed=s) for s in range(2)]
        checked = 0
        for g in graphs:
            if k4_components(g):
                continue
            diamonds, _ = find_diamonds_and_triangles(g)
            scan = oracle_utility_scan(g, diamonds)
            assert scan["vertex"] <= Fraction(1, 3)
            assert all(x <= Fraction(5, 4) for x in scan["groups"])
            checked += 1
        assert checked >= 10


YES = Rx3cInstance(2, ((0, 1, 2), (3, 4, 5), (0, 1, 3), (2, 4, 5), (0, 3, 4), (1, 2, 5)))
NO = Rx3cInstance(2, ((0, 1, 2), (0, 1, 3), (0, 4, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5)))


def test_criterion_07_rx3c_round_trip(criterion):
    with criterion(7, "RX3C round trip on q=2 images"):
        instances = [YES, NO] + [gen_rx3c(2, s, planted=s % 2 == 0) for s in range(20)]
        cfg = SearchConfig(max_n=24)
        for inst in instances:
            art = reduce_rx3c_to_cubic(inst)
            has_cover = oracle_exact_cover(inst)
            if has_cover:
                cover = next(list(c) for c in combinations(range(6), 2) if inst.is_exact_cover(c))
                forward = rx3c_forward_partition(art, cover)
                assert partition_density(art.graph, forward) == art.target
            rep = solve_exact(art.graph, cfg)
            assert (rep.density >= art.target) == has_cover
            got = extract_exact_cover(art, rep.partition)
            assert (got is not None) == has_cover
            if got is not None:
                assert inst.is_exact_cover(got)


def test_criterion_08_min_uncut(criterion):
    with criterion(8, "Min UnCut image structure, forward partition, cut identities"):
        art = reduce_minuncut_to_dense(prism(), 2)
        assert art.graph.is_regular(32)
        g12, k12 = triple_instance(complete_graph(4), 2)
        art12 = reduce_minuncut_to_dense(g12, k12)
        assert art12.graph.n == 144 and art12.graph.is_regular(140)
        sources = [(prism(), local_search_cut(prism())),
                   (g12, CutWitness.of(g12, [0, 1, 4, 5, 8, 9]))]
        sources += [(h, local_search_cut(h)) for h in (gen_random_cubic(6, seed=s) for s in range(3))]
        for g, w in sources:
            a = reduce_minuncut_to_dense(g, w.uncut)
            p = minuncut_forward_partition(a, w)
            n2 = g.n * g.n
            assert len(p) == 2
            assert partition_density(a.graph, p) >= Fraction(n2, 2) - 1 - Fraction(2 * w.uncut, n2)
        rng = random.Random(808)
        for _ in range(1000):
            g = gen_random_cubic(rng.choice([4, 6, 8, 10, 12]), rng)
            w = CutWitness.of(g, [v for v in range(g.n) if rng.random() < 0.5])
            assert cubic_cut_identity_check(g, w)
        for s in range(100):
            g = gen_random_cubic(random.Random(s).choice([4, 6, 8, 10, 12, 14, 16]), seed=s)
            assert local_search_cut(g).cut(g) >= g.n


def test_criterion_09_brooks(criterion):
    with criterion(9, "clique partition blocks and (n-1)/(delta+1) ratio"):
        # the approximation colours the complement when delta <= n-4 and
        # solves exactly when delta >= n-3
        rng = random.Random(909)
        coloured = 0
        for s in range(100):
            n = rng.randint(5, 12)
            t = rng.randint(2, n)
            g = gen_min_degree(n, t, 9000 + s, rng.choice([0.4, 0.7, 0.9]))
            best = solve_exact(g).density
            if g.min_degree >= n - 3:
                rep = solve_min_degree_n3(g)
            else:
                rep = brooks_clique_partition(g)
                assert all(missing_edge_count(g, b) == 0 for b in rep.partition)
                coloured += 1
            # cross-multiplied so an edgeless graph is fine
            assert best * (g.min_degree + 1) <= (g.n - 1) * rep.density
        assert coloured >= 50


def test_criterion_10_eptas(criterion):
    with criterion(10, "eptas within (1+eps) of exact for t=4"):
        rng = random.Random(1010)
        graphs = []
        for s in range(50):
            n = rng.randint(5, 12)
            if s % 2 and n % 2 == 0:
                graphs.append(complement(gen_regular(n, 3, 1000 + s)))
            else:
                graphs.append(gen_min_degree(n, 4, 1000 + s, rng.choice([0.5, 0.8, 1.0])))
        for g in graphs:
            assert g.min_degree >= g.n - 4
            best = solve_exact(g).density
            for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4)):
                assert eptas(g, eps, 4).density * (1 + eps) >= best


def test_criterion_11_cli_round_trip(criterion, tmp_path):
    with criterion(11, "CLI formats round-trip and solve/verify agree across processes"):
        graphs = [gen_named(n) for n in NAMED_GRAPHS] + list(random_corpus(30, 12, 1111))
        for g in graphs:
            assert parse_graph(format_graph(g)) == g
            p = Partition.from_labels([v % 3 for v in range(g.n)]) if g.n else None
            if p is not None:
                assert parse_partition(format_partition(p)) == p
        for i, g in enumerate(graphs[:20]):
            if g.n == 0:
                continue
            gp, rp = tmp_path / f"g{i}.dgp", tmp_path / f"r{i}.txt"
            gp.write_text(format_graph(g))
            cmd = [sys.executable, "-m", "dgp.cli"]
            solved = subprocess.run(cmd + ["solve", str(gp), "--out", str(rp)],
                                    capture_output=True, text=True)
            assert solved.returncode == 0, solved.stderr
            checked = subprocess.run(cmd + ["verify", str(gp), str(rp)],
                                     capture_output=True, text=True)
            assert checked.returncode == 0, checked.stderr
            assert parse_report(rp.read_text())["density"] == parse_report(checked.stdout)["density"]
