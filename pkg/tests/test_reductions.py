import random
from itertools import combinations
from fractions import Fraction

import pytest

from dgp import (DGPError, Graph, Partition, PreconditionError, SearchConfig,
                 partition_density, solve_exact)
from dgp.reductions import (CutWitness, ReductionArtifact, Rx3cInstance, cubic_cut_identity_check,
                            ds_forward_partition, ds_parameters, extract_cut,
                            extract_dominating_set, extract_exact_cover, gen_rx3c,
                            local_search_cut, minuncut_forward_partition,
                            reduce_ds_to_bipartite, reduce_minuncut_to_dense,
                            reduce_rx3c_to_cubic, rx3c_forward_partition, triple_instance)
from dgp.testkit import (complete_bipartite, complete_graph, cycle_graph, gen_random_cubic,
                         is_dominating_set, oracle_exact_cover, oracle_max_cut, path_graph,
                         petersen, prism)

# two hand-built q=2 instances: one with a cover, one without
YES = Rx3cInstance(2, ((0, 1, 2), (3, 4, 5), (0, 1, 3), (2, 4, 5), (0, 3, 4), (1, 2, 5)))
NO = Rx3cInstance(2, ((0, 1, 2), (0, 1, 3), (0, 4, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5)))


# ------------------------------------------------------------------- RX3C

def test_rx3c_instance_validation():
    with pytest.raises(DGPError, match="malformed RX3C instance"):
        Rx3cInstance(2, ((0, 1, 2),) * 6)
    with pytest.raises(DGPError, match="malformed RX3C instance"):
        Rx3cInstance(1, ((0, 1, 2), (0, 1, 2)))


def test_hand_built_instances():
    assert oracle_exact_cover(YES) and YES.is_exact_cover([0, 1])
    assert not oracle_exact_cover(NO)


def test_rx3c_image_shape():
    art = reduce_rx3c_to_cubic(YES)
    assert art.graph.n == 24 and art.graph.is_cubic()
    assert art.target == 7
    for v in art.role_ids("type1"):
        assert all(art.vertex_roles[u] == "type2" for u in art.graph.adj[v])


def test_generated_instances_valid():
    for s in range(50):
        inst = gen_rx3c(random.Random(s).randint(1, 4), s, planted=s % 2 == 0)
        assert reduce_rx3c_to_cubic(inst).graph.is_cubic()
        if s % 2 == 0:
            assert oracle_exact_cover(inst)


def test_rx3c_forward_reaches_target():
    for s in range(20):
        inst = gen_rx3c(3, s)
        art = reduce_rx3c_to_cubic(inst)
        cover = next(_covers(inst))
        p = rx3c_forward_partition(art, cover)
        assert partition_density(art.graph, p) == art.target
        assert extract_exact_cover(art, p) == sorted(cover)


def _covers(inst):
    for combo in combinations(range(len(inst.sets)), inst.q):
        if inst.is_exact_cover(combo):
            yield list(combo)


def test_rx3c_extraction_rejects_low_partitions():
    art = reduce_rx3c_to_cubic(YES)
    assert extract_exact_cover(art, Partition.singletons(24)) is None
    p = rx3c_forward_partition(art, [0, 1])
    # merge two matched pairs whose corners are adjacent: 3/4 instead of 1
    blocks = [b for b in p.blocks if b not in ((0, 6), (1, 7))] + [(0, 1, 6, 7)]
    worse = Partition(blocks)
    assert partition_density(art.graph, worse) == art.target - Fraction(1, 4)
    assert extract_exact_cover(art, worse) is None
    with pytest.raises(DGPError):
        rx3c_forward_partition(art, [0, 2])


@pytest.mark.parametrize("inst", [YES, NO], ids=["yes", "no"])
def test_rx3c_round_trip_exact(inst):
    art = reduce_rx3c_to_cubic(inst)
    rep = solve_exact(art.graph, SearchConfig(max_n=24))
    assert (rep.density >= art.target) == oracle_exact_cover(inst)
    cover = extract_exact_cover(art, rep.partition)
    if oracle_exact_cover(inst):
        assert cover is not None and inst.is_exact_cover(cover)
    else:
        assert cover is None


# ---------------------------------------------------------- Dominating Set

def test_ds_parameters_fig2():
    par = ds_parameters(5, 2)
    assert (par["c"], par["N"], par["V1"], par["V2"]) == (2, 7, 12, 21)


def test_ds_intermediate_counts():
    art = reduce_ds_to_bipartite(cycle_graph(5), 2, intermediate=True)
    assert art.graph.n == 33
    assert len(art.role_ids("w")) == 6 and len(art.role_ids("x")) == 14
    assert len(art.role_ids("z")) + len(art.role_ids("z_i")) == 3


def test_ds_full_structure():
    art = reduce_ds_to_bipartite(cycle_graph(5), 2)
    par = art.params
    assert art.graph.n == (2 * 2 * 5 + 1) * (par["V1"] + par["V2"])
    assert art.graph.min_degree >= 2 * 5 * par["V1"]
    p = ds_forward_partition(art, [0, 2])
    assert partition_density(art.graph, p) == art.target
    assert extract_dominating_set(art, p) == [0, 2]


def test_ds_preconditions():
    with pytest.raises(PreconditionError):
        reduce_ds_to_bipartite(cycle_graph(4), 2)
    with pytest.raises(PreconditionError):
        reduce_ds_to_bipartite(Graph(5, [(0, 1), (2, 3)]), 1)


def test_ds_forward_and_extract_on_intermediate():
    for g, k in [(cycle_graph(5), 2), (path_graph(5), 2), (path_graph(3), 1),
                 (complete_graph(5), 1), (cycle_graph(7), 3)]:
        art = reduce_ds_to_bipartite(g, k, intermediate=True)
        dom = next(list(c) for r in range(1, k + 1) for c in combinations(range(g.n), r)
                   if is_dominating_set(g, c))
        p = ds_forward_partition(art, dom)
        assert partition_density(art.graph, p) == art.target
        got = extract_dominating_set(art, p)
        assert got is not None and len(got) <= k and is_dominating_set(g, got)


def test_ds_extraction_rejects():
    art = reduce_ds_to_bipartite(cycle_graph(5), 2, intermediate=True)
    assert extract_dominating_set(art, Partition.whole(art.graph.n)) is None
    assert extract_dominating_set(art, Partition.singletons(art.graph.n)) is None


def test_ds_exact_yes_instance_p3():
    art = reduce_ds_to_bipartite(path_graph(3), 1, intermediate=True)
    rep = solve_exact(art.graph, SearchConfig(max_n=art.graph.n))
    assert rep.density == art.target
    assert extract_dominating_set(art, rep.partition) == [1]


def test_ds_forward_refuses_non_dominating_set():
    # P4 has no dominating vertex, so no single vertex can seed the construction
    g = path_graph(4)
    art = reduce_ds_to_bipartite(g, 1, intermediate=True)
    for v in range(g.n):
        with pytest.raises(DGPError):
            ds_forward_partition(art, [v])


# ---------------------------------------------------------------- Min UnCut

def test_triple_instance_examples():
    h, k = triple_instance(complete_graph(4), 2)
    assert (h.n, k) == (12, 6)
    h, k = triple_instance(complete_bipartite(3, 3), 1)
    assert (h.n, k) == (6, 1)
    assert triple_instance(gen_random_cubic(8, seed=1), 0)[0].n == 24


def test_minuncut_prism():
    art = reduce_minuncut_to_dense(prism(), 2)
    assert art.graph.n == 36 and art.graph.is_regular(32)
    assert art.params["copies"] == 5
    assert art.target == Fraction(152, 9)
    assert oracle_max_cut(prism()) == 7
    w = local_search_cut(prism())
    assert w.uncut == 2
    p = minuncut_forward_partition(art, w)
    assert len(p) == 2 and partition_density(art.graph, p) == art.target
    got = extract_cut(art, p)
    assert got is not None and got.uncut == 2


def test_minuncut_tripled_k4():
    g, k = triple_instance(complete_graph(4), 2)
    art = reduce_minuncut_to_dense(g, k)
    assert art.graph.n == 144 and art.graph.is_regular(140)
    w = CutWitness.of(g, [0, 1, 4, 5, 8, 9])
    assert w.uncut == 6
    assert partition_density(art.graph, minuncut_forward_partition(art, w)) >= art.target


def test_minuncut_rejects():
    art = reduce_minuncut_to_dense(prism(), 2)
    n2 = art.graph.n
    assert extract_cut(art, Partition.whole(n2)) is None
    assert partition_density(art.graph, Partition.whole(n2)) == Fraction(n2 - 4, 2) < art.target
    three = Partition([range(0, 12), range(12, 24), range(24, 36)])
    assert extract_cut(art, three) is None
    with pytest.raises(PreconditionError):
        reduce_minuncut_to_dense(gen_random_cubic(8, seed=0), 1)
    with pytest.raises(PreconditionError):
        reduce_minuncut_to_dense(cycle_graph(6), 1)


@pytest.mark.parametrize("g, least", [(complete_graph(4), 4), (complete_bipartite(3, 3), 9),
                                      (petersen(), 10)])
def test_local_search_examples(g, least):
    w = local_search_cut(g)
    assert w.cut(g) >= least
    if g.n == 6:
        assert w.moves == 0


def test_local_search_corpus():
    for s in range(100):
        g = gen_random_cubic(random.Random(s).choice([4, 6, 8, 10, 12, 14]), seed=s)
        w = local_search_cut(g)
        assert w.cut(g) >= g.n
        assert w.moves <= g.m
        for v in range(g.n):
            same = w.A if v in w.A else w.B
            assert sum(1 for u in g.adj[v] if u in same) <= 1


def test_cut_identity():
    assert cubic_cut_identity_check(complete_graph(4), CutWitness.of(complete_graph(4), [0]))
    g = prism()
    for bits in range(1 << 6):
        assert cubic_cut_identity_check(g, CutWitness.of(g, [v for v in range(6) if bits >> v & 1]))
    rng = random.Random(13)
    for trial in range(200):
        g = gen_random_cubic(rng.choice([6, 8, 10, 12]), rng)
        side = [v for v in range(g.n) if rng.random() < 0.5]
        assert cubic_cut_identity_check(g, CutWitness.of(g, side))


# ----------------------------------------------------------------- metadata

def test_metadata_round_trip():
    for art in (reduce_rx3c_to_cubic(YES),
                reduce_ds_to_bipartite(cycle_graph(5), 2, intermediate=True),
                reduce_minuncut_to_dense(prism(), 2)):
        back = ReductionArtifact.from_metadata(art.graph, art.dumps())
        assert back.target == art.target and back.vertex_roles == art.vertex_roles
        assert back.source_map == art.source_map and back.params == art.params
