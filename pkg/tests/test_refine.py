import random

import pytest
from hypothesis import given, settings, strategies as st

from bicolor.graph import BicoloredGraph, Color, VertexMap, are_isomorphic, disjoint_union, is_connected
from bicolor.refine import (
    Coloring,
    adjacent_colors,
    bisimilar,
    brute_force_minimal_oracle,
    initial_coloring,
    is_minimal,
    is_weak_covering,
    minimize,
    minimize_faithful,
    quotient_graph,
    stable_partition_unchecked,
)

from .helpers import census_graphs, census_upto, g, random_connected, random_expansion

B, W = Color.BLACK, Color.WHITE

PATH_BWWB = g("bwwb", [(0, 1), (1, 2), (2, 3)])
BW_LOOP_W = g("bw", [(0, 1), (1, 1)])


def test_coloring_validation():
    with pytest.raises(ValueError):
        Coloring(g("bw", [(0, 1)]), (0, 0))
    with pytest.raises(ValueError):
        Coloring(g("bb", [(0, 1)]), (0, 2))


def test_adjacent_colors():
    h = g("bw", [(0, 1)])
    c = initial_coloring(h)
    assert adjacent_colors(h, c, 0) == {c.classes[1]}
    loop = g("b", [(0, 0)])
    assert adjacent_colors(loop, initial_coloring(loop), 0) == {0}
    path = g("bww", [(0, 1), (1, 2)])
    c = initial_coloring(path)
    assert adjacent_colors(path, c, 1) == {0, 1}


def test_quotient_graph_cases():
    h = g("bwb", [(0, 1), (1, 2)])
    assert quotient_graph(h, Coloring(h, (0, 1, 2))) == h
    bb = g("bb", [(0, 1)])
    assert quotient_graph(bb, Coloring(bb, (0, 0))) == g("b", [(0, 0)])
    q = quotient_graph(PATH_BWWB, initial_coloring(PATH_BWWB))
    assert q == BW_LOOP_W
    assert is_weak_covering(VertexMap(PATH_BWWB, q, initial_coloring(PATH_BWWB).classes))


def test_quotient_graph_is_simple():
    h = g("bw", [(0, 1), (0, 1), (1, 1), (1, 1)])
    assert quotient_graph(h, Coloring(h, (0, 1))).is_simple()


def test_weak_covering_examples():
    h = g("bwb", [(0, 1), (1, 2), (1, 1)])
    assert is_weak_covering(VertexMap(h, h, (0, 1, 2)))
    assert is_weak_covering(VertexMap(PATH_BWWB, BW_LOOP_W, (0, 1, 1, 0)))
    bb = g("bb", [(0, 1)])
    assert not is_weak_covering(VertexMap(bb, g("b"), (0, 0)))


def test_weak_covering_needs_lifting_and_colors():
    # b-w-b maps onto b-w but the target also has a loop at w: no lift at the middle vertex
    h = g("bwb", [(0, 1), (1, 2)])
    assert not is_weak_covering(VertexMap(h, BW_LOOP_W, (0, 1, 0)))
    assert not is_weak_covering(VertexMap(g("w"), g("b"), (0,)))


def test_minimize_examples():
    tri = g("bbb", [(0, 1), (1, 2), (0, 2)])
    for fn in (minimize, minimize_faithful):
        q, c = fn(tri)
        assert q == g("b", [(0, 0)])
        q, c = fn(g("b", [(0, 0)]))
        assert q == g("b", [(0, 0)]) and c.classes == (0,)
        q, c = fn(PATH_BWWB)
        assert are_isomorphic(q, BW_LOOP_W) is not None
        assert c.blocks() == {frozenset({0, 3}), frozenset({1, 2})}


def test_minimize_double_edge():
    h = g("bw", [(0, 1), (0, 1)])
    q, c = minimize(h)
    assert q == g("bw", [(0, 1)])
    assert is_weak_covering(VertexMap(h, q, c.classes))


def test_minimize_rejects_disconnected():
    for fn in (minimize, minimize_faithful, is_minimal, brute_force_minimal_oracle):
        with pytest.raises(ValueError):
            fn(g("bw"))


def test_census_graphs_are_fixed_points():
    for h in census_upto(4):
        q, c = minimize(h)
        assert c.is_discrete()
        assert are_isomorphic(q, h) is not None


def test_is_minimal_examples():
    assert is_minimal(g("w", [(0, 0)]))
    assert not is_minimal(g("bb", [(0, 1)]))
    assert is_minimal(g("wbw", [(0, 1), (1, 2), (2, 2)]))
    assert is_minimal(g("b"))
    assert not is_minimal(g("bw", [(0, 1), (0, 1)]))


def test_bisimilar_examples():
    tri = g("bbb", [(0, 1), (1, 2), (0, 2)])
    assert bisimilar(tri, g("bb", [(0, 1)])) is not None
    assert bisimilar(g("bw", [(0, 1)]), BW_LOOP_W) is None
    rng = random.Random(3)
    for _ in range(50):
        h = random_connected(rng, 1, 8)
        assert bisimilar(h, minimize(h)[0]) is not None


def test_oracle_examples():
    assert not brute_force_minimal_oracle(g("bb", [(0, 1)]))
    assert brute_force_minimal_oracle(g("b"))
    with pytest.raises(ValueError):
        brute_force_minimal_oracle(g("b" * 7, [(i, i + 1) for i in range(6)]))


def test_oracle_agrees_up_to_four_vertices():
    from .helpers import all_connected_simple_loop_graphs

    for h in all_connected_simple_loop_graphs(4):
        assert brute_force_minimal_oracle(h) == is_minimal(h), h


def test_minimal_sets_match_catalog_totals():
    totals = {}
    from .helpers import all_connected_simple_loop_graphs

    reps: dict[int, list[BicoloredGraph]] = {}
    for h in all_connected_simple_loop_graphs(4):
        if h.n == 1 and not h.edges:
            continue
        if is_minimal(h):
            bucket = reps.setdefault(h.n, [])
            if all(are_isomorphic(h, r) is None for r in bucket):
                bucket.append(h)
    totals = {n: len(v) for n, v in reps.items()}
    assert totals == {1: 2, 2: 4, 3: 20, 4: 173}


def test_four_vertex_catalog_shapes():
    # catalog rows grouped by underlying simple graph: paths 100, triangle with tail 48, stars 16, squares 9
    from collections import Counter

    shapes = Counter()
    for h in census_graphs(4):
        deg = [0] * 4
        for (a, b), _ in h.edges:
            if a != b:
                deg[a] += 1
                deg[b] += 1
        shapes[tuple(sorted(deg))] += 1
    assert shapes == {(1, 1, 2, 2): 100, (1, 2, 2, 3): 48, (1, 1, 1, 3): 16, (2, 2, 2, 2): 9}


def test_three_vertex_catalog_families():
    from collections import Counter

    fams = Counter()
    for h in census_graphs(3):
        mid = next(v for v in range(3) if len(h.neighbors(v) - {v}) == 2)
        ends = [v for v in range(3) if v != mid]
        fams["same-ends" if h.colors[ends[0]] is h.colors[ends[1]] else "mixed-ends"] += 1
    # 8+8 graphs b-w-w, 2+2 graphs w-b-w
    assert fams == {"mixed-ends": 16, "same-ends": 4}


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_minimize_idempotent_and_covering(seed):
    h = random_connected(random.Random(seed), 1, 8)
    q, c = minimize(h)
    assert is_weak_covering(VertexMap(h, q, c.classes))
    q2, c2 = minimize(q)
    assert c2.is_discrete()
    assert are_isomorphic(q, q2) is not None
    assert is_minimal(q)


def test_quotient_map_is_weak_covering_on_census_and_random():
    rng = random.Random(11)
    graphs = census_upto(4) + [random_connected(rng, 1, 8) for _ in range(1000)]
    for h in graphs:
        q, c = minimize(h)
        assert is_weak_covering(VertexMap(h, q, c.classes))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_faithful_and_fast_partitions_agree(seed):
    h = random_connected(random.Random(seed), 1, 10)
    assert minimize(h)[1].blocks() == minimize_faithful(h)[1].blocks()


def _joint_bisimilar(g1, g2) -> bool:
    union = disjoint_union(g1, g2)
    classes = stable_partition_unchecked(union)
    left = set(classes[: g1.n])
    right = set(classes[g1.n:])
    return left == right


def test_joint_refinement_characterization():
    rng = random.Random(5)
    for i in range(1000):
        g1 = random_connected(rng, 1, 8)
        if i % 2:
            g2 = random_expansion(rng, minimize(g1)[0])
        else:
            g2 = random_connected(rng, 1, 8)
        assert _joint_bisimilar(g1, g2) == (bisimilar(g1, g2) is not None)


def test_bisimilarity_transitive_on_expansions():
    rng = random.Random(9)
    for _ in range(200):
        base = minimize(random_connected(rng, 1, 4))[0]
        g1, g2, g3 = (random_expansion(rng, base) for _ in range(3))
        assert bisimilar(g1, g2) is not None and bisimilar(g2, g3) is not None
        assert bisimilar(g1, g3) is not None


def test_expansions_really_cover():
    rng = random.Random(2)
    for _ in range(100):
        base = minimize(random_connected(rng, 1, 4))[0]
        h = random_expansion(rng, base)
        assert is_connected(h)
        assert are_isomorphic(minimize(h)[0], base) is not None


def test_faithful_split_count_bounded():
    rng = random.Random(4)
    for _ in range(200):
        h = random_connected(rng, 1, 10)
        _, c = minimize_faithful(h)
        start = initial_coloring(h).num_classes
        # each split adds exactly one class, so at most |V| - start splits happen
        assert start <= c.num_classes <= h.n
