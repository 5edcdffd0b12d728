"""Graph generators shared by the test modules."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx

from bicolor.artin import ArtinTree
from bicolor.census import enumerate_minimal
from bicolor.graph import BicoloredGraph, Color, is_connected

COLORS = (Color.BLACK, Color.WHITE)


def g(colors: str, edges=()) -> BicoloredGraph:
    return BicoloredGraph.from_edges(colors, edges)


def random_graph(rng: random.Random, n: int, p: float = 0.4, multi: bool = True, loops: bool = True) -> BicoloredGraph:
    colors = [rng.choice(COLORS) for _ in range(n)]
    edges = []
    for u in range(n):
        for v in range(u, n):
            if u == v and not loops:
                continue
            if rng.random() < p:
                edges.extend([(u, v)] * (rng.randint(1, 3) if multi else 1))
    return BicoloredGraph.from_edges(colors, edges)


def random_connected(rng: random.Random, lo: int, hi: int, **kw) -> BicoloredGraph:
    while True:
        n = rng.randint(lo, hi)
        # spanning tree first so dense rejection sampling is not needed
        order = list(range(n))
        rng.shuffle(order)
        tree = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
        extra = random_graph(rng, n, kw.get("p", 0.3), kw.get("multi", True), kw.get("loops", True))
        h = BicoloredGraph.from_edges(extra.colors, tree + extra.edge_list())
        if not kw.get("multi", True):
            h = BicoloredGraph(h.colors, tuple((e, 1) for e, _ in h.edges))
        if is_connected(h):
            return h


def random_expansion(rng: random.Random, base: BicoloredGraph, max_copies: int = 3, max_n: int = 8) -> BicoloredGraph:
    """Random connected graph weakly covering ``base`` via the copy map."""
    for _ in range(1000):
        copies = [rng.randint(1, max_copies) for _ in range(base.n)]
        while sum(copies) > max_n:
            i = rng.randrange(base.n)
            if copies[i] > 1:
                copies[i] -= 1
        ids = []
        colors = []
        for v, k in enumerate(copies):
            ids.append(list(range(len(colors), len(colors) + k)))
            colors.extend([base.colors[v]] * k)
        edges = []
        for (x, y), _ in base.edges:
            # every copy of x needs an edge to some copy of y and vice versa
            for cx in ids[x]:
                edges.append((cx, rng.choice(ids[y])))
            for cy in ids[y]:
                edges.append((cy, rng.choice(ids[x])))
        edges += rng.sample(edges, k=rng.randint(0, len(edges)))
        h = BicoloredGraph.from_edges(colors, edges)
        if is_connected(h):
            perm = list(range(h.n))
            rng.shuffle(perm)
            return h.relabel(perm)
    raise RuntimeError("could not build a connected expansion")


def all_simple_loop_graphs(n: int):
    """Every labeled bicolored graph on n vertices with simple edges and optional loops."""
    slots = [(u, v) for u in range(n) for v in range(u, n)]
    for colors in itertools.product(COLORS, repeat=n):
        for mask in range(1 << len(slots)):
            yield BicoloredGraph.from_edges(colors, [s for i, s in enumerate(slots) if mask >> i & 1])


def all_connected_simple_loop_graphs(max_n: int):
    for n in range(1, max_n + 1):
        for h in all_simple_loop_graphs(n):
            if is_connected(h):
                yield h


@lru_cache(maxsize=None)
def census_graphs(n: int) -> tuple[BicoloredGraph, ...]:
    reps: list[BicoloredGraph] = []
    enumerate_minimal(n, emit=reps.append)
    return tuple(reps)


def census_upto(max_n: int) -> list[BicoloredGraph]:
    return [h for n in range(1, max_n + 1) for h in census_graphs(n)]


@lru_cache(maxsize=None)
def tree_sweep(max_n: int = 6, weights: tuple[int, ...] = (2, 3, 4, 5, 6)) -> tuple[ArtinTree, ...]:
    """Every weighting of every unlabeled tree with at most ``max_n`` vertices."""
    out = []
    for n in range(1, max_n + 1):
        shapes = [nx.empty_graph(1)] if n == 1 else nx.nonisomorphic_trees(n)
        for shape in shapes:
            edges = sorted(shape.edges())
            for ws in itertools.product(weights, repeat=len(edges)):
                out.append(ArtinTree.from_weights([(u, v, w) for (u, v), w in zip(edges, ws)], n))
    return tuple(out)
