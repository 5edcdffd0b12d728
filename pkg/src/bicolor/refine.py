"""Weak coverings, bisimilarity and the minimal bicolored graph.

Two refinement engines compute the coarsest stable partition of the vertex
set: :func:`minimize_faithful` splits one class at a time in the classic
CurrentColor/MaxColor loop, :func:`minimize` refines all classes at once.
:func:`brute_force_minimal_oracle` checks minimality by trying every
color-pure vertex partition and is kept independent of both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .graph import BicoloredGraph, Color, VertexMap, are_isomorphic, is_connected

ORACLE_LIMIT = 6


@dataclass(frozen=True)
class Coloring:
    """Class id per vertex. Ids are 0..k-1, every id is used, classes are color-pure."""

    graph: BicoloredGraph
    classes: tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        if len(self.classes) != g.n:
            raise ValueError("coloring must assign every vertex")
        used = set(self.classes)
        if used != set(range(len(used))):
            raise ValueError("class ids must be 0..k-1 with no gaps")
        color_of: dict[int, Color] = {}
        for v, c in enumerate(self.classes):
            if color_of.setdefault(c, g.colors[v]) is not g.colors[v]:
                raise ValueError(f"class {c} mixes black and white vertices")

    @property
    def num_classes(self) -> int:
        return len(set(self.classes))

    def blocks(self) -> frozenset[frozenset[int]]:
        out: dict[int, set[int]] = {}
        for v, c in enumerate(self.classes):
            out.setdefault(c, set()).add(v)
        return frozenset(frozenset(b) for b in out.values())

    def is_discrete(self) -> bool:
        return self.num_classes == self.graph.n


def initial_coloring(g: BicoloredGraph) -> Coloring:
    """Black/White coloring with ids compacted (Black first when present)."""
    ranks = sorted({c.rank for c in g.colors})
    ids = {r: i for i, r in enumerate(ranks)}
    return Coloring(g, tuple(ids[c.rank] for c in g.colors))


def adjacent_colors(g: BicoloredGraph, c: Coloring, v: int) -> frozenset[int]:
    return frozenset(c.classes[w] for w in g.neighbors(v))


def quotient_graph(g: BicoloredGraph, c: Coloring) -> BicoloredGraph:
    k = c.num_classes
    colors: list[Optional[Color]] = [None] * k
    for v, cls in enumerate(c.classes):
        colors[cls] = g.colors[v]
    pairs = {tuple(sorted((c.classes[a], c.classes[b]))) for (a, b), _ in g.edges}
    return BicoloredGraph.from_edges(colors, sorted(pairs))


def coloring_map(g: BicoloredGraph, c: Coloring, quotient: BicoloredGraph) -> VertexMap:
    return VertexMap(g, quotient, c.classes)


def is_weak_covering(m: VertexMap) -> bool:
    src, tgt = m.source, m.target
    f = m.mapping
    if any(src.colors[v] is not tgt.colors[f[v]] for v in range(src.n)):
        return False
    tgt_edges = tgt.edge_counts()
    # edges of the target at f(v) that some edge at v maps onto
    lifted: list[set[tuple[int, int]]] = [set() for _ in range(src.n)]
    for (a, b), _ in src.edges:
        image = tuple(sorted((f[a], f[b])))
        if image not in tgt_edges:
            return False
        lifted[a].add(image)
        lifted[b].add(image)
    at_target: list[set[tuple[int, int]]] = [set() for _ in range(tgt.n)]
    for (x, y), _ in tgt.edges:
        at_target[x].add((x, y))
        at_target[y].add((x, y))
    return all(at_target[f[v]] <= lifted[v] for v in range(src.n))


def _require_connected(g: BicoloredGraph):
    if not is_connected(g):
        raise ValueError("graph must be connected")


def minimize_faithful(g: BicoloredGraph) -> tuple[BicoloredGraph, Coloring]:
    """Single-split refinement loop with CurrentColor / MaxColor.

    The first vertex (in index order) of the current class defines the
    subclass that moves to the new color; exactly one new color per split.
    """
    _require_connected(g)
    color = list(initial_coloring(g).classes)
    max_color = max(color)
    current = 0
    nbrs = [g.neighbors(v) for v in range(g.n)]
    while current <= max_color:
        members = [v for v in range(g.n) if color[v] == current]
        adj = {v: frozenset(color[w] for w in nbrs[v]) for v in members}
        first = adj[members[0]] if members else None
        if any(adj[v] != first for v in members):
            max_color += 1
            for v in members:
                if adj[v] == first:
                    color[v] = max_color
            current = 0
        else:
            current += 1
    c = Coloring(g, tuple(color))
    return quotient_graph(g, c), c


def _stable_ranks(g: BicoloredGraph, rounds: Optional[int] = None) -> list[int]:
    """Simultaneous set-based refinement; ``rounds=None`` runs to stability.

    Each round replaces a vertex's class by (class, set of neighbor classes)
    and renumbers by sorted key, so ids are independent of the labeling.
    """
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    ranks = list(initial_coloring(g).classes)
    k = len(set(ranks))
    done = 0
    while rounds is None or done < rounds:
        keys = [(ranks[v], tuple(sorted({ranks[w] for w in nbrs[v]}))) for v in range(g.n)]
        order = {key: i for i, key in enumerate(sorted(set(keys)))}
        ranks = [order[key] for key in keys]
        done += 1
        if len(order) == k and rounds is None:
            break
        k = len(order)
    return ranks


def minimize(g: BicoloredGraph) -> tuple[BicoloredGraph, Coloring]:
    _require_connected(g)
    c = Coloring(g, tuple(_stable_ranks(g)))
    return quotient_graph(g, c), c


def refinement_classes(g: BicoloredGraph, rounds: int) -> list[int]:
    """Class ids after exactly ``rounds`` simultaneous refinement rounds (no connectivity check)."""
    return _stable_ranks(g, rounds)


def stable_partition_unchecked(g: BicoloredGraph) -> list[int]:
    """Stable class ids for any graph, connected or not."""
    return _stable_ranks(g)


def is_minimal(g: BicoloredGraph) -> bool:
    _require_connected(g)
    if not g.is_simple():
        return False
    return len(set(_stable_ranks(g))) == g.n


def bisimilar(g1: BicoloredGraph, g2: BicoloredGraph) -> Optional[VertexMap]:
    """Isomorphism between the minimal graphs of g1 and g2, or None."""
    m1, _ = minimize(g1)
    m2, _ = minimize(g2)
    return are_isomorphic(m1, m2)


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _color_pure_partitions(g: BicoloredGraph) -> Iterator[list[int]]:
    blacks = [v for v in range(g.n) if g.colors[v] is Color.BLACK]
    whites = [v for v in range(g.n) if g.colors[v] is Color.WHITE]
    for pb in _set_partitions(blacks):
        for pw in _set_partitions(whites):
            classes = [0] * g.n
            for i, block in enumerate(pb + pw):
                for v in block:
                    classes[v] = i
            yield classes


def brute_force_minimal_oracle(g: BicoloredGraph) -> bool:
    """True iff no color-pure partition into fewer blocks induces a weak covering.

    Only vertex-reducing maps are tried, so a graph with parallel edges but no
    smaller quotient is reported True here while :func:`is_minimal` says
    False. The two agree on simple-with-loops graphs.
    """
    _require_connected(g)
    if g.n > ORACLE_LIMIT:
        raise ValueError(f"oracle is limited to {ORACLE_LIMIT} vertices")
    for classes in _color_pure_partitions(g):
        if max(classes) + 1 >= g.n:
            continue
        c = Coloring(g, tuple(classes))
        q = quotient_graph(g, c)
        if is_weak_covering(VertexMap(g, q, c.classes)):
            return False
    return True
