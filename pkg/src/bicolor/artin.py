"""Artin groups with tree presentation graphs.

A presentation graph is a weighted graph: generators are vertices and an
edge of weight m >= 2 records the braid relation of length m (weight
infinity is edge absence).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graph import BicoloredGraph, Color
from .refine import minimize


class ArtinFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class LabeledGraph:
    """Weighted presentation graph, possibly disconnected."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("vertex names must be distinct")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge {(u, v)}")
            if w < 2:
                raise ValueError(f"edge weight {w} is below 2")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {self.vertices[u]}-{self.vertices[v]}")
            seen.add(key)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if v in (a, b))

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], [s]
            while queue:
                x = queue.pop()
                comp.append(x)
                for y, _ in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            out.append(sorted(comp))
        return out


@dataclass(frozen=True)
class ArtinTree(LabeledGraph):
    def __post_init__(self):
        super().__post_init__()
        if self.n == 0:
            raise ValueError("a tree needs at least one vertex")
        if len(self.edges) != self.n - 1 or len(self.components()) != 1:
            raise ValueError("presentation graph is not a tree")

    @classmethod
    def from_weights(cls, edges: list[tuple[int, int, int]], n: Optional[int] = None) -> "ArtinTree":
        if n is None:
            n = 1 + max((max(u, v) for u, v, _ in edges), default=0)
        return cls(tuple(f"x{i}" for i in range(n)), tuple(edges))

    @classmethod
    def path(cls, weights: list[int]) -> "ArtinTree":
        return cls.from_weights([(i, i + 1, w) for i, w in enumerate(weights)], len(weights) + 1)

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) == 1

    def diameter(self) -> int:
        adj = self.adjacency()

        def farthest(s: int) -> tuple[int, int]:
            dist = {s: 0}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y, _ in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            far = max(dist, key=lambda x: (dist[x], -x))
            return far, dist[far]

        a, _ = farthest(0)
        return farthest(a)[1]


def parse_labeled_graph(text: str) -> LabeledGraph:
    """Read ``v <name>`` and ``e <name> <name> <weight>`` lines ('#' starts a comment)."""
    index: dict[str, int] = {}
    names: list[str] = []
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "artin-tree v1":
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 2:
                raise ArtinFormatError("expected 'v <name>'", lineno)
            if parts[1] in index:
                raise ArtinFormatError(f"duplicate vertex {parts[1]!r}", lineno)
            index[parts[1]] = len(names)
            names.append(parts[1])
        elif parts[0] == "e":
            if len(parts) != 4:
                raise ArtinFormatError("expected 'e <name> <name> <weight>'", lineno)
            for name in parts[1:3]:
                if name not in index:
                    raise ArtinFormatError(f"unknown vertex {name!r}", lineno)
            try:
                w = int(parts[3])
            except ValueError:
                raise ArtinFormatError(f"weight {parts[3]!r} is not an integer", lineno) from None
            u, v = index[parts[1]], index[parts[2]]
            if u == v:
                raise ArtinFormatError("loops are not allowed in a presentation graph", lineno)
            if w < 2:
                raise ArtinFormatError(f"weight {w} is below 2", lineno)
            if (min(u, v), max(u, v)) in seen:
                raise ArtinFormatError("duplicate edge", lineno)
            seen.add((min(u, v), max(u, v)))
            edges.append((u, v, w))
        else:
            raise ArtinFormatError(f"unrecognized statement {parts[0]!r}", lineno)
    return LabeledGraph(tuple(names), tuple(edges))


def parse_artin_tree(text: str) -> ArtinTree:
    g = parse_labeled_graph(text)
    try:
        return ArtinTree(g.vertices, g.edges)
    except ValueError as exc:
        raise ArtinFormatError(str(exc)) from None


def format_labeled_graph(g: LabeledGraph) -> str:
    lines = ["artin-tree v1"] if isinstance(g, ArtinTree) else []
    lines += [f"v {name}" for name in g.vertices]
    lines += [f"e {g.vertices[u]} {g.vertices[v]} {w}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def is_big(t: ArtinTree) -> bool:
    d = t.diameter()
    return d >= 3 or (d == 2 and any(w > 2 for _, _, w in t.edges))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def artin_to_decomposition(t: ArtinTree) -> BicoloredGraph:
    """Colored decomposition graph of the graph manifold whose group is the tree group of ``t``.

    Moves: color everything black; collapse odd edges (adjacent odd edges
    cascade) hanging a white leaf off the merged vertex per odd edge; drop
    2-weighted edges to leaves together with the leaf; finally strip even
    weights > 2 at leaves and subdivide the interior ones with a white
    vertex. Leaf status for the last two moves is read off the tree as it
    stands after the odd-edge collapse.
    """
    if not is_big(t):
        raise ValueError("conversion requires a big presentation tree")
    parent = list(range(t.n))
    for u, v, w in t.edges:
        if w % 2:
            parent[_find(parent, u)] = _find(parent, v)
    members: dict[int, list[int]] = {}
    for x in range(t.n):
        members.setdefault(_find(parent, x), []).append(x)
    roots = list(members)  # ordered by smallest member
    node_of = {r: i for i, r in enumerate(roots)}
    names = ["+".join(t.vertices[x] for x in members[r]) for r in roots]
    colors = [Color.BLACK] * len(roots)

    # tree after the odd-edge collapse: class nodes plus one white leaf per odd edge
    even = []
    white_leaves = []
    for u, v, w in t.edges:
        a, b = node_of[_find(parent, u)], node_of[_find(parent, v)]
        if w % 2:
            white_leaves.append((a, f"{t.vertices[u]}-{t.vertices[v]}:{w}"))
        else:
            even.append((a, b, w))
    degree = [0] * len(roots)
    for a, b, _ in even:
        degree[a] += 1
        degree[b] += 1
    for a, _ in white_leaves:
        degree[a] += 1

    removed: set[int] = set()
    edges: list[tuple[int, int]] = []
    for a, b, w in even:
        leaf_a, leaf_b = degree[a] == 1, degree[b] == 1
        if w == 2:
            if leaf_a or leaf_b:
                removed.add(a if leaf_a else b)
                continue
            edges.append((a, b))
        elif leaf_a or leaf_b:
            edges.append((a, b))
        else:
            mid = len(colors)
            colors.append(Color.WHITE)
            names.append(f"{names[a]}|{names[b]}")
            edges += [(a, mid), (mid, b)]
    for a, label in white_leaves:
        leaf = len(colors)
        colors.append(Color.WHITE)
        names.append(label)
        edges.append((a, leaf))

    keep = [v for v in range(len(colors)) if v not in removed]
    new_index = {v: i for i, v in enumerate(keep)}
    return BicoloredGraph.from_edges(
        [colors[v] for v in keep],
        [(new_index[a], new_index[b]) for a, b in edges],
        [names[v] for v in keep],
    )


@dataclass(frozen=True)
class QiClass:
    """Quasi-isometry class of a tree group: Z, Z2, FreeTimesZ, or a minimal graph."""

    kind: str
    graph: Optional[BicoloredGraph] = None

    def __str__(self):
        return self.kind


Z = QiClass("Z")
Z2 = QiClass("Z2")
FREE_TIMES_Z = QiClass("FreeTimesZ")


def classify_artin(t: ArtinTree) -> QiClass:
    if t.n == 1:
        return Z
    if t.n == 2 and t.edges[0][2] == 2:
        return Z2
    if not is_big(t):
        return FREE_TIMES_Z
    m, _ = minimize(artin_to_decomposition(t))
    return QiClass("GraphManifold", m)


def is_qi_to_right_angled_tree_group(t: ArtinTree) -> bool:
    if not is_big(t):
        return False
    for u, v, w in t.edges:
        if w % 2:
            return False
        if w != 2 and not t.is_leaf(u) and not t.is_leaf(v):
            return False
    return True


def is_3manifold_artin(g: LabeledGraph) -> bool:
    """Gordon's criterion: every component is a tree or a triangle labeled (2, 2, 2)."""
    for comp in g.components():
        members = set(comp)
        comp_edges = [(u, v, w) for u, v, w in g.edges if u in members]
        if len(comp_edges) == len(comp) - 1:
            continue
        if len(comp) == 3 and len(comp_edges) == 3 and all(w == 2 for _, _, w in comp_edges):
            continue
        return False
    return True
