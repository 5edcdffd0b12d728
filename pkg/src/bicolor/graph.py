"""Bicolored multigraphs: data model, text/JSON formats, isomorphism, canonical form."""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

ISO_BRUTE_FORCE_LIMIT = 12
AUTOMORPHISM_LIMIT = 10

HEADER = "bicolored-graph v1"


class Color(enum.Enum):
    BLACK = "b"
    WHITE = "w"

    @property
    def rank(self) -> int:
        return 0 if self is Color.BLACK else 1

    def swapped(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


_COLOR_TOKENS = {
    "b": Color.BLACK,
    "black": Color.BLACK,
    "w": Color.WHITE,
    "white": Color.WHITE,
}


class GraphFormatError(ValueError):
    """Malformed graph text or JSON. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class BicoloredGraph:
    """Finite multigraph with loops, each vertex colored black or white.

    ``edges`` holds ``((u, v), multiplicity)`` with ``u <= v``, sorted. Build
    instances with :meth:`from_edges` unless the edges are already normalized.
    ``names`` is display metadata and takes no part in equality.
    """

    colors: tuple[Color, ...]
    edges: tuple[tuple[tuple[int, int], int], ...] = ()
    names: Optional[tuple[str, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.colors)
        if n == 0:
            raise ValueError("a bicolored graph needs at least one vertex")
        prev = None
        for (u, v), mult in self.edges:
            if not (0 <= u <= v < n):
                raise ValueError(f"bad edge {(u, v)} for {n} vertices")
            if mult < 1:
                raise ValueError(f"edge {(u, v)} has multiplicity {mult}")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edges must be sorted and distinct; use from_edges")
            prev = (u, v)
        if self.names is not None and len(self.names) != n:
            raise ValueError("names must match the vertex count")

    @classmethod
    def from_edges(
        cls,
        colors: Iterable[Color | str],
        edges: Iterable[tuple[int, int]] = (),
        names: Optional[Sequence[str]] = None,
    ) -> "BicoloredGraph":
        cols = tuple(c if isinstance(c, Color) else _COLOR_TOKENS[c] for c in colors)
        counts = Counter(_pair(u, v) for u, v in edges)
        return cls(cols, tuple(sorted(counts.items())), None if names is None else tuple(names))

    @property
    def n(self) -> int:
        return len(self.colors)

    def edge_counts(self) -> dict[tuple[int, int], int]:
        return dict(self.edges)

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges with repetition, one entry per unit of multiplicity."""
        return [e for e, m in self.edges for _ in range(m)]

    def num_edges(self) -> int:
        return sum(m for _, m in self.edges)

    def neighbors(self, v: int) -> set[int]:
        """Set of vertices joined to ``v``; contains ``v`` itself when it has a loop."""
        out = set()
        for (a, b), _ in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for (a, b), _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def has_loop(self, v: int) -> bool:
        return (v, v) in self.edge_counts()

    def is_simple(self) -> bool:
        return all(m == 1 for _, m in self.edges)

    def black_count(self) -> int:
        return sum(1 for c in self.colors if c is Color.BLACK)

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else f"v{v}"

    def relabel(self, perm: Sequence[int]) -> "BicoloredGraph":
        """Graph with old vertex ``v`` moved to position ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the vertex indices")
        cols: list[Color] = [Color.BLACK] * self.n
        names = [""] * self.n
        for v, p in enumerate(perm):
            cols[p] = self.colors[v]
            names[p] = self.name(v)
        edges = [(perm[a], perm[b]) for a, b in self.edge_list()]
        return BicoloredGraph.from_edges(cols, edges, names if self.names is not None else None)

    def with_names(self, names: Optional[Sequence[str]]) -> "BicoloredGraph":
        return BicoloredGraph(self.colors, self.edges, None if names is None else tuple(names))

    def color_swapped(self) -> "BicoloredGraph":
        return BicoloredGraph(tuple(c.swapped() for c in self.colors), self.edges, self.names)


@dataclass(frozen=True)
class VertexMap:
    source: BicoloredGraph
    target: BicoloredGraph
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.n:
            raise ValueError("vertex map must be total on the source")
        if any(not 0 <= x < self.target.n for x in self.mapping):
            raise ValueError("vertex map image out of range")

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    def is_bijection(self) -> bool:
        return self.source.n == self.target.n and len(set(self.mapping)) == self.source.n


# ---------------------------------------------------------------------------
# Text and JSON formats
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> BicoloredGraph:
    """Read the line-oriented graph format (``v <name> <b|w>`` / ``e <name> <name>``)."""
    index: dict[str, int] = {}
    colors: list[Color] = []
    names: list[str] = []
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == HEADER:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "v":
            if len(parts) != 3:
                raise GraphFormatError("expected 'v <name> <b|w>'", lineno)
            name, tok = parts[1], parts[2].lower()
            if tok not in _COLOR_TOKENS:
                raise GraphFormatError(f"unknown color {parts[2]!r}", lineno)
            if name in index:
                raise GraphFormatError(f"duplicate vertex {name!r}", lineno)
            index[name] = len(colors)
            colors.append(_COLOR_TOKENS[tok])
            names.append(name)
        elif kind == "e":
            if len(parts) != 3:
                raise GraphFormatError("expected 'e <name> <name>'", lineno)
            for name in parts[1:]:
                if name not in index:
                    raise GraphFormatError(f"unknown vertex {name!r}", lineno)
            edges.append((index[parts[1]], index[parts[2]]))
        else:
            raise GraphFormatError(f"unrecognized statement {kind!r}", lineno)
    if not colors:
        raise GraphFormatError("graph has no vertices")
    return BicoloredGraph.from_edges(colors, edges, names)


def format_graph(g: BicoloredGraph, header: bool = True) -> str:
    lines = [HEADER] if header else []
    for v, c in enumerate(g.colors):
        lines.append(f"v {g.name(v)} {c.value}")
    for a, b in g.edge_list():
        lines.append(f"e {g.name(a)} {g.name(b)}")
    return "\n".join(lines) + "\n"


def parse_graph_json(text: str | dict) -> BicoloredGraph:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        verts = data["vertices"]
        raw_edges = data.get("edges", [])
    except (TypeError, KeyError) as exc:
        raise GraphFormatError(f"missing key {exc}") from None
    index: dict[str, int] = {}
    colors, names = [], []
    for item in verts:
        vid, tok = str(item["id"]), str(item["color"]).lower()
        if tok not in _COLOR_TOKENS:
            raise GraphFormatError(f"unknown color {item['color']!r}")
        if vid in index:
            raise GraphFormatError(f"duplicate vertex {vid!r}")
        index[vid] = len(colors)
        colors.append(_COLOR_TOKENS[tok])
        names.append(vid)
    if not colors:
        raise GraphFormatError("graph has no vertices")
    edges = []
    for pair in raw_edges:
        a, b = (str(x) for x in pair)
        for vid in (a, b):
            if vid not in index:
                raise GraphFormatError(f"unknown vertex {vid!r}")
        edges.append((index[a], index[b]))
    return BicoloredGraph.from_edges(colors, edges, names)


def graph_to_json(g: BicoloredGraph) -> dict:
    word = {Color.BLACK: "black", Color.WHITE: "white"}
    return {
        "vertices": [{"id": g.name(v), "color": word[c]} for v, c in enumerate(g.colors)],
        "edges": [[g.name(a), g.name(b)] for a, b in g.edge_list()],
    }


def load_graph(text: str) -> BicoloredGraph:
    """Parse either format, picking JSON when the text starts with ``{``."""
    if text.lstrip().startswith("{"):
        try:
            return parse_graph_json(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return parse_graph(text)


def to_dot(g: BicoloredGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v, c in enumerate(g.colors):
        if c is Color.BLACK:
            style = 'style=filled, fillcolor=black, fontcolor=white'
        else:
            style = 'style=solid, fillcolor=white'
        lines.append(f'  "{g.name(v)}" [shape=circle, {style}];')
    for a, b in g.edge_list():
        lines.append(f'  "{g.name(a)}" -- "{g.name(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


def is_connected(g: BicoloredGraph) -> bool:
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def collapse_multiedges(g: BicoloredGraph) -> tuple[BicoloredGraph, VertexMap]:
    simple = BicoloredGraph(g.colors, tuple((e, 1) for e, _ in g.edges), g.names)
    return simple, VertexMap(g, simple, tuple(range(g.n)))


def _mapped_edges(g: BicoloredGraph, mapping: Sequence[int]) -> Counter:
    return Counter({_pair(mapping[a], mapping[b]): m for (a, b), m in g.edges})


def _search_bijections(g1: BicoloredGraph, g2: BicoloredGraph, candidates: list[list[int]]):
    """Yield every color-preserving bijection g1 -> g2 carrying edge multiplicities exactly.

    ``candidates[v]`` lists the allowed images of vertex ``v``. Vertices are
    assigned in index order; each new assignment checks the multiplicity of
    every edge to already-assigned vertices, including the loop.
    """
    n = g1.n
    e1, e2 = g1.edge_counts(), g2.edge_counts()
    mapping = [-1] * n
    used = [False] * n

    def consistent(v: int, x: int) -> bool:
        for u in range(v + 1):
            y = x if u == v else mapping[u]
            if e1.get(_pair(u, v), 0) != e2.get(_pair(y, x), 0):
                return False
        return True

    def rec(v: int):
        if v == n:
            yield tuple(mapping)
            return
        for x in candidates[v]:
            if not used[x] and consistent(v, x):
                used[x] = True
                mapping[v] = x
                yield from rec(v + 1)
                used[x] = False
        mapping[v] = -1

    yield from rec(0)


def _degree_profile(g: BicoloredGraph) -> list[tuple]:
    deg = [0] * g.n
    loops = [0] * g.n
    for (a, b), m in g.edges:
        if a == b:
            loops[a] += m
        else:
            deg[a] += m
            deg[b] += m
    return [(g.colors[v].rank, deg[v], loops[v]) for v in range(g.n)]


def automorphism_count(g: BicoloredGraph) -> int:
    """Count color- and multiplicity-preserving self-bijections by exhaustive search."""
    if g.n > AUTOMORPHISM_LIMIT:
        raise ValueError(f"automorphism_count is limited to {AUTOMORPHISM_LIMIT} vertices")
    cands = [[w for w in range(g.n) if g.colors[w] is g.colors[v]] for v in range(g.n)]
    return sum(1 for _ in _search_bijections(g, g, cands))


def _refinement_ranks(g: BicoloredGraph) -> list[int]:
    """Stable ranks from multiset refinement, Black < White at the start.

    Ranks are indices into the sorted list of distinct keys, so they depend
    only on the isomorphism type of the graph, never on its labeling.
    """
    adj_multi: list[list[int]] = [[] for _ in range(g.n)]
    loop = [False] * g.n
    for (a, b), m in g.edges:
        if a == b:
            loop[a] = True
            adj_multi[a].extend([a] * m)
        else:
            adj_multi[a].extend([b] * m)
            adj_multi[b].extend([a] * m)
    ranks = [c.rank for c in g.colors]
    classes = len(set(ranks))
    while True:
        keys = [
            (ranks[v], tuple(sorted(ranks[w] for w in adj_multi[v])), loop[v])
            for v in range(g.n)
        ]
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [order[k] for k in keys]
        if len(order) == classes:
            return new
        ranks, classes = new, len(order)


def canonical_form(g: BicoloredGraph) -> BicoloredGraph:
    """Relabel a minimal graph into its label-independent canonical order."""
    from .refine import is_minimal

    if not is_connected(g) or not is_minimal(g):
        raise ValueError("canonical_form requires a minimal graph")
    ranks = _refinement_ranks(g)
    if len(set(ranks)) != g.n:
        raise AssertionError("refinement of a minimal graph was not discrete")
    return g.relabel(ranks)


def _is_minimal_quiet(g: BicoloredGraph) -> bool:
    from .refine import is_minimal

    return is_connected(g) and is_minimal(g)


def are_isomorphic(g1: BicoloredGraph, g2: BicoloredGraph) -> Optional[VertexMap]:
    """Color-preserving isomorphism g1 -> g2, or None.

    Minimal graphs go through their canonical orders. Anything else is
    searched exhaustively, which is only allowed up to
    ``ISO_BRUTE_FORCE_LIMIT`` vertices.
    """
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return None
    if sorted(_degree_profile(g1)) != sorted(_degree_profile(g2)):
        return None
    m1, m2 = _is_minimal_quiet(g1), _is_minimal_quiet(g2)
    if m1 and m2:
        r1, r2 = _refinement_ranks(g1), _refinement_ranks(g2)
        if g1.relabel(r1) != g2.relabel(r2):
            return None
        inv2 = {r: v for v, r in enumerate(r2)}
        return VertexMap(g1, g2, tuple(inv2[r] for r in r1))
    if m1 != m2:
        return None
    if g1.n > ISO_BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"isomorphism of non-minimal graphs is limited to {ISO_BRUTE_FORCE_LIMIT} vertices"
        )
    p1, p2 = _degree_profile(g1), _degree_profile(g2)
    cands = [[w for w in range(g2.n) if p2[w] == p1[v]] for v in range(g1.n)]
    for mapping in _search_bijections(g1, g2, cands):
        return VertexMap(g1, g2, mapping)
    return None


def disjoint_union(g1: BicoloredGraph, g2: BicoloredGraph) -> BicoloredGraph:
    """Disjoint union with g2's vertices shifted past g1's. Not connected in general."""
    off = g1.n
    edges = g1.edge_list() + [(a + off, b + off) for a, b in g2.edge_list()]
    return BicoloredGraph.from_edges(g1.colors + g2.colors, edges)
