"""Splice diagrams of connected sums of (2, n) torus links.

Used as an independent route from an Artin presentation tree to the
colored decomposition graph: build the link's splice diagram, then read
off its nodes (internal vertices of valence >= 3), coloring a node black
when an arrowhead is attached to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .artin import LabeledGraph
from .graph import BicoloredGraph, Color

INTERNAL = "internal"
LEAF = "leaf"
ARROW = "arrowtip"
_KINDS = (INTERNAL, LEAF, ARROW)


class SpliceError(ValueError):
    pass


@dataclass(frozen=True)
class SpliceDiagram:
    """Tree whose vertices are internal, leaf or arrowtip; ids need not be contiguous.

    ``edges`` holds ``(u, v, weight)``; a weight of None stands for 1.
    """

    kinds: tuple[tuple[int, str], ...]
    edges: tuple[tuple[int, int, Optional[int]], ...]

    def __post_init__(self):
        kind = dict(self.kinds)
        if len(kind) != len(self.kinds):
            raise SpliceError("duplicate vertex id")
        if any(k not in _KINDS for k in kind.values()):
            raise SpliceError("unknown vertex kind")
        val = {v: 0 for v in kind}
        for u, v, _ in self.edges:
            if u not in kind or v not in kind or u == v:
                raise SpliceError(f"bad edge {(u, v)}")
            val[u] += 1
            val[v] += 1
        for v, k in kind.items():
            if k != INTERNAL and val[v] != 1:
                raise SpliceError(f"{k} vertex {v} has valence {val[v]}")
        if len(self.edges) != len(kind) - 1 or not _connected(kind, self.edges):
            raise SpliceError("splice diagram is not a tree")

    def kind(self, v: int) -> str:
        return dict(self.kinds)[v]

    def vertex_ids(self) -> list[int]:
        return [v for v, _ in self.kinds]

    def valence(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if v in (a, b))

    def neighbors(self, v: int) -> list[int]:
        return [b if a == v else a for a, b, _ in self.edges if v in (a, b)]

    def of_kind(self, k: str) -> list[int]:
        return [v for v, kk in self.kinds if kk == k]

    def arrowtips(self) -> list[int]:
        return self.of_kind(ARROW)

    def nodes(self) -> list[int]:
        return [v for v in self.of_kind(INTERNAL) if self.valence(v) >= 3]

    def shifted(self, offset: int) -> "SpliceDiagram":
        return SpliceDiagram(
            tuple((v + offset, k) for v, k in self.kinds),
            tuple((a + offset, b + offset, w) for a, b, w in self.edges),
        )


def _connected(kind: dict, edges) -> bool:
    if not kind:
        return False
    adj: dict[int, list[int]] = {v: [] for v in kind}
    for a, b, _ in edges:
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(kind))
    seen = {start}
    stack = [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(kind)


class _Builder:
    """Mutable forest used while assembling a diagram; frozen with :meth:`freeze`."""

    def __init__(self):
        self.kind: dict[int, str] = {}
        self.edges: list[list] = []

    def add(self, d: SpliceDiagram) -> int:
        offset = max(self.kind, default=-1) + 1
        piece = d.shifted(offset)
        self.kind.update(dict(piece.kinds))
        self.edges.extend([a, b, w] for a, b, w in piece.edges)
        return offset

    def new_vertex(self, k: str) -> int:
        v = max(self.kind, default=-1) + 1
        self.kind[v] = k
        return v

    def incident(self, v: int) -> list[list]:
        return [e for e in self.edges if v in (e[0], e[1])]

    def piece_of(self, v: int) -> set[int]:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for a, b, _ in self.edges:
                y = b if a == x else a if b == x else None
                if y is not None and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def sum_at(self, a1: int, a2: int) -> tuple[int, int]:
        """Join two arrowheads into a new node carrying a fresh 0-weighted arrow."""
        for a in (a1, a2):
            if self.kind.get(a) != ARROW:
                raise SpliceError(f"vertex {a} is not an arrowtip")
        if a2 in self.piece_of(a1):
            raise SpliceError("arrowtips lie in the same connected piece")
        self.kind[a1] = INTERNAL
        for e in self.incident(a2):
            if e[0] == a2:
                e[0] = a1
            else:
                e[1] = a1
        del self.kind[a2]
        z = self.new_vertex(ARROW)
        self.edges.append([a1, z, 0])
        return a1, z

    def contract(self, keep: int, drop: int):
        """Merge adjacent internal vertex ``drop`` into ``keep``."""
        joining = [e for e in self.edges if {e[0], e[1]} == {keep, drop}]
        if len(joining) != 1:
            raise SpliceError(f"vertices {keep} and {drop} are not adjacent")
        self.edges.remove(joining[0])
        for e in self.incident(drop):
            if e[0] == drop:
                e[0] = keep
            else:
                e[1] = keep
        del self.kind[drop]

    def freeze(self) -> SpliceDiagram:
        return SpliceDiagram(
            tuple(sorted(self.kind.items())),
            tuple(sorted((min(a, b), max(a, b), w) for a, b, w in self.edges)),
        )


def torus_link_splice(n: int) -> tuple[SpliceDiagram, tuple[int, int]]:
    """Splice diagram of the (2, n) torus link and the arrowtip for each of its two ends.

    For odd n the link is a knot and both ends share the single arrowtip.
    """
    if n < 2:
        raise SpliceError("torus link (2, n) needs n >= 2")
    if n == 2:
        return SpliceDiagram(((0, ARROW), (1, ARROW)), ((0, 1, None),)), (0, 1)
    if n % 2 == 0:
        d = SpliceDiagram(
            ((0, INTERNAL), (1, ARROW), (2, ARROW), (3, LEAF)),
            ((0, 1, None), (0, 2, None), (0, 3, n // 2)),
        )
        return d, (1, 2)
    d = SpliceDiagram(
        ((0, INTERNAL), (1, LEAF), (2, LEAF), (3, ARROW)),
        ((0, 1, 2), (0, 2, n), (0, 3, None)),
    )
    return d, (3, 3)


class SumResult(NamedTuple):
    diagram: SpliceDiagram
    node: int
    arrow: int
    offset: int


def splice_connected_sum(d1: SpliceDiagram, a1: int, d2: SpliceDiagram, a2: int) -> SumResult:
    """Connected sum along arrowtip ``a1`` of d1 and ``a2`` of d2.

    d2's vertex ids are shifted by ``offset`` in the result. The two arrowtips
    become a single node, which also receives a new 0-weighted arrow.
    """
    for d, a in ((d1, a1), (d2, a2)):
        if dict(d.kinds).get(a) != ARROW:
            raise SpliceError(f"vertex {a} is not an arrowtip")
    b = _Builder()
    b.add(d1)
    offset = b.add(d2)
    node, arrow = b.sum_at(a1, a2 + offset)
    return SumResult(b.freeze(), node, arrow, offset)


def artin_tree_to_splice(t: LabeledGraph) -> SpliceDiagram:
    """Splice diagram of the link complement whose group is the Artin group of tree ``t``.

    One torus link per tree edge; at each vertex the components attached to
    it are summed in edge order. A component that already went through a sum
    is represented by its 0-weighted arrow; summing along it again adds the
    new summand to that same node instead of starting a new one, since all
    summands of one composite component meet a single Seifert piece.
    """
    from .artin import ArtinTree

    if not isinstance(t, ArtinTree):
        t = ArtinTree(t.vertices, t.edges)
    if not t.edges:
        raise SpliceError("tree has no edges, so there is no link to splice")
    b = _Builder()
    parent: dict[int, int] = {}
    # component -> (sum node or None, current arrowtip representing it)
    state: dict[int, tuple[Optional[int], int]] = {}
    ends: list[list[int]] = [[] for _ in range(t.n)]

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for u, v, w in t.edges:
        piece, (h1, h2) = torus_link_splice(w)
        off = b.add(piece)
        c1 = h1 + off
        parent[c1] = c1
        state[c1] = (None, h1 + off)
        ends[u].append(c1)
        if w % 2 == 0:
            c2 = h2 + off
            parent[c2] = c2
            state[c2] = (None, h2 + off)
            ends[v].append(c2)
        else:
            ends[v].append(c1)

    for v in range(t.n):
        comps: list[int] = []
        for c in ends[v]:
            r = find(c)
            if r not in comps:
                comps.append(r)
        acc = comps[0]
        for other in comps[1:]:
            (n1, t1), (n2, t2) = state[acc], state[other]
            node, arrow = b.sum_at(t1, t2)
            existing = [x for x in (n1, n2) if x is not None]
            if existing:
                keep = existing[0]
                b.contract(keep, node)
                for x in existing[1:]:
                    b.contract(keep, x)
                node = keep
            parent[other] = acc
            state[acc] = (node, arrow)
    return b.freeze()


def splice_to_decomposition(d: SpliceDiagram) -> BicoloredGraph:
    """Full subgraph on the nodes, black where an arrowhead is attached."""
    kind = dict(d.kinds)
    for v in d.of_kind(INTERNAL):
        if d.valence(v) <= 2:
            raise SpliceError(f"internal vertex {v} has valence {d.valence(v)}")
    nodes = d.nodes()
    if not nodes:
        raise SpliceError("diagram has no nodes")
    index = {v: i for i, v in enumerate(nodes)}
    colors = [
        Color.BLACK if any(kind[y] == ARROW for y in d.neighbors(v)) else Color.WHITE
        for v in nodes
    ]
    edges = [(index[a], index[b]) for a, b, _ in d.edges if a in index and b in index]
    return BicoloredGraph.from_edges(colors, edges, [f"n{v}" for v in nodes])


def format_splice(d: SpliceDiagram) -> str:
    lines = ["splice-diagram v1"]
    lines += [f"node {v} {k}" for v, k in d.kinds]
    lines += [f"edge {a} {b}" + ("" if w is None else f" {w}") for a, b, w in d.edges]
    return "\n".join(lines) + "\n"


def parse_splice(text: str) -> SpliceDiagram:
    kinds, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "splice-diagram v1":
            continue
        parts = line.split()
        try:
            if parts[0] == "node" and len(parts) == 3:
                kinds.append((int(parts[1]), parts[2]))
            elif parts[0] == "edge" and len(parts) in (3, 4):
                w = int(parts[3]) if len(parts) == 4 else None
                edges.append((int(parts[1]), int(parts[2]), w))
            else:
                raise SpliceError(f"line {lineno}: unrecognized statement")
        except ValueError as exc:
            if isinstance(exc, SpliceError):
                raise
            raise SpliceError(f"line {lineno}: {exc}") from None
    return SpliceDiagram(tuple(sorted(kinds)), tuple(edges))


def splice_to_dot(d: SpliceDiagram) -> str:
    lines = ["graph splice {"]
    for v, k in d.kinds:
        if k == INTERNAL:
            lines.append(f'  s{v} [shape=circle, label=""];')
        elif k == LEAF:
            lines.append(f'  s{v} [shape=point];')
        else:
            lines.append(f'  s{v} [shape=none, label=">"];')
    for a, b, w in d.edges:
        label = "" if w is None else f' [label="{w}"]'
        lines.append(f"  s{a} -- s{b}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"
