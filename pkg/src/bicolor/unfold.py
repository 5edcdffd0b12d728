"""Finite-depth types of the bicolored Bass-Serre tree.

The tree repeats every edge infinitely often before taking the universal
cover, so at each vertex only the *set* of child types matters. A depth-d
type is therefore (color, frozenset of depth d-1 types). Types are
hash-consed: structurally equal types are the same object, which keeps
comparison cheap even when the expanded tree is exponentially large.
"""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from typing import Optional

from .graph import BicoloredGraph, Color

_INTERN: "weakref.WeakValueDictionary[tuple, UnfoldingType]" = weakref.WeakValueDictionary()
_INTERN_LOCK = threading.Lock()


@dataclass(frozen=True, eq=False)
class UnfoldingType:
    color: Color
    children: frozenset["UnfoldingType"]
    depth: int

    def __post_init__(self):
        if any(ch.depth != self.depth - 1 for ch in self.children):
            raise ValueError("children must sit exactly one level below their parent")
        object.__setattr__(self, "_hash", hash((self.color, self.children, self.depth)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, UnfoldingType) or self._hash != other._hash:
            return False
        return (self.color, self.depth, self.children) == (other.color, other.depth, other.children)

    @classmethod
    def make(cls, color: Color, children=(), depth: int = 0) -> "UnfoldingType":
        kids = frozenset(children)
        key = (color, kids, depth)
        with _INTERN_LOCK:
            found = _INTERN.get(key)
            if found is None:
                found = cls(color, kids, depth)
                _INTERN[key] = found
        return found


def unfolding(g: BicoloredGraph, v: int, depth: int) -> UnfoldingType:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if not 0 <= v < g.n:
        raise ValueError(f"no vertex {v}")
    return unfold_all(g, depth)[v]


def unfold_all(g: BicoloredGraph, depth: int) -> list[UnfoldingType]:
    """Depth-``depth`` type at every vertex, built level by level."""
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    level = [UnfoldingType.make(c) for c in g.colors]
    for d in range(1, depth + 1):
        level = [UnfoldingType.make(g.colors[v], (level[w] for w in nbrs[v]), d) for v in range(g.n)]
    return level


def unfolding_key(t: UnfoldingType) -> str:
    """Canonical string: ``b[...]`` / ``w[...]`` with sorted child keys.

    The string is as large as the expanded type tree; use type equality
    rather than keys for deep comparisons.
    """
    memo: dict[int, str] = {}

    def key(u: UnfoldingType) -> str:
        k = memo.get(id(u))
        if k is None:
            k = f"{u.color.value}[{','.join(sorted(key(ch) for ch in u.children))}]"
            memo[id(u)] = k
        return k

    return key(t)


def unfolding_tree_dot(
    g: BicoloredGraph, v: int, depth: int, multiplicity: int = 1, max_nodes: Optional[int] = 5000
) -> str:
    """DOT drawing of the truncated universal cover with each edge repeated ``multiplicity`` times.

    For visualization only: with finite multiplicity the drawn tree is not a
    bisimilarity invariant.
    """
    if multiplicity < 1:
        raise ValueError("multiplicity must be at least 1")
    # edge slots at each vertex: (neighbor, copy index); loops contribute twice per copy
    slots: list[list[int]] = [[] for _ in range(g.n)]
    for a, b in g.edge_list():
        for _ in range(multiplicity):
            slots[a].append(b)
            slots[b].append(a)
    lines = ["graph unfolding {"]
    count = 0

    def node(label_v: int) -> str:
        nonlocal count
        name = f"n{count}"
        count += 1
        if max_nodes is not None and count > max_nodes:
            raise ValueError(f"tree exceeds {max_nodes} nodes; lower depth or multiplicity")
        fill = "black" if g.colors[label_v] is Color.BLACK else "white"
        font = "white" if fill == "black" else "black"
        lines.append(f'  {name} [label="{g.name(label_v)}", style=filled, fillcolor={fill}, fontcolor={font}];')
        return name

    root = node(v)
    # skip one edge back toward the parent so the result is the universal cover
    stack = [(root, v, None, 0)]
    while stack:
        name, x, back, d = stack.pop()
        if d == depth:
            continue
        skipped = False
        for y in slots[x]:
            if back is not None and y == back and not skipped:
                skipped = True
                continue
            child = node(y)
            lines.append(f"  {name} -- {child};")
            stack.append((child, y, x, d + 1))
    lines.append("}")
    return "\n".join(lines) + "\n"
