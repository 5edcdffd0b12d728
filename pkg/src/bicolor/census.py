"""Census of connected minimal bicolored graphs by vertex and black-vertex count.

Every subset of the n(n+1)/2 possible simple edges and loops on labeled
vertices (blacks first) is tested; the labeled count is then divided by
b!·w!, which is exact because minimal graphs have no automorphisms.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from .graph import BicoloredGraph, Color, canonical_form, format_graph

MAX_N = 6
_CHUNK_BITS = 7
_ROW_BITS = 8


class CensusError(RuntimeError):
    """Raised when the labeled count is not divisible by b!w! (an internal bug)."""


@dataclass(frozen=True)
class CensusRow:
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError("counts must be indexed by b = 0..n")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict:
        return {"n": self.n, "counts": list(self.counts), "total": self.total}


def _slots(n: int) -> list[tuple[int, int]]:
    """Edge slots: loops first, then pairs u < v."""
    return [(v, v) for v in range(n)] + [(u, v) for u in range(n) for v in range(u + 1, n)]


def _chunk_tables(n: int) -> list[list[int]]:
    """Packed adjacency contribution of each 7-bit chunk of an edge mask.

    Row v of the adjacency (bit w set iff v ~ w, bit v set iff loop) lives
    in bits 8v..8v+7 of a single int, so a mask's adjacency is the OR of
    one table lookup per chunk.
    """
    slots = _slots(n)
    tables = []
    for start in range(0, len(slots), _CHUNK_BITS):
        chunk = slots[start:start + _CHUNK_BITS]
        table = []
        for value in range(1 << len(chunk)):
            packed = 0
            for i, (u, v) in enumerate(chunk):
                if value >> i & 1:
                    packed |= 1 << (_ROW_BITS * u + v)
                    packed |= 1 << (_ROW_BITS * v + u)
            table.append(packed)
        tables.append(table)
    return tables


def _bits(n: int) -> list[tuple[int, ...]]:
    return [tuple(i for i in range(n) if x >> i & 1) for x in range(1 << n)]


def _scan(n: int, b: int, lo: int, hi: int, want_reps: bool) -> tuple[int, list[tuple]]:
    """Count labeled connected minimal graphs with edge masks in [lo, hi)."""
    tables = _chunk_tables(n)
    t0 = tables[0]
    t1 = tables[1] if len(tables) > 1 else [0]
    t2 = tables[2] if len(tables) > 2 else [0]
    bits = _bits(n)
    shifts = [_ROW_BITS * v for v in range(n)]
    full = (1 << n) - 1
    base = [0] * b + [1] * (n - b)
    base_k = len(set(base))
    rng = range(n)
    count = 0
    reps: list[tuple] = []
    for mask in range(lo, hi):
        packed = t0[mask & 127] | t1[(mask >> 7) & 127] | t2[mask >> 14]
        rows = [(packed >> s) & 255 for s in shifts]
        # connectivity by closure from vertex 0
        reach = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits[frontier]:
                nxt |= rows[v]
            frontier = nxt & ~reach
            reach |= nxt
        if reach != full:
            continue
        # same color and same neighborhood can never be separated
        if len(set(rows[:b])) != b or len(set(rows[b:])) != n - b:
            continue
        cls = base
        k = base_k
        while True:
            keys = {}
            new = []
            for v in rng:
                m = 0
                for w in bits[rows[v]]:
                    m |= 1 << cls[w]
                key = (m << 3) | cls[v]
                new.append(keys.setdefault(key, len(keys)))
            if len(keys) == k:
                break
            cls, k = new, len(keys)
            if k == n:
                break
        if k != n:
            continue
        count += 1
        if want_reps:
            edges = [(u, v) for u in rng for v in bits[rows[u]] if v >= u]
            g = BicoloredGraph.from_edges(base_colors(n, b), edges)
            if canonical_form(g) == g:
                reps.append(tuple(edges))
    return count, reps


def base_colors(n: int, b: int) -> tuple[Color, ...]:
    return (Color.BLACK,) * b + (Color.WHITE,) * (n - b)


def _shards(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _scan_task(args):
    return _scan(*args)


def _labeled_count(n: int, b: int, jobs: int, want_reps: bool) -> tuple[int, list[tuple]]:
    total = 1 << (n * (n + 1) // 2)
    lo = 1 if n == 1 else 0  # the edgeless one-vertex graphs are excluded
    if jobs <= 1 or total < 1 << 12:
        return _scan(n, b, lo, total, want_reps)
    tasks = [(n, b, max(a, lo), z, want_reps) for a, z in _shards(total, 4 * jobs)]
    count, reps = 0, []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for c, r in pool.map(_scan_task, tasks):
            count += c
            reps.extend(r)
    return count, reps


def _check_guard(n: int):
    if not 1 <= n <= MAX_N:
        raise ValueError(f"census supports 1 <= n <= {MAX_N}; got n={n}")


def _count_for(n: int, b: int, jobs: int, want_reps: bool) -> tuple[int, list[BicoloredGraph]]:
    """Isomorphism-class count and, optionally, canonical representatives."""
    mirror = b > n - b
    bb = n - b if mirror else b
    labeled, raw = _labeled_count(n, bb, jobs, want_reps)
    denom = math.factorial(bb) * math.factorial(n - bb)
    if labeled % denom:
        raise CensusError(f"labeled count {labeled} for n={n}, b={bb} is not divisible by {denom}")
    count = labeled // denom
    reps: list[BicoloredGraph] = []
    if want_reps:
        reps = [BicoloredGraph.from_edges(base_colors(n, bb), e) for e in raw]
        if mirror:
            reps = [canonical_form(g.color_swapped()) for g in reps]
        reps.sort(key=format_graph)
        if len(reps) != count:
            raise CensusError(f"{len(reps)} representatives for {count} classes")
    return count, reps


def enumerate_minimal(
    n: int,
    b: Optional[int] = None,
    emit: Optional[Callable[[BicoloredGraph], None]] = None,
    jobs: Optional[int] = 1,
) -> CensusRow | int:
    """Count connected minimal graphs on ``n`` vertices, for one ``b`` or the whole row.

    ``emit`` receives one canonical representative per isomorphism class, in
    a deterministic order. ``jobs=None`` uses every available core.
    """
    _check_guard(n)
    if b is not None and not 0 <= b <= n:
        raise ValueError(f"b must lie in 0..{n}")
    if jobs is None:
        jobs = os.cpu_count() or 1
    want = emit is not None
    if b is not None:
        count, reps = _count_for(n, b, jobs, want)
        for g in reps:
            emit(g)
        return count
    counts = [0] * (n + 1)
    all_reps: list[list[BicoloredGraph]] = [[] for _ in range(n + 1)]
    for bb in range(n // 2 + 1):
        counts[bb], all_reps[bb] = _count_for(n, bb, jobs, want)
        counts[n - bb] = counts[bb]
        if want and n - bb != bb:
            all_reps[n - bb] = sorted((canonical_form(g.color_swapped()) for g in all_reps[bb]), key=format_graph)
    if want:
        for reps in all_reps:
            for g in reps:
                emit(g)
    return CensusRow(n, tuple(counts))


def cumulative_qi_classes(N: int, jobs: Optional[int] = 1) -> int:
    """Number of minimal graphs with at most ``N`` vertices (the two edgeless singletons excluded)."""
    _check_guard(N)
    return sum(enumerate_minimal(n, jobs=jobs).total for n in range(1, N + 1))
