"""Shortest cycle in every H_1 class via the annotation covering graph.

Lifted vertices ``(v, h)`` are encoded as ints ``rank(v) << g | h`` where
``rank`` orders vertices by label, so comparing encoded ids is comparing
``(label, h)`` lexicographically.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .annotate import AnnotationIndex, annotate_cycle
from .complex import Chain, SimplicialComplex
from .errors import CapacityError

DEFAULT_G_CAP = 14

_BYTES_PER_LIFTED_VERTEX = 40


@dataclass(frozen=True)
class CoveringGraph:
    complex: SimplicialComplex
    g: int
    edge_ann: tuple[int, ...]
    rank_of: tuple[int, ...]
    vertex_at: tuple[int, ...]
    # ranked adjacency: rank -> ((neighbour rank, edge id, weight), ...) by neighbour rank
    adj: tuple[tuple[tuple[int, int, float], ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_at) << self.g

    @property
    def num_edges(self) -> int:
        return self.complex.count(1) << self.g

    def lift(self, v: int, h: int) -> int:
        return self.rank_of[v] << self.g | h

    def unlift(self, x: int) -> tuple[int, int]:
        return self.vertex_at[x >> self.g], x & ((1 << self.g) - 1)

    def neighbors(self, v: int, h: int):
        """Yield ``((u, h'), weight, edge id)`` for each lifted neighbour."""
        for ur, e, w in self.adj[self.rank_of[v]]:
            yield (self.vertex_at[ur], h ^ self.edge_ann[e]), w, e


@dataclass(frozen=True)
class ClassWalkTable:
    g: int
    lengths: tuple[float, ...]
    # witness[h] = (vertex sequence as 0-simplex ids, edge ids along the walk)
    witness: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def chain(self, h: int) -> Chain:
        members = 0
        for e in self.witness[h][1]:
            members ^= 1 << e
        return Chain(1, members)


@dataclass(frozen=True)
class ClassDPTable:
    g: int
    # cost[k, h] for k = 1..g (row 0 unused); back[k, h] = split class h2
    cost: np.ndarray
    back: np.ndarray

    def value(self, h: int, k: int | None = None) -> float:
        return float(self.cost[max(self.g, 1) if k is None else k, h])

    def components(self, h: int, k: int | None = None) -> list[int]:
        """Classes of the closed walks whose union realizes ``C(h, k)``."""
        k = self.g if k is None else k
        parts = []
        while k >= 1 and h:
            if k == 1:
                parts.append(h)
                break
            h2 = int(self.back[k, h])
            if h2:
                parts.append(h2)
                h ^= h2
            k -= 1
        return parts


@dataclass(frozen=True)
class ClassOptimum:
    cls: int
    cycle: Chain
    weight: float
    components: tuple[int, ...]


def covering_memory_estimate(n0: int, g: int) -> int:
    return (n0 << g) * _BYTES_PER_LIFTED_VERTEX + (g + 1) * (1 << g) * 16


def build_covering_graph(k: SimplicialComplex, idx: AnnotationIndex, g_cap: int = DEFAULT_G_CAP) -> CoveringGraph:
    if idx.dim != 1:
        raise ValueError("the covering graph needs an edge annotation (p = 1)")
    g = idx.g
    if g > g_cap:
        need = covering_memory_estimate(k.count(0), g)
        raise CapacityError(
            f"g = {g} exceeds the cap of {g_cap}: covering graph would have "
            f"{k.count(0) << g} vertices (about {need / 2**20:.1f} MiB)"
        )
    labels = k.vertices
    vertex_at = tuple(sorted(range(k.count(0)), key=labels.__getitem__))
    rank_of = [0] * len(vertex_at)
    for r, v in enumerate(vertex_at):
        rank_of[v] = r
    w = k.weights[1] if k.dim >= 1 else ()
    adj = k.adjacency()
    ranked = tuple(
        tuple((rank_of[u], e, w[e]) for u, e in adj[v]) for v in vertex_at
    )
    return CoveringGraph(k, g, tuple(idx.ann), tuple(rank_of), vertex_at, ranked)


class _Bound:
    """Largest current best length over nonzero classes (monotone)."""

    def __init__(self, size: int):
        self.best = [float("inf")] * size
        self.best[0] = 0.0
        self.value = float("inf") if size > 1 else 0.0

    def offer(self, h: int, d: float) -> None:
        if d < self.best[h]:
            self.best[h] = d
            self.value = max(self.best[1:]) if len(self.best) > 1 else 0.0


def _walks_from(cg: CoveringGraph, src: int, bound: _Bound) -> dict[int, tuple[float, list[int], list[int]]]:
    """Closed walks at ranked vertex ``src`` inside the vertices ranked ``>= src``.

    Returns ``h -> (length, ranked vertex sequence, edge ids)`` for each class
    whose lifted target was settled with length no worse than the running
    bound.  Any closed walk is found from its smallest-ranked vertex, so
    restricting each search this way loses nothing.
    """
    g = cg.g
    size = 1 << g
    mask = size - 1
    adj = cg.adj
    ann = cg.edge_ann
    start = src << g
    inf = float("inf")
    n_lifted = len(adj) << g
    dist = [inf] * n_lifted
    done = bytearray(n_lifted)
    pred: dict[int, tuple[int, int]] = {}
    found: dict[int, float] = {}
    dist[start] = 0.0
    heap = [(0.0, start)]
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        d, x = pop(heap)
        if done[x]:
            continue
        if d > bound.value:
            break
        done[x] = 1
        vr = x >> g
        h = x & mask
        nbrs = adj[vr]
        if x != start:
            for ur, e, w in nbrs:
                y = ur << g | (h ^ ann[e])
                if done[y] and dist[y] + w == d:
                    pred[x] = (y, e)
                    break
        if vr == src:
            found[h] = d
            if len(found) == size:
                break
        for ur, e, w in nbrs:
            if ur < src:
                continue
            y = ur << g | (h ^ ann[e])
            if done[y]:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                push(heap, (nd, y))
    out = {}
    for h, d in found.items():
        x = start | h
        verts = [src]
        edges = []
        while x != start:
            y, e = pred[x]
            edges.append(e)
            verts.append(y >> g)
            x = y
        verts.reverse()
        edges.reverse()
        out[h] = (d, verts, edges)
    return out


def shortest_closed_walks(
    k: SimplicialComplex,
    idx: AnnotationIndex,
    g_cap: int = DEFAULT_G_CAP,
    threads: int = 1,
) -> ClassWalkTable:
    """Shortest closed walk of every annotation class.

    Class 0 is the trivial walk of length 0.  Among equally short walks the
    one based at the smallest vertex label wins.
    """
    cg = build_covering_graph(k, idx, g_cap)
    size = 1 << cg.g
    n = len(cg.vertex_at)
    bound = _Bound(size)
    best: list[tuple[float, int] | None] = [None] * size
    walks: list[tuple[list[int], list[int]] | None] = [None] * size
    best[0] = (0.0, -1)
    walks[0] = ([], [])

    def merge(src: int, result: dict) -> None:
        for h, (d, verts, edges) in result.items():
            if h == 0:
                continue
            key = (d, src)
            if best[h] is None or key < best[h]:
                best[h] = key
                walks[h] = (verts, edges)
                bound.offer(h, d)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for src, result in zip(range(n), pool.map(lambda s: _walks_from(cg, s, bound), range(n))):
                merge(src, result)
    else:
        for src in range(n):
            merge(src, _walks_from(cg, src, bound))

    if any(b is None for b in best):
        missing = [h for h in range(size) if best[h] is None]
        raise ValueError(f"no closed walk found for classes {missing[:5]}")
    witness = []
    for verts, edges in walks:
        witness.append((tuple(cg.vertex_at[r] for r in verts), tuple(edges)))
    return ClassWalkTable(cg.g, tuple(b[0] for b in best), tuple(witness))


def class_dp(table: ClassWalkTable, g: int | None = None) -> ClassDPTable:
    """``C(h, k)``: best total length for class ``h`` using at most ``k`` walks.

    ``C(h, 1)`` is the shortest closed walk of class ``h``;
    ``C(h, k) = min over h2 of C(h ^ h2, k - 1) + C(h2, 1)``.  The split
    ``h2 = 0`` is tried first, so ties prefer fewer components.
    """
    g = table.g if g is None else g
    size = 1 << g
    levels = max(g, 1)
    cost = np.full((levels + 1, size), np.inf)
    back = np.zeros((levels + 1, size), dtype=np.int64)
    single = np.asarray(table.lengths, dtype=float)
    cost[1] = single
    hs = np.arange(size)
    for lvl in range(2, levels + 1):
        prev = cost[lvl - 1]
        cur = prev.copy()
        arg = np.zeros(size, dtype=np.int64)
        for h2 in range(1, size):
            cand = prev[hs ^ h2] + single[h2]
            better = cand < cur
            cur[better] = cand[better]
            arg[better] = h2
        cost[lvl] = cur
        back[lvl] = arg
    return ClassDPTable(g, cost, back)


def _assemble(k: SimplicialComplex, table: ClassWalkTable, dp: ClassDPTable, h: int) -> ClassOptimum:
    parts = dp.components(h)
    members = 0
    for part in parts:
        members ^= table.chain(part).members
    cycle = Chain(1, members)
    return ClassOptimum(h, cycle, k.weight(cycle), tuple(parts))


@dataclass(frozen=True)
class OptimalCycles:
    """Walk table plus DP table, ready to answer per-class queries."""

    complex: SimplicialComplex
    index: AnnotationIndex
    walks: ClassWalkTable
    dp: ClassDPTable

    @classmethod
    def compute(cls, k: SimplicialComplex, idx: AnnotationIndex, g_cap: int = DEFAULT_G_CAP, threads: int = 1):
        table = shortest_closed_walks(k, idx, g_cap, threads)
        return cls(k, idx, table, class_dp(table))

    def optimum(self, h: int) -> ClassOptimum:
        return _assemble(self.complex, self.walks, self.dp, h)

    def homologous(self, z: Chain) -> ClassOptimum:
        return self.optimum(annotate_cycle(self.index, z))


def shortest_homologous_cycle(
    k: SimplicialComplex,
    idx: AnnotationIndex,
    z: Chain,
    g_cap: int = DEFAULT_G_CAP,
    threads: int = 1,
) -> tuple[Chain, float]:
    h = annotate_cycle(idx, z)
    res = OptimalCycles.compute(k, idx, g_cap, threads).optimum(h)
    return res.cycle, res.weight


def all_class_optima(
    k: SimplicialComplex,
    idx: AnnotationIndex,
    g_cap: int = DEFAULT_G_CAP,
    threads: int = 1,
) -> dict[int, tuple[Chain, float]]:
    solver = OptimalCycles.compute(k, idx, g_cap, threads)
    out = {}
    for h in range(1 << idx.g):
        res = solver.optimum(h)
        out[h] = (res.cycle, res.weight)
    return out
