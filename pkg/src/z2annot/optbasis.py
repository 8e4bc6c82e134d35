"""Shortest homology basis of H_1 from annotated shortest-path-tree cycles."""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .annotate import AnnotationIndex, build_annotation_index
from .complex import Chain, SimplicialComplex
from .queries import block_earliest_basis


@dataclass(frozen=True)
class ShortestPathTree:
    """Single-source shortest path tree over the 1-skeleton.

    Ties are broken deterministically: vertices settle in order of
    ``(distance, label)`` and each vertex takes as parent the smallest-label
    neighbour that settled before it on a shortest path.
    """

    source: int
    dist: tuple[float, ...]
    parent: tuple[int, ...]
    parent_edge: tuple[int, ...]
    order: tuple[int, ...]

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for e in self.parent_edge if e >= 0)

    def root_paths(self) -> list[int]:
        paths = [0] * len(self.parent)
        for v in self.order:
            p = self.parent[v]
            if p >= 0:
                paths[v] = paths[p] ^ (1 << self.parent_edge[v])
        return paths


@dataclass(frozen=True)
class CandidateCycle:
    source: int
    edge: int
    weight: float
    annotation: int


@dataclass(frozen=True)
class HomologyBasis:
    cycles: tuple[Chain, ...]
    weights: tuple[float, ...]
    annotations: tuple[int, ...]
    candidates: tuple[CandidateCycle, ...]
    total_weight: float
    g: int


def shortest_path_tree(k: SimplicialComplex, s: int) -> ShortestPathTree:
    """Dijkstra from the 0-simplex with id ``s``."""
    n = k.count(0)
    labels = k.vertices
    adj = k.adjacency()
    w = k.weights[1] if k.dim >= 1 else ()
    inf = float("inf")
    dist = [inf] * n
    done = [False] * n
    parent = [-1] * n
    parent_edge = [-1] * n
    order = []
    dist[s] = 0.0
    heap = [(0.0, labels[s], s)]
    while heap:
        d, _, v = heapq.heappop(heap)
        if done[v] or d > dist[v]:
            continue
        done[v] = True
        order.append(v)
        if v != s:
            for u, e in adj[v]:
                if done[u] and u != v and dist[u] + w[e] == d:
                    parent[v] = u
                    parent_edge[v] = e
                    break
        for u, e in adj[v]:
            if not done[u]:
                nd = d + w[e]
                if nd < dist[u]:
                    dist[u] = nd
                    heapq.heappush(heap, (nd, labels[u], u))
    if len(order) != n:
        raise ValueError("1-skeleton is disconnected")
    return ShortestPathTree(s, tuple(dist), tuple(parent), tuple(parent_edge), tuple(order))


def annotate_tree_vertices(tree: ShortestPathTree | object, idx: AnnotationIndex) -> list[int]:
    """Label each vertex with the annotation of its tree path from the root."""
    labels = [0] * len(tree.parent)
    ann = idx.ann
    for v in tree.order:
        p = tree.parent[v]
        if p >= 0:
            labels[v] = labels[p] ^ ann[tree.parent_edge[v]]
    return labels


def _source_candidates(k: SimplicialComplex, idx: AnnotationIndex, s: int) -> list[CandidateCycle]:
    tree = shortest_path_tree(k, s)
    labels = annotate_tree_vertices(tree, idx)
    tree_edges = tree.edges
    w = k.weights[1]
    dist = tree.dist
    ann = idx.ann
    out = []
    for e, (x, y) in enumerate(k.edge_endpoints()):
        if e in tree_edges:
            continue
        out.append(CandidateCycle(s, e, dist[x] + dist[y] + w[e], labels[x] ^ labels[y] ^ ann[e]))
    return out


def candidate_cycles(k: SimplicialComplex, idx: AnnotationIndex, threads: int = 1) -> list[CandidateCycle]:
    """All spanning-tree cycles of all shortest path trees, with annotations.

    Sources are visited in label order; within a source, edges in id order.
    """
    if idx.dim != 1:
        raise ValueError("candidate cycles need an edge annotation (p = 1)")
    labels = k.vertices
    sources = sorted(range(k.count(0)), key=labels.__getitem__)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_source = list(pool.map(lambda s: _source_candidates(k, idx, s), sources))
    else:
        per_source = [_source_candidates(k, idx, s) for s in sources]
    return [c for group in per_source for c in group]


def materialize(k: SimplicialComplex, c: CandidateCycle) -> Chain:
    paths = shortest_path_tree(k, c.source).root_paths()
    x, y = k.edge_endpoints()[c.edge]
    return Chain(1, paths[x] ^ paths[y] ^ (1 << c.edge))


def sort_candidates(k: SimplicialComplex, candidates: Sequence[CandidateCycle]) -> list[CandidateCycle]:
    labels = k.vertices
    return sorted(candidates, key=lambda c: (c.weight, labels[c.source], c.edge))


def shortest_homology_basis(
    k: SimplicialComplex,
    idx: AnnotationIndex | None = None,
    threads: int = 1,
) -> HomologyBasis:
    """Greedy earliest basis over the weight-sorted candidate cycles."""
    if idx is None:
        idx = build_annotation_index(k, 1)
    if idx.g == 0:
        return HomologyBasis((), (), (), (), 0.0, 0)
    ordered = sort_candidates(k, candidate_cycles(k, idx, threads))
    chosen = block_earliest_basis([c.annotation for c in ordered], idx.g)
    winners = tuple(ordered[i] for i in chosen)
    cycles = tuple(materialize(k, c) for c in winners)
    weights = tuple(k.weight(z) for z in cycles)
    return HomologyBasis(
        cycles=cycles,
        weights=weights,
        annotations=tuple(c.annotation for c in winners),
        candidates=winners,
        total_weight=sum(weights, 0.0),
        g=idx.g,
    )
