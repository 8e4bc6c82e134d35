"""Annotation of p-simplices with homology coordinates.

The construction has three steps:

1. a cycle basis ``Z`` whose members each own a *sentinel* simplex that no
   other member contains (spanning-tree cycles for ``p = 1``, the
   coordinate decomposition of the boundary matrix in general);
2. a homology basis ``H``, taken as the cycles of ``Z`` that enter the
   earliest basis of ``[boundary_{p+1} | Z]``;
3. the coordinates of every sentinel cycle in that earliest basis, of which
   the ``H`` part becomes the annotation of its sentinel.

Annotations are packed ints with ``g`` bits: bit ``i`` is the coefficient of
``homology_basis[i]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complex import Chain, SimplicialComplex, is_cycle
from .z2core import ColumnReducer, iter_bits, reduce_columns


class NotACycleError(ValueError):
    pass


@dataclass(frozen=True)
class SpanningTree:
    """Rooted spanning tree of the 1-skeleton (vertices are 0-simplex ids)."""

    root: int
    parent: tuple[int, ...]
    parent_edge: tuple[int, ...]
    order: tuple[int, ...]

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for e in self.parent_edge if e >= 0)

    def path_to_root(self, v: int) -> list[int]:
        """Edge ids on the tree path from ``v`` up to the root."""
        out = []
        while self.parent[v] >= 0:
            out.append(self.parent_edge[v])
            v = self.parent[v]
        return out


@dataclass(frozen=True)
class SentinelStructure:
    dim: int
    sentinels: tuple[int, ...]
    non_sentinels: frozenset[int]
    cycle_of: dict[int, Chain]

    def cycles(self) -> list[Chain]:
        return [self.cycle_of[s] for s in self.sentinels]


@dataclass(frozen=True)
class AnnotationIndex:
    complex: SimplicialComplex
    dim: int
    g: int
    ann: tuple[int, ...]
    homology_basis: tuple[Chain, ...]
    sentinel_structure: SentinelStructure

    def vector(self, sid: int) -> tuple[int, ...]:
        """Annotation of simplex ``sid`` as a tuple of ``g`` bits."""
        return unpack(self.ann[sid], self.g)

    def annotate_members(self, members: int) -> int:
        ann = self.ann
        acc = 0
        for sid in iter_bits(members):
            acc ^= ann[sid]
        return acc


def unpack(bits: int, g: int) -> tuple[int, ...]:
    return tuple((bits >> i) & 1 for i in range(g))


def pack(vector) -> int:
    return sum(1 << i for i, b in enumerate(vector) if b)


# ---------------------------------------------------------------------------
# Step 1: sentinel cycles
# ---------------------------------------------------------------------------


def build_spanning_tree(k: SimplicialComplex) -> SpanningTree:
    """BFS tree from the smallest vertex label, neighbours in label order."""
    n = k.count(0)
    labels = k.vertices
    root = min(range(n), key=labels.__getitem__)
    adj = k.adjacency()
    parent = [-1] * n
    parent_edge = [-1] * n
    seen = [False] * n
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, e in adj[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                parent_edge[v] = e
                order.append(v)
                queue.append(v)
    if len(order) != n:
        raise ValueError("1-skeleton is disconnected")
    return SpanningTree(root, tuple(parent), tuple(parent_edge), tuple(order))


def root_paths(tree: SpanningTree) -> list[int]:
    """Packed edge set of the tree path from each vertex to the root."""
    paths = [0] * len(tree.parent)
    for v in tree.order:
        p = tree.parent[v]
        if p >= 0:
            paths[v] = paths[p] ^ (1 << tree.parent_edge[v])
    return paths


def sentinel_cycles_1(k: SimplicialComplex, tree: SpanningTree | None = None) -> SentinelStructure:
    if tree is None:
        tree = build_spanning_tree(k)
    paths = root_paths(tree)
    tree_edges = tree.edges
    cycle_of = {}
    sentinels = []
    for e, (a, b) in enumerate(k.edge_endpoints()):
        if e in tree_edges:
            continue
        sentinels.append(e)
        cycle_of[e] = Chain(1, paths[a] ^ paths[b] ^ (1 << e))
    return SentinelStructure(1, tuple(sentinels), tree_edges, cycle_of)


def sentinel_cycles_p(k: SimplicialComplex, p: int) -> SentinelStructure:
    """Sentinels from the coordinate decomposition of the boundary matrix.

    The earliest-basis columns of the ``p``-boundary matrix are the
    non-sentinels; every other simplex, together with the basis simplices
    whose boundaries sum to its own, forms its sentinel cycle.
    """
    if not 1 <= p <= k.dim:
        raise ValueError(f"dimension {p} out of range 1..{k.dim}")
    basis, coords = reduce_columns(k.boundary_columns(p), track=True)
    in_basis = frozenset(basis)
    cycle_of = {}
    sentinels = []
    for j in range(k.count(p)):
        if j in in_basis:
            continue
        members = 1 << j
        for t in iter_bits(coords[j]):
            members |= 1 << basis[t]
        sentinels.append(j)
        cycle_of[j] = Chain(p, members)
    return SentinelStructure(p, tuple(sentinels), in_basis, cycle_of)


def sentinel_structure(k: SimplicialComplex, p: int, *, algebraic: bool = False) -> SentinelStructure:
    if p == 1 and not algebraic:
        return sentinel_cycles_1(k)
    return sentinel_cycles_p(k, p)


# ---------------------------------------------------------------------------
# Steps 2 and 3
# ---------------------------------------------------------------------------


def _stacked_reduction(k: SimplicialComplex, p: int, s: SentinelStructure) -> tuple[list[int], list[int]]:
    """One left-to-right pass over ``[boundary_{p+1} | Z]``.

    Returns the positions (in ``s.sentinels``) of the cycles selected for
    ``H`` and the ``H``-coordinates of every sentinel cycle.  Boundary pivots
    carry zero ``H``-coordinates, so only the homology part of each solution
    of the stacked system is tracked.
    """
    red = ColumnReducer(track=True)
    for col in k.boundary_columns(p + 1):
        red.add(col, unit=0)
    chosen: list[int] = []
    coords: list[int] = []
    for i, sid in enumerate(s.sentinels):
        independent, c = red.add(s.cycle_of[sid].members, unit=1 << len(chosen))
        if independent:
            chosen.append(i)
        coords.append(c)
    return chosen, coords


def homology_basis(k: SimplicialComplex, p: int, s: SentinelStructure) -> list[Chain]:
    if s.dim != p:
        raise ValueError("sentinel structure built for a different dimension")
    chosen, _ = _stacked_reduction(k, p, s)
    return [s.cycle_of[s.sentinels[i]] for i in chosen]


def build_annotation_index(k: SimplicialComplex, p: int = 1, *, algebraic: bool = False) -> AnnotationIndex:
    """Annotate all ``p``-simplices of ``k``.

    For ``p = 1`` the spanning-tree construction is used unless
    ``algebraic`` forces the general boundary-decomposition route.
    """
    if not 1 <= p <= k.dim:
        raise ValueError(f"dimension {p} out of range 1..{k.dim}")
    s = sentinel_structure(k, p, algebraic=algebraic)
    chosen, coords = _stacked_reduction(k, p, s)
    ann = [0] * k.count(p)
    for sid, c in zip(s.sentinels, coords):
        ann[sid] = c
    basis = tuple(s.cycle_of[s.sentinels[i]] for i in chosen)
    return AnnotationIndex(k, p, len(chosen), tuple(ann), basis, s)


def annotate_cycle(idx: AnnotationIndex, z: Chain) -> int:
    """Packed homology coordinates of the cycle ``z``."""
    if z.dim != idx.dim:
        raise ValueError(f"expected a {idx.dim}-cycle, got dimension {z.dim}")
    if not is_cycle(idx.complex, z):
        raise NotACycleError("chain is not a cycle")
    return idx.annotate_members(z.members)
