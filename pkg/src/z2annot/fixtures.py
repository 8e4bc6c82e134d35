"""Small named complexes and random generators used by tests and benchmarks."""

from __future__ import annotations

import itertools
import random

from .complex import SimplicialComplex, build_complex, parse_complex

# Disk with two holes.  Vertex 0 is the BFS root, so the tree is
# {01, 02, 03, 04} and the non-tree edges in id order are
# e1 = 14, e2 = 12, e3 = 23, e4 = 13.  Triangles 123 and 014 are filled;
# 012 and 023 are the holes; the outer boundary is 0-4-1-3-0.
TWO_HOLED_DISK = """\
# sentinel edges e1..e4
1 4
1 2
2 3
1 3
# spanning tree
0 1
0 2
0 3
0 4
# filled triangles
1 2 3
0 1 4
"""

TWO_HOLED_DISK_OUTER = [(0, 4), (1, 4), (1, 3), (0, 3)]
TWO_HOLED_DISK_E234 = [(1, 2), (2, 3), (1, 3)]


def two_holed_disk() -> SimplicialComplex:
    return parse_complex(TWO_HOLED_DISK)


def triangle_graph() -> SimplicialComplex:
    return build_complex([(0, 1), (1, 2), (0, 2)])


def filled_triangle() -> SimplicialComplex:
    return build_complex([(0, 1, 2)])


def hollow_tetrahedron() -> SimplicialComplex:
    return build_complex(list(itertools.combinations(range(4), 3)))


def solid_tetrahedron() -> SimplicialComplex:
    return build_complex([(0, 1, 2, 3)])


def seven_vertex_torus() -> SimplicialComplex:
    """Minimal (Moebius/Csaszar) torus: 7 vertices, 21 edges, 14 triangles."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return build_complex(tris)


def cycle_graph(n: int, weights=None) -> SimplicialComplex:
    edges = []
    for i in range(n):
        e = (i, (i + 1) % n)
        edges.append((e, 1.0 if weights is None else weights[i]))
    return build_complex(edges)


def annulus(n: int = 6) -> SimplicialComplex:
    """Triangulated annulus: inner ring 0..n-1, outer ring n..2n-1."""
    tris = []
    for i in range(n):
        j = (i + 1) % n
        tris.append((i, j, n + i))
        tris.append((j, n + i, n + j))
    return build_complex(tris)


def grid_with_holes(rows: int, cols: int, holes=(), weight=None) -> SimplicialComplex:
    """Triangulated ``rows x cols`` grid of squares with some squares removed.

    Each removed square ``(i, j)`` leaves a hole (its four edges remain).
    ``weight(a, b)`` may assign edge weights.
    """
    holes = set(holes)

    def v(i, j):
        return i * (cols + 1) + j

    items = []
    for i in range(rows):
        for j in range(cols):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            if (i, j) in holes:
                for e in ((a, b), (a, c), (b, d), (c, d)):
                    items.append(e)
            else:
                items.append((a, b, d))
                items.append((a, c, d))
    k = build_complex(items)
    if weight is None:
        return k
    return reweight_edges(k, lambda e: weight(*e))


def annulus_chain(g: int = 8, n0: int = 200) -> SimplicialComplex:
    """A strip of three rows of squares with ``g`` holes in the middle row."""
    cols = n0 // 4 - 1
    if cols < 2 * g:
        raise ValueError("too few vertices for the requested number of holes")
    step = cols // g
    holes = [(1, step // 2 + t * step) for t in range(g)]
    return grid_with_holes(3, cols, holes)


def torus_grid(n: int, m: int) -> SimplicialComplex:
    def v(i, j):
        return (i % n) * m + (j % m)

    tris = []
    for i in range(n):
        for j in range(m):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            tris.append((a, b, d))
            tris.append((a, c, d))
    return build_complex(tris)


def reweight_edges(k: SimplicialComplex, weight) -> SimplicialComplex:
    """Copy of ``k`` with edge weights ``weight(edge_vertex_tuple)``."""
    items = []
    for p, group in enumerate(k.simplices):
        for s, w in zip(group, k.weights[p]):
            items.append((s, float(weight(s)) if p == 1 else w))
    return build_complex(items)


def random_complex(
    rng: random.Random,
    n_vertices: int = 8,
    edge_prob: float = 0.5,
    tri_prob: float = 0.3,
    tet_prob: float = 0.0,
    max_weight: int | None = None,
    max_cycle_rank: int | None = 16,
) -> SimplicialComplex:
    """Random connected complex: random graph plus random filled cliques.

    A random spanning tree guarantees connectivity.  Triangles are drawn from
    the graph's 3-cliques, tetrahedra from its 4-cliques whose triangles were
    all chosen.  With ``max_weight`` edges get integer weights in
    ``1..max_weight``.  Edges are dropped until the cycle rank of the graph is
    at most ``max_cycle_rank``.
    """
    verts = list(range(n_vertices))
    rng.shuffle(verts)
    edges = set()
    for i in range(1, n_vertices):
        a, b = verts[i], verts[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    tree = set(edges)
    for a, b in itertools.combinations(range(n_vertices), 2):
        if (a, b) not in edges and rng.random() < edge_prob:
            edges.add((a, b))
    if max_cycle_rank is not None:
        extra = sorted(edges - tree)
        rng.shuffle(extra)
        while len(edges) - n_vertices + 1 > max_cycle_rank:
            edges.discard(extra.pop())
    tris = [
        t for t in itertools.combinations(range(n_vertices), 3)
        if all(e in edges for e in itertools.combinations(t, 2)) and rng.random() < tri_prob
    ]
    tri_set = set(tris)
    tets = [
        t for t in itertools.combinations(range(n_vertices), 4)
        if tet_prob and all(f in tri_set for f in itertools.combinations(t, 3)) and rng.random() < tet_prob
    ]
    items = []
    for e in sorted(edges, key=lambda _: rng.random()):
        w = float(rng.randint(1, max_weight)) if max_weight else 1.0
        items.append((e, w))
    items.extend(tris)
    items.extend(tets)
    return build_complex(items)
