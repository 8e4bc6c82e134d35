import itertools

import pytest

from z2annot import fixtures
from z2annot.annotate import annotate_cycle, build_annotation_index
from z2annot.complex import Chain, build_complex, is_cycle
from z2annot.errors import CapacityError
from z2annot.opthom import (
    OptimalCycles,
    all_class_optima,
    build_covering_graph,
    class_dp,
    shortest_closed_walks,
    shortest_homologous_cycle,
)
from z2annot.oracle import brute_shortest_per_class, brute_shortest_per_class_witness

from conftest import random_complexes


def lifted_distances(cg):
    """Floyd-Warshall on the explicitly built covering graph."""
    n = cg.num_vertices
    inf = float("inf")
    d = [[inf] * n for _ in range(n)]
    for x in range(n):
        d[x][x] = 0.0
    for v in range(len(cg.vertex_at)):
        for h in range(1 << cg.g):
            x = cg.lift(v, h)
            for (u, h2), w, _ in cg.neighbors(v, h):
                y = cg.lift(u, h2)
                d[x][y] = min(d[x][y], w)
    for m, i, j in itertools.product(range(n), repeat=3):
        if d[i][m] + d[m][j] < d[i][j]:
            d[i][j] = d[i][m] + d[m][j]
    return d


def test_g0_is_single_sheet():
    k = fixtures.filled_triangle()
    cg = build_covering_graph(k, build_annotation_index(k))
    assert cg.g == 0 and cg.num_vertices == 3 and cg.num_edges == 3
    opt = all_class_optima(k, build_annotation_index(k))
    assert opt == {0: (Chain(1, 0), 0.0)}


def test_double_cover_of_cycle():
    k = fixtures.cycle_graph(4)
    idx = build_annotation_index(k)
    cg = build_covering_graph(k, idx)
    assert cg.num_vertices == 8 and cg.num_edges == 8
    (sentinel,) = idx.sentinel_structure.sentinels
    a, b = k.edge_endpoints()[sentinel]
    assert ((b, 1), 1.0, sentinel) in list(cg.neighbors(a, 0))
    for v in range(4):
        for h in (0, 1):
            for (_, h2), _, e in cg.neighbors(v, h):
                assert h2 == h ^ (e == sentinel)


def test_disk_cover_has_four_sheets(disk):
    idx = build_annotation_index(disk)
    cg = build_covering_graph(disk, idx)
    assert cg.num_vertices == 4 * 5 and cg.num_edges == 4 * disk.count(1)
    for v in range(5):
        for h in range(4):
            assert len(list(cg.neighbors(v, h))) == len(disk.adjacency()[v])


@pytest.mark.parametrize("k", [fixtures.two_holed_disk(), fixtures.annulus(4), fixtures.seven_vertex_torus()], ids=["disk", "annulus", "torus"])
def test_walk_lengths_match_explicit_cover(k):
    idx = build_annotation_index(k)
    cg = build_covering_graph(k, idx)
    d = lifted_distances(cg)
    table = shortest_closed_walks(k, idx)
    n = len(cg.vertex_at)
    for h in range(1 << cg.g):
        expect = 0.0 if h == 0 else min(d[cg.lift(v, 0)][cg.lift(v, h)] for v in range(n))
        assert table.lengths[h] == expect
        # deck symmetry: distance (v, a) -> (v, a ^ h) does not depend on a
        for v in range(n):
            assert len({d[cg.lift(v, a)][cg.lift(v, a ^ h)] for a in range(1 << cg.g)}) == 1


def test_witness_walks_are_closed_and_annotated(torus7):
    idx = build_annotation_index(torus7)
    table = shortest_closed_walks(torus7, idx)
    ends = torus7.edge_endpoints()
    assert table.witness[0] == ((), ())
    for h in range(1, 4):
        verts, edges = table.witness[h]
        assert verts[0] == verts[-1] and len(verts) == len(edges) + 1
        for a, b, e in zip(verts, verts[1:], edges):
            assert set(ends[e]) == {a, b}
        assert sum(torus7.weights[1][e] for e in edges) == table.lengths[h]
        acc = 0
        for e in edges:
            acc ^= idx.ann[e]
        assert acc == h


def test_annulus_walk_is_hole_girth():
    k = fixtures.annulus(5)
    idx = build_annotation_index(k)
    assert shortest_closed_walks(k, idx).lengths == (0.0, 5.0)


def test_disk_class_11_walk_vs_cycle_optimum(disk):
    idx = build_annotation_index(disk)
    table = shortest_closed_walks(disk, idx)
    by_ann = {annotate_cycle(idx, z): w for w, z in brute_shortest_per_class_witness(disk).values()}
    assert table.lengths[0b11] == by_ann[0b11] == 3.0
    assert disk.weight(disk.chain(fixtures.TWO_HOLED_DISK_OUTER)) == 4.0


def test_dp_basics():
    k = fixtures.annulus(4)
    solver = OptimalCycles.compute(k, build_annotation_index(k))
    assert solver.dp.value(1, 1) == solver.walks.lengths[1]
    assert solver.dp.value(0) == 0.0
    k = fixtures.seven_vertex_torus()
    dp = OptimalCycles.compute(k, build_annotation_index(k)).dp
    for h in range(4):
        assert dp.value(0, 1) == 0.0
        vals = [dp.value(h, j) for j in range(1, 3)]
        assert vals == sorted(vals, reverse=True)


def test_dp_components_at_most_g():
    k = fixtures.grid_with_holes(5, 7, holes=[(1, 1), (1, 4), (3, 2)])
    idx = build_annotation_index(k)
    solver = OptimalCycles.compute(k, idx)
    for h in range(1 << idx.g):
        opt = solver.optimum(h)
        assert len(opt.components) <= idx.g
        assert annotate_cycle(idx, opt.cycle) == h


@pytest.mark.parametrize("k", random_complexes(12, seed=41, max_g=4, max_weight=9), ids=lambda _: "")
def test_class_optima_match_oracle(k):
    idx = build_annotation_index(k)
    solver = OptimalCycles.compute(k, idx)
    best = brute_shortest_per_class(k)
    by_ann = {}
    for c, (w, z) in brute_shortest_per_class_witness(k).items():
        by_ann[annotate_cycle(idx, z)] = w
    assert len(by_ann) == len(best) == 1 << idx.g
    for h in range(1 << idx.g):
        opt = solver.optimum(h)
        assert is_cycle(k, opt.cycle)
        assert annotate_cycle(idx, opt.cycle) == h
        assert opt.weight == by_ann[h] == solver.dp.value(h)


def test_shortest_homologous_cycle(disk):
    idx = build_annotation_index(disk)
    z, w = shortest_homologous_cycle(disk, idx, disk.chain([(1, 2), (2, 3), (1, 3)]))
    assert z == Chain(1, 0) and w == 0.0
    outer = disk.chain(fixtures.TWO_HOLED_DISK_OUTER)
    z, w = shortest_homologous_cycle(disk, idx, outer)
    by_ann = {annotate_cycle(idx, c): cw for cw, c in brute_shortest_per_class_witness(disk).values()}
    assert annotate_cycle(idx, z) == 0b11 and w == by_ann[0b11] == 3.0
    hole = idx.homology_basis[0]
    z, w = shortest_homologous_cycle(disk, idx, hole)
    assert w == disk.weight(hole) == 3.0


def test_torus_all_classes(torus7):
    idx = build_annotation_index(torus7)
    opt = all_class_optima(torus7, idx)
    assert sorted(opt) == [0, 1, 2, 3]
    assert sorted(w for _, w in opt.values()) == sorted(brute_shortest_per_class(torus7).values())


def test_capacity_error_reports_memory():
    k = fixtures.annulus_chain(g=5, n0=44)
    idx = build_annotation_index(k)
    assert idx.g == 5
    with pytest.raises(CapacityError, match="MiB"):
        build_covering_graph(k, idx, g_cap=4)


def test_threads_give_identical_tables(torus7):
    k = fixtures.grid_with_holes(5, 6, holes=[(1, 1), (2, 3)])
    idx = build_annotation_index(k)
    a = shortest_closed_walks(k, idx, threads=1)
    b = shortest_closed_walks(k, idx, threads=4)
    assert a == b
    assert (class_dp(a).cost == class_dp(b).cost).all()


def test_covering_needs_edge_annotation():
    k = fixtures.hollow_tetrahedron()
    with pytest.raises(ValueError):
        build_covering_graph(k, build_annotation_index(k, 2))


def test_weighted_cycle_graph():
    k = build_complex([((0, 1), 2.0), ((1, 2), 3.5), ((0, 2), 0.5)])
    idx = build_annotation_index(k)
    assert all_class_optima(k, idx)[1][1] == 6.0
