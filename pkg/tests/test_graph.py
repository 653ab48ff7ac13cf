import random

import numpy as np
import pytest
from generators import edge_lists, small_graphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import bfs_dist, nx_distances

from copnum.constructions import complete, cycle, grid_patch, path, petersen, regular_tree
from copnum.errors import EmptyGraph, InvalidInput, NoPath
from copnum.graph import (
    UNREACHABLE,
    DistanceMatrix,
    ball_and_sphere,
    boundary_edges,
    build_graph,
    connected_components,
    geodesic,
    relabel,
    remove_vertices,
)
from copnum.graphio import graph_from_json, graph_to_dot, graph_to_json


def test_build_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert g.adjacency == ((1,), (0, 2), (1,))


def test_build_dedups_reversed_pairs():
    assert build_graph(3, [(0, 1), (1, 0), (1, 2)]).adjacency == build_graph(3, [(0, 1), (1, 2)]).adjacency


def test_build_rejects_loop_and_range():
    with pytest.raises(InvalidInput):
        build_graph(2, [(0, 0)])
    with pytest.raises(InvalidInput):
        build_graph(2, [(0, 2)])


def test_empty_graph_rejected():
    with pytest.raises(InvalidInput):
        build_graph(0, [])


@given(edge_lists())
def test_graph_invariants(data):
    n, edges = data
    g = build_graph(n, edges)
    for v in range(n):
        nb = g.neighbors(v)
        assert v not in nb
        assert list(nb) == sorted(set(nb))
        for w in nb:
            assert v in g.neighbors(w)


def test_distance_examples():
    assert DistanceMatrix(path(3))(0, 2) == 2
    assert DistanceMatrix(petersen()).diameter() == 2
    two_edges = build_graph(4, [(0, 1), (2, 3)])
    assert DistanceMatrix(two_edges)(0, 3) == UNREACHABLE


@given(edge_lists())
def test_distances_match_networkx(data):
    n, edges = data
    g = build_graph(n, edges)
    ref = nx_distances(g)
    arr = DistanceMatrix(g).array
    for u in range(n):
        for v in range(n):
            assert int(arr[u, v]) == ref[u].get(v, UNREACHABLE)


@given(small_graphs())
def test_metric_axioms(g):
    d = DistanceMatrix(g).array.astype(np.int64)
    assert (np.diag(d) == 0).all()
    assert (d == d.T).all()
    for u in range(g.n):
        for v in range(g.n):
            assert (d[u, v] == 1) == g.has_edge(u, v)
    # triangle inequality through every midpoint
    assert (d[:, None, :] <= d[:, :, None] + d[None, :, :]).all()


def test_ball_and_sphere_examples():
    g = grid_patch(9, 9)
    dm = DistanceMatrix(g)
    b, s = ball_and_sphere(g, dm, 40, 2)
    assert (len(b), len(s)) == (13, 8)
    b0, s0 = ball_and_sphere(g, dm, 40, 0)
    assert b0 == s0 == {40}
    t = regular_tree(3, 4)
    assert len(ball_and_sphere(t, DistanceMatrix(t), 0, 2)[1]) == 6


@given(small_graphs(), st.integers(0, 6))
def test_sphere_is_ball_difference(g, r):
    dm = DistanceMatrix(g)
    for v in range(g.n):
        b, s = ball_and_sphere(g, dm, v, r)
        prev = ball_and_sphere(g, dm, v, r - 1)[0] if r > 0 else frozenset()
        assert s == b - prev
        assert prev <= b


def test_remove_vertices_examples():
    h, ids = remove_vertices(path(3), {1})
    assert h.edge_count == 0 and ids == (0, 2)
    h, _ = remove_vertices(cycle(4), {0})
    assert h.adjacency == path(3).adjacency
    h, _ = remove_vertices(complete(4), {0, 1})
    assert h.adjacency == complete(2).adjacency
    with pytest.raises(EmptyGraph):
        remove_vertices(path(2), {0, 1})


def test_components_examples():
    assert len(connected_components(path(5))) == 1
    disjoint = build_graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)])
    assert [len(c) for c in connected_components(disjoint)] == [3, 4]
    g = grid_patch(5, 4)
    cut, _ = remove_vertices(g, {y * 5 + 2 for y in range(4)})
    assert len(connected_components(cut)) == 2


@given(small_graphs(max_n=12), st.data())
def test_components_after_removal_match_reachability(g, data):
    k = data.draw(st.sets(st.integers(0, g.n - 1), max_size=g.n - 1))
    h, ids = remove_vertices(g, k)
    comps = connected_components(h)
    keep = [x for x in range(g.n) if x not in k]
    sub = build_graph(g.n, [e for e in g.edges if e[0] not in k and e[1] not in k])
    for comp in comps:
        members = {ids[x] for x in comp}
        s = next(iter(members))
        reach = set(bfs_dist(sub, s))
        assert reach == members
    assert sorted(ids[x] for c in comps for x in c) == keep
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)


def test_boundary_examples():
    assert boundary_edges(complete(4), {0})[0] == 3
    assert boundary_edges(complete(4), {0, 1})[0] == 4
    assert boundary_edges(path(5), {0, 1}) == (1, [(1, 2)])
    with pytest.raises(InvalidInput):
        boundary_edges(path(3), set())
    with pytest.raises(InvalidInput):
        boundary_edges(path(3), {0, 1, 2})


def test_geodesic_examples():
    g = cycle(4)
    dm = DistanceMatrix(g)
    assert geodesic(g, dm, 2, 2) == [2]
    assert geodesic(g, dm, 0, 2) == [0, 1, 2]
    grid = grid_patch(5, 5)
    gd = DistanceMatrix(grid)
    assert geodesic(grid, gd, 0, 12) == [0, 1, 2, 7, 12]
    with pytest.raises(NoPath):
        two = build_graph(4, [(0, 1), (2, 3)])
        geodesic(two, DistanceMatrix(two), 0, 3)


@given(small_graphs())
def test_geodesic_length_matches_distance(g):
    dm = DistanceMatrix(g)
    for u in range(g.n):
        for v in range(g.n):
            p = geodesic(g, dm, u, v)
            assert len(p) - 1 == dm(u, v)
            assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


@given(small_graphs(), st.randoms(use_true_random=False))
def test_relabel_preserves_distances(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    dg, dh = DistanceMatrix(g), DistanceMatrix(h)
    for u in range(g.n):
        for v in range(g.n):
            assert dg(u, v) == dh(perm[u], perm[v])
    assert sorted(len(c) for c in connected_components(g)) == sorted(len(c) for c in connected_components(h))


def test_json_roundtrip_and_determinism():
    g = grid_patch(3, 2)
    text = graph_to_json(g)
    assert text == graph_to_json(graph_from_json(text))
    assert graph_from_json(text) == g
    assert graph_to_dot(g) == graph_to_dot(graph_from_json(text))
    assert text.startswith('{"vertices":6')


def test_center_is_smallest_min_eccentricity():
    g = path(4)
    assert DistanceMatrix(g).center() == 1
    rng = random.Random(3)
    for _ in range(5):
        perm = list(range(9))
        rng.shuffle(perm)
        h = relabel(path(9), perm)
        assert DistanceMatrix(h).center() == perm[4]
