import random
from fractions import Fraction

import pytest
from generators import small_graphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import min_expansion, slim_constant

from copnum.constructions import complete, cycle, grid_patch, path, random_tree, regular_tree, torus_grid
from copnum.errors import DisconnectedComplement, InsufficientPatch, InvalidInput, ResourceLimit
from copnum.graph import DistanceMatrix, relabel
from copnum.metrics import (
    conforming_sets,
    distortion,
    expansion_profile,
    growth_profile,
    safe_distance_lambda,
    slim_triangle_constant,
    undistortion_constant_bruteforce,
)

# -- slim triangles ------------------------------------------------------------


@pytest.mark.parametrize("seed", range(5))
def test_trees_are_zero_slim(seed):
    g = random_tree(15, random.Random(seed))
    assert slim_triangle_constant(g).delta == 0


def test_c4_is_one_slim():
    rep = slim_triangle_constant(cycle(4))
    assert rep.delta == 1
    w = rep.witness
    assert w is not None and len(set(w.vertices)) >= 2


def test_c12_is_at_least_two():
    assert slim_triangle_constant(cycle(12)).delta >= 2


@given(small_graphs(max_n=8))
def test_slim_matches_geodesic_enumeration_oracle(g):
    expect = slim_constant(g)
    assert slim_triangle_constant(g).delta == expect
    assert slim_triangle_constant(g, method="enumerate").delta == expect


@given(small_graphs(max_n=9), st.randoms(use_true_random=False))
def test_slim_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert slim_triangle_constant(g).delta == slim_triangle_constant(relabel(g, perm)).delta


def test_slim_witness_attains_delta():
    g = cycle(9)
    rep = slim_triangle_constant(g)
    dm = DistanceMatrix(g)
    w = rep.witness
    side = next(s for s in w.sides if w.far_point in s)
    others = {v for s in w.sides if s is not side for v in s}
    assert min(dm(w.far_point, o) for o in others) == rep.delta


# -- expansion -----------------------------------------------------------------


def test_expansion_examples():
    assert expansion_profile(complete(4), 2).min_ratio == 2
    assert expansion_profile(path(5), 2).min_ratio == Fraction(1, 2)
    assert expansion_profile(regular_tree(3, 3), 1).min_ratio == 1
    with pytest.raises(ResourceLimit):
        expansion_profile(path(5), 40)


@given(small_graphs(max_n=9), st.integers(1, 5))
def test_expansion_matches_subset_oracle(g, cap):
    rep = expansion_profile(g, cap)
    assert rep.min_ratio == min_expansion(g, cap)
    k = rep.witness_set
    edges = sum(1 for u in k for w in g.neighbors(u) if w not in k)
    assert Fraction(edges, len(k)) == rep.min_ratio


@given(small_graphs(max_n=9))
def test_expansion_antitone_in_cap(g):
    vals = [expansion_profile(g, c).min_ratio for c in range(1, 6)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


# -- growth and safe distance --------------------------------------------------


def test_growth_grid():
    g = grid_patch(9, 9)
    gp = growth_profile(g, 40, 2)
    assert gp.alpha == (1, 4, 8) and gp.beta == (1, 5, 13)


def test_growth_tree_closed_form():
    g = regular_tree(3, 6)
    gp = growth_profile(g, 0, 5)
    for r in range(1, gp.valid_radius + 1):
        assert gp.alpha[r] == 3 * 2 ** (r - 1)
    assert growth_profile(g, 0, 0).alpha == (1,)


def test_growth_rejects_boundary_vertex():
    g = grid_patch(5, 5)
    with pytest.raises(InvalidInput):
        growth_profile(g, 0, 2)


@given(st.integers(1, 6), st.integers(0, 5))
def test_growth_beta_bounded(depth, r):
    g = regular_tree(3, depth)
    gp = growth_profile(g, 0, r)
    assert all(b == gp.beta[i - 1] + gp.alpha[i] for i, b in enumerate(gp.beta) if i)
    assert gp.beta[-1] <= g.n


def test_safe_distance_examples():
    gp = growth_profile(regular_tree(3, 6), 0, 5)
    assert safe_distance_lambda(gp, 1, 3, 1, 1) == 2
    assert safe_distance_lambda(gp, 1, 3, 1, 0) == 0
    lams = [safe_distance_lambda(gp, 1, 3, 1, n) for n in (1, 2, 4, 8)]
    assert lams == sorted(lams)
    with pytest.raises(InsufficientPatch):
        safe_distance_lambda(gp, Fraction(1, 1000), 3, 1, 8)


# -- distortion ----------------------------------------------------------------


def test_distortion_examples():
    g = grid_patch(5, 5)
    assert distortion(g, {12}).max_ratio == 2
    assert distortion(g, set()).max_ratio == 1
    # removing a vertex of C8 sends its two neighbours the long way: 6 steps instead of 2
    rep = distortion(cycle(8), {0})
    assert rep.max_ratio == 3 and set(rep.witness) == {1, 7}
    with pytest.raises(DisconnectedComplement):
        distortion(path(5), {2})


def test_undistortion_small_cases():
    g = torus_grid(6, 6)
    assert undistortion_constant_bruteforce(g, 0, 1) == 0
    L = undistortion_constant_bruteforce(g, 1, 1)
    for s, _ in conforming_sets(g, 1, 1):
        assert distortion(g, s).max_ratio <= L
    with pytest.raises(ResourceLimit):
        undistortion_constant_bruteforce(g, 9, 1)


@given(small_graphs(min_n=4, max_n=8), st.integers(1, 2), st.integers(1, 2))
def test_undistortion_bounds_distortion(g, m, n):
    L = undistortion_constant_bruteforce(g, m, n, rips=False)
    for s, _ in conforming_sets(g, m, n):
        assert 1 <= distortion(g, s).max_ratio <= max(L, 1)
