import random
from itertools import permutations
from math import comb, factorial

import numpy as np
import pytest

import oracles
from cayley_perc.cayley import CayleyGraph
from cayley_perc.errors import CapabilityError
from cayley_perc.generators import all_prufer_trees, bubble, random_tree, star
from cayley_perc.permutation import Permutation, rank, unrank


def test_star_neighbours_of_identity():
    g = CayleyGraph(star(4))
    got = {v.entries for v in g.neighbors(Permutation.identity(4))}
    assert got == {(2, 1, 3, 4), (3, 2, 1, 4), (4, 2, 3, 1)}


@pytest.mark.parametrize("tree", [star(5), bubble(5), random_tree(5, 2)])
def test_regular_and_symmetric(tree):
    g = CayleyGraph(tree)
    table = g.neighbor_table
    assert table.shape == (120, 4)
    assert g.degree == 4
    for r in range(120):
        assert len(set(table[r])) == 4
        for s in table[r]:
            assert r in table[s]


def test_neighbor_table_matches_oracle():
    tree = random_tree(6, 5)
    g = CayleyGraph(tree)
    adj = oracles.adjacency(6, tree.generators)
    for r in range(0, 720, 7):
        p = unrank(r, 6).entries
        assert sorted(g.neighbor_table[r]) == sorted(rank(Permutation(q)) for q in adj[p])


@pytest.mark.parametrize("tree,expected", [(bubble(4), 6), (bubble(5), 10), (star(4), 4), (star(5), 6)])
def test_known_diameters(tree, expected):
    assert CayleyGraph(tree).exact_diameter() == expected
    assert oracles.diameter(tree.n, tree.edges) == expected


def test_bubble_diameter_is_inversion_count():
    # adjacent swaps: distance from id = number of inversions
    g = CayleyGraph(bubble(6))
    for p in permutations(range(1, 7)):
        inv = sum(1 for i in range(6) for j in range(i + 1, 6) if p[i] > p[j])
        assert g.depth(Permutation(p)) == inv


@pytest.mark.parametrize("root", [(1, 2, 3, 4, 5), (3, 1, 5, 2, 4), (5, 4, 3, 2, 1)])
def test_vertex_transitivity(root):
    g = CayleyGraph(random_tree(5, 9))
    d = g.distances_from(Permutation(root))
    assert int(d.max()) == g.exact_diameter()
    assert np.array_equal(np.bincount(d), np.bincount(g.identity_distances))


def test_distance_uses_left_invariance():
    tree = random_tree(5, 4)
    g = CayleyGraph(tree)
    adj = oracles.adjacency(5, tree.generators)
    rng = random.Random(0)
    for _ in range(30):
        v, w = (Permutation(rng.sample(range(1, 6), 5)) for _ in range(2))
        assert g.distance(v, w) == oracles.bfs(adj, v.entries)[w.entries]


@pytest.mark.parametrize("n", range(2, 7))
def test_diameter_bounds_hold(n):
    for tree in all_prufer_trees(n):
        d = CayleyGraph(tree).exact_diameter()
        assert d <= tree.diameter_bound() <= comb(n, 2)


def test_aldous_bound_star_n4_identity():
    g = CayleyGraph(star(4))
    assert g.aldous_boundary_bound({Permutation.identity(4)}) == pytest.approx((1 - 1 / 24) / 4)
    assert g.aldous_boundary_bound(1) == pytest.approx(0.23958333, abs=1e-8)


def test_aldous_bound_random_subsets_s5():
    rng = np.random.default_rng(1)
    for tree in (star(5), bubble(5), random_tree(5, 1)):
        g = CayleyGraph(tree)
        adj = oracles.adjacency(5, tree.generators)
        verts = list(adj)
        for _ in range(35):
            pick = rng.choice(120, size=60, replace=False)
            S = {verts[i] for i in pick}
            exact = {w for v in S for w in adj[v]} - S
            boundary = g.boundary(Permutation(v) for v in S)
            assert {b.entries for b in boundary} == exact
            assert len(exact) >= g.aldous_boundary_bound(len(S))


def test_ball_layers():
    g = CayleyGraph(star(5))
    e = Permutation.identity(5)
    dist = g.identity_distances
    for j in range(0, 8):
        ball = g.ball({e}, j)
        assert len(ball) == int(np.count_nonzero(dist <= j))
        # B(A, j+1) = B(A, j) plus its boundary
        assert g.ball({e}, j + 1) == ball | g.boundary(ball)


def test_linear_order():
    g = CayleyGraph(star(4))
    e = Permutation.identity(4)
    a, b = Permutation((2, 1, 3, 4)), Permutation((3, 2, 1, 4))
    assert g.cmp_order(e, a) == -1
    assert g.cmp_order(a, b) == -1  # same depth, lex
    assert g.cmp_order(b, b) == 0
    ordered = sorted((unrank(r, 4) for r in range(24)), key=g.order_key)
    depths = [g.depth(v) for v in ordered]
    assert depths == sorted(depths)


def test_trivial_group():
    g = CayleyGraph(star(1))
    assert g.vertex_count == 1
    assert g.exact_diameter() == 0
    assert g.aldous_boundary_bound(1) == 0.0


def test_small_n_cap():
    g = CayleyGraph(star(9), small_n_cap=8)
    with pytest.raises(CapabilityError):
        g.exact_diameter()
    assert g.diameter_for_bounds() == star(9).diameter_bound()
    assert g.vertex_count == factorial(9)
