from math import factorial, sqrt

import numpy as np
import pytest

import oracles
from cayley_perc import kernels
from cayley_perc.branching import survival_probability
from cayley_perc.cayley import CayleyGraph
from cayley_perc.errors import CapabilityError, InputDomainError
from cayley_perc.generators import bubble, random_tree, star
from cayley_perc.percolation import (PercolationParams, components, is_selected, large_component_threshold,
                                     percolate, selection_mask, two_density)
from cayley_perc.permutation import Permutation, from_zero_based, rank


def test_lambda_from_epsilon():
    p = PercolationParams(9, 1.0)
    assert p.lam == 2.0 / 8
    assert PercolationParams.from_lambda(9, 0.25).epsilon == pytest.approx(1.0)
    with pytest.raises(InputDomainError):
        PercolationParams(3, 5.0)  # lambda = 3
    with pytest.raises(InputDomainError):
        PercolationParams(5, 0.0, seed=-1)


def test_lambda_extremes():
    g = CayleyGraph(star(5))
    none = percolate(g, PercolationParams.from_lambda(5, 0.0, seed=3))
    assert none.report.selected_count == 0 and none.report.largest == 0
    assert none.report.relative_giant == 0.0
    full = percolate(g, PercolationParams.from_lambda(5, 1.0, seed=3))
    assert full.report.component_sizes == (120,)
    assert full.report.relative_giant == 1.0


def test_selected_count_is_binomial():
    n = 9
    total = factorial(n)
    for seed in range(5):
        params = PercolationParams(n, 0.5, seed=seed)
        count = int(selection_mask(params).sum())
        mean = total * params.lam
        sd = sqrt(total * params.lam * (1 - params.lam))
        assert abs(count - mean) < 4 * sd


def test_selection_unbiased_over_many_ranks():
    params = PercolationParams.from_lambda(12, 0.37, seed=11)
    N = 10 ** 6
    hits = int(kernels.selection_mask(N, *params._kernel_args()).sum())
    assert abs(hits - N * 0.37) < 5 * sqrt(N * 0.37 * 0.63)


def test_monotone_coupling():
    lo = PercolationParams.from_lambda(8, 0.2, seed=5)
    hi = PercolationParams.from_lambda(8, 0.6, seed=5)
    a, b = selection_mask(lo), selection_mask(hi)
    assert not (a & ~b).any()
    assert all(is_selected(hi, r) for r in np.flatnonzero(a)[:200])


def test_determinism_and_seed_sensitivity():
    g = CayleyGraph(bubble(7))
    a = percolate(g, PercolationParams(7, 0.8, seed=42))
    b = percolate(g, PercolationParams(7, 0.8, seed=42))
    c = percolate(g, PercolationParams(7, 0.8, seed=43))
    assert np.array_equal(a.labels, b.labels)
    assert not np.array_equal(a.labels, c.labels)


def test_is_selected_agrees_with_mask():
    params = PercolationParams(6, 0.7, seed=9)
    mask = selection_mask(params)
    assert [is_selected(params, r) for r in range(720)] == mask.tolist()


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("lam", [0.2, 0.5, 0.8])
def test_components_match_flood_fill(n, lam):
    for tree in (star(n), bubble(n), random_tree(n, 7)):
        g = CayleyGraph(tree)
        adj = oracles.adjacency(n, tree.generators)
        for seed in range(6):
            params = PercolationParams.from_lambda(n, lam, seed=seed)
            sample = percolate(g, params)
            keep = {p for p in adj if is_selected(params, rank(Permutation(p)))}
            assert list(sample.report.component_sizes) == oracles.flood_fill(adj, keep)
            parts = {}
            for r in np.flatnonzero(sample.labels >= 0):
                parts.setdefault(int(sample.labels[r]), set()).add(from_zero_based(
                    kernels.unrank_array(n, np.array([r]))[0]).entries)
            assert {frozenset(s) for s in parts.values()} == oracles.flood_fill_partition(adj, keep)


def test_labels_ordered_by_smallest_rank():
    sample = percolate(CayleyGraph(star(6)), PercolationParams(6, 0.2, seed=1))
    lab = sample.labels[sample.labels >= 0]
    first = [int(x) for x in dict.fromkeys(lab.tolist())]
    assert first == list(range(len(first)))


def test_report_fields():
    g = CayleyGraph(star(7))
    params = PercolationParams(7, 1.5, seed=2)
    rep = components(g, params)
    assert rep.largest == rep.component_sizes[0]
    assert rep.second_largest == (rep.component_sizes[1] if rep.num_components > 1 else 0)
    assert rep.selected_count == sum(rep.component_sizes)
    assert rep.threshold_used == large_component_threshold(7) == 5  # ceil(7 ** 0.7667) = ceil(4.45)
    assert rep.gamma_nk_count == sum(s for s in rep.component_sizes if s >= 5)
    assert rep.small_component_vertices == rep.selected_count - rep.gamma_nk_count


def test_star_n9_giant_near_survival():
    g = CayleyGraph(star(9))
    vals = [components(g, PercolationParams(9, 1.0, seed=s)).relative_giant for s in range(20)]
    assert abs(np.mean(vals) - survival_probability(1.0)) < 0.05


def test_two_density_extremes_and_monotone():
    g = CayleyGraph(star(7))
    assert two_density(g, PercolationParams.from_lambda(7, 0.0)) == 0.0
    assert two_density(g, PercolationParams.from_lambda(7, 1.0)) == 1.0
    prev = -1.0
    for lam in (0.1, 0.2, 0.3, 0.5):
        d = two_density(g, PercolationParams.from_lambda(7, lam, seed=4))
        assert d >= prev
        prev = d


def test_caps():
    with pytest.raises(CapabilityError):
        percolate(CayleyGraph(star(12)), PercolationParams(12, 0.5))
    with pytest.raises(CapabilityError):
        percolate(CayleyGraph(star(13)), PercolationParams(13, 0.5), allow_large=True)
    with pytest.raises(InputDomainError):
        percolate(CayleyGraph(star(6)), PercolationParams(7, 0.5))
