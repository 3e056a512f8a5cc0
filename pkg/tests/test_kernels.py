from math import factorial

import numpy as np
import pytest

from cayley_perc import kernels
from cayley_perc.generators import bubble, random_tree, star
from cayley_perc.cayley import CayleyGraph

BACKENDS = kernels.available_backends()
M64 = (1 << 64) - 1


def splitmix_finalizer(z):
    # one SplitMix64 output for state z: add the golden-ratio step, then finalize
    z = (z + 0x9E3779B97F4A7C15) & M64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & M64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & M64
    return z ^ (z >> 31)


def test_compiled_backend_built():
    assert "compiled" in BACKENDS
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_mix64_matches_reference(name):
    mod = BACKENDS[name]
    for z in [0, 1, 2, 12345, M64, 1 << 63, 0x9E3779B97F4A7C15]:
        assert mod.mix64(z) == splitmix_finalizer(z)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_selection_mask_matches_reference(name):
    key, thr = splitmix_finalizer(77), int(0.3 * 2.0 ** 64)
    mask = BACKENDS[name].selection_mask(5000, key, thr, False)
    ref = np.array([splitmix_finalizer(key ^ r) < thr for r in range(5000)])
    assert np.array_equal(mask, ref)
    assert BACKENDS[name].selection_mask(10, key, 0, True).all()
    assert not BACKENDS[name].selection_mask(10, key, 0, False).any()


def tree_cases():
    return [star(6), bubble(6), random_tree(7, 3), star(2), star(1)]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
@pytest.mark.parametrize("tree", tree_cases(), ids=lambda t: f"{t.name}{t.n}")
def test_backends_agree(tree):
    py, cc = BACKENDS["python"], BACKENDS["compiled"]
    g = CayleyGraph(tree)
    n, gens = tree.n, g.gen_array
    ranks = np.arange(factorial(n), dtype=np.int64)
    assert np.array_equal(py.neighbor_ranks(n, gens, ranks), cc.neighbor_ranks(n, gens, ranks))
    assert np.array_equal(py.bfs_distances(n, gens, 0), cc.bfs_distances(n, gens, 0))
    for seed in range(5):
        key = splitmix_finalizer(seed)
        for lam in (0.0, 0.15, 0.4, 0.9):
            thr = int(lam * 2.0 ** 64)
            assert np.array_equal(py.percolate(n, gens, key, thr, False), cc.percolate(n, gens, key, thr, False))
        assert np.array_equal(py.percolate(n, gens, key, 0, True), cc.percolate(n, gens, key, 0, True))


def test_rank_array_round_trip():
    ranks = np.arange(factorial(7), dtype=np.int64)
    perms = kernels.unrank_array(7, ranks)
    assert perms.shape == (5040, 7)
    assert np.array_equal(kernels.rank_array(perms), ranks)
    # lex order: rows already sorted
    assert all(tuple(perms[i]) < tuple(perms[i + 1]) for i in range(0, 5039, 97))


def test_mix64_known_splitmix_output():
    # first output of the reference SplitMix64 generator seeded with 0
    assert kernels.mix64(0) == 0xE220A8397B1DCDAF


def test_pure_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    code = ("from cayley_perc import BACKEND, CayleyGraph, PercolationParams, components, star;"
            "print(BACKEND, components(CayleyGraph(star(6)), PercolationParams(6, 1.0, seed=2)).largest)")
    env = dict(os.environ, CAYLEY_PERC_PURE="1")
    pure = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    env.pop("CAYLEY_PERC_PURE")
    default = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert pure.stdout.split()[0] == "python"
    assert pure.stdout.split()[1] == default.stdout.split()[1]
