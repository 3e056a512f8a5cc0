"""Pure-Python (numpy) implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` extension.  Vertices
are Lehmer ranks; permutations here hold 0-based values.  ``gens`` is an
``(m, 2)`` integer array of 0-based position pairs ``a < b``.
"""
from __future__ import annotations

from math import factorial

import numpy as np

MASK64 = (1 << 64) - 1

_C1 = np.uint64(0x9E3779B97F4A7C15)
_C2 = np.uint64(0xBF58476D1CE4E5B9)
_C3 = np.uint64(0x94D049BB133111EB)

_CHUNK = 1 << 20


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z = (int(z) + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z + _C1
    z = (z ^ (z >> np.uint64(30))) * _C2
    z = (z ^ (z >> np.uint64(27))) * _C3
    return z ^ (z >> np.uint64(31))


def selection_mask(count: int, key: int, threshold: int, select_all: bool) -> np.ndarray:
    """Boolean mask over ranks ``0..count-1``: ``mix64(key ^ r) < threshold``."""
    if select_all:
        return np.ones(count, dtype=bool)
    out = np.empty(count, dtype=bool)
    k = np.uint64(key)
    t = np.uint64(threshold)
    with np.errstate(over="ignore"):
        for start in range(0, count, _CHUNK):
            stop = min(count, start + _CHUNK)
            r = np.arange(start, stop, dtype=np.uint64)
            out[start:stop] = _mix64_array(r ^ k) < t
    return out


def _factorials(n: int) -> np.ndarray:
    return np.array([factorial(k) for k in range(n + 1)], dtype=np.int64)


def unrank_array(n: int, ranks: np.ndarray) -> np.ndarray:
    """Rows of 0-based permutations for the given ranks."""
    fact = _factorials(n)
    r = np.asarray(ranks, dtype=np.int64).copy()
    perm = np.empty((r.size, n), dtype=np.int8)
    for i in range(n):
        perm[:, i], r = np.divmod(r, fact[n - 1 - i])
    # Lehmer digits -> values, right to left
    for i in range(n - 2, -1, -1):
        tail = perm[:, i + 1:]
        tail += tail >= perm[:, i:i + 1]
    return perm


def rank_array(perm: np.ndarray) -> np.ndarray:
    n = perm.shape[1]
    fact = _factorials(n)
    r = np.zeros(perm.shape[0], dtype=np.int64)
    for i in range(n - 1):
        digit = (perm[:, i + 1:] < perm[:, i:i + 1]).sum(axis=1)
        r += digit * fact[n - 1 - i]
    return r


def neighbor_ranks(n: int, gens: np.ndarray, ranks: np.ndarray) -> np.ndarray:
    """``out[k, g]`` is the rank of ``unrank(ranks[k]) . gens[g]``."""
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, 2)
    ranks = np.asarray(ranks, dtype=np.int64)
    out = np.empty((ranks.size, len(gens)), dtype=np.int64)
    if ranks.size == 0:
        return out
    perm = unrank_array(n, ranks)
    for g, (a, b) in enumerate(gens):
        swapped = perm.copy()
        swapped[:, [a, b]] = swapped[:, [b, a]]
        out[:, g] = rank_array(swapped)
    return out


def _find(parent: list, x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def percolate(n: int, gens: np.ndarray, key: int, threshold: int, select_all: bool) -> np.ndarray:
    """Component labels of the induced subgraph on selected ranks.

    Labels are numbered in order of each component's smallest rank; ``-1``
    marks unselected vertices.
    """
    count = factorial(n)
    mask = selection_mask(count, key, threshold, select_all)
    selected = np.flatnonzero(mask).astype(np.int64)
    labels = np.full(count, -1, dtype=np.int32)
    m = selected.size
    if m == 0:
        return labels
    dense = np.full(count, -1, dtype=np.int64)
    dense[selected] = np.arange(m, dtype=np.int64)

    parent = list(range(m))
    size = [1] * m
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, 2)
    for start in range(0, m, _CHUNK):
        block = selected[start:start + _CHUNK]
        nbrs = neighbor_ranks(n, gens, block)
        src = np.repeat(block, nbrs.shape[1])
        dst = nbrs.ravel()
        keep = (dst > src) & mask[dst]
        for a, b in zip(dense[src[keep]].tolist(), dense[dst[keep]].tolist()):
            ra, rb = _find(parent, a), _find(parent, b)
            if ra == rb:
                continue
            if size[ra] < size[rb]:
                ra, rb = rb, ra
            parent[rb] = ra
            size[ra] += size[rb]

    roots = np.fromiter((_find(parent, i) for i in range(m)), dtype=np.int64, count=m)
    # first occurrence order of roots == order of smallest rank per component
    _, first_idx, inverse = np.unique(roots, return_index=True, return_inverse=True)
    order = np.argsort(first_idx, kind="stable")
    relabel = np.empty_like(order)
    relabel[order] = np.arange(order.size)
    labels[selected] = relabel[inverse].astype(np.int32)
    return labels


def bfs_distances(n: int, gens: np.ndarray, root: int) -> np.ndarray:
    """Graph distance from ``root`` to every rank (-1 if unreachable)."""
    count = factorial(n)
    dist = np.full(count, -1, dtype=np.int16)
    dist[root] = 0
    frontier = np.array([root], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nbrs = np.unique(neighbor_ranks(n, gens, frontier))
        fresh = nbrs[dist[nbrs] < 0]
        dist[fresh] = level
        frontier = fresh
    return dist
