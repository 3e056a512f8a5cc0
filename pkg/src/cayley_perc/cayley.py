"""The implicit Cayley graph Gamma(S_n, T_n).

Vertices are permutations, addressed by Lehmer rank.  Adjacency is computed
on demand (``v ~ v . t`` for each generator ``t``) and never stored for the
whole graph except as a cached neighbour table at small n, where exact metric
operations (distances, balls, boundaries, diameter) are allowed.
"""
from __future__ import annotations

import functools
from math import factorial
from typing import Iterable

import numpy as np

from . import kernels
from .errors import CapabilityError
from .generators import TranspositionTree
from .permutation import MAX_RANK_N, Permutation, compose, rank, unrank

DEFAULT_SMALL_N_CAP = 8


class CayleyGraph:
    """Gamma(S_n, T_n) for a transposition tree ``T_n``.

    ``small_n_cap`` bounds the operations that need exhaustive BFS or the
    full neighbour table; exceeding it raises :class:`CapabilityError`.
    """

    def __init__(self, tree: TranspositionTree, small_n_cap: int = DEFAULT_SMALL_N_CAP):
        self.tree = tree
        self.n = tree.n
        self.small_n_cap = small_n_cap
        # 0-based position pairs, order-sequence order
        self.gen_array = np.array([(a - 1, b - 1) for a, b in tree.generators], dtype=np.int64).reshape(-1, 2)

    @property
    def vertex_count(self) -> int:
        return factorial(self.n)

    @property
    def degree(self) -> int:
        return self.n - 1

    def __repr__(self) -> str:
        return f"CayleyGraph(n={self.n}, edges={self.tree.edges})"

    def _require_small(self, what: str) -> None:
        if self.n > self.small_n_cap:
            raise CapabilityError(
                f"{what} needs exhaustive search over {self.n}! vertices; "
                f"n={self.n} exceeds small_n_cap={self.small_n_cap}. Use diameter_bound() instead."
            )

    # adjacency

    def neighbors(self, v: Permutation) -> list[Permutation]:
        """``[v . t for t in T_n]`` in order-sequence order."""
        return [v.apply_transposition(a, b) for a, b in self.tree.generators]

    def neighbor_ranks(self, ranks) -> np.ndarray:
        if self.n > MAX_RANK_N:
            raise CapabilityError(f"rank addressing is limited to n <= {MAX_RANK_N}")
        return kernels.neighbor_ranks(self.n, self.gen_array, np.asarray(ranks, dtype=np.int64))

    @functools.cached_property
    def neighbor_table(self) -> np.ndarray:
        """``(n!, n-1)`` array of neighbour ranks."""
        self._require_small("the neighbour table")
        return self.neighbor_ranks(np.arange(self.vertex_count, dtype=np.int64))

    # distances

    @functools.cached_property
    def identity_distances(self) -> np.ndarray:
        """BFS distance from the identity to every rank."""
        self._require_small("exact distances")
        return kernels.bfs_distances(self.n, self.gen_array, 0)

    def distances_from(self, v: Permutation) -> np.ndarray:
        self._require_small("exact distances")
        return kernels.bfs_distances(self.n, self.gen_array, rank(v))

    def distance(self, v: Permutation, w: Permutation) -> int:
        # left multiplication is an automorphism: d(v, w) = d(id, v^-1 w)
        self._require_small("exact distance")
        return int(self.identity_distances[rank(compose(v.inverse(), w))])

    def depth(self, v: Permutation) -> int:
        """``d(v, id)``."""
        self._require_small("exact distance")
        return int(self.identity_distances[rank(v)])

    def exact_diameter(self) -> int:
        if self.n == 1:
            return 0
        self._require_small("exact diameter")
        return int(self.identity_distances.max())

    def diameter_for_bounds(self) -> int:
        """Exact diameter when affordable, else the subtree-diameter bound."""
        if self.n <= self.small_n_cap:
            return self.exact_diameter()
        return self.tree.diameter_bound()

    # sets: public API takes permutations, *_mask variants work on boolean rank masks

    def mask_of(self, vertices: Iterable[Permutation]) -> np.ndarray:
        self._require_small("set operations")
        mask = np.zeros(self.vertex_count, dtype=bool)
        for v in vertices:
            mask[rank(v)] = True
        return mask

    def vertices_of(self, mask: np.ndarray) -> set[Permutation]:
        return {unrank(int(r), self.n) for r in np.flatnonzero(mask)}

    def expand_mask(self, mask: np.ndarray) -> np.ndarray:
        """``mask`` together with every neighbour of a masked vertex."""
        if self.n == 1:
            return mask.copy()
        return mask | mask[self.neighbor_table].any(axis=1)

    def ball_mask(self, mask: np.ndarray, radius: int) -> np.ndarray:
        self._require_small("balls")
        out = np.asarray(mask, dtype=bool).copy()
        for _ in range(radius):
            grown = self.expand_mask(out)
            if (grown == out).all():
                break
            out = grown
        return out

    def boundary_mask(self, mask: np.ndarray) -> np.ndarray:
        self._require_small("boundaries")
        mask = np.asarray(mask, dtype=bool)
        return self.expand_mask(mask) & ~mask

    def ball(self, vertices: Iterable[Permutation], radius: int) -> set[Permutation]:
        """``B(A, j)``: vertices within distance ``radius`` of ``A``."""
        return self.vertices_of(self.ball_mask(self.mask_of(vertices), radius))

    def boundary(self, vertices: Iterable[Permutation]) -> set[Permutation]:
        """Vertex boundary: vertices outside ``A`` adjacent to ``A``."""
        return self.vertices_of(self.boundary_mask(self.mask_of(vertices)))

    # linear order

    def order_key(self, v: Permutation) -> tuple:
        """Sort key of the linear order: distance to id, then lexicographic."""
        return (self.depth(v), v.entries)

    def cmp_order(self, sigma: Permutation, tau: Permutation) -> int:
        """-1, 0 or 1 as ``sigma`` is below, equal to or above ``tau``."""
        ks, kt = self.order_key(sigma), self.order_key(tau)
        return (ks > kt) - (ks < kt)

    # isoperimetry

    def aldous_boundary_bound(self, vertices) -> float:
        """Generic Cayley-graph lower bound on |d(S)|.

        ``vertices`` is a collection of permutations, a boolean rank mask, or
        just the size |S|.  Returns ``|S| (1 - |S|/n!) / diam`` with the exact
        diameter when affordable, otherwise the subtree-diameter bound (which
        only weakens the estimate).
        """
        if isinstance(vertices, np.ndarray):
            size = int(np.count_nonzero(vertices))
        elif isinstance(vertices, (int, np.integer)):
            size = int(vertices)
        else:
            size = len(vertices)
        diam = self.diameter_for_bounds()
        if diam == 0:
            return 0.0
        return size * (1.0 - size / self.vertex_count) / diam
