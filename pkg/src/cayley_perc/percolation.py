"""Seeded vertex percolation on Gamma(S_n, T_n) and its component structure.

Selection is a pure function of ``(seed, rank)``::

    key = mix64(seed)
    selected(r)  <=>  mix64(key ^ r) < floor(lambda * 2**64)

where ``mix64`` is the SplitMix64 finalizer.  Because the comparison is a
threshold on a fixed hash, raising ``lambda`` at a fixed seed never deselects
a vertex (monotone coupling), and membership can be queried in O(1) memory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from . import kernels
from .cayley import CayleyGraph
from .errors import CapabilityError, InputDomainError
from .permutation import MAX_RANK_N, Permutation, rank

DEFAULT_MAX_N = 11
HARD_MAX_N = 12
DEFAULT_MEMORY_BUDGET = 2 << 30  # bytes


@dataclass(frozen=True)
class PercolationParams:
    """Selection probability ``lam = (1 + epsilon) / (n - 1)`` plus threshold settings.

    ``k``, ``delta`` and ``c_k`` set the large-component threshold
    ``ceil(c_k * n**(k*delta + 2/3))``.
    """

    n: int
    epsilon: float
    seed: int = 0
    k: int = 1
    delta: float = 0.1
    c_k: float = 1.0
    lam: float = field(default=float("nan"), compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InputDomainError(f"n must be >= 1, got {self.n}")
        if self.k < 1 or self.delta <= 0 or self.c_k <= 0:
            raise InputDomainError("k >= 1, delta > 0 and c_k > 0 are required")
        if not 0 <= self.seed < 1 << 64:
            raise InputDomainError("seed must be an unsigned 64-bit integer")
        if math.isnan(self.lam):
            if self.n < 2:
                raise InputDomainError("lambda = (1+eps)/(n-1) is undefined for n = 1; use from_lambda")
            object.__setattr__(self, "lam", (1.0 + self.epsilon) / (self.n - 1))
        if not 0.0 <= self.lam <= 1.0:
            raise InputDomainError(f"lambda = {self.lam} outside [0, 1]")

    @classmethod
    def from_lambda(cls, n: int, lam: float, **kw) -> "PercolationParams":
        return cls(n=n, epsilon=lam * (n - 1) - 1.0, lam=float(lam), **kw)

    @property
    def threshold(self) -> int:
        """Selection cut-off ``floor(lam * 2**64)`` (``2**64`` selects everything)."""
        # multiplying a double by a power of two is exact
        return int(self.lam * 2.0 ** 64)

    @property
    def component_threshold(self) -> int:
        return large_component_threshold(self.n, self.k, self.delta, self.c_k)

    def _kernel_args(self):
        t = self.threshold
        return kernels.mix64(self.seed), (0 if t >= 1 << 64 else t), t >= 1 << 64


def large_component_threshold(n: int, k: int = 1, delta: float = 0.1, c_k: float = 1.0) -> int:
    return math.ceil(c_k * n ** (k * delta + 2.0 / 3.0))


def selection_hash(seed: int, r: int) -> int:
    return kernels.mix64(kernels.mix64(seed) ^ r)


def is_selected(params: PercolationParams, r: int) -> bool:
    if r < 0:
        raise InputDomainError(f"rank must be non-negative, got {r}")
    return selection_hash(params.seed, r) < params.threshold


def vertex_key(p: Permutation) -> int:
    """64-bit key of a vertex: its rank when n <= 20, else a fold of the entries."""
    if p.n <= MAX_RANK_N:
        return rank(p)
    h = kernels.mix64(p.n)
    for x in p.entries:
        h = kernels.mix64(h ^ x)
    return h


def is_selected_vertex(params: PercolationParams, p: Permutation) -> bool:
    return selection_hash(params.seed, vertex_key(p)) < params.threshold


def selection_mask(params: PercolationParams) -> np.ndarray:
    key, t, every = params._kernel_args()
    return kernels.selection_mask(factorial(params.n), key, t, every)


@dataclass(frozen=True)
class ComponentReport:
    selected_count: int
    component_sizes: tuple[int, ...]
    largest: int
    second_largest: int
    relative_giant: float
    gamma_nk_count: int
    threshold_used: int

    @property
    def num_components(self) -> int:
        return len(self.component_sizes)

    @property
    def small_component_vertices(self) -> int:
        """Selected vertices outside the large components."""
        return self.selected_count - self.gamma_nk_count

    @classmethod
    def from_sizes(cls, sizes, threshold: int) -> "ComponentReport":
        sizes = tuple(sorted((int(s) for s in sizes), reverse=True))
        total = sum(sizes)
        largest = sizes[0] if sizes else 0
        second = sizes[1] if len(sizes) > 1 else 0
        return cls(
            selected_count=total,
            component_sizes=sizes,
            largest=largest,
            second_largest=second,
            relative_giant=largest / total if total else 0.0,
            gamma_nk_count=sum(s for s in sizes if s >= threshold),
            threshold_used=threshold,
        )


@dataclass
class PercolationSample:
    """A realised sample: per-rank component labels (-1 = not selected) and its report."""

    params: PercolationParams
    labels: np.ndarray
    report: ComponentReport

    @property
    def selected(self) -> np.ndarray:
        return self.labels >= 0

    def component_sizes_by_label(self) -> np.ndarray:
        return np.bincount(self.labels[self.labels >= 0])

    def gamma_nk_mask(self) -> np.ndarray:
        """Selected vertices lying in components of size >= the threshold."""
        sizes = self.component_sizes_by_label()
        big = sizes >= self.report.threshold_used
        out = np.zeros(self.labels.shape, dtype=bool)
        sel = self.labels >= 0
        out[sel] = big[self.labels[sel]]
        return out


def estimate_memory(n: int, lam: float) -> int:
    """Peak bytes of the component kernel: int32 labels over n! plus union-find arrays."""
    count = factorial(n)
    return 4 * count + int(8 * lam * count) + 1


def _check_caps(n: int, lam: float, max_n: int, allow_large: bool, memory_budget: int) -> None:
    if n > HARD_MAX_N:
        raise CapabilityError(f"component decomposition supports n <= {HARD_MAX_N}, got n={n}")
    if n > max_n and not allow_large:
        raise CapabilityError(
            f"n={n} exceeds the component cap {max_n}; pass allow_large=True (and a sufficient memory budget)")
    need = estimate_memory(n, lam)
    if need > memory_budget:
        raise CapabilityError(f"n={n} needs about {need / 2**30:.2f} GiB; memory budget is {memory_budget / 2**30:.2f} GiB")


def percolate(graph: CayleyGraph, params: PercolationParams, *, max_n: int = DEFAULT_MAX_N,
              allow_large: bool = False, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PercolationSample:
    """Select vertices and decompose the induced subgraph into components."""
    if params.n != graph.n:
        raise InputDomainError(f"params are for n={params.n}, graph has n={graph.n}")
    _check_caps(graph.n, params.lam, max_n, allow_large, memory_budget)
    key, t, every = params._kernel_args()
    labels = kernels.percolate(graph.n, graph.gen_array, key, t, every)
    sizes = np.bincount(labels[labels >= 0]) if labels.size else np.zeros(0, dtype=np.int64)
    report = ComponentReport.from_sizes(sizes.tolist(), params.component_threshold)
    return PercolationSample(params, labels, report)


def components(graph: CayleyGraph, params: PercolationParams, **caps) -> ComponentReport:
    return percolate(graph, params, **caps).report


def two_density(graph: CayleyGraph, params: PercolationParams, sample: PercolationSample | None = None) -> float:
    """Fraction of all vertices within distance 2 of a large-component vertex."""
    graph._require_small("two_density")
    if sample is None:
        sample = percolate(graph, params)
    near = graph.ball_mask(sample.gamma_nk_mask(), 2)
    return float(np.count_nonzero(near)) / graph.vertex_count
