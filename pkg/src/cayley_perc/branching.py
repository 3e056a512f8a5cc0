"""Galton-Watson machinery behind the giant-component prediction.

Survival probabilities are solved exactly (bisection plus Newton polish) for
Poisson offspring and by fixed-point iteration for binomial offspring,
including the two-law process whose root draws ``B(m, p)`` and everybody else
``B(m-1, p)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp
from scipy.stats import binom, poisson

from .errors import InputDomainError

SOLVER_TOL = 1e-12
MAX_NEWTON = 200
POISSON_TAIL = 1e-15


# --- offspring laws ---------------------------------------------------------

@dataclass(frozen=True)
class OffspringLaw:
    """Offspring distribution: ``binomial(m, p)`` or ``poisson(lam)``."""

    kind: Literal["binomial", "poisson"]
    m: int = 0
    p: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if self.kind == "binomial":
            if self.m < 0 or not 0.0 <= self.p <= 1.0:
                raise InputDomainError(f"binomial({self.m}, {self.p}) is not a distribution")
        elif self.kind == "poisson":
            if self.lam < 0:
                raise InputDomainError(f"poisson({self.lam}) needs lam >= 0")
        else:
            raise InputDomainError(f"unknown offspring law {self.kind!r}")

    @classmethod
    def binomial(cls, m: int, p: float) -> "OffspringLaw":
        return cls("binomial", m=int(m), p=float(p))

    @classmethod
    def poisson(cls, lam: float) -> "OffspringLaw":
        return cls("poisson", lam=float(lam))

    @classmethod
    def point_mass(cls, k: int) -> "OffspringLaw":
        return cls("binomial", m=int(k), p=1.0)

    @property
    def mean(self) -> float:
        return self.m * self.p if self.kind == "binomial" else self.lam

    def support(self) -> np.ndarray:
        """Support points; Poisson is truncated where the upper tail drops below 1e-15."""
        if self.kind == "binomial":
            return np.arange(self.m + 1)
        upper = int(poisson.isf(POISSON_TAIL, self.lam)) + 1 if self.lam > 0 else 0
        return np.arange(upper + 1)

    def pmf(self, k) -> np.ndarray:
        k = np.asarray(k)
        if self.kind == "binomial":
            return binom.pmf(k, self.m, self.p)
        return poisson.pmf(k, self.lam)

    def pgf(self, s: float) -> float:
        if self.kind == "binomial":
            return (1.0 - self.p + self.p * s) ** self.m
        return math.exp(-self.lam * (1.0 - s))

    def sample_sum(self, rng: np.random.Generator, count):
        """Sum of ``count`` independent draws (vectorised over ``count``)."""
        if self.kind == "binomial":
            return rng.binomial(np.asarray(count, dtype=np.int64) * self.m, self.p)
        return rng.poisson(np.asarray(count, dtype=np.float64) * self.lam)


# --- survival probabilities -------------------------------------------------

@dataclass(frozen=True)
class SurvivalResult:
    value: float
    residual: float
    iterations: int
    regime: Literal["subcritical", "critical", "supercritical"]

    def __float__(self) -> float:
        return self.value


def _regime(mean: float) -> str:
    if mean < 1.0:
        return "subcritical"
    if mean == 1.0:
        return "critical"
    return "supercritical"


def survival_poisson(lam: float) -> SurvivalResult:
    """Survival probability of a Poisson(``lam``) Galton-Watson process.

    Largest root of ``1 - y = exp(-lam * y)`` in [0, 1); zero for ``lam <= 1``.
    """
    lam = float(lam)
    if not lam >= 0.0:
        raise InputDomainError(f"lam must be >= 0, got {lam}")
    if lam <= 1.0:
        return SurvivalResult(0.0, 0.0, 0, _regime(lam))

    def f(y):
        # 1 - y - exp(-lam y), written to avoid cancellation near criticality
        return -math.expm1(-lam * y) - y

    # f > 0 just above 0 for lam > 1, f(1) < 0
    lo, hi = float(np.finfo(float).eps), 1.0
    if f(lo) <= 0.0:
        # so close to critical that eps is past the root; shrink toward 0
        lo = 0.5 * (lam - 1.0) / lam ** 2
        while f(lo) <= 0.0 and lo > 0.0:
            lo *= 0.5
    it = 0
    while hi - lo > 1e-15 * hi and it < 400:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        it += 1
    y = 0.5 * (lo + hi)
    fy = f(y)
    for _ in range(MAX_NEWTON):
        if fy == 0.0:
            break
        dfy = -1.0 + lam * math.exp(-lam * y)
        if dfy == 0.0:
            break
        y_new = y - fy / dfy
        it += 1
        if not 0.0 < y_new < 1.0:
            break
        f_new = f(y_new)
        # stop once rounding dominates; never accept a worse iterate
        if abs(f_new) >= abs(fy):
            break
        y, fy = y_new, f_new
    residual = abs(math.exp(-lam * y) - (1.0 - y))
    return SurvivalResult(y, residual, it, "supercritical")


def survival_probability(epsilon: float) -> float:
    """``wp(eps)``: survival probability for mean offspring ``1 + eps``.

    Exact for every ``eps``; continuous in ``eps`` and 0 for ``eps <= 0``.
    """
    return survival_poisson(max(0.0, 1.0 + epsilon)).value


def survival_near_critical(epsilon: float) -> float:
    """First-order approximation ``2 eps`` valid as ``eps -> 0+``."""
    return 2.0 * max(0.0, epsilon)


def survival_two_law(root: OffspringLaw, rest: OffspringLaw, max_iter: int = 100_000) -> SurvivalResult:
    """Survival when the root uses ``root`` and all descendants use ``rest``.

    ``q`` = extinction probability of the ``rest`` process (smallest fixed point
    of its pgf, by monotone iteration from 0); the answer is ``1 - G_root(q)``.
    """
    q = 0.0
    it = 0
    for it in range(1, max_iter + 1):
        q_new = rest.pgf(q)
        if abs(q_new - q) < 1e-16:
            q = q_new
            break
        q = q_new
    value = 1.0 - root.pgf(q)
    residual = abs(rest.pgf(q) - q)
    return SurvivalResult(max(0.0, value), residual, it, _regime(rest.mean))


def survival_p0(n: int, p: float) -> SurvivalResult:
    """Root ``B(n-1, p)``, rest ``B(n-2, p)``: the exploration law of an (n-1)-regular graph."""
    return survival_two_law(OffspringLaw.binomial(n - 1, p), OffspringLaw.binomial(n - 2, p))


# --- simulation -------------------------------------------------------------

@dataclass
class ProcessTrace:
    generations: list[int] = field(default_factory=list)
    outcome: Literal["extinct", "survived-cap"] = "extinct"


def simulate_process(law_root: OffspringLaw, law_rest: OffspringLaw, max_generations: int,
                     max_population: int, seed) -> ProcessTrace:
    """One run; ``Z_0 = 1``, the root's offspring uses ``law_root``.

    Stops when extinct, when ``Z_t >= max_population``, or after
    ``max_generations`` generations (the last two report ``survived-cap``).
    """
    if max_generations < 1 or max_population < 1:
        raise InputDomainError("caps must be positive")
    rng = np.random.default_rng(seed)
    trace = ProcessTrace([1])
    z = int(law_root.sample_sum(rng, 1))
    trace.generations.append(z)
    t = 1
    while z > 0 and z < max_population and t < max_generations:
        z = int(law_rest.sample_sum(rng, z))
        trace.generations.append(z)
        t += 1
    trace.outcome = "extinct" if z == 0 else "survived-cap"
    return trace


def survival_frequency(law_root: OffspringLaw, law_rest: OffspringLaw, runs: int,
                       max_population: int, seed, max_generations: int = 10_000) -> float:
    """Fraction of ``runs`` independent processes that reach ``max_population``.

    Vectorised across runs; same stopping rule as :func:`simulate_process`.
    """
    rng = np.random.default_rng(seed)
    z = np.asarray(law_root.sample_sum(rng, np.ones(runs, dtype=np.int64)), dtype=np.int64)
    t = 1
    while t < max_generations:
        live = (z > 0) & (z < max_population)
        if not live.any():
            break
        z[live] = law_rest.sample_sum(rng, z[live])
        t += 1
    return float(np.count_nonzero(z >= max_population)) / runs


# --- component-size tail ----------------------------------------------------

class TailProbability(NamedTuple):
    value: float
    log_value: float


def progeny_tail(n: int, lam_n: float, i: int) -> TailProbability:
    """Asymptotic ``P(|C| = i)`` for the root-``B(n-1)`` / rest-``B(n-2)`` process.

    ``(lam_n (n-2))^(i-1) / (i sqrt(2 pi i)) * [(n-2)(1-lam_n)/(n-3)]^(n i - 3 i + 2)``,
    evaluated in log space.
    """
    if n <= 3:
        raise InputDomainError(f"tail formula needs n > 3, got {n}")
    if i < 2:
        raise InputDomainError(f"tail formula needs i >= 2, got {i}")
    if not 0.0 < lam_n < 1.0:
        raise InputDomainError(f"lam_n must lie in (0, 1), got {lam_n}")
    log_v = ((i - 1) * math.log(lam_n * (n - 2))
             - math.log(i) - 0.5 * math.log(2.0 * math.pi * i)
             + (n * i - 3 * i + 2) * (math.log(n - 2) + math.log1p(-lam_n) - math.log(n - 3)))
    return TailProbability(math.exp(log_v), log_v)


def progeny_tail_direct(n: int, lam_n: float, i: int) -> float:
    """The same formula evaluated with plain floating-point powers."""
    return ((lam_n * (n - 2)) ** (i - 1) / (i * math.sqrt(2.0 * math.pi * i))
            * ((n - 2) * (1.0 - lam_n) / (n - 3)) ** (n * i - 3 * i + 2))


def progeny_exact(n: int, p: float, i: int) -> float:
    """Exact ``P(|C| = i)`` via the hitting-time (Dwass) identity.

    With ``k`` root children, each growing a ``B(n-2, p)`` process, the total
    progeny ``j = i - 1`` of the children satisfies
    ``P = (k / j) P(S_j = j - k)`` with ``S_j ~ B(j (n-2), p)``.
    """
    if i == 1:
        return float(binom.pmf(0, n - 1, p))
    j = i - 1
    k = np.arange(1, min(j, n - 1) + 1)
    log_terms = (binom.logpmf(k, n - 1, p) + np.log(k) - math.log(j)
                 + binom.logpmf(j - k, j * (n - 2), p))
    return float(np.exp(logsumexp(log_terms)))


def log_tail_sum(n: int, lam_n: float, start: int, terms: int = 200_000) -> float:
    """``log sum_{i >= start} progeny_tail(n, lam_n, i)`` (truncated once negligible)."""
    i = np.arange(start, start + terms, dtype=np.float64)
    log_v = ((i - 1) * math.log(lam_n * (n - 2)) - np.log(i) - 0.5 * np.log(2.0 * math.pi * i)
             + (n * i - 3 * i + 2) * (math.log(n - 2) + math.log1p(-lam_n) - math.log(n - 3)))
    return float(logsumexp(log_v))


def log_geometric_tail_bound(epsilon: float, start: int) -> float:
    """``log sum_{i >= start} c^i`` with ``c = (1 + eps) exp(-eps)``."""
    log_c = math.log1p(epsilon) - epsilon
    return start * log_c - math.log(-math.expm1(log_c))


# --- concentration ----------------------------------------------------------

def chernoff_constant(eta: float) -> float:
    """``min{(1+eta) ln(1+eta) - eta, eta^2 / 2}``."""
    return min((1.0 + eta) * math.log1p(eta) - eta, 0.5 * eta * eta)


def chernoff_bound(expectation: float, eta: float) -> float:
    """Bound on ``P(|Z - E Z| > eta E Z)`` for a sum of independent indicators."""
    if expectation <= 0 or eta <= 0:
        raise InputDomainError("expectation and eta must be positive")
    return 2.0 * math.exp(-chernoff_constant(eta) * expectation)


# --- partition parameters ---------------------------------------------------

def _icbrt(x: int) -> int:
    """Floor of the real cube root of a non-negative integer."""
    if x < 0:
        raise InputDomainError("negative cube root")
    r = int(round(x ** (1.0 / 3.0)))
    while r ** 3 > x:
        r -= 1
    while (r + 1) ** 3 <= x:
        r += 1
    return r


def floor_n23(n: int, num: int = 1, den: int = 1) -> int:
    """Exact ``floor(num * n**(2/3) / den)`` for non-negative integers."""
    # floor(num * cbrt(n^2) / den) = floor(cbrt(num^3 n^2) / den)
    return _icbrt(num ** 3 * n * n) // den


@dataclass(frozen=True)
class PartitionParams:
    n: int
    k: int
    mu_n: int
    ell_n: int
    z_n: int


def partition_params(n: int, k: int) -> PartitionParams:
    """``mu = floor(n^(2/3) / (2k(k+1)))``, ``ell = floor(k n^(2/3) / (2(k+1)))``, ``z = n - k mu - ell``."""
    if n < 1 or k < 1:
        raise InputDomainError("n and k must be >= 1")
    mu = floor_n23(n, 1, 2 * k * (k + 1))
    ell = floor_n23(n, k, 2 * (k + 1))
    return PartitionParams(n, k, mu, ell, n - k * mu - ell)


# --- embedded tree-growth process -------------------------------------------

def embedded_move_count(n: int) -> int:
    """``|N| = floor(n - n^(2/3)/2) - 1`` generators usable as moves."""
    # floor(n - x/2) = n - ceil(x/2); ceil(c/2) for c = n^(2/3) from the exact floor
    half_ceil = _ceil_n23_half(n)
    return max(0, min(n - 1, n - half_ceil - 1))


def _ceil_n23_half(n: int) -> int:
    f = floor_n23(n, 1, 2)
    # exact test whether n^(2/3)/2 is an integer f: (2f)^3 == n^2
    return f if (2 * f) ** 3 == n * n else f + 1


def embedded_width(n: int) -> int:
    """Number of unused moves explored per live vertex: ``n - floor(3 n^(2/3)/4) - 1``."""
    return max(0, n - floor_n23(n, 3, 4) - 1)


def embedded_target_cap(n: int) -> int:
    """Largest allowed target size ``floor(n^(2/3)/4)``."""
    return floor_n23(n, 1, 4)


@dataclass
class EmbeddedTree:
    vertices: list                     # permutations, in acceptance order
    edges: list                        # (parent index, child index, generator)
    outcome: Literal["reached-target", "died"]
    moves_used: list


def embedded_tree_process(graph, params, start, target_size: int | None = None) -> EmbeddedTree:
    """Grow a tree of selected vertices from ``start`` inside Gamma(S_n, T_n).

    Moves come from the first ``embedded_move_count(n)`` generators of the
    order sequence; each is consumed at most once, which keeps the grown set
    a tree.  The live vertex to expand is always the smallest one (distance to
    ``start`` then lexicographic, relative to ``start``); it probes up to
    ``embedded_width(n)`` unused moves, sliding the window forward after every
    success.  Probe outcomes are the percolation sample's own selection
    decisions, so the process explores the same random subgraph.  ``start``
    itself is taken as present.
    """
    from .percolation import is_selected_vertex  # local: percolation imports this module

    n = graph.n
    cap = embedded_target_cap(n)
    if target_size is None:
        target_size = cap
    if not 1 <= target_size <= max(cap, 1):
        raise InputDomainError(f"target_size must lie in [1, {cap}] for n={n}, got {target_size}")

    moves = list(graph.tree.generators[:embedded_move_count(n)])
    width = embedded_width(n)
    start_inv = start.inverse()

    vertices = [start]
    depth = [0]
    edges = []
    used: list = []
    unused = list(moves)

    def key(idx):
        rel = start_inv * vertices[idx]
        return (depth[idx], rel.entries)

    live = [0]
    while live and len(vertices) < target_size:
        live.sort(key=key)
        cur = live.pop(0)
        failures = 0
        pos = 0
        while pos < len(unused) and failures < width and len(vertices) < target_size:
            a, b = unused[pos]
            candidate = vertices[cur].apply_transposition(a, b)
            if is_selected_vertex(params, candidate):
                unused.pop(pos)
                used.append((a, b))
                vertices.append(candidate)
                depth.append(depth[cur] + 1)
                edges.append((cur, len(vertices) - 1, (a, b)))
                live.append(len(vertices) - 1)
            else:
                failures += 1
                pos += 1
    outcome = "reached-target" if len(vertices) >= target_size else "died"
    return EmbeddedTree(vertices, edges, outcome, used)
