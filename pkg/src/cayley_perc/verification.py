"""CLI-runnable property suites: exhaustive or sampled checks with worst-case margins."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .branching import (OffspringLaw, progeny_exact, progeny_tail, survival_frequency,
                        survival_poisson)
from .cayley import CayleyGraph
from .errors import InputDomainError
from .generators import all_prufer_trees, binomial_bound, bubble, random_tree, star

SUITES = ("boundary", "diameter", "order", "survival", "branching")


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    worst_margin: float = math.inf
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def check(self, ok: bool, margin: float, what: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.details.append(f"FAIL {what} (margin {margin:g})")
        self.worst_margin = min(self.worst_margin, margin)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"[{status}] suite={self.name} passed={self.passed} failed={self.failed} "
                f"worst_margin={self.worst_margin:.6g}")


def order_sequence_valid(tree) -> bool:
    """Each ``s_i`` is already present when ``v_i`` is added, and the pairs are the edges."""
    present = {1}
    for v, s in tree.order_sequence:
        if s not in present or v in present:
            return False
        present.add(v)
    pairs = sorted((min(v, s), max(v, s)) for v, s in tree.order_sequence)
    return pairs == sorted(tree.edges) and present == set(range(1, tree.n + 1))


def boundary_trees(n: int, seed: int = 0) -> list:
    trees = [star(n), bubble(n)]
    i = 0
    while len(trees) < 5 and i < 1000:
        t = random_tree(n, seed + i)
        if t not in trees:
            trees.append(t)
        i += 1
    return trees


def suite_boundary(n: int = 5, samples: int = 100, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("boundary")
    rng = np.random.default_rng(seed)
    trees = boundary_trees(n, seed)
    graphs = [CayleyGraph(t) for t in trees]
    count = factorial(n)
    for i in range(samples):
        g = graphs[i % len(graphs)]
        size = int(rng.integers(1, count + 1))
        mask = np.zeros(count, dtype=bool)
        mask[rng.choice(count, size=size, replace=False)] = True
        bound = g.aldous_boundary_bound(mask)
        actual = int(np.count_nonzero(g.boundary_mask(mask)))
        rep.check(bound <= actual + 1e-12, actual - bound, f"tree {g.tree.edges} |S|={size}")
    return rep


def suite_diameter(n: int = 5, samples: int = 0, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("diameter")
    for tree in all_prufer_trees(n):
        g = CayleyGraph(tree)
        exact = g.exact_diameter()
        sub = tree.diameter_bound()
        rep.check(order_sequence_valid(tree), 0.0, f"order sequence {tree.edges}")
        rep.check(exact <= sub, sub - exact, f"diam {exact} > subtree sum {sub} for {tree.edges}")
        rep.check(sub <= binomial_bound(n), binomial_bound(n) - sub, f"subtree sum {sub} > C(n,2) for {tree.edges}")
    return rep


def suite_order(n: int = 5, samples: int = 200, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("order")
    rng = np.random.default_rng(seed)
    from .permutation import unrank

    for tree in [star(n), bubble(n), random_tree(n, seed)]:
        g = CayleyGraph(tree)
        dist = g.identity_distances
        verts = [unrank(r, n) for r in range(factorial(n))]
        ordered = sorted(verts, key=g.order_key)
        depths = [int(dist[v.rank()]) for v in ordered]
        steps = np.diff(depths) if len(depths) > 1 else np.zeros(1)
        rep.check(bool((steps >= 0).all()), float(steps.min()), f"depth order for {tree.edges}")
        rep.check(len(set(map(g.order_key, verts))) == len(verts), 0.0, "order is total")
        # earlier generators never touch a later v_i
        seq = tree.order_sequence
        clash = sum(1 for i, (vi, _) in enumerate(seq) for vj, sj in seq[:i] if vi in (vj, sj))
        rep.check(clash == 0, -clash, f"growth property for {tree.edges}")
        for _ in range(samples // 3):
            a, b = (verts[int(x)] for x in rng.integers(0, len(verts), 2))
            c1, c2 = g.cmp_order(a, b), g.cmp_order(b, a)
            rep.check(c1 == -c2 and (c1 == 0) == (a == b), 0.0, f"antisymmetry {a} {b}")
    return rep


def suite_survival(n: int = 0, samples: int = 0, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("survival")
    for lam in (1.01, 1.1, 1.5, 2.0, 3.0, 5.0):
        res = survival_poisson(lam)
        rep.check(res.residual <= 1e-12, 1e-12 - res.residual, f"residual at lam={lam}")
        rep.check(0.0 < res.value < 1.0, min(res.value, 1 - res.value), f"root in (0,1) at lam={lam}")
    for lam in (0.0, 0.5, 1.0):
        res = survival_poisson(lam)
        rep.check(res.value == 0.0, -res.value if res.value else 0.0, f"non-supercritical lam={lam}")
    return rep


def suite_branching(n: int = 1000, samples: int = 20_000, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("branching")
    for j, lam in enumerate((1.5, 2.0)):
        p = lam / (n - 1)
        freq = survival_frequency(OffspringLaw.binomial(n - 1, p), OffspringLaw.binomial(n - 2, p),
                                  samples, 10_000, seed=seed + j)
        target = survival_poisson(lam).value
        sigma = math.sqrt(target * (1 - target) / samples)
        gap = abs(freq - target)
        rep.check(gap <= 3 * sigma, 3 * sigma - gap, f"P0 survival {freq:.4f} vs {target:.4f} at lam={lam}")
    lam_n = 1.5 / (n - 1)
    for i in (20, 50, 100):
        ratio = progeny_tail(n, lam_n, i).value / progeny_exact(n, lam_n, i)
        rep.check(0.5 <= ratio <= 2.0, min(ratio - 0.5, 2.0 - ratio), f"tail ratio {ratio:.4f} at i={i}")
    return rep


_RUNNERS = {
    "boundary": suite_boundary,
    "diameter": suite_diameter,
    "order": suite_order,
    "survival": suite_survival,
    "branching": suite_branching,
}


def run_verification_suite(name: str, n: int | None = None, samples: int | None = None, seed: int = 0) -> SuiteReport:
    """Run one named suite; ``n`` and ``samples`` override its defaults."""
    if name not in _RUNNERS:
        raise InputDomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    kwargs = {"seed": seed}
    if n is not None:
        kwargs["n"] = n
    if samples is not None:
        kwargs["samples"] = samples
    return _RUNNERS[name](**kwargs)
