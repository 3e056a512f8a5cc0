"""Minimal transposition generating sets of S_n, represented as labeled trees.

A set of n-1 transpositions generates S_n minimally exactly when its edges
form a spanning tree on [n].  :class:`TranspositionTree` stores that tree
together with its growth sequence ``(v_i, s_i)``: starting from ``V_1 = {1}``,
each step adds the vertex closest to 1 (ties broken by smallest label) and the
edge to its unique already-present neighbour.

Tree specifiers accepted by :func:`from_spec`::

    star | bubble | prufer:<int>,<int>,... | edges:<a>-<b>,<c>-<d>,...
"""
from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import InputDomainError, MinimalityError

Edge = tuple[int, int]


@dataclass(frozen=True)
class TranspositionTree:
    n: int
    edges: tuple[Edge, ...]
    order_sequence: tuple[Edge, ...] = field(compare=False)
    subtree_diameters: tuple[int, ...] = field(compare=False)
    name: str = field(default="", compare=False)

    @property
    def generators(self) -> tuple[Edge, ...]:
        """Transpositions ``(a, b)`` with ``a < b``, in order-sequence order."""
        return tuple((min(v, s), max(v, s)) for v, s in self.order_sequence)

    @property
    def spec(self) -> str:
        if self.name in ("star", "bubble"):
            return self.name
        return "edges:" + ",".join(f"{a}-{b}" for a, b in self.edges)

    def adjacency(self) -> dict[int, list[int]]:
        return _adjacency(self.n, self.edges)

    def diameter_bound(self) -> int:
        return diameter_bound(self)

    def is_star(self) -> bool:
        return all(1 in e for e in self.edges)

    def is_bubble(self) -> bool:
        return set(self.edges) == {(i, i + 1) for i in range(1, self.n)}


def _adjacency(n: int, edges: Iterable[Edge]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def _tree_distances(adj: dict[int, list[int]], root: int, allowed=None) -> dict[int, int]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _normalize_edges(n: int, edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    out = []
    for e in edges:
        if len(e) != 2:
            raise InputDomainError(f"edge {e!r} must have two endpoints")
        a, b = int(e[0]), int(e[1])
        if not (1 <= a <= n and 1 <= b <= n):
            raise InputDomainError(f"edge {a}-{b} has an endpoint outside 1..{n}")
        if a == b:
            raise MinimalityError(f"self-loop {a}-{b} is not a transposition")
        out.append((min(a, b), max(a, b)))
    return tuple(sorted(out))


def _validate_tree(n: int, edges: tuple[Edge, ...]) -> None:
    if len(set(edges)) != len(edges):
        raise MinimalityError("repeated transposition in generating set")
    if len(edges) != n - 1:
        raise MinimalityError(f"a minimal generating set of S_{n} has {n - 1} transpositions, got {len(edges)}")
    reached = _tree_distances(_adjacency(n, edges), 1)
    if len(reached) != n:
        # n-1 edges and disconnected implies a cycle somewhere
        raise MinimalityError("transpositions do not generate S_n (edge graph is disconnected or cyclic)")


def compute_order_sequence(n: int, edges: Sequence[Edge]) -> tuple[Edge, ...]:
    """Growth sequence ``((v_2, s_2), ..., (v_n, s_n))`` anchored at vertex 1.

    Vertices are added by (tree distance to 1, label); ``s_i`` is the unique
    neighbour of ``v_i`` that is one step closer to 1.
    """
    adj = _adjacency(n, edges)
    dist = _tree_distances(adj, 1)
    seq = []
    for v in sorted(range(2, n + 1), key=lambda u: (dist[u], u)):
        (parent,) = [w for w in adj[v] if dist[w] == dist[v] - 1]
        seq.append((v, parent))
    return tuple(seq)


def _diameter(adj: dict[int, list[int]], vertices: set[int]) -> int:
    if len(vertices) <= 1:
        return 0
    start = min(vertices)
    d1 = _tree_distances(adj, start, vertices)
    far = max(d1, key=lambda v: (d1[v], -v))
    return max(_tree_distances(adj, far, vertices).values())


def compute_subtree_diameters(n: int, order_sequence: Sequence[Edge]) -> tuple[int, ...]:
    """``diam(T_i)`` for i = 2..n, where T_i is the subtree on ``V_i``."""
    adj = _adjacency(n, order_sequence)
    vertices = {1}
    out = []
    for v, _ in order_sequence:
        vertices.add(v)
        out.append(_diameter(adj, vertices))
    return tuple(out)


def from_edges(n: int, edges: Iterable[Sequence[int]], name: str = "") -> TranspositionTree:
    if n < 1:
        raise InputDomainError(f"n must be >= 1, got {n}")
    norm = _normalize_edges(n, edges)
    _validate_tree(n, norm)
    order = compute_order_sequence(n, norm)
    return TranspositionTree(n, norm, order, compute_subtree_diameters(n, order), name)


def star(n: int) -> TranspositionTree:
    return from_edges(n, [(1, j) for j in range(2, n + 1)], name="star")


def bubble(n: int) -> TranspositionTree:
    return from_edges(n, [(i, i + 1) for i in range(1, n)], name="bubble")


def prufer_decode(seq: Sequence[int], n: int | None = None) -> tuple[Edge, ...]:
    """Standard Prüfer decoding: repeatedly join the smallest leaf to the next code entry."""
    seq = [int(x) for x in seq]
    if n is None:
        n = len(seq) + 2
    if len(seq) != n - 2:
        raise InputDomainError(f"a Prüfer sequence for n={n} has length {n - 2}, got {len(seq)}")
    for x in seq:
        if not 1 <= x <= n:
            raise InputDomainError(f"Prüfer entry {x} outside 1..{n}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    if n >= 2:
        edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return tuple(edges)


def prufer_encode(tree: TranspositionTree) -> tuple[int, ...]:
    adj = {v: set(nb) for v, nb in tree.adjacency().items()}
    leaves = [v for v, nb in adj.items() if len(nb) == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(tree.n - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj.pop(leaf)
        adj[nb].discard(leaf)
        code.append(nb)
        if len(adj[nb]) == 1:
            heapq.heappush(leaves, nb)
    return tuple(code)


def from_prufer(seq: Sequence[int], n: int | None = None) -> TranspositionTree:
    if n is None:
        n = len(seq) + 2
    tree = from_edges(n, prufer_decode(seq, n))
    return tree


def random_tree(n: int, seed: int) -> TranspositionTree:
    """Uniform labeled tree on [n] from a seeded random Prüfer sequence."""
    rng = random.Random(seed)
    return from_prufer([rng.randint(1, n) for _ in range(n - 2)], n)


def all_prufer_trees(n: int) -> Iterator[TranspositionTree]:
    """Every labeled tree on [n] (n**(n-2) of them) in Prüfer-sequence order."""
    if n == 1:
        yield from_edges(1, [])
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        yield from_prufer(seq, n)


def from_spec(spec: str, n: int | None = None) -> TranspositionTree:
    """Parse a tree specifier; ``n`` is required for ``star`` and ``bubble``."""
    spec = spec.strip()
    kind, _, body = spec.partition(":")
    kind = kind.lower()
    if kind in ("star", "bubble"):
        if body:
            raise InputDomainError(f"'{kind}' takes no arguments")
        if n is None:
            raise InputDomainError(f"'{kind}' needs n")
        return star(n) if kind == "star" else bubble(n)
    if kind == "prufer":
        try:
            seq = [int(x) for x in body.split(",") if x.strip()]
        except ValueError as exc:
            raise InputDomainError(f"bad Prüfer sequence {body!r}") from exc
        m = len(seq) + 2
        if n is not None and n != m:
            raise InputDomainError(f"Prüfer sequence of length {len(seq)} encodes n={m}, not {n}")
        return from_prufer(seq, m)
    if kind == "edges":
        pairs = []
        for item in body.split(","):
            item = item.strip()
            if not item:
                continue
            try:
                a, b = item.split("-")
                pairs.append((int(a), int(b)))
            except ValueError as exc:
                raise InputDomainError(f"bad edge {item!r}; expected <a>-<b>") from exc
        if n is None:
            n = max((max(p) for p in pairs), default=1)
        return from_edges(n, pairs)
    raise InputDomainError(f"unknown tree specifier {spec!r}")


def diameter_bound(tree: TranspositionTree) -> int:
    """Sum of subtree diameters ``sum_{i=2..n} diam(T_i)``; an upper bound on diam(Gamma)."""
    return sum(tree.subtree_diameters)


def binomial_bound(n: int) -> int:
    """Universal diameter bound C(n, 2)."""
    return comb(n, 2)


def star_bound(n: int) -> int:
    """Closed-form diameter bound 2(n-2) stated for the star generating set."""
    return 2 * (n - 2)
