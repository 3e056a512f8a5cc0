"""Slow reference implementations built only from tuples and dictionaries."""
from collections import deque
from itertools import permutations


def swap(p, a, b):
    q = list(p)
    q[a - 1], q[b - 1] = q[b - 1], q[a - 1]
    return tuple(q)


def adjacency(n, edges):
    """Materialised Cayley graph: tuple -> list of neighbour tuples."""
    return {p: [swap(p, a, b) for a, b in edges] for p in permutations(range(1, n + 1))}


def bfs(adj, root):
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(n, edges):
    adj = adjacency(n, edges)
    return max(max(bfs(adj, v).values()) for v in adj)


def flood_fill(adj, keep):
    """Component sizes (descending) of the subgraph induced on ``keep``."""
    seen, sizes = set(), []
    for v in adj:
        if v not in keep or v in seen:
            continue
        seen.add(v)
        stack, size = [v], 0
        while stack:
            u = stack.pop()
            size += 1
            for w in adj[u]:
                if w in keep and w not in seen:
                    seen.add(w)
                    stack.append(w)
        sizes.append(size)
    return sorted(sizes, reverse=True)


def flood_fill_partition(adj, keep):
    """Components as a set of frozensets."""
    seen, parts = set(), set()
    for v in adj:
        if v not in keep or v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in keep and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        parts.add(frozenset(comp))
    return parts
