"""Shared test utilities: random graphs and naive counting oracles.

The counters here are deliberately written in the dumbest possible way
(subset enumeration) so they share no code path with the package.
"""

from itertools import combinations

import numpy as np

from qcones import MultiGraph


def random_graph(rng, n: int, p: float) -> MultiGraph:
    """Erdos-Renyi simple graph on n vertices with edge probability p."""
    arr = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                arr[u, v] = arr[v, u] = 1
    return MultiGraph(arr)


def _adj(g: MultiGraph):
    m = g.mult
    return lambda u, v: m[u, v] > 0


def naive_p3(g: MultiGraph) -> int:
    adj = _adj(g)
    total = 0
    for mid in range(g.n):
        for a, b in combinations(range(g.n), 2):
            if mid not in (a, b) and adj(mid, a) and adj(mid, b):
                total += 1
    return total


def naive_c3(g: MultiGraph) -> int:
    adj = _adj(g)
    return sum(
        1
        for a, b, c in combinations(range(g.n), 3)
        if adj(a, b) and adj(b, c) and adj(a, c)
    )


def naive_c4(g: MultiGraph) -> int:
    adj = _adj(g)
    total = 0
    for quad in combinations(range(g.n), 4):
        for perm in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)):
            cyc = [quad[i] for i in perm]
            if all(adj(cyc[i], cyc[(i + 1) % 4]) for i in range(4)):
                total += 1
    return total


def naive_triangles_at(g: MultiGraph, v: int) -> int:
    adj = _adj(g)
    return sum(
        1
        for a, b in combinations(range(g.n), 2)
        if v not in (a, b) and adj(v, a) and adj(v, b) and adj(a, b)
    )


def naive_t_bar(g: MultiGraph) -> int:
    d = g.degrees()
    return 8 * sum(naive_triangles_at(g, v) * int(d[v]) for v in range(g.n))


def naive_f_bar(g: MultiGraph) -> int:
    adj = _adj(g)
    d = g.degrees()
    return 4 * sum(
        int(d[u]) * int(d[v])
        for u, v in combinations(range(g.n), 2)
        if adj(u, v)
    )
