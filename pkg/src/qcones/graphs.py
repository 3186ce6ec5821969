"""Multigraph carrier, named builders, cones and brute-force structure counts.

Vertices are always 0..n-1.  Edge multiplicities live in a symmetric integer
matrix with zero diagonal; a digon (one vertex pair joined by two parallel
edges) is stored as multiplicity 2.  Simple graphs are exactly those with all
multiplicities <= 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ScaleError, UnsupportedGraphError

MAX_VERTICES = 4096

# Oracle-scale cap for the subset-enumeration counters.
MAX_COUNT_VERTICES = 64


class MultiGraph:
    """Undirected multigraph backed by an immutable multiplicity matrix."""

    __slots__ = ("_mult",)

    def __init__(self, mult) -> None:
        arr = np.array(mult, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ParameterError("multiplicity matrix must be square")
        n = arr.shape[0]
        if not 1 <= n <= MAX_VERTICES:
            raise ParameterError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        if (arr < 0).any():
            raise ParameterError("multiplicities must be non-negative")
        if np.diagonal(arr).any():
            raise ParameterError("loops are not supported (diagonal must be zero)")
        if not np.array_equal(arr, arr.T):
            raise ParameterError("multiplicity matrix must be symmetric")
        arr.setflags(write=False)
        self._mult = arr

    @classmethod
    def from_edges(cls, n: int, edges, multiplicity: int = 1) -> "MultiGraph":
        """Build from an edge list; repeated pairs accumulate multiplicity."""
        if n < 1:
            raise ParameterError("need at least one vertex")
        arr = np.zeros((n, n), dtype=np.int64)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParameterError(f"bad edge ({u}, {v}) for n={n}")
            arr[u, v] += multiplicity
            arr[v, u] += multiplicity
        return cls(arr)

    @property
    def n(self) -> int:
        return self._mult.shape[0]

    @property
    def mult(self) -> np.ndarray:
        """Read-only multiplicity matrix."""
        return self._mult

    def degrees(self) -> np.ndarray:
        return self._mult.sum(axis=1)

    def degree(self, v: int) -> int:
        return int(self._mult[v].sum())

    @property
    def num_edges(self) -> int:
        """Edge count with multiplicity."""
        return int(self._mult.sum()) // 2

    def is_simple(self) -> bool:
        return bool((self._mult <= 1).all())

    def subgraph(self, vertices) -> "MultiGraph":
        """Induced subgraph on the given vertices, relabeled in the given order."""
        idx = np.asarray(list(vertices), dtype=np.intp)
        return MultiGraph(self._mult[np.ix_(idx, idx)])

    def without_vertex(self, v: int) -> "MultiGraph":
        keep = [u for u in range(self.n) if u != v]
        return self.subgraph(keep)

    def without_edge(self, u: int, v: int) -> "MultiGraph":
        """Remove one parallel copy of the edge uv."""
        if self._mult[u, v] < 1:
            raise ParameterError(f"no edge between {u} and {v}")
        arr = self._mult.copy()
        arr[u, v] -= 1
        arr[v, u] -= 1
        return MultiGraph(arr)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._mult, other._mult)

    def __hash__(self) -> int:
        return hash((self.n, self._mult.tobytes()))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.num_edges})"


# ---------------------------------------------------------------------------
# named builders
# ---------------------------------------------------------------------------

def path_graph(length: int) -> MultiGraph:
    """Path on `length` vertices, labeled 0..length-1 along the chain."""
    if length < 1:
        raise ParameterError("path needs length >= 1")
    return MultiGraph.from_edges(length, [(i, i + 1) for i in range(length - 1)])


def cycle_graph(k: int) -> MultiGraph:
    """Simple cycle 0-1-...-(k-1)-0; use digon() for the length-2 multigraph cycle."""
    if k < 3:
        raise ParameterError("simple cycle needs k >= 3")
    return MultiGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def digon() -> MultiGraph:
    """Two vertices joined by two parallel edges."""
    return MultiGraph([[0, 2], [2, 0]])


def complete_graph(n: int) -> MultiGraph:
    if n < 1:
        raise ParameterError("complete graph needs n >= 1")
    return MultiGraph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite_graph(a: int, b: int) -> MultiGraph:
    """K_{a,b}; the first part is 0..a-1, the second a..a+b-1."""
    if a < 1 or b < 1:
        raise ParameterError("both parts need at least one vertex")
    return MultiGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(n: int) -> MultiGraph:
    """Star on n vertices: leaves 0..n-2, center n-1 (center last)."""
    if n < 2:
        raise ParameterError("star needs n >= 2")
    return MultiGraph.from_edges(n, [(i, n - 1) for i in range(n - 1)])


def z_tree(n: int) -> MultiGraph:
    """Tree obtained from the path 0..n-2 by duplicating its last vertex.

    The duplicate n-1 attaches to n-3, the neighbor of the copied endvertex;
    n = 4 gives the star on four vertices.
    """
    if n < 4:
        raise ParameterError("endvertex duplication needs n >= 4")
    edges = [(i, i + 1) for i in range(n - 2)]
    edges.append((n - 3, n - 1))
    return MultiGraph.from_edges(n, edges)


_BUILDERS = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "complete_bipartite": complete_bipartite_graph,
    "star": star_graph,
    "Z_tree": z_tree,
    "digon": digon,
}


def build(kind: str, *sizes: int) -> MultiGraph:
    """Dispatch to a named builder; `kind` is one of _BUILDERS' keys."""
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise ParameterError(f"unknown graph kind {kind!r}") from None
    return builder(*sizes)


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def disjoint_union(graphs) -> MultiGraph:
    graphs = list(graphs)
    if not graphs:
        raise ParameterError("union of no graphs")
    n = sum(g.n for g in graphs)
    arr = np.zeros((n, n), dtype=np.int64)
    offset = 0
    for g in graphs:
        arr[offset:offset + g.n, offset:offset + g.n] = g.mult
        offset += g.n
    return MultiGraph(arr)


def cone(base: MultiGraph) -> MultiGraph:
    """Join a new apex to every vertex of `base`; the apex gets the last label."""
    n = base.n
    arr = np.zeros((n + 1, n + 1), dtype=np.int64)
    arr[:n, :n] = base.mult
    arr[n, :n] = 1
    arr[:n, n] = 1
    return MultiGraph(arr)


def components_and_bipartiteness(g: MultiGraph) -> tuple[int, int]:
    """(number of components, number of bipartite components).

    Parallel edges do not affect 2-colorability: a digon joins the two color
    classes like a single edge, so a bare digon component is bipartite.
    """
    adj = g.mult > 0
    color = np.full(g.n, -1, dtype=np.int8)
    comps = 0
    bipartite = 0
    for start in range(g.n):
        if color[start] >= 0:
            continue
        comps += 1
        good = True
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for v in np.nonzero(adj[u])[0]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(int(v))
                elif color[v] == color[u]:
                    good = False
        if good:
            bipartite += 1
    return comps, bipartite


# ---------------------------------------------------------------------------
# brute-force structure counts (oracle side of the closed formulas)
# ---------------------------------------------------------------------------

def _require_countable(g: MultiGraph) -> None:
    if not g.is_simple():
        raise UnsupportedGraphError("subgraph counting is defined for simple graphs")
    if g.n > MAX_COUNT_VERTICES:
        raise ScaleError(f"brute-force counting capped at n <= {MAX_COUNT_VERTICES}")


def count_subgraphs(g: MultiGraph, pattern: str) -> int:
    """Count P3, C3 or C4 subgraphs by direct enumeration.

    C3 walks all vertex triples and C4 all quadruples (three cyclic pairings
    each), deliberately avoiding trace identities so the result can oracle
    them.  P3 uses the degree binomial sum.
    """
    _require_countable(g)
    adj = g.mult > 0
    if pattern == "P3":
        d = g.degrees()
        return int((d * (d - 1) // 2).sum())
    if pattern == "C3":
        if g.n < 3:
            return 0
        trip = np.array(list(itertools.combinations(range(g.n), 3)))
        a, b, c = trip[:, 0], trip[:, 1], trip[:, 2]
        return int((adj[a, b] & adj[b, c] & adj[a, c]).sum())
    if pattern == "C4":
        if g.n < 4:
            return 0
        quad = np.array(list(itertools.combinations(range(g.n), 4)))
        a, b, c, d = quad[:, 0], quad[:, 1], quad[:, 2], quad[:, 3]
        total = 0
        # the three cyclic orderings of a labeled quadruple
        for w, x, y, z in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            total += int((adj[w, x] & adj[x, y] & adj[y, z] & adj[z, w]).sum())
        return total
    raise ParameterError(f"unknown pattern {pattern!r}; expected P3, C3 or C4")


def t_bar_f_bar(g: MultiGraph) -> tuple[int, int]:
    """(8 * sum_v t(v) d(v), 4 * sum_{uv in E} d(u) d(v)) as exact integers.

    t(v) counts triangles through v via common neighbors; both sums feed the
    fourth spectral moment.
    """
    _require_countable(g)
    adj = (g.mult > 0).astype(np.int64)
    d = g.degrees()
    tri_at = ((adj @ adj) * adj).sum(axis=1) // 2
    t_term = 8 * int((tri_at * d).sum())
    f_term = 2 * int(d @ adj @ d)
    return t_term, f_term


# ---------------------------------------------------------------------------
# cone specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeLayout:
    """Vertex index ranges of a realized cone spec."""

    isolated: tuple[int, ...]
    k2_pairs: tuple[tuple[int, int], ...]
    long_paths: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, ...], ...]
    stars: tuple[tuple[tuple[int, int, int], int], ...]
    apex: int


@dataclass(frozen=True)
class ConeSpec:
    """Structured description of a cone: apex joined to cycles, paths and stars.

    `cycles` holds cycle lengths (>= 2, where 2 means a digon), `paths` path
    orders (>= 1, where 1 is an isolated base vertex and 2 a K2), `stars13`
    the number of 4-vertex star blocks.  Both tuples are normalized to
    descending order, so equal specs compare equal.
    """

    cycles: tuple[int, ...] = ()
    paths: tuple[int, ...] = ()
    stars13: int = 0

    def __post_init__(self) -> None:
        cycles = tuple(sorted((int(k) for k in self.cycles), reverse=True))
        paths = tuple(sorted((int(l) for l in self.paths), reverse=True))
        if any(k < 2 for k in cycles):
            raise ParameterError("cycle lengths must be >= 2 (2 = digon)")
        if any(l < 1 for l in paths):
            raise ParameterError("path orders must be >= 1")
        if self.stars13 < 0:
            raise ParameterError("star count must be >= 0")
        if not cycles and not paths and not self.stars13:
            raise ParameterError("spec needs at least one block")
        object.__setattr__(self, "cycles", cycles)
        object.__setattr__(self, "paths", paths)
        object.__setattr__(self, "stars13", int(self.stars13))

    @property
    def n(self) -> int:
        """Order of the realized cone, apex included."""
        return 1 + sum(self.cycles) + sum(self.paths) + 4 * self.stars13

    @property
    def t(self) -> int:
        return len(self.cycles)

    @property
    def q(self) -> int:
        return sum(1 for l in self.paths if l >= 2)

    @property
    def s(self) -> int:
        return sum(1 for l in self.paths if l == 1)

    def has_digon(self) -> bool:
        return any(k == 2 for k in self.cycles)

    def is_g_family(self) -> bool:
        """Cycles (>= 3) plus K2s plus isolated vertices, at least one of each."""
        return (
            self.stars13 == 0
            and self.t >= 1
            and self.q >= 1
            and self.s >= 1
            and all(k >= 3 for k in self.cycles)
            and all(l <= 2 for l in self.paths)
        )

    def is_f_family(self) -> bool:
        """One star block plus cycles (>= 3), K2s and isolated vertices."""
        return (
            self.stars13 == 1
            and self.q >= 1
            and all(k >= 3 for k in self.cycles)
            and all(l <= 2 for l in self.paths)
        )

    def layout(self) -> ConeLayout:
        """Assign vertex indices: isolated, K2 pairs, longer paths, cycles,
        stars (three leaves then the center), apex last."""
        isolated = []
        k2_pairs = []
        long_paths = []
        cycles = []
        stars = []
        next_free = 0

        def take(count: int) -> tuple[int, ...]:
            nonlocal next_free
            block = tuple(range(next_free, next_free + count))
            next_free += count
            return block

        for l in self.paths:
            if l == 1:
                isolated.extend(take(1))
        for l in self.paths:
            if l == 2:
                u, v = take(2)
                k2_pairs.append((u, v))
        for l in self.paths:
            if l >= 3:
                long_paths.append(take(l))
        for k in self.cycles:
            cycles.append(take(k))
        for _ in range(self.stars13):
            a, b, c, center = take(4)
            stars.append(((a, b, c), center))
        apex = next_free
        return ConeLayout(
            isolated=tuple(isolated),
            k2_pairs=tuple(k2_pairs),
            long_paths=tuple(long_paths),
            cycles=tuple(cycles),
            stars=tuple(stars),
            apex=apex,
        )


def realize(spec: ConeSpec) -> MultiGraph:
    """Cone graph of a spec with the documented vertex order (apex last)."""
    lay = spec.layout()
    n = spec.n
    arr = np.zeros((n, n), dtype=np.int64)
    for block in lay.long_paths:
        for u, v in zip(block, block[1:]):
            arr[u, v] = arr[v, u] = 1
    for u, v in lay.k2_pairs:
        arr[u, v] = arr[v, u] = 1
    for block in lay.cycles:
        if len(block) == 2:
            u, v = block
            arr[u, v] = arr[v, u] = 2
        else:
            for u, v in zip(block, block[1:] + block[:1]):
                arr[u, v] = arr[v, u] = 1
    for leaves, center in lay.stars:
        for u in leaves:
            arr[u, center] = arr[center, u] = 1
    arr[lay.apex, :lay.apex] = 1
    arr[:lay.apex, lay.apex] = 1
    return MultiGraph(arr)


def g_family_spec(cycles, q: int, s: int) -> ConeSpec:
    """Convenience constructor for cycles + q K2 blocks + s isolated vertices."""
    if q < 0 or s < 0:
        raise ParameterError("q and s must be >= 0")
    return ConeSpec(cycles=tuple(cycles), paths=(2,) * q + (1,) * s)
