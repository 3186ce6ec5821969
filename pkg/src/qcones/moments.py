"""Spectral moments of the signless Laplacian, exact count bookkeeping, and
the degree-count linear system.

T_i is the i-th power sum of the Q-spectrum; S4 is the fourth power sum of
the adjacency spectrum.  For simple graphs every T_i and S4 is an integer
expressible in subgraph counts, which is what makes the moment method bite.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import FamilyError, ParameterError
from .graphs import ConeSpec, MultiGraph, count_subgraphs, realize, t_bar_f_bar


class MomentVector(NamedTuple):
    t1: float
    t2: float
    t3: float
    t4: float
    s4: float | None


class CountVector(NamedTuple):
    """Subgraph counts and degree power sums entering the moment formulas."""

    p3: int
    c3: int
    c4: int
    t_term: int
    f_term: int
    d2: int
    d3: int
    d4: int


def _degree_sums(g: MultiGraph) -> tuple[int, int, int]:
    d = g.degrees()
    return int((d ** 2).sum()), int((d ** 3).sum()), int((d ** 4).sum())


def brute_counts(g: MultiGraph) -> CountVector:
    """All count ingredients by direct enumeration (simple graphs, n <= 64)."""
    d2, d3, d4 = _degree_sums(g)
    t_term, f_term = t_bar_f_bar(g)
    return CountVector(
        p3=count_subgraphs(g, "P3"),
        c3=count_subgraphs(g, "C3"),
        c4=count_subgraphs(g, "C4"),
        t_term=t_term,
        f_term=f_term,
        d2=d2,
        d3=d3,
        d4=d4,
    )


def moments_from_counts(g: MultiGraph) -> MomentVector:
    """Exact integer moment vector (T1..T4, S4) of a simple graph."""
    counts = brute_counts(g)
    m2 = 2 * g.num_edges
    t1 = m2
    t2 = counts.d2 + m2
    t3 = 6 * counts.c3 + counts.d3 + 3 * counts.d2
    s4 = m2 + 4 * counts.p3 + 8 * counts.c4
    t4 = s4 + counts.t_term + counts.f_term + counts.d4 + 4 * counts.d3
    return MomentVector(t1, t2, t3, t4, s4)


def moments_from_spectrum(q_spec, adjacency_spec=None) -> MomentVector:
    """Power sums of a Q-spectrum; S4 comes from a separately supplied
    adjacency spectrum and is None when that is omitted."""
    vals = np.asarray(
        q_spec.values if hasattr(q_spec, "values") else q_spec, dtype=np.float64
    )
    sums = [float((vals ** r).sum()) for r in (1, 2, 3, 4)]
    s4 = None
    if adjacency_spec is not None:
        avals = np.asarray(
            adjacency_spec.values if hasattr(adjacency_spec, "values") else adjacency_spec,
            dtype=np.float64,
        )
        s4 = float((avals ** 4).sum())
    return MomentVector(*sums, s4)


def counts_closed_form(spec: ConeSpec) -> CountVector:
    """Closed-form counts for a cycles+K2+K1 cone, no graph realization.

    The 4-cycle count and the triangle count use the corrected unified
    expressions (base edges plus per-block corrections); both are
    cross-checked against brute force in the test suite.
    """
    if not spec.is_g_family():
        raise FamilyError("closed-form counts need a cycles+K2+K1 cone")
    n, q, s = spec.n, spec.q, spec.s
    k3 = sum(1 for k in spec.cycles if k == 3)
    k4 = sum(1 for k in spec.cycles if k == 4)
    cyc = n - 1 - 2 * q - s
    p3 = 3 * (n - 1 - s) - 4 * q + (n - 1) * (n - 2) // 2
    c3 = cyc + q + k3
    c4 = n - 2 * q - s - 1 + k4
    t_term = 8 * ((n + 5) * (n - s - 1) - q * (n + 7) + 9 * k3)
    f_term = 4 * (3 * (n + 2) * (n - 1 - 2 * q) + 4 * q * n - s * (2 * n + 7))
    d2 = (n - 1) ** 2 + s + 4 * 2 * q + 9 * cyc
    d3 = (n - 1) ** 3 + s + 8 * 2 * q + 27 * cyc
    d4 = (n - 1) ** 4 + s + 16 * 2 * q + 81 * cyc
    return CountVector(p3, c3, c4, t_term, f_term, d2, d3, d4)


def delta_moments(spec_g: ConeSpec, spec_other: ConeSpec) -> tuple[int, int]:
    """(S4 shift, T4 shift) when cycles are rewired into cycles plus paths at
    fixed order and degree sequence.

    Only block multiset data enters: 8 per gained/lost 4-cycle block, 72 per
    gained/lost triangle block, and -4 per path of order >= 3 on the rewired
    side.  T1 and T2 are pinned by the shared order and degree sequence; T3
    moves by 6 per gained triangle block.
    """
    if not spec_g.is_g_family():
        raise FamilyError("left spec must be a cycles+K2+K1 cone")
    if spec_other.stars13 != 0 or any(k < 3 for k in spec_other.cycles):
        raise FamilyError("right spec must use simple cycles and paths only")
    if spec_g.n != spec_other.n:
        raise ParameterError("specs must share the same order")
    dg = np.sort(realize(spec_g).degrees())
    do = np.sort(realize(spec_other).degrees())
    if not np.array_equal(dg, do):
        raise ParameterError("specs must share the same degree sequence")
    k3_g = sum(1 for k in spec_g.cycles if k == 3)
    k4_g = sum(1 for k in spec_g.cycles if k == 4)
    k3_o = sum(1 for k in spec_other.cycles if k == 3)
    k4_o = sum(1 for k in spec_other.cycles if k == 4)
    r = sum(1 for l in spec_other.paths if l >= 3)
    ds4 = 8 * (k4_o - k4_g)
    dt4 = ds4 + 72 * (k3_o - k3_g) - 4 * r
    return ds4, dt4


def solve_degree_system(
    t1: int, t2: int, t3: int, n: int, d1: int, n4: int
) -> tuple[int, int, int] | None:
    """Degree counts (n1, n2, n3) of the non-maximum vertices, assuming
    degrees in {1,2,3,4} besides one vertex of degree d1 and n4 vertices of
    degree 4.

    Solves the linear system from the vertex count and the first two moments
    minus d1's contribution, then gates feasibility: counts must be
    non-negative integers and the implied triangle count (T3 minus the degree
    terms, divided by 6) a non-negative integer.  Returns None when any gate
    fails; infeasibility is a meaningful outcome for contradiction arguments.
    """
    for name, v in (("t1", t1), ("t2", t2), ("t3", t3), ("n", n), ("d1", d1), ("n4", n4)):
        if int(v) != v:
            raise ParameterError(f"{name} must be an integer, got {v!r}")
    t1, t2, t3, n, d1, n4 = int(t1), int(t2), int(t3), int(n), int(d1), int(n4)
    if n < 1 or n4 < 0:
        raise ParameterError("need n >= 1 and n4 >= 0")
    c0 = n - 1
    s1 = t1 - d1          # sum of the remaining degrees
    s2 = (t2 - t1) - d1 * d1  # sum of their squares
    num = s2 - 3 * s1 + 2 * c0
    if num % 2:
        return None
    n3 = num // 2 - 3 * n4
    n2 = (s1 - c0 - 3 * n4) - 2 * n3
    n1 = c0 - n4 - n2 - n3
    if n1 < 0 or n2 < 0 or n3 < 0:
        return None
    d3_sum = d1 ** 3 + n1 + 8 * n2 + 27 * n3 + 64 * n4
    d2_sum = d1 ** 2 + n1 + 4 * n2 + 9 * n3 + 16 * n4
    six_c3 = t3 - d3_sum - 3 * d2_sum
    if six_c3 < 0 or six_c3 % 6:
        return None
    return n1, n2, n3
