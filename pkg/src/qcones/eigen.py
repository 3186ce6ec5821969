"""Dense symmetric eigenvalues by cyclic plane rotations, grouped spectra,
and quartic root isolation.

The solver is accuracy-first: sweeps continue until the off-diagonal
Frobenius norm drops below 1e-13 of the matrix norm, and the sweep order is
fixed, so results are deterministic for a given input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    BracketError,
    ComparisonError,
    ContractViolationError,
    ParameterError,
)
from .graphs import MultiGraph

GROUP_TOL = 1e-9
OFF_DIAGONAL_FACTOR = 1e-13
_MAX_SWEEPS = 64


def q_matrix(g: MultiGraph) -> np.ndarray:
    """Degree-plus-adjacency matrix as float64; multiplicities count in both."""
    m = g.mult.astype(np.float64)
    m[np.diag_indices(g.n)] = g.degrees()
    return m


def adjacency_matrix(g: MultiGraph) -> np.ndarray:
    return g.mult.astype(np.float64)


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    app = a[p, p]
    aqq = a[q, q]
    diff = aqq - app
    if abs(diff) > 1e150 * abs(apq):
        # tau or tau*tau would overflow; the angle degenerates to apq/diff
        t = apq / diff
    else:
        tau = diff / (2.0 * apq)
        if tau >= 0.0:
            t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
        else:
            t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    # explicit two-sided updates are more accurate than the matrix products
    a[p, p] = app - t * apq
    a[q, q] = aqq + t * apq
    a[p, q] = 0.0
    a[q, p] = 0.0


def jacobi_eigenvalues(matrix) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, descending.

    Cyclic-by-row plane rotations run until the off-diagonal Frobenius norm
    is at most 1e-13 of the full norm.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError("matrix must be square")
    n = a.shape[0]
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if float(np.abs(a - a.T).max(initial=0.0)) > 1e-12 * scale:
        raise ContractViolationError("matrix is not symmetric within 1e-12 (relative)")
    a = 0.5 * (a + a.T)
    if n == 1:
        return a.diagonal().copy()
    norm = float(np.linalg.norm(a))
    target = OFF_DIAGONAL_FACTOR * norm
    for _ in range(_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(a.diagonal())))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0.0:
                    _rotate(a, p, q)
    else:
        raise ArithmeticError("plane rotations failed to converge")
    return np.sort(a.diagonal())[::-1].copy()


class Group(NamedTuple):
    value: float
    multiplicity: int
    sources: tuple[str, ...]


class QSpectrum:
    """Eigenvalue multiset with tolerance grouping.

    Values are kept sorted non-increasing; groups split where consecutive
    values gap by more than the grouping tolerance.  Closed-form builders
    attach a symbolic source tag per value, which the groups aggregate.
    """

    __slots__ = ("values", "group_tol", "sources", "groups")

    def __init__(self, values, group_tol: float = GROUP_TOL, sources=None) -> None:
        arr = np.asarray(values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterError("spectrum must be a non-empty value list")
        order = np.argsort(-arr, kind="stable")
        arr = arr[order]
        arr.setflags(write=False)
        self.values = arr
        self.group_tol = float(group_tol)
        if sources is not None:
            if len(sources) != arr.size:
                raise ParameterError("one source tag per value required")
            self.sources = tuple(sources[i] for i in order)
        else:
            self.sources = None
        self.groups = self._group()

    def _group(self) -> tuple[Group, ...]:
        vals = self.values
        groups = []
        start = 0
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[i - 1] - vals[i] > self.group_tol:
                chunk = vals[start:i]
                tags = ()
                if self.sources is not None:
                    tags = tuple(sorted(set(self.sources[start:i])))
                groups.append(Group(float(chunk.mean()), i - start, tags))
                start = i
        return tuple(groups)

    def __len__(self) -> int:
        return int(self.values.size)

    def __iter__(self):
        return iter(self.values)

    def power_sum(self, r: int) -> float:
        return float((self.values ** r).sum())

    def multiplicity_at(self, x: float, tol: float = 1e-7) -> int:
        """Total size of the groups whose representative lies within tol of x."""
        return sum(g.multiplicity for g in self.groups if abs(g.value - x) <= tol)

    def count_in_interval(
        self,
        lo: float,
        hi: float,
        closed_lo: bool = False,
        closed_hi: bool = False,
        tol: float = 1e-7,
    ) -> int:
        """Count values in the interval, resolving endpoint grazes at `tol`.

        A value within tol of an endpoint counts exactly when that endpoint
        is closed; everything else counts by strict comparison.
        """
        if not lo < hi:
            raise ParameterError("interval needs lo < hi")
        count = 0
        for v in self.values:
            if abs(v - lo) <= tol:
                count += closed_lo
            elif abs(v - hi) <= tol:
                count += closed_hi
            elif lo < v < hi:
                count += 1
        return count

    def __repr__(self) -> str:
        parts = ", ".join(f"{g.value:.6g}^{g.multiplicity}" for g in self.groups)
        return f"QSpectrum({parts})"


def sym_eigenvalues(matrix, group_tol: float = GROUP_TOL) -> QSpectrum:
    """Spectrum of a symmetric matrix via the plane-rotation solver."""
    return QSpectrum(jacobi_eigenvalues(matrix), group_tol=group_tol)


def q_spectrum(g: MultiGraph, group_tol: float = GROUP_TOL) -> QSpectrum:
    """Numeric signless-Laplacian spectrum; validates positive semidefiniteness."""
    spec = sym_eigenvalues(q_matrix(g), group_tol=group_tol)
    if spec.values[-1] < -group_tol:
        raise ContractViolationError(
            f"negative value {spec.values[-1]!r} in a degree-plus-adjacency spectrum"
        )
    return spec


def spectrum_compare(a, b) -> float:
    """L-infinity distance between two sorted spectra of equal size."""
    va = a.values if isinstance(a, QSpectrum) else np.sort(np.asarray(a, float))[::-1]
    vb = b.values if isinstance(b, QSpectrum) else np.sort(np.asarray(b, float))[::-1]
    if va.size != vb.size:
        raise ComparisonError(f"spectra sizes differ: {va.size} vs {vb.size}")
    return float(np.abs(va - vb).max())


# ---------------------------------------------------------------------------
# quartic machinery
# ---------------------------------------------------------------------------

def _det3(sub: np.ndarray) -> float:
    return float(
        sub[0, 0] * (sub[1, 1] * sub[2, 2] - sub[1, 2] * sub[2, 1])
        - sub[0, 1] * (sub[1, 0] * sub[2, 2] - sub[1, 2] * sub[2, 0])
        + sub[0, 2] * (sub[1, 0] * sub[2, 1] - sub[1, 1] * sub[2, 0])
    )


def char_poly_4x4(matrix) -> tuple[float, float, float, float, float]:
    """Monic characteristic polynomial coefficients of a 4x4 matrix.

    Principal-minor expansion; exact in float64 for the small integer
    matrices this package feeds it.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.shape != (4, 4):
        raise ParameterError("expected a 4x4 matrix")

    def principal(idx: tuple[int, ...]) -> float:
        sub = m[np.ix_(idx, idx)]
        if len(idx) == 2:
            return float(sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0])
        return _det3(sub)

    e1 = float(m.trace())
    e2 = sum(principal(idx) for idx in itertools.combinations(range(4), 2))
    e3 = sum(principal(idx) for idx in itertools.combinations(range(4), 3))
    e4 = sum(
        (-1) ** j * m[0, j] * _det3(np.delete(np.delete(m, 0, axis=0), j, axis=1))
        for j in range(4)
    )
    return (1.0, -e1, float(e2), -float(e3), float(e4))


@dataclass(frozen=True)
class QuarticData:
    """Monic quartic coefficients plus one isolating bracket per root,
    stored with brackets in descending root order."""

    coeffs: tuple[float, float, float, float, float]
    brackets: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != 5 or self.coeffs[0] != 1.0:
            raise ParameterError("need five coefficients with leading 1")
        if len(self.brackets) != 4:
            raise ParameterError("need four root brackets")

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative(self, x: float) -> float:
        c4, c3, c2, c1, _ = self.coeffs
        return ((4.0 * c4 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1


def quartic_roots(data: QuarticData, width: float = 1e-13) -> tuple[float, float, float, float]:
    """Bisect each bracket to the requested width, then polish once.

    Raises if a bracket shows no sign change or a polished root fails the
    residual bound 1e-9 * max |coefficient|.
    """
    roots = []
    bound = 1e-9 * max(abs(c) for c in data.coeffs)
    for lo, hi in data.brackets:
        flo = data(lo)
        fhi = data(hi)
        if flo == 0.0 or fhi == 0.0 or (flo > 0.0) == (fhi > 0.0):
            raise BracketError(f"no sign change on bracket ({lo}, {hi})")
        neg_left = flo < 0.0
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            fmid = data(mid)
            if fmid == 0.0:
                lo = hi = mid
                break
            if (fmid < 0.0) == neg_left:
                lo = mid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        slope = data.derivative(root)
        if slope != 0.0:
            root -= data(root) / slope
        if abs(data(root)) > bound:
            raise BracketError(f"polished root {root} fails the residual bound")
        roots.append(root)
    if not all(a > b for a, b in zip(roots, roots[1:])):
        raise BracketError("brackets must isolate roots in descending order")
    return tuple(roots)
