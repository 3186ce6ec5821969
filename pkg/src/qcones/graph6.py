"""Bit-exact graph6 codec for simple graphs on at most 62 vertices.

Only the short form (single size byte) is handled.  Upper-triangle adjacency
bits are taken in column order (0,1), (0,2), (1,2), (0,3), ... and packed six
per byte, most significant bit first, zero-padded, each six-bit group offset
by 63 into printable ASCII.
"""

from __future__ import annotations

import numpy as np

from .errors import FormatError, UnsupportedGraphError
from .graphs import MultiGraph

_HEADER = ">>graph6<<"
MAX_GRAPH6_VERTICES = 62


def pair_order(n: int) -> list[tuple[int, int]]:
    """The column-major upper-triangle pair sequence shared with the codec."""
    return [(u, v) for v in range(1, n) for u in range(v)]


def encode_graph6(g: MultiGraph) -> str:
    if not g.is_simple():
        raise UnsupportedGraphError("graph6 encodes simple graphs only")
    n = g.n
    if n > MAX_GRAPH6_VERTICES:
        raise FormatError(f"graph6 short form capped at n <= {MAX_GRAPH6_VERTICES}")
    out = [chr(n + 63)]
    group = 0
    filled = 0
    for u, v in pair_order(n):
        group = (group << 1) | int(g.mult[u, v])
        filled += 1
        if filled == 6:
            out.append(chr(group + 63))
            group = 0
            filled = 0
    if filled:
        group <<= 6 - filled
        out.append(chr(group + 63))
    return "".join(out)


def decode_graph6(text: str) -> MultiGraph:
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise FormatError("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    if any(b < 63 or b > 126 for b in data):
        raise FormatError("graph6 byte out of printable range")
    if data[0] == 126:
        raise FormatError("long-form graph6 sizes are not supported")
    n = data[0] - 63
    if n > MAX_GRAPH6_VERTICES:
        raise FormatError(f"graph6 short form capped at n <= {MAX_GRAPH6_VERTICES}")
    if n < 1:
        raise FormatError("graph needs at least one vertex")
    npairs = n * (n - 1) // 2
    expected = 1 + (npairs + 5) // 6
    if len(data) != expected:
        raise FormatError(f"graph6 body has {len(data)} bytes, expected {expected}")
    bits = []
    for b in data[1:]:
        group = b - 63
        bits.extend((group >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[npairs:]):
        raise FormatError("non-zero padding bits")
    arr = np.zeros((n, n), dtype=np.int64)
    for bit, (u, v) in zip(bits, pair_order(n)):
        arr[u, v] = arr[v, u] = bit
    return MultiGraph(arr)
