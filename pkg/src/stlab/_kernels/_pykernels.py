"""Pure-Python implementations of the packed-bitset kernels.

Rows are numpy ``uint64`` arrays (bit ``j`` of a row is word ``j // 64``,
bit ``j % 64``); internally every row is turned into a Python int so the
inner loops are big-integer AND/OR operations.
"""
from __future__ import annotations

import numpy as np


def row_int(row: np.ndarray) -> int:
    return int.from_bytes(row.tobytes(), "little")


def rows_int(arr: np.ndarray) -> list:
    return [row_int(r) for r in arr]


def int_row(value: int, words: int) -> np.ndarray:
    return np.frombuffer(value.to_bytes(words * 8, "little"), dtype=np.uint64)


def disjoint_rows(A, B, out, lo, hi):
    """out[i] gets bit j set when A[i] and B[j] share no bit, for lo <= i < hi."""
    b_ints = rows_int(B)
    words = out.shape[1]
    for i in range(lo, hi):
        a = row_int(A[i])
        bits = 0
        for j, b in enumerate(b_ints):
            if not a & b:
                bits |= 1 << j
        out[i] = int_row(bits, words)


def closure(indptr, indices, order, n, words):
    """Reflexive reachability along the successor lists, visited in reverse ``order``."""
    reach = [0] * n
    for v in reversed(order):
        r = 1 << int(v)
        for k in range(indptr[v], indptr[v + 1]):
            r |= reach[indices[k]]
        reach[v] = r
    out = np.zeros((n, words), dtype=np.uint64)
    for v in range(n):
        out[v] = int_row(reach[v], words)
    return out


def lattice_rows(up, down, lo, hi, best):
    """First pair (i, j, kind) with lo <= i < hi, i < j, lacking a join (kind 0) or meet (kind 1).

    Requires the index order to be a linear extension of the relation.
    ``best[0]`` is a row where a failure is already known; later rows are skipped.
    """
    ups = rows_int(up)
    downs = rows_int(down)
    n = len(ups)
    for i in range(lo, hi):
        if i > best[0]:
            return None
        ui, di = ups[i], downs[i]
        for j in range(i + 1, n):
            u = ui & ups[j]
            if not u or u & ~ups[(u & -u).bit_length() - 1]:
                best[0] = min(best[0], i)
                return i, j, 0
            w = di & downs[j]
            if not w or w & ~downs[w.bit_length() - 1]:
                best[0] = min(best[0], i)
                return i, j, 1
    return None


def cover_rows(up, down, lo, hi):
    """Pairs (i, j), i < j related, with nothing strictly between them."""
    ups = rows_int(up)
    downs = rows_int(down)
    out = []
    for i in range(lo, hi):
        rest = ups[i] & ~(1 << i)
        while rest:
            low = rest & -rest
            rest ^= low
            j = low.bit_length() - 1
            if (ups[i] & downs[j]).bit_count() == 2:
                out.append((i, j))
    return out
