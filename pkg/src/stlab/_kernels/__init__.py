"""Packed-bitset kernels behind the poset computations.

The compiled extension ``_ckernels`` is used when it imports; otherwise
the pure-Python ``_pykernels`` take over.  Setting ``STLAB_PURE_PYTHON=1``
forces the fallback.  Row-parallel kernels are split into contiguous
blocks handed to a thread pool; each block writes disjoint rows (or
returns its own list), so results never depend on the thread count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

if os.environ.get("STLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

_threads = 1


def set_threads(n: int) -> None:
    global _threads
    if n < 1:
        raise ValueError("thread count must be positive")
    _threads = int(n)


def get_threads() -> int:
    return _threads


def words_for(n: int) -> int:
    return max(1, (n + 63) // 64)


def _blocks(n: int, threads: int) -> list:
    threads = max(1, min(threads, n))
    step = -(-n // threads) if n else 0
    return [(lo, min(n, lo + step)) for lo in range(0, n, step)] if n else []


def _run(fn, n: int, impl=None):
    """Apply ``fn(impl, lo, hi)`` over row blocks and return results in block order."""
    impl = impl or _impl
    blocks = _blocks(n, _threads)
    if len(blocks) <= 1:
        return [fn(impl, lo, hi) for lo, hi in blocks]
    with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
        return list(pool.map(lambda b: fn(impl, *b), blocks))


def pack_ints(values, nbits: int) -> np.ndarray:
    """Python-int bitsets to an (len(values), words) uint64 array."""
    words = words_for(nbits)
    out = np.zeros((len(values), words), dtype=np.uint64)
    for i, v in enumerate(values):
        out[i] = _pykernels.int_row(v, words)
    return out


def unpack_ints(arr: np.ndarray) -> list:
    return _pykernels.rows_int(arr)


def to_bool(packed: np.ndarray, n: int) -> np.ndarray:
    bits = np.unpackbits(np.ascontiguousarray(packed).view(np.uint8), axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


def from_bool(matrix: np.ndarray) -> np.ndarray:
    n_rows, n = matrix.shape
    words = words_for(n)
    padded = np.zeros((n_rows, words * 64), dtype=np.uint8)
    padded[:, :n] = matrix
    return np.ascontiguousarray(np.packbits(padded, axis=1, bitorder="little")).view(np.uint64)


def disjoint_matrix(A: np.ndarray, B: np.ndarray, impl=None) -> np.ndarray:
    """R[i] has bit j set iff rows A[i] and B[j] share no bit."""
    A = np.ascontiguousarray(A, dtype=np.uint64)
    B = np.ascontiguousarray(B, dtype=np.uint64)
    out = np.zeros((A.shape[0], words_for(B.shape[0])), dtype=np.uint64)
    _run(lambda k, lo, hi: k.disjoint_rows(A, B, out, lo, hi), A.shape[0], impl)
    return out


def closure(successors: list, order: list, impl=None) -> np.ndarray:
    """Reflexive-transitive closure of a DAG given successor lists and a topological order."""
    n = len(successors)
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(s) for s in successors])
    indices = np.array([t for s in successors for t in s], dtype=np.int64)
    order_arr = np.asarray(order, dtype=np.int64)
    return (impl or _impl).closure(indptr, indices, order_arr, n, words_for(n))


ROW_BLOCK = 2048  # rows unpacked at a time; a multiple of 64


def bool_blocks(packed: np.ndarray, n: int, block: int = ROW_BLOCK):
    """Yield (lo, bool rows lo..lo+block) without unpacking the whole matrix."""
    for lo in range(0, packed.shape[0], block):
        yield lo, to_bool(packed[lo:lo + block], n)


def transpose(packed: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((n, words_for(packed.shape[0])), dtype=np.uint64)
    for lo, B in bool_blocks(packed, n):
        cols = from_bool(np.ascontiguousarray(B.T))
        out[:, lo // 64:lo // 64 + cols.shape[1]] = cols
    return out


def permute(packed: np.ndarray, perm, n: int) -> np.ndarray:
    """Relation on new indices: new i ~ new j iff old perm[i] ~ old perm[j]."""
    perm = np.asarray(perm, dtype=np.int64)
    out = np.zeros((len(perm), words_for(n)), dtype=np.uint64)
    for lo in range(0, len(perm), ROW_BLOCK):
        rows = to_bool(packed[perm[lo:lo + ROW_BLOCK]], n)
        out[lo:lo + rows.shape[0]] = from_bool(np.ascontiguousarray(rows[:, perm]))
    return out


def column_counts(packed: np.ndarray, n: int) -> np.ndarray:
    total = np.zeros(n, dtype=np.int64)
    for _, B in bool_blocks(packed, n):
        total += B.sum(axis=0)
    return total


def nonzero_pairs(packed: np.ndarray, n: int) -> list:
    """(i, j) for every set bit, row-major."""
    out = []
    for lo in range(0, packed.shape[0], ROW_BLOCK):
        chunk = packed[lo:lo + ROW_BLOCK]
        rows = np.nonzero(chunk.any(axis=1))[0]
        if len(rows) == 0:
            continue
        B = to_bool(chunk[rows], n)
        for r, j in zip(*np.nonzero(B)):
            out.append((int(lo + rows[r]), int(j)))
    return out


def lattice_witness(up: np.ndarray, down: np.ndarray, impl=None):
    """First (i, j, kind) with no join (kind 0) or no meet (kind 1), or None.

    Index order must be a linear extension of the relation encoded by ``up``.
    """
    up = np.ascontiguousarray(up, dtype=np.uint64)
    down = np.ascontiguousarray(down, dtype=np.uint64)
    # blocks stop once they pass a row where some block already failed
    best = np.array([up.shape[0]], dtype=np.int64)
    found = [r for r in _run(lambda k, lo, hi: k.lattice_rows(up, down, lo, hi, best), up.shape[0], impl) if r]
    return min(found) if found else None


def cover_pairs(up: np.ndarray, down: np.ndarray, impl=None) -> list:
    up = np.ascontiguousarray(up, dtype=np.uint64)
    down = np.ascontiguousarray(down, dtype=np.uint64)
    out = []
    for part in _run(lambda k, lo, hi: k.cover_rows(up, down, lo, hi), up.shape[0], impl):
        out.extend(part)
    return out
