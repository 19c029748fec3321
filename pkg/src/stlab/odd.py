"""Triangulations of odd-dimensional cyclic polytopes C(m, 2d+1).

A triangulation is determined by its internal d-simplices, which are the
separated (d+1)-tuples avoiding vertices 1 and m.  A collection of such
tuples comes from a triangulation exactly when it is *supporting* and
*bridging*; both checks are implemented literally below, plus a bitmask
checker used on the enumeration hot path.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

from .core import check_tuple, internal_odd_tuples, intertwines, is_internal_odd
from .errors import (
    ArityError,
    DegeneratePolytopeError,
    IncompatibleError,
    InvalidElementError,
    NotATriangulationError,
)


def chainset_size(m: int, d: int) -> int:
    return comb(m - d - 2, d + 1)


def _check_elements(X, m: int, d: int) -> frozenset:
    out = set()
    for A in X:
        A = check_tuple(A, m)
        if len(A) != d + 1 or not is_internal_odd(A, m):
            raise InvalidElementError(f"{A} is not an internal {d}-simplex of C({m}, {2 * d + 1})")
        out.add(A)
    return frozenset(out)


def support_candidates(A: Sequence[int]) -> Iterable[tuple]:
    """All d-tuples A' with A' intertwining the (d+1)-tuple A, lexicographic."""
    ranges = [range(A[i] + 1, A[i + 1]) for i in range(len(A) - 1)]
    return itertools.product(*ranges)


def support_requirements(A: Sequence[int], A_prime: Sequence[int], m: int) -> list:
    """(d+1)-subtuples of A u A' that are internal, i.e. the tuples a supporting set must hold."""
    pool = sorted(set(A) | set(A_prime))
    return [B for B in itertools.combinations(pool, len(A)) if is_internal_odd(B, m)]


def supporting_witness(A: Sequence[int], X, m: int):
    """First A' whose requirements all lie in X, or None."""
    for A_prime in support_candidates(A):
        if all(B in X for B in support_requirements(A, A_prime, m)):
            return A_prime
    return None


def is_supporting(X, m: int, d: int) -> bool:
    X = _check_elements(X, m, d)
    return all(supporting_witness(A, X, m) is not None for A in X)


def bridge_window(A: Sequence[int], B: Sequence[int]):
    """The window [i, j] if A and B qualify for the bridging condition, else None.

    They qualify when they differ on one contiguous block of positions and
    A's block intertwines B's block.
    """
    diff = [k for k, (a, b) in enumerate(zip(A, B)) if a != b]
    if not diff:
        return None
    i, j = diff[0], diff[-1]
    if j - i + 1 != len(diff):
        return None
    if not intertwines(A[i:j + 1], B[i:j + 1]):
        return None
    return i, j


def bridge_interpolants(A: Sequence[int], B: Sequence[int], window) -> list:
    """S_k for k = i..j+1: A's block up to k-1 followed by B's block from k."""
    i, j = window
    return [tuple(A[:k]) + tuple(B[k:]) for k in range(i, j + 2)]


def bridging_witness(X):
    """First ordered pair (A, B) whose interpolants are not all in X, or None."""
    for A in sorted(X):
        for B in sorted(X):
            w = bridge_window(A, B)
            if w is None:
                continue
            if not all(S in X for S in bridge_interpolants(A, B, w)):
                return A, B
    return None


def is_bridging(X, m: int, d: int) -> bool:
    X = _check_elements(X, m, d)
    return bridging_witness(X) is None


class OddChecker:
    """Precomputed supporting/bridging constraints over chainset(m, d) as bitmasks."""

    def __init__(self, m: int, d: int):
        self.m = m
        self.d = d
        self.tuples = internal_odd_tuples(m, d)
        self.index = {A: i for i, A in enumerate(self.tuples)}
        self.full = (1 << len(self.tuples)) - 1
        self.support = []
        for A in self.tuples:
            self.support.append([self.encode(support_requirements(A, Ap, m)) for Ap in support_candidates(A)])
        self.bridge = [[] for _ in self.tuples]
        for a, A in enumerate(self.tuples):
            for b, B in enumerate(self.tuples):
                w = bridge_window(A, B)
                if w is not None:
                    self.bridge[a].append((1 << b, self.encode(bridge_interpolants(A, B, w))))

    def encode(self, tuples) -> int:
        mask = 0
        for A in tuples:
            mask |= 1 << self.index[A]
        return mask

    def decode(self, mask: int) -> list:
        return [A for i, A in enumerate(self.tuples) if mask >> i & 1]

    def valid(self, X: int) -> bool:
        rest = X
        while rest:
            low = rest & -rest
            rest ^= low
            i = low.bit_length() - 1
            if not any(not req & ~X for req in self.support[i]):
                return False
            for partner, req in self.bridge[i]:
                if X & partner and req & ~X:
                    return False
        return True

    def removable(self, X: int) -> list:
        """Members whose removal keeps X valid, as single-bit masks in index order."""
        out = []
        rest = X
        while rest:
            low = rest & -rest
            rest ^= low
            if self.valid(X ^ low):
                out.append(low)
        return out


@lru_cache(maxsize=64)
def checker(m: int, d: int) -> OddChecker:
    return OddChecker(m, d)


@dataclass(frozen=True)
class OddTriangulation:
    m: int
    d: int
    internal_set: frozenset

    def __post_init__(self):
        _check_parameters(self.m, self.d)
        X = _check_elements(self.internal_set, self.m, self.d)
        _raise_if_invalid(X, self.m, self.d)

    @classmethod
    def _trusted(cls, m: int, d: int, mask: int) -> "OddTriangulation":
        T = object.__new__(cls)
        object.__setattr__(T, "m", m)
        object.__setattr__(T, "d", d)
        object.__setattr__(T, "internal_set", frozenset(checker(m, d).decode(mask)))
        T.__dict__["mask"] = mask
        return T

    @property
    def delta(self) -> int:
        return 2 * self.d + 1

    @cached_property
    def mask(self) -> int:
        return checker(self.m, self.d).encode(self.internal_set)

    @cached_property
    def key(self) -> tuple:
        return tuple(sorted(self.internal_set))

    def __repr__(self):
        return f"OddTriangulation(m={self.m}, d={self.d}, internal={[list(A) for A in self.key]})"

    def to_json(self) -> dict:
        return {"m": self.m, "d": self.d, "kind": "odd", "internal": [list(A) for A in self.key]}

    @classmethod
    def from_json(cls, obj: dict) -> "OddTriangulation":
        if obj.get("kind", "odd") != "odd":
            raise ValueError(f"expected kind 'odd', got {obj.get('kind')!r}")
        return cls(int(obj["m"]), int(obj["d"]), frozenset(tuple(A) for A in obj["internal"]))


def _check_parameters(m: int, d: int) -> None:
    if d < 0:
        raise DegeneratePolytopeError("d must be non-negative")
    if m < 2 * d + 2:
        raise DegeneratePolytopeError(f"C({m}, {2 * d + 1}) needs at least {2 * d + 2} vertices")


def _raise_if_invalid(X: frozenset, m: int, d: int) -> None:
    for A in sorted(X):
        if supporting_witness(A, X, m) is None:
            raise NotATriangulationError(f"not supporting at {A}", "supporting", A)
    pair = bridging_witness(X)
    if pair is not None:
        raise NotATriangulationError(f"not bridging for the pair {pair}", "bridging", pair)


def validate_odd(X: Iterable[Sequence[int]], m: int, d: int) -> OddTriangulation:
    """Typed triangulation for X, or NotATriangulationError naming the failed property."""
    _check_parameters(m, d)
    try:
        X = _check_elements(X, m, d)
    except InvalidElementError as exc:
        raise NotATriangulationError(str(exc), "chainset", None) from exc
    return OddTriangulation(m, d, X)


def lower_odd(m: int, d: int) -> OddTriangulation:
    _check_parameters(m, d)
    return OddTriangulation._trusted(m, d, checker(m, d).full)


def upper_odd(m: int, d: int) -> OddTriangulation:
    _check_parameters(m, d)
    return OddTriangulation._trusted(m, d, 0)


def internal_from_full(simplices: Iterable[Sequence[int]], m: int, d: int) -> frozenset:
    """Internal d-faces of a set of (2d+1)-simplices."""
    out = set()
    for S in simplices:
        for A in itertools.combinations(S, d + 1):
            if is_internal_odd(A, m):
                out.add(A)
    return frozenset(out)


def increasing_flips_odd(T: OddTriangulation) -> list:
    """Covers of T in the first order: (A, T') where T' drops the internal simplex A."""
    C = checker(T.m, T.d)
    out = []
    for low in C.removable(T.mask):
        out.append((C.tuples[low.bit_length() - 1], OddTriangulation._trusted(T.m, T.d, T.mask ^ low)))
    return out


def decreasing_flips_odd(T: OddTriangulation) -> list:
    C = checker(T.m, T.d)
    out = []
    for i in range(len(C.tuples)):
        low = 1 << i
        if not T.mask & low and C.valid(T.mask | low):
            out.append((C.tuples[i], OddTriangulation._trusted(T.m, T.d, T.mask | low)))
    return out


def leq2_odd(T: OddTriangulation, T2: OddTriangulation) -> bool:
    if (T.m, T.d) != (T2.m, T2.d):
        raise IncompatibleError(f"C({T.m}, {2 * T.d + 1}) vs C({T2.m}, {2 * T2.d + 1})")
    return T.internal_set >= T2.internal_set


def reconstruct_complex(T: OddTriangulation) -> tuple:
    """(d+1)-simplices and (2d+1)-simplices of the triangulation, both lexicographic."""
    m, d, X = T.m, T.d, T.internal_set
    mids = []
    for B in itertools.combinations(range(1, m + 1), d + 2):
        if any(A not in X and is_internal_odd(A, m) for A in itertools.combinations(B, d + 1)):
            continue
        if any(intertwines(A, B) for A in X):
            continue
        mids.append(B)
    mid_set = set(mids)
    tops = [
        S
        for S in itertools.combinations(range(1, m + 1), 2 * d + 2)
        if all(B in mid_set for B in itertools.combinations(S, d + 2))
    ]
    return mids, tops


def _relabel(X, shift: int) -> frozenset:
    return frozenset(tuple(a - shift for a in A) for A in X)


def contract(X, m: int, d: int, relabel: bool = True) -> frozenset:
    """Tuple-level image of moving vertex 1 onto vertex 2: drop tuples starting at 2.

    The result is a set for C([2, m], 2d+1); with ``relabel`` the vertices
    are shifted by -1 so it lives in chainset(m-1, d).
    """
    X = _check_elements(X, m, d)
    kept = frozenset(A for A in X if A[0] != 2)
    return _relabel(kept, 1) if relabel else kept


def delete12(X, m: int, d: int, relabel: bool = True) -> frozenset:
    """Tuple-level vertex figure at {1, 2}: tails of tuples starting at 2.

    The result is a set of d-tuples for C([3, m], 2d-1); with ``relabel``
    the vertices are shifted by -2 so it lives in chainset(m-2, d-1).
    """
    if d < 1:
        raise ArityError("delete12 needs d >= 1")
    X = _check_elements(X, m, d)
    tails = frozenset(A[1:] for A in X if A[0] == 2)
    return _relabel(tails, 2) if relabel else tails


def star(v: int, X) -> frozenset:
    """Cone every tuple of X from the vertex v."""
    out = set()
    for A in X:
        if v in A:
            raise InvalidElementError(f"vertex {v} already in {tuple(A)}")
        out.add(tuple(sorted((v, *A))))
    return frozenset(out)
