"""Tuple arithmetic on the vertex set [m] of a cyclic polytope C(m, delta).

Simplices are plain Python tuples of strictly increasing 1-based vertex
labels, e.g. ``(1, 3, 5)``.  A :class:`TupleUniverse` indexes all separated
tuples of one size so that collections of them can be handled as integer
bitmasks.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ArityError, DegeneratePolytopeError, InvalidElementError

MAX_VERTICES = 64

Simplex = tuple  # tuple[int, ...], strictly increasing


def check_tuple(entries: Iterable[int], m: int) -> tuple:
    """Validate ``entries`` as a vertex tuple of C(m, .) and return it as a tuple."""
    A = tuple(int(a) for a in entries)
    if m > MAX_VERTICES:
        raise DegeneratePolytopeError(f"m={m} exceeds the supported maximum of {MAX_VERTICES}")
    for x, y in zip(A, A[1:]):
        if y <= x:
            raise InvalidElementError(f"{A} is not strictly increasing")
    if A and (A[0] < 1 or A[-1] > m):
        raise InvalidElementError(f"{A} has entries outside [1, {m}]")
    return A


def tuple_mask(A: Iterable[int]) -> int:
    """Vertex set as an m-bit mask (vertex v is bit v-1)."""
    mask = 0
    for a in A:
        mask |= 1 << (a - 1)
    return mask


def mask_tuple(mask: int) -> tuple:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def tuple_str(A: Sequence[int]) -> str:
    """Compact label: ``135`` for single-digit vertices, ``1.3.15`` otherwise."""
    if all(a < 10 for a in A):
        return "".join(str(a) for a in A)
    return ".".join(str(a) for a in A)


def is_separated(A: Sequence[int]) -> bool:
    return all(b >= a + 2 for a, b in zip(A, A[1:]))


def is_cyclically_separated(A: Sequence[int], m: int) -> bool:
    return is_separated(A) and A[-1] + 2 <= A[0] + m


def is_internal_odd(A: Sequence[int], m: int) -> bool:
    """Membership in the ground set of internal d-simplices of C(m, 2d+1)."""
    return is_separated(A) and A[0] != 1 and A[-1] != m


@dataclass(frozen=True)
class TupleClass:
    separated: bool
    cyclically_separated: bool
    internal_odd: bool


def classify(A: Sequence[int], m: int) -> TupleClass:
    A = check_tuple(A, m)
    return TupleClass(
        separated=is_separated(A),
        cyclically_separated=is_cyclically_separated(A, m),
        internal_odd=is_internal_odd(A, m),
    )


def separated_tuples(m: int, d: int, lo: int = 1) -> list:
    """All separated (d+1)-tuples with entries in [lo, m], lexicographic.

    Uses the shift a_i = c_i + i between separated tuples and plain
    combinations, which preserves lexicographic order.
    """
    if d < 0:
        return [()]
    span = range(lo, m - d + 1)
    return [tuple(c + i for i, c in enumerate(comb)) for comb in itertools.combinations(span, d + 1)]


def cyclically_separated_tuples(m: int, d: int) -> list:
    return [A for A in separated_tuples(m, d) if A[-1] + 2 <= A[0] + m]


def internal_odd_tuples(m: int, d: int) -> list:
    """Separated (d+1)-tuples avoiding both 1 and m."""
    return separated_tuples(m - 1, d, lo=2)


def intertwines(A: Sequence[int], B: Sequence[int]) -> bool:
    """Strict interleaving test.

    Equal lengths: a0 < b0 < a1 < ... < ad < bd.
    ``len(A) == len(B) - 1``: b0 < a0 < b1 < ... < a_{d-1} < b_d.
    """
    if len(A) == len(B):
        prev = 0
        for a, b in zip(A, B):
            if not prev < a < b:
                return False
            prev = b
        return True
    if len(A) == len(B) - 1:
        for i, a in enumerate(A):
            if not B[i] < a < B[i + 1]:
                return False
        return True
    raise ArityError(f"cannot intertwine a {len(A)}-tuple with a {len(B)}-tuple")


def reverse_tuple(A: Sequence[int], m: int) -> tuple:
    """Image under the vertex reversal i -> m+1-i."""
    return tuple(m + 1 - a for a in reversed(A))


class FacetKind(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"
    NOT_FACET = "not-facet"


def _gap_parities(F: Sequence[int], m: int) -> set:
    members = set(F)
    parities = set()
    larger = len(F)
    for v in range(1, m + 1):
        if v in members:
            larger -= 1
        else:
            parities.add(larger % 2)
    return parities


def facet_kind(F: Sequence[int], m: int, delta: int) -> FacetKind:
    """Classify the delta-tuple ``F`` as a lower facet, upper facet or neither of C(m, delta)."""
    F = check_tuple(F, m)
    if len(F) != delta:
        raise ArityError(f"a facet of C(m, {delta}) has {delta} vertices, got {len(F)}")
    if m <= delta:
        raise DegeneratePolytopeError(f"C({m}, {delta}) needs at least {delta + 1} vertices")
    parities = _gap_parities(F, m)
    if parities == {0}:
        return FacetKind.LOWER
    if parities == {1}:
        return FacetKind.UPPER
    return FacetKind.NOT_FACET


def _triangulation_from_facets(m: int, delta: int, parity: int) -> list:
    if m <= delta:
        raise DegeneratePolytopeError(f"C({m}, {delta}) needs at least {delta + 1} vertices")
    if m > MAX_VERTICES:
        raise DegeneratePolytopeError(f"m={m} exceeds the supported maximum of {MAX_VERTICES}")
    out = []
    for F in itertools.combinations(range(1, m + 1), delta + 1):
        parities = _gap_parities(F, m)
        if parities <= {parity}:
            out.append(F)
    return out


def lower_triangulation(m: int, delta: int) -> list:
    """delta-simplices of the lower triangulation of C(m, delta), lexicographic."""
    return _triangulation_from_facets(m, delta, 0)


def upper_triangulation(m: int, delta: int) -> list:
    return _triangulation_from_facets(m, delta, 1)


@dataclass(frozen=True, order=True)
class Circuit:
    positive: tuple
    negative: tuple
    delta: int


def circuits(m: int, delta: int) -> list:
    """One representative (A, B) with A intertwining B for every circuit of C(m, delta).

    ``|A| = floor(delta/2) + 1`` and ``|B| = ceil(delta/2) + 1``; the swapped
    pair (B, A) is the same circuit with opposite signs and is not listed.
    """
    if m <= delta:
        raise DegeneratePolytopeError(f"C({m}, {delta}) needs at least {delta + 1} vertices")
    na, nb = delta // 2 + 1, (delta + 1) // 2 + 1
    out = []
    for A in itertools.combinations(range(1, m + 1), na):
        for B in itertools.combinations(range(1, m + 1), nb):
            if intertwines(A, B):
                out.append(Circuit(A, B, delta))
    out.sort()
    return out


class TupleUniverse:
    """Bit-indexed family of all separated (d+1)-tuples in [m].

    Bit ``i`` of a mask stands for ``tuples[i]``.  ``up[i]`` is the mask of
    tuples B with tuples[i] intertwining B, ``down[i]`` those B intertwining
    tuples[i]; ``conflict[i]`` is their union.
    """

    def __init__(self, m: int, d: int):
        if m > MAX_VERTICES:
            raise DegeneratePolytopeError(f"m={m} exceeds the supported maximum of {MAX_VERTICES}")
        self.m = m
        self.d = d
        self.tuples = separated_tuples(m, d)
        self.index = {A: i for i, A in enumerate(self.tuples)}
        n = len(self.tuples)
        self.up = [0] * n
        self.down = [0] * n
        for i, A in enumerate(self.tuples):
            for j, B in enumerate(self.tuples):
                if intertwines(A, B):
                    self.up[i] |= 1 << j
                    self.down[j] |= 1 << i
        self.conflict = [u | w for u, w in zip(self.up, self.down)]
        self.full = (1 << n) - 1
        self.internal = self.encode(A for A in self.tuples if A[-1] + 2 <= A[0] + m)
        self.chain = self.encode(A for A in self.tuples if A[0] != 1 and A[-1] != m)

    def __len__(self):
        return len(self.tuples)

    def encode(self, tuples: Iterable[Sequence[int]]) -> int:
        mask = 0
        index = self.index
        for A in tuples:
            try:
                mask |= 1 << index[tuple(A)]
            except KeyError:
                raise InvalidElementError(
                    f"{tuple(A)} is not a separated {self.d + 1}-tuple in [{self.m}]"
                ) from None
        return mask

    def decode(self, mask: int) -> list:
        out = []
        tuples = self.tuples
        while mask:
            low = mask & -mask
            out.append(tuples[low.bit_length() - 1])
            mask ^= low
        return out

    def above(self, mask: int) -> int:
        """Union of up-sets: tuples intertwined from below by some member of ``mask``."""
        out = 0
        up = self.up
        while mask:
            low = mask & -mask
            out |= up[low.bit_length() - 1]
            mask ^= low
        return out


@lru_cache(maxsize=64)
def universe(m: int, d: int) -> TupleUniverse:
    return TupleUniverse(m, d)
