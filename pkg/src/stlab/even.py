"""Triangulations of even-dimensional cyclic polytopes C(m, 2d).

A triangulation is stored through its e-set: the separated (d+1)-tuples
that are d-simplices of the triangulation.  Validity is purely
combinatorial: the right number of pairwise non-intertwining separated
tuples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .core import (
    check_tuple,
    internal_odd_tuples,
    is_separated,
    lower_triangulation,
    reverse_tuple,
    universe,
    upper_triangulation,
)
from .errors import DegeneratePolytopeError, IncompatibleError, NotATriangulationError


def e_set_size(m: int, d: int) -> int:
    """Number of tuples in the e-set of any triangulation of C(m, 2d)."""
    n = m - 2 * d
    return comb(n + d - 1, d)


@dataclass(frozen=True)
class EvenTriangulation:
    m: int
    d: int
    e_set: frozenset

    def __post_init__(self):
        if self.d < 1:
            raise DegeneratePolytopeError("even triangulations need d >= 1")
        if self.m < 2 * self.d + 1:
            raise DegeneratePolytopeError(f"C({self.m}, {2 * self.d}) needs at least {2 * self.d + 1} vertices")
        _check_e_set(self.e_set, self.m, self.d)

    @classmethod
    def _trusted(cls, m: int, d: int, mask: int) -> "EvenTriangulation":
        T = object.__new__(cls)
        object.__setattr__(T, "m", m)
        object.__setattr__(T, "d", d)
        object.__setattr__(T, "e_set", frozenset(universe(m, d).decode(mask)))
        T.__dict__["mask"] = mask
        return T

    @property
    def delta(self) -> int:
        return 2 * self.d

    @cached_property
    def mask(self) -> int:
        return universe(self.m, self.d).encode(self.e_set)

    @cached_property
    def key(self) -> tuple:
        """Canonical form: sorted tuple of sorted tuples."""
        return tuple(sorted(self.e_set))

    def __repr__(self):
        return f"EvenTriangulation(m={self.m}, d={self.d}, e={[list(A) for A in self.key]})"

    def to_json(self) -> dict:
        return {"m": self.m, "d": self.d, "kind": "even", "e": [list(A) for A in self.key]}

    @classmethod
    def from_json(cls, obj: dict) -> "EvenTriangulation":
        if obj.get("kind", "even") != "even":
            raise ValueError(f"expected kind 'even', got {obj.get('kind')!r}")
        return cls(int(obj["m"]), int(obj["d"]), frozenset(tuple(A) for A in obj["e"]))


def _check_e_set(e_set, m: int, d: int) -> None:
    U = universe(m, d)
    for A in e_set:
        A = check_tuple(A, m)
        if len(A) != d + 1 or not is_separated(A):
            raise NotATriangulationError(f"{A} is not a separated {d + 1}-tuple", "separated", A)
    want = e_set_size(m, d)
    if len(e_set) != want:
        raise NotATriangulationError(
            f"e-set of C({m}, {2 * d}) needs {want} tuples, got {len(e_set)}", "size", len(e_set)
        )
    mask = U.encode(e_set)
    for A in e_set:
        clash = U.up[U.index[A]] & mask
        if clash:
            raise NotATriangulationError(
                f"{A} intertwines {U.decode(clash)[0]}", "non-intertwining", (A, U.decode(clash)[0])
            )


def make_even(e_set: Iterable[Sequence[int]], m: int, d: int) -> EvenTriangulation:
    return EvenTriangulation(m, d, frozenset(tuple(A) for A in e_set))


def e_from_full(simplices: Iterable[Sequence[int]], m: int, d: int) -> EvenTriangulation:
    """e-set of a triangulation given by its top-dimensional (2d+1)-tuples."""
    e = set()
    for S in simplices:
        S = check_tuple(S, m)
        if len(S) != 2 * d + 1:
            raise NotATriangulationError(f"{S} is not a {2 * d}-simplex", "arity", S)
        for A in itertools.combinations(S, d + 1):
            if is_separated(A):
                e.add(A)
    return EvenTriangulation(m, d, frozenset(e))


def full_from_e(T: EvenTriangulation) -> list:
    """Top cells: (2d+1)-subsets all of whose separated (d+1)-subtuples are in the e-set."""
    e = T.e_set
    out = []
    for S in itertools.combinations(range(1, T.m + 1), 2 * T.d + 1):
        if all(A in e for A in itertools.combinations(S, T.d + 1) if is_separated(A)):
            out.append(S)
    return out


def lower_even(m: int, d: int) -> EvenTriangulation:
    return e_from_full(lower_triangulation(m, 2 * d), m, d)


def upper_even(m: int, d: int) -> EvenTriangulation:
    return e_from_full(upper_triangulation(m, 2 * d), m, d)


def increasing_flips(T: EvenTriangulation) -> list:
    """All covers of T in the first order, as (A, B, T') with A exchanged for B."""
    U = universe(T.m, T.d)
    mask = T.mask
    out = []
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        i = low.bit_length() - 1
        others = mask ^ low
        cand = U.up[i] & ~mask
        while cand:
            blow = cand & -cand
            cand ^= blow
            j = blow.bit_length() - 1
            if not U.conflict[j] & others:
                out.append((U.tuples[i], U.tuples[j], EvenTriangulation._trusted(T.m, T.d, others | blow)))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def decreasing_flips(T: EvenTriangulation) -> list:
    """All elements covered by T, as (A, B, T') with B in T exchanged back for A."""
    U = universe(T.m, T.d)
    mask = T.mask
    out = []
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        j = low.bit_length() - 1
        others = mask ^ low
        cand = U.down[j] & ~mask
        while cand:
            alow = cand & -cand
            cand ^= alow
            i = alow.bit_length() - 1
            if not U.conflict[i] & others:
                out.append((U.tuples[i], U.tuples[j], EvenTriangulation._trusted(T.m, T.d, others | alow)))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _same_polytope(T: EvenTriangulation, T2: EvenTriangulation) -> None:
    if (T.m, T.d) != (T2.m, T2.d):
        raise IncompatibleError(f"C({T.m}, {2 * T.d}) vs C({T2.m}, {2 * T2.d})")


def leq2(T: EvenTriangulation, T2: EvenTriangulation) -> bool:
    """Second order: no tuple of T2 intertwines a tuple of T."""
    _same_polytope(T, T2)
    U = universe(T.m, T.d)
    return not (U.above(T2.mask) & T.mask)


def above_mask(T: EvenTriangulation) -> int:
    """Tuples lying strictly above T's section: intertwined by some e-tuple."""
    return universe(T.m, T.d).above(T.mask)


def submersion_set(T: EvenTriangulation) -> frozenset:
    """Internal d-simplices submerged by T."""
    U = universe(T.m, T.d)
    return frozenset(U.decode(U.internal & ~U.above(T.mask)))


def reverse(T: EvenTriangulation) -> EvenTriangulation:
    """Apply the vertex reversal i -> m+1-i."""
    U = universe(T.m, T.d)
    mask = U.encode(reverse_tuple(A, T.m) for A in T.e_set)
    return EvenTriangulation._trusted(T.m, T.d, mask)


def embedding_ground_set(m: int, d: int) -> list:
    """Separated (d+1)-tuples in [2, m]; the Boolean lattice the even embedding lands in."""
    return internal_odd_tuples(m + 1, d)


def boolean_embedding_even(T: EvenTriangulation) -> frozenset:
    ground = set(embedding_ground_set(T.m, T.d))
    return frozenset(A for A in submersion_set(T) if A in ground)
