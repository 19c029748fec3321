"""The higher Stasheff-Tamari posets S(m, delta).

:func:`enumerate_poset` runs a breadth-first search over increasing flips
from the lower triangulation, then builds

* ``hasse1``: the flip edges (covers of the first order),
* ``rel1``: their reflexive-transitive closure,
* ``rel2``: the second order, straight from the tuple criteria.

Relations are packed bit matrices (see :mod:`stlab._kernels`); row ``i``
holds the up-set of element ``i``.
"""
from __future__ import annotations

import graphlib
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels as K
from .core import internal_odd_tuples, tuple_str, universe
from .errors import (
    DegeneratePolytopeError,
    InternalConsistencyError,
    NotApplicableError,
    ResourceLimitError,
)
from .even import EvenTriangulation, lower_even, reverse, upper_even
from .odd import OddTriangulation, checker, lower_odd, upper_odd

log = logging.getLogger(__name__)

SCHEMA = "st-lab/1"
DEFAULT_MAX_ELEMENTS = 10**6
DEFAULT_MAX_SECONDS = 600.0


def _default_matrix_budget() -> int:
    try:
        return os.sysconf("SC_PHYS_PAGES") * os.sysconf("SC_PAGE_SIZE") // 2
    except (ValueError, OSError, AttributeError):
        return 4 << 30


MAX_MATRIX_BYTES = _default_matrix_budget()


@dataclass
class StasheffTamariPoset:
    m: int
    delta: int
    elements: list
    masks: list
    hasse1: list
    rel1: np.ndarray = field(repr=False)
    rel2: np.ndarray = field(repr=False)

    @property
    def d(self) -> int:
        return self.delta // 2

    @property
    def is_even(self) -> bool:
        return self.delta % 2 == 0

    def __len__(self):
        return len(self.elements)

    def relation(self, which: int) -> np.ndarray:
        if which == 1:
            return self.rel1
        if which == 2:
            return self.rel2
        raise ValueError(f"order must be 1 or 2, got {which!r}")

    def leq(self, which: int, i: int, j: int) -> bool:
        R = self.relation(which)
        return bool(int(R[i, j >> 6]) >> (j & 63) & 1)

    def index_of(self, T) -> int:
        return self._index[T.key]

    @property
    def _index(self) -> dict:
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {T.key: i for i, T in enumerate(self.elements)}
            self.__dict__["_index_cache"] = cache
        return cache

    @property
    def bottom(self) -> int:
        return self._index[_lower(self.m, self.delta).key]

    @property
    def top(self) -> int:
        return self._index[_upper(self.m, self.delta).key]

    def pairs(self, which: int) -> list:
        """All strict pairs (i, j) with i below j, row-major."""
        return [(i, j) for i, j in K.nonzero_pairs(self.relation(which), len(self)) if i != j]


def _lower(m: int, delta: int):
    return lower_even(m, delta // 2) if delta % 2 == 0 else lower_odd(m, delta // 2)


def _upper(m: int, delta: int):
    return upper_even(m, delta // 2) if delta % 2 == 0 else upper_odd(m, delta // 2)


def _check_parameters(m: int, delta: int) -> None:
    if delta < 1:
        raise DegeneratePolytopeError("delta must be at least 1")
    if m < delta + 1:
        raise DegeneratePolytopeError(f"C({m}, {delta}) needs at least {delta + 1} vertices")
    if m > 64:
        raise DegeneratePolytopeError("m is limited to 64")


def _even_successors(m: int, d: int):
    U = universe(m, d)
    up, conflict = U.up, U.conflict

    def successors(mask: int) -> list:
        out = []
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            others = mask ^ low
            cand = up[low.bit_length() - 1] & ~mask
            while cand:
                b = cand & -cand
                cand ^= b
                if not conflict[b.bit_length() - 1] & others:
                    out.append(others | b)
        return out

    return successors


def _odd_successors(m: int, d: int):
    C = checker(m, d)

    def successors(mask: int) -> list:
        return [mask ^ low for low in C.removable(mask)]

    return successors


def flip_graph(m: int, delta: int, max_elements: int = DEFAULT_MAX_ELEMENTS, deadline: Optional[float] = None):
    """BFS over increasing flips; returns (masks in discovery order, edge list of mask pairs)."""
    _check_parameters(m, delta)
    d = delta // 2
    if delta % 2 == 0:
        start = lower_even(m, d).mask
        successors = _even_successors(m, d)
    else:
        start = lower_odd(m, d).mask
        successors = _odd_successors(m, d)
    seen = {start: None}
    queue = [start]
    edges = []
    head = 0
    while head < len(queue):
        cur = queue[head]
        head += 1
        for nxt in successors(cur):
            edges.append((cur, nxt))
            if nxt not in seen:
                seen[nxt] = None
                queue.append(nxt)
                if len(seen) > max_elements:
                    raise ResourceLimitError(
                        f"S({m}, {delta}) has more than {max_elements} elements", partial_count=len(seen)
                    )
        if deadline is not None and head % 64 == 0 and time.monotonic() > deadline:
            raise ResourceLimitError(f"time cap hit while enumerating S({m}, {delta})", partial_count=len(seen))
    return queue, edges


def enumerate_poset(
    m: int,
    delta: int,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_seconds: float = DEFAULT_MAX_SECONDS,
) -> StasheffTamariPoset:
    """All triangulations of C(m, delta) with both orders."""
    deadline = time.monotonic() + max_seconds
    masks, edges = flip_graph(m, delta, max_elements, deadline)
    d = delta // 2
    if delta % 2 == 0:
        elements = [EvenTriangulation._trusted(m, d, x) for x in masks]
    else:
        elements = [OddTriangulation._trusted(m, d, x) for x in masks]
    order = sorted(range(len(masks)), key=lambda i: elements[i].key)
    elements = [elements[i] for i in order]
    masks = [masks[i] for i in order]
    index = {x: i for i, x in enumerate(masks)}
    hasse1 = sorted({(index[a], index[b]) for a, b in edges})
    log.debug("S(%d,%d): %d elements, %d covers", m, delta, len(masks), len(hasse1))

    _check_deadline(deadline, m, delta, len(masks))
    # rel1, rel2 and the two working copies of the lattice test
    need = 4 * len(masks) * K.words_for(len(masks)) * 8
    if need > MAX_MATRIX_BYTES:
        raise ResourceLimitError(
            f"relations on S({m}, {delta}) need about {need >> 20} MiB", partial_count=len(masks)
        )
    rel1 = _closure(len(masks), hasse1)
    _check_deadline(deadline, m, delta, len(masks))
    rel2 = _second_order(m, delta, masks)
    _check_deadline(deadline, m, delta, len(masks))
    return StasheffTamariPoset(m, delta, elements, masks, hasse1, rel1, rel2)


def _check_deadline(deadline: float, m: int, delta: int, count: int) -> None:
    if time.monotonic() > deadline:
        raise ResourceLimitError(f"time cap hit while building orders on S({m}, {delta})", partial_count=count)


def _closure(n: int, edges: list) -> np.ndarray:
    successors = [[] for _ in range(n)]
    preds = {i: [] for i in range(n)}
    for a, b in edges:
        successors[a].append(b)
        preds[b].append(a)
    try:
        order = list(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError as exc:
        raise InternalConsistencyError("flip graph has a cycle") from exc
    return K.closure(successors, order)


def _second_order(m: int, delta: int, masks: list) -> np.ndarray:
    d = delta // 2
    if delta % 2 == 0:
        U = universe(m, d)
        # T_i <=2 T_j  iff  no tuple of T_j intertwines a tuple of T_i from below
        A = K.pack_ints(masks, len(U))
        B = K.pack_ints([U.above(x) for x in masks], len(U))
    else:
        C = checker(m, d)
        # T_i <=2 T_j  iff  e(T_j) is contained in e(T_i)
        A = K.pack_ints([C.full ^ x for x in masks], len(C.tuples))
        B = K.pack_ints(masks, len(C.tuples))
    return K.disjoint_matrix(A, B)


@dataclass(frozen=True)
class OrderDiff:
    """Strict pairs related in one order only."""

    only_first: tuple
    only_second: tuple

    @property
    def equal(self) -> bool:
        return not self.only_first and not self.only_second


def order_diff(P: StasheffTamariPoset) -> OrderDiff:
    n = len(P)
    only1 = tuple(K.nonzero_pairs(P.rel1 & ~P.rel2, n))
    only2 = tuple(K.nonzero_pairs(P.rel2 & ~P.rel1, n))
    return OrderDiff(only1, only2)


def orders_equal(P: StasheffTamariPoset) -> bool:
    return bool(np.array_equal(P.rel1, P.rel2))


@dataclass(frozen=True)
class LatticeResult:
    is_lattice: bool
    order: int
    witness: Optional[tuple] = None  # (i, j) element indices
    missing: Optional[str] = None  # "join" or "meet"

    def __bool__(self):
        return self.is_lattice


def linear_extension(R: np.ndarray, n: int) -> list:
    """Indices sorted by down-set size, which strictly grows along the order."""
    sizes = K.column_counts(R, n)
    return sorted(range(n), key=lambda i: (int(sizes[i]), i))


def check_lattice(P: StasheffTamariPoset, which: int = 1) -> LatticeResult:
    """Every pair needs a least upper bound and a greatest lower bound."""
    n = len(P)
    perm = linear_extension(P.relation(which), n)
    up = K.permute(P.relation(which), perm, n)
    down = K.transpose(up, n)
    hit = K.lattice_witness(up, down)
    if hit is None:
        return LatticeResult(True, which)
    i, j, kind = hit
    a, b = sorted((perm[i], perm[j]))
    return LatticeResult(False, which, (a, b), "join" if kind == 0 else "meet")


def is_lattice(P: StasheffTamariPoset, which: int = 1) -> bool:
    return check_lattice(P, which).is_lattice


def hasse_diagram(P: StasheffTamariPoset, which: int = 2) -> list:
    """Covers of the chosen order by transitive reduction, sorted."""
    R = P.relation(which)
    down = K.transpose(R, len(P))
    return sorted(K.cover_pairs(R, down))


def boolean_embedding_odd(T: OddTriangulation) -> frozenset:
    """Image in the subsets of chainset(m, d); reverses the order."""
    return T.internal_set


def embedding_ground_set_odd(m: int, d: int) -> list:
    return internal_odd_tuples(m, d)


def self_duality_check(P: StasheffTamariPoset) -> bool:
    """Vertex reversal is an order-reversing bijection for both orders."""
    if not P.is_even:
        raise NotApplicableError("self-duality only holds in even dimensions")
    n = len(P)
    try:
        perm = np.array([P.index_of(reverse(T)) for T in P.elements])
    except KeyError:
        return False
    for R in (P.rel1, P.rel2):
        if not np.array_equal(K.transpose(K.permute(R, perm, n), n), R):
            return False
    return True


def rank_check(P: StasheffTamariPoset) -> bool:
    """Odd delta: every cover lowers the internal-set size by exactly one."""
    if P.is_even:
        raise NotApplicableError("the first order is ranked by |e| only in odd dimensions")
    sizes = [len(T.internal_set) for T in P.elements]
    return all(sizes[i] == sizes[j] + 1 for i, j in P.hasse1)


def element_label(T) -> str:
    tuples = T.key
    return ",".join(tuple_str(A) for A in tuples) if tuples else "{}"


def poset_to_json(P: StasheffTamariPoset) -> dict:
    return {
        "schema": SCHEMA,
        "m": P.m,
        "delta": P.delta,
        "elements": [T.to_json() for T in P.elements],
        "hasse1": [list(e) for e in P.hasse1],
        "rel2_pairs": [list(e) for e in P.pairs(2)],
    }


def poset_to_dot(P: StasheffTamariPoset) -> str:
    """Hasse diagram of the first order, plus dashed covers present only in the second."""
    lines = [f'digraph "S({P.m},{P.delta})" {{', "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for i, T in enumerate(P.elements):
        lines.append(f'  n{i} [label="{element_label(T)}"];')
    for i, j in P.hasse1:
        lines.append(f"  n{i} -> n{j};")
    if not orders_equal(P):
        extra = sorted(set(hasse_diagram(P, 2)) - set(P.hasse1))
        for i, j in extra:
            lines.append(f"  n{i} -> n{j} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
