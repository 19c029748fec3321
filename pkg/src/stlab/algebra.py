"""Combinatorial dictionary for the higher Auslander algebras A_n^d of type A.

Everything here is tuple combinatorics: an indecomposable module is a
separated (d+1)-tuple, a tilting module is an e-set, Ext^d between two
summands is non-zero exactly when their tuples intertwine, and left
mutation is an increasing flip.  No field or linear algebra is involved.

Two frames are supported.  The *tilting* frame for A_n^d works over
C(n+2d, 2d) with all separated tuples; the *cluster* frame for A_n^d works
over C(n+2d+1, 2d) and drops the boundary tuples (a_0 = 1 and a_d = m),
which every tilting module of A_{n+1}^d contains.
"""
from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import intertwines, is_cyclically_separated, separated_tuples, tuple_str
from .errors import DegeneratePolytopeError, IncompatibleError, InternalConsistencyError, NotATriangulationError
from .even import EvenTriangulation, increasing_flips, lower_even, upper_even
from .odd import OddTriangulation, reconstruct_complex
from .poset import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_SECONDS, flip_graph

TILTING = "tilting"
CLUSTER = "cluster"


def _check_nd(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise DegeneratePolytopeError(f"A_n^d needs n >= 1 and d >= 1, got n={n}, d={d}")


# -- quiver -------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    kind: str  # "commutativity" or "zero"
    path: tuple  # (A, A+1_i, A+1_i+1_j)
    other: Optional[tuple] = None  # (A, A+1_j, A+1_j+1_i) for commutativity


@dataclass(frozen=True)
class QuiverPresentation:
    n: int
    d: int
    vertices: tuple
    arrows: tuple
    relations: tuple

    def to_dot(self) -> str:
        lines = [f'digraph "A_{self.n}^{self.d}" {{', "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  "{tuple_str(v)}";')
        for a, b in self.arrows:
            lines.append(f'  "{tuple_str(a)}" -> "{tuple_str(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bump(A: tuple, i: int) -> tuple:
    return A[:i] + (A[i] + 1,) + A[i + 1:]


def build_quiver(n: int, d: int) -> QuiverPresentation:
    """Quiver with relations of A_n^d on the separated d-tuples of [n+2d-2]."""
    _check_nd(n, d)
    vertices = separated_tuples(n + 2 * d - 2, d - 1)
    vset = set(vertices)
    arrows = [(A, _bump(A, i)) for A in vertices for i in range(d) if _bump(A, i) in vset]
    relations = []
    for A in vertices:
        for i, j in itertools.permutations(range(d), 2):
            mid = _bump(A, i)
            end = _bump(mid, j)
            if mid not in vset or end not in vset:
                continue
            alt = _bump(A, j)
            if alt in vset:
                if i < j:
                    relations.append(Relation("commutativity", (A, mid, end), (A, alt, end)))
            else:
                relations.append(Relation("zero", (A, mid, end)))
    return QuiverPresentation(n, d, tuple(vertices), tuple(arrows), tuple(relations))


# -- modules ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ModuleLabel:
    """Indecomposable A_n^d-module in the tilting frame, named by its tuple."""

    tuple: tuple
    n: int
    d: int

    @property
    def m(self) -> int:
        return self.n + 2 * self.d

    @property
    def is_projective(self) -> bool:
        return self.tuple[0] == 1

    @property
    def is_injective(self) -> bool:
        return self.tuple[-1] == self.m

    def __str__(self):
        return f"M_{tuple_str(self.tuple)}"


def module_labels(n: int, d: int) -> list:
    _check_nd(n, d)
    return [ModuleLabel(A, n, d) for A in separated_tuples(n + 2 * d, d)]


def ext_nonzero(A: ModuleLabel, B: ModuleLabel) -> bool:
    """Ext^d(M_B, M_A) is non-zero exactly when A intertwines B."""
    if (A.n, A.d) != (B.n, B.d):
        raise IncompatibleError("modules over different algebras")
    return intertwines(A.tuple, B.tuple)


def projectives(n: int, d: int) -> EvenTriangulation:
    """The basic projective tilting module; it is the lower triangulation."""
    _check_nd(n, d)
    return lower_even(n + 2 * d, d)


def injectives(n: int, d: int) -> EvenTriangulation:
    _check_nd(n, d)
    return upper_even(n + 2 * d, d)


def left_mutations(T: EvenTriangulation) -> list:
    """Left mutations of a tilting module, i.e. its increasing flips."""
    return [Tp for _, _, Tp in increasing_flips(T)]


# -- frames -------------------------------------------------------------------


def boundary_tuples(m: int, d: int) -> list:
    """Separated tuples with a_0 = 1 and a_d = m; present in every e-set of C(m, 2d)."""
    return [A for A in separated_tuples(m, d) if not is_cyclically_separated(A, m)]


def tilting_to_cluster(e_set, n: int, d: int) -> frozenset:
    """Tilting module of A_{n+1}^d to the cluster-tilting object of A_n^d."""
    m = n + 2 * d + 1
    return frozenset(A for A in e_set if is_cyclically_separated(A, m))


def cluster_to_tilting(X, n: int, d: int) -> frozenset:
    m = n + 2 * d + 1
    return frozenset(X) | frozenset(boundary_tuples(m, d))


def left_mutations_cluster(X, n: int, d: int) -> list:
    """Left mutations of a cluster-tilting object of A_n^d."""
    T = EvenTriangulation(n + 2 * d + 1, d, cluster_to_tilting(X, n, d))
    return [tilting_to_cluster(Tp.e_set, n, d) for Tp in left_mutations(T)]


# -- chains ---------------------------------------------------------------------


@dataclass(frozen=True)
class TiltingChain:
    """Maximal chain of e-sets (tilting frame) or cluster objects (cluster frame).

    In the cluster frame the chain is a d-maximal green sequence.
    """

    n: int
    d: int
    frame: str
    steps: tuple

    @property
    def m(self) -> int:
        return self.n + 2 * self.d + (1 if self.frame == CLUSTER else 0)

    @property
    def sigma(self) -> frozenset:
        out = set()
        for s in self.steps:
            out |= s
        return frozenset(out)

    @property
    def mutations(self) -> list:
        """(A, B) exchanged at each step."""
        out = []
        for a, b in zip(self.steps, self.steps[1:]):
            (A,) = a - b
            (B,) = b - a
            out.append((A, B))
        return out

    def __len__(self):
        return len(self.steps) - 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "frame": self.frame,
            "steps": [[list(A) for A in sorted(s)] for s in self.steps],
            "sigma": [list(A) for A in sorted(self.sigma)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TiltingChain":
        steps = tuple(frozenset(tuple(A) for A in s) for s in obj["steps"])
        chain = cls(int(obj["n"]), int(obj["d"]), obj.get("frame", TILTING), steps)
        validate_chain(chain)
        return chain

    def to_cluster(self) -> "TiltingChain":
        """Tilting chain of A_{n+1}^d viewed as a green sequence of A_n^d."""
        if self.frame == CLUSTER:
            return self
        n = self.n - 1
        return TiltingChain(n, self.d, CLUSTER, tuple(tilting_to_cluster(s, n, self.d) for s in self.steps))

    def to_tilting(self) -> "TiltingChain":
        if self.frame == TILTING:
            return self
        return TiltingChain(
            self.n + 1, self.d, TILTING, tuple(cluster_to_tilting(s, self.n, self.d) for s in self.steps)
        )


def validate_chain(chain: TiltingChain) -> None:
    """Raise NotATriangulationError unless the chain runs lower -> upper by increasing flips."""
    c = chain.to_tilting()
    m, d = c.m, c.d
    if c.steps[0] != lower_even(m, d).e_set:
        raise NotATriangulationError("chain does not start at the projectives", "start", None)
    if c.steps[-1] != upper_even(m, d).e_set:
        raise NotATriangulationError("chain does not end at the injectives", "end", None)
    for k, (a, b) in enumerate(zip(c.steps, c.steps[1:])):
        flips = {Tp.e_set for _, _, Tp in increasing_flips(EvenTriangulation(m, d, a))}
        if b not in flips:
            raise NotATriangulationError(f"step {k} is not a left mutation", "step", k)


def chain_from_exchanges(n: int, d: int, exchanges: Sequence, frame: str = TILTING) -> TiltingChain:
    """Build a tilting chain of A_n^d from the projectives by the listed (A, B) exchanges."""
    _check_nd(n, d)
    m = n + 2 * d
    cur = lower_even(m, d)
    steps = [cur.e_set]
    for A, B in exchanges:
        A, B = tuple(A), tuple(B)
        match = [Tp for a, b, Tp in increasing_flips(cur) if (a, b) == (A, B)]
        if not match:
            raise NotATriangulationError(f"{A} -> {B} is not a left mutation here", "step", (A, B))
        cur = match[0]
        steps.append(cur.e_set)
    chain = TiltingChain(n, d, TILTING, tuple(steps))
    validate_chain(chain)
    return chain.to_cluster() if frame == CLUSTER else chain


def cell_arrows(cells: Sequence[tuple]) -> list:
    """Pairs (i, j) with cells[i] -> cells[j]: they share a facet that is upper in i and lower in j.

    For a simplex on vertices s_0 < ... < s_k, dropping s_p leaves an upper
    facet when p is even and a lower facet when p is odd.
    """
    out = []
    sets = [set(S) for S in cells]
    for i, S in enumerate(cells):
        for j, R in enumerate(cells):
            if i == j:
                continue
            common = sets[i] & sets[j]
            if len(common) != len(S) - 1:
                continue
            (x,) = sets[i] - common
            (y,) = sets[j] - common
            if S.index(x) % 2 == 0 and R.index(y) % 2 == 1:
                out.append((i, j))
    return out


def lex_topological_order(n: int, arrows: Sequence) -> list:
    """Lexicographically smallest topological order of a DAG on range(n)."""
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for a, b in arrows:
        succ[a].append(b)
        indeg[b] += 1
    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != n:
        raise InternalConsistencyError("the cell relation has a cycle")
    return order


def chain_from_odd(T: OddTriangulation, order: Optional[Sequence[int]] = None) -> TiltingChain:
    """Maximal chain of S1(m, 2d) whose equivalence class is the odd triangulation T.

    Each top cell S of T is one exchange (s_0, s_2, ..., s_2d) -> (s_1, ..., s_2d+1),
    applied in a linear extension of the cell relation.  By default the
    lexicographically smallest one is used; ``order`` may supply another
    (a permutation of the cell indices).
    """
    m, d = T.m, T.d
    if d < 1:
        raise DegeneratePolytopeError("chains need d >= 1")
    _, cells = reconstruct_complex(T)
    arrows = cell_arrows(cells)
    if order is None:
        order = lex_topological_order(len(cells), arrows)
    else:
        pos = {v: k for k, v in enumerate(order)}
        if sorted(pos) != list(range(len(cells))) or any(pos[a] > pos[b] for a, b in arrows):
            raise ValueError("order is not a linear extension of the cell relation")
    cur = lower_even(m, d)
    steps = [cur.e_set]
    for k in order:
        S = cells[k]
        A, B = S[0::2], S[1::2]
        if A not in cur.e_set or B in cur.e_set or not intertwines(A, B):
            raise InternalConsistencyError(f"cell {S} is not an exchange at step {len(steps)}")
        try:
            cur = EvenTriangulation(m, d, (cur.e_set - {A}) | {B})
        except NotATriangulationError as exc:
            raise InternalConsistencyError(f"cell {S} breaks the e-set: {exc}") from exc
        steps.append(cur.e_set)
    if cur.e_set != upper_even(m, d).e_set:
        raise InternalConsistencyError("chain does not end at the upper triangulation")
    return TiltingChain(m - 2 * d, d, TILTING, tuple(steps))


def expected_sigma(T: OddTriangulation) -> frozenset:
    """Summands of any chain in T's class: internal simplices plus projectives and injectives."""
    proj_inj = [A for A in separated_tuples(T.m, T.d) if A[0] == 1 or A[-1] == T.m]
    return T.internal_set | frozenset(proj_inj)


def green_sequences(
    n: int,
    d: int,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_seconds: float = DEFAULT_MAX_SECONDS,
) -> list:
    """One d-maximal green sequence of A_n^d per equivalence class, as (triangulation, chain).

    Classes correspond to triangulations of C(n+2d+1, 2d+1); results follow
    the canonical order of the triangulations.
    """
    _check_nd(n, d)
    m = n + 2 * d + 1
    deadline = time.monotonic() + max_seconds
    masks, _ = flip_graph(m, 2 * d + 1, max_elements, deadline)
    triangs = sorted((OddTriangulation._trusted(m, d, x) for x in masks), key=lambda T: T.key)
    return [(T, chain_from_odd(T).to_cluster()) for T in triangs]


def sigma_leq(c1: TiltingChain, c2: TiltingChain) -> bool:
    """Second order on chain classes: c1 below c2 when its summands contain those of c2."""
    return c1.sigma >= c2.sigma


def polygonal_deformation(c1: TiltingChain, c2: TiltingChain) -> bool:
    """c2 arises from c1 by one increasing elementary polygonal deformation.

    The chains must agree on a prefix and a suffix; in between c1 takes
    d+2 steps and c2 takes d+1, meeting only at the two ends.
    """
    if (c1.n, c1.d, c1.frame) != (c2.n, c2.d, c2.frame):
        raise IncompatibleError("chains over different algebras or frames")
    s1, s2 = list(c1.steps), list(c2.steps)
    if s1 == s2 or s1[0] != s2[0] or s1[-1] != s2[-1]:
        return False
    p = 0
    while p < min(len(s1), len(s2)) and s1[p] == s2[p]:
        p += 1
    s = 0
    while s < min(len(s1), len(s2)) - p and s1[-1 - s] == s2[-1 - s]:
        s += 1
    mid1 = s1[p - 1:len(s1) - s + 1]
    mid2 = s2[p - 1:len(s2) - s + 1]
    d = c1.d
    if len(mid1) - 1 != d + 2 or len(mid2) - 1 != d + 1:
        return False
    return not set(mid1[1:-1]) & set(mid2[1:-1])
