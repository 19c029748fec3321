import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stlab.core import internal_odd_tuples, lower_triangulation, upper_triangulation
from stlab.errors import ArityError, IncompatibleError, InvalidElementError, NotATriangulationError
from stlab.odd import (
    OddTriangulation,
    checker,
    contract,
    decreasing_flips_odd,
    delete12,
    increasing_flips_odd,
    internal_from_full,
    is_bridging,
    is_supporting,
    leq2_odd,
    lower_odd,
    reconstruct_complex,
    star,
    upper_odd,
    validate_odd,
)
from stlab.poset import enumerate_poset
from oracles import geometric_flip_graph, internal_of_cells

SIX = [
    {(2, 4), (2, 5), (3, 5)},
    {(2, 4), (2, 5)},
    {(2, 5), (3, 5)},
    {(2, 4)},
    {(3, 5)},
    set(),
]


def brute_valid_sets(m, d):
    ground = internal_odd_tuples(m, d)
    out = []
    for r in range(len(ground) + 1):
        for X in itertools.combinations(ground, r):
            if is_supporting(X, m, d) and is_bridging(X, m, d):
                out.append(frozenset(X))
    return out


def test_supporting_examples():
    assert is_supporting({(2, 4), (2, 5), (3, 5)}, 6, 1)
    assert not is_supporting({(2, 5)}, 6, 1)
    assert is_supporting(set(), 6, 1)
    with pytest.raises(InvalidElementError):
        is_supporting({(1, 3)}, 6, 1)


def test_bridging_examples():
    assert is_bridging({(2, 4), (2, 5), (3, 5)}, 6, 1)
    # 24 intertwines 35 within the single window, so 25 must be present
    assert not is_bridging({(2, 4), (3, 5)}, 6, 1)
    assert is_bridging(set(), 6, 1)


def test_the_six_triangulations_of_c63():
    assert sorted(brute_valid_sets(6, 1), key=sorted) == sorted(map(frozenset, SIX), key=sorted)


def test_validate_reports_reason():
    with pytest.raises(NotATriangulationError) as exc:
        validate_odd({(2, 5)}, 6, 1)
    assert exc.value.reason == "supporting" and exc.value.witness == (2, 5)
    with pytest.raises(NotATriangulationError) as exc:
        validate_odd({(2, 4), (3, 5)}, 6, 1)
    assert exc.value.reason == "bridging"
    with pytest.raises(NotATriangulationError) as exc:
        validate_odd({(1, 4)}, 6, 1)
    assert exc.value.reason == "chainset"


def test_flips_by_removal():
    T = validate_odd(SIX[0], 6, 1)
    assert [A for A, _ in increasing_flips_odd(T)] == [(2, 4), (3, 5)]
    assert increasing_flips_odd(upper_odd(6, 1)) == []
    T1 = validate_odd(SIX[1], 6, 1)
    assert [(A, U.internal_set) for A, U in increasing_flips_odd(T1)] == [((2, 5), frozenset({(2, 4)}))]
    assert [A for A, _ in decreasing_flips_odd(T1)] == [(3, 5)]


def test_leq2_odd():
    chain = [validate_odd(X, 6, 1) for X in SIX[:2] + [SIX[3], SIX[5]]]
    for a, b in zip(chain, chain[1:]):
        assert leq2_odd(a, b)
    A, B = validate_odd(SIX[1], 6, 1), validate_odd(SIX[4], 6, 1)
    assert not leq2_odd(A, B) and not leq2_odd(B, A)
    assert leq2_odd(A, A)
    with pytest.raises(IncompatibleError):
        leq2_odd(A, lower_odd(7, 1))


def test_reconstruct_extremes():
    assert reconstruct_complex(upper_odd(6, 1))[1] == upper_triangulation(6, 3)
    assert reconstruct_complex(lower_odd(6, 1))[1] == lower_triangulation(6, 3)
    assert len(reconstruct_complex(validate_odd(SIX[1], 6, 1))[1]) == 5


@pytest.mark.parametrize("m,d", [(6, 1), (7, 1), (8, 1), (8, 2), (9, 2)])
def test_odd_sets_match_geometric_triangulations(m, d):
    nodes, _ = geometric_flip_graph(m, 2 * d + 1)
    P = enumerate_poset(m, 2 * d + 1)
    assert {T.internal_set for T in P.elements} == {internal_of_cells(c, m, d) for c in nodes}
    for cells in nodes:
        T = validate_odd(internal_of_cells(cells, m, d), m, d)
        mids, tops = reconstruct_complex(T)
        assert tops == sorted(cells)
        # each internal simplex lies in at least d+2 top cells
        for A in T.internal_set:
            assert sum(1 for S in tops if set(A) <= set(S)) >= d + 2


@pytest.mark.parametrize("m,d", [(6, 1), (7, 1), (8, 1), (9, 1), (7, 2), (8, 2)])
def test_bfs_equals_subset_filtration(m, d):
    brute = set(brute_valid_sets(m, d))
    P = enumerate_poset(m, 2 * d + 1)
    assert {T.internal_set for T in P.elements} == brute


@pytest.mark.parametrize("m,d", [(6, 1), (7, 1), (8, 1), (7, 2), (8, 2)])
def test_fast_checker_agrees_with_definitions(m, d):
    C = checker(m, d)
    for mask in range(1 << len(C.tuples)):
        X = C.decode(mask)
        assert C.valid(mask) == (is_supporting(X, m, d) and is_bridging(X, m, d))


def test_d_zero_accepts_every_vertex_subset():
    for m in range(2, 8):
        P = enumerate_poset(m, 1)
        assert len(P) == 2 ** (m - 2)


def test_rank_and_bounds():
    for m, d in [(7, 1), (8, 1), (8, 2)]:
        P = enumerate_poset(m, 2 * d + 1)
        sizes = {i: len(T.internal_set) for i, T in enumerate(P.elements)}
        assert all(sizes[i] == sizes[j] + 1 for i, j in P.hasse1)
        ground = frozenset(internal_odd_tuples(m, d))
        assert len(ground) == comb(m - d - 2, d + 1)
        for T in P.elements:
            assert T.internal_set <= ground
            assert leq2_odd(lower_odd(m, d), T) and leq2_odd(T, upper_odd(m, d))


def test_internal_from_full():
    assert internal_from_full(lower_triangulation(6, 3), 6, 1) == frozenset(SIX[0])
    assert internal_from_full(upper_triangulation(6, 3), 6, 1) == frozenset()


def test_contract_delete_star_examples():
    assert contract({(2, 4), (2, 5), (3, 5)}, 6, 1, relabel=False) == {(3, 5)}
    assert contract({(2, 4), (2, 5), (3, 5)}, 6, 1) == {(2, 4)}
    assert delete12({(2, 4, 6)}, 8, 2, relabel=False) == {(4, 6)}
    assert delete12({(2, 4, 6)}, 8, 2) == {(2, 4)}
    assert star(1, {(3, 5)}) == {(1, 3, 5)}
    with pytest.raises(InvalidElementError):
        star(3, {(3, 5)})
    with pytest.raises(ArityError):
        delete12({(2,)}, 5, 0)


@pytest.mark.parametrize("m,d", [(m, 1) for m in range(5, 10)] + [(8, 2), (9, 2)])
def test_contraction_and_deletion_preserve_validity(m, d):
    for T in enumerate_poset(m, 2 * d + 1).elements:
        validate_odd(contract(T.internal_set, m, d), m - 1, d)
        validate_odd(delete12(T.internal_set, m, d), m - 2, d - 1)


def test_json_round_trip():
    T = validate_odd(SIX[1], 6, 1)
    assert OddTriangulation.from_json(T.to_json()) == T


@settings(max_examples=60, deadline=None)
@given(st.sets(st.sampled_from(internal_odd_tuples(8, 1))))
def test_random_subsets_checker_vs_definitions(X):
    C = checker(8, 1)
    assert C.valid(C.encode(X)) == (is_supporting(X, 8, 1) and is_bridging(X, 8, 1))
