import itertools
import json
from math import comb

import numpy as np
import pytest

from stlab.errors import DegeneratePolytopeError, NotApplicableError, ResourceLimitError
from stlab.even import boolean_embedding_even, embedding_ground_set, leq2
from stlab.odd import leq2_odd
from stlab.poset import (
    SCHEMA,
    boolean_embedding_odd,
    check_lattice,
    element_label,
    embedding_ground_set_odd,
    enumerate_poset,
    hasse_diagram,
    is_lattice,
    order_diff,
    orders_equal,
    poset_to_dot,
    poset_to_json,
    rank_check,
    self_duality_check,
)
from oracles import (
    brute_covers,
    brute_lattice,
    catalan,
    e_of_cells,
    even_leq2,
    geometric_flip_graph,
    internal_of_cells,
    reachability,
)


def test_small_counts():
    assert len(enumerate_poset(6, 3)) == 6
    assert len(enumerate_poset(6, 4)) == 2
    for delta in range(2, 9):
        assert len(enumerate_poset(delta + 2, delta)) == 2


def test_simplex_has_one_triangulation():
    for delta in range(1, 7):
        P = enumerate_poset(delta + 1, delta)
        assert len(P) == 1 and P.hasse1 == []
        assert P.bottom == P.top == 0


def test_degenerate_parameters():
    with pytest.raises(DegeneratePolytopeError):
        enumerate_poset(4, 4)
    with pytest.raises(DegeneratePolytopeError):
        enumerate_poset(5, 0)


@pytest.mark.parametrize("m", range(4, 11))
def test_catalan_counts(m):
    assert len(enumerate_poset(m, 2)) == catalan(m - 2)


def test_element_order_is_canonical_and_stable():
    P, Q = enumerate_poset(8, 3), enumerate_poset(8, 3)
    keys = [T.key for T in P.elements]
    assert keys == sorted(keys)
    assert keys == [T.key for T in Q.elements]
    assert np.array_equal(P.rel2, Q.rel2)


@pytest.mark.parametrize("m,delta", [(7, 2), (8, 2), (7, 3), (8, 3), (7, 4), (8, 4), (9, 4), (8, 5), (9, 5)])
def test_orders_match_geometric_reachability(m, delta):
    d = delta // 2
    nodes, edges = geometric_flip_graph(m, delta)
    P = enumerate_poset(m, delta)
    if delta % 2 == 0:
        conv = lambda c: e_of_cells(c, d)  # noqa: E731
        key = lambda T: T.e_set  # noqa: E731
    else:
        conv = lambda c: internal_of_cells(c, m, d)  # noqa: E731
        key = lambda T: T.internal_set  # noqa: E731
    where = {conv(c): c for c in nodes}
    up = reachability(nodes, edges)
    n = len(P)
    assert n == len(nodes)
    for i, j in itertools.product(range(n), repeat=2):
        a, b = where[key(P.elements[i])], where[key(P.elements[j])]
        assert P.leq(1, i, j) == (b in up[a])
        if delta % 2 == 0:
            assert P.leq(2, i, j) == even_leq2(P.elements[i].e_set, P.elements[j].e_set)
        else:
            assert P.leq(2, i, j) == (P.elements[j].internal_set <= P.elements[i].internal_set)


@pytest.mark.parametrize("m,delta", [(7, 2), (8, 3), (8, 4), (9, 4), (9, 5), (10, 6)])
def test_first_order_inside_second(m, delta):
    P = enumerate_poset(m, delta)
    assert not (P.rel1 & ~P.rel2).any()
    diff = order_diff(P)
    assert diff.equal == orders_equal(P)
    assert diff.only_first == ()


@pytest.mark.parametrize("m,delta", [(6, 3), (9, 4), (8, 4), (10, 4), (9, 5), (10, 5), (11, 6)])
def test_orders_equal_on_table_cells(m, delta):
    assert orders_equal(enumerate_poset(m, delta))


@pytest.mark.parametrize("m,delta", [(7, 2), (8, 2), (7, 3), (8, 3), (8, 4), (9, 4), (9, 5)])
def test_lattice_check_matches_brute_force(m, delta):
    P = enumerate_poset(m, delta)
    for which in (1, 2):
        expected, _ = brute_lattice(len(P), lambda i, j: P.leq(which, i, j))
        res = check_lattice(P, which)
        assert res.is_lattice == expected
        if not expected:
            i, j = res.witness
            # the witness pair really lacks a join or a meet
            n = len(P)
            if res.missing == "join":
                ub = {z for z in range(n) if P.leq(which, i, z) and P.leq(which, j, z)}
                assert sum(1 for z in ub if all(P.leq(which, z, w) for w in ub)) != 1
            else:
                lb = {z for z in range(n) if P.leq(which, z, i) and P.leq(which, z, j)}
                assert sum(1 for z in lb if all(P.leq(which, w, z) for w in lb)) != 1


def test_s9_4_is_not_a_lattice():
    res = check_lattice(enumerate_poset(9, 4), 1)
    assert not res and res.witness is not None and res.missing in ("join", "meet")


def test_s8_4_is_a_lattice():
    assert is_lattice(enumerate_poset(8, 4), 1)


@pytest.mark.parametrize("m", range(5, 10))
def test_three_dimensional_lattices(m):
    P = enumerate_poset(m, 3)
    assert orders_equal(P) and is_lattice(P, 1) and is_lattice(P, 2)


@pytest.mark.parametrize("m,delta", [(7, 2), (7, 3), (8, 3), (8, 4)])
def test_hasse_diagram_matches_transitive_reduction(m, delta):
    P = enumerate_poset(m, delta)
    for which in (1, 2):
        assert hasse_diagram(P, which) == brute_covers(len(P), lambda i, j: P.leq(which, i, j))
    assert hasse_diagram(P, 1) == P.hasse1
    assert set(P.hasse1) <= set(hasse_diagram(P, 2)) or not orders_equal(P)


def test_hasse1_has_unique_source_and_sink():
    P = enumerate_poset(9, 4)
    srcs = set(range(len(P))) - {j for _, j in P.hasse1}
    sinks = set(range(len(P))) - {i for i, _ in P.hasse1}
    assert srcs == {P.bottom} and sinks == {P.top}


def test_self_duality():
    assert self_duality_check(enumerate_poset(6, 4))
    assert self_duality_check(enumerate_poset(8, 4))
    assert self_duality_check(enumerate_poset(8, 2))
    with pytest.raises(NotApplicableError):
        self_duality_check(enumerate_poset(6, 3))


def test_rank_function_in_odd_dimensions():
    for m, delta in [(7, 3), (8, 3), (9, 5)]:
        assert rank_check(enumerate_poset(m, delta))
    with pytest.raises(NotApplicableError):
        rank_check(enumerate_poset(6, 4))


@pytest.mark.parametrize("m,d", [(7, 1), (8, 1), (9, 1)])
def test_odd_boolean_embedding(m, d):
    P = enumerate_poset(m, 2 * d + 1)
    ground = set(embedding_ground_set_odd(m, d))
    assert len(ground) == comb(m - d - 2, d + 1)
    images = [boolean_embedding_odd(T) for T in P.elements]
    assert len(set(images)) == len(images)
    for i, j in itertools.product(range(len(P)), repeat=2):
        assert images[i] <= ground
        assert P.leq(2, i, j) == (images[i] >= images[j])
        assert P.leq(2, i, j) == leq2_odd(P.elements[i], P.elements[j])


def test_even_boolean_embedding_on_c84():
    P = enumerate_poset(8, 4)
    assert len(embedding_ground_set(8, 2)) == comb(8 - 2 - 1, 3)
    images = [boolean_embedding_even(T) for T in P.elements]
    assert len(set(images)) == len(images)
    for i, j in itertools.product(range(len(P)), repeat=2):
        assert P.leq(2, i, j) == leq2(P.elements[i], P.elements[j])
        if P.leq(2, i, j):
            assert images[i] <= images[j]


def test_two_chains_of_c63():
    P = enumerate_poset(6, 3)
    assert len(P.hasse1) == 6
    out = {i: [j for a, j in P.hasse1 if a == i] for i in range(6)}
    # a hexagon: two paths of three covers each from bottom to top
    assert len(out[P.bottom]) == 2
    for first in out[P.bottom]:
        (mid,) = out[first]
        assert out[mid] == [P.top]
    assert sorted(len(T.internal_set) for T in P.elements) == [0, 1, 1, 2, 2, 3]
    assert is_lattice(P)


def test_caps():
    with pytest.raises(ResourceLimitError) as exc:
        enumerate_poset(10, 4, max_elements=100)
    assert exc.value.partial_count > 100
    with pytest.raises(ResourceLimitError):
        enumerate_poset(11, 4, max_seconds=0.0)


def test_json_export():
    P = enumerate_poset(6, 3)
    obj = poset_to_json(P)
    assert obj["schema"] == SCHEMA and (obj["m"], obj["delta"]) == (6, 3)
    assert len(obj["elements"]) == 6
    assert sorted(map(tuple, obj["hasse1"])) == P.hasse1
    assert len(obj["rel2_pairs"]) == len(P.pairs(2))
    json.dumps(obj)


def test_dot_export():
    P = enumerate_poset(6, 4)
    dot = poset_to_dot(P)
    assert dot.startswith('digraph "S(6,4)"')
    assert 'label="135,136,146"' in dot and "n0 -> n1;" in dot
    assert "dashed" not in dot
    assert element_label(enumerate_poset(6, 3).elements[0]) == "{}"
