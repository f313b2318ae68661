import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specirr.exceptions import Graph6Error, GraphFormatError
from specirr.graph import (
    Graph,
    build_family,
    complete,
    complete_bipartite,
    components,
    cone,
    cycle,
    delete_vertex,
    empty,
    enumerate_connected,
    from_edge_list,
    from_edges,
    from_graph6,
    harmonic_tk,
    is_connected,
    parse_family,
    path,
    pineapple,
    relabel,
    to_graph6,
)

from oracles import brute_canonical, brute_connected_classes, graph6_hand_encode


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


# -- graph6 ---------------------------------------------------------------

def test_graph6_k2():
    g = from_graph6("A_")
    assert (g.n, g.m, g.edges()) == (2, 1, [(0, 1)])
    assert to_graph6(complete(2)) == "A_"


def test_graph6_empty_three():
    g = from_graph6("B?")
    assert (g.n, g.m) == (3, 0)


def test_graph6_single_vertex():
    assert to_graph6(empty(1)) == "@"
    assert from_graph6("@") == empty(1)


def test_graph6_d_example_round_trip():
    g = from_graph6("D?{")
    assert g.n == 5
    # hand decode: '?' = 000000, '{' = 111100 -> pairs (0,4),(1,4),(2,4),(3,4)
    assert g.edges() == [(0, 4), (1, 4), (2, 4), (3, 4)]
    assert to_graph6(g) == "D?{"


@given(graphs(max_n=20))
def test_graph6_round_trip(g):
    s = to_graph6(g)
    assert from_graph6(s) == g
    assert to_graph6(from_graph6(s)) == s
    assert s == graph6_hand_encode(g.n, g.edges())


@given(graphs(max_n=14))
@settings(max_examples=50)
def test_graph6_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assert nx.to_graph6_bytes(h, header=False).decode().strip() == to_graph6(g)


def test_graph6_long_header_round_trip():
    g = path(70)
    s = to_graph6(g)
    assert s.startswith("~?@E")
    assert from_graph6(s) == g


def test_graph6_tolerates_crlf_and_header():
    assert from_graph6(">>graph6<<A_\r\n") == complete(2)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("A`", 1),      # padding bit set
        ("A_?", 2),     # too many data bytes
        ("C", 1),       # missing data byte
        ("A\x7f", 1),   # character out of range
        ("A ", None),   # trailing space stripped -> missing data
        ("~~??????", 1),
        ("?", 0),
    ],
)
def test_graph6_errors(text, offset):
    with pytest.raises(Graph6Error) as info:
        from_graph6(text)
    if offset is not None:
        assert info.value.offset == offset


# -- edge lists -----------------------------------------------------------

def test_edge_list_path():
    assert from_edge_list("3\n0 1\n1 2") == path(3)


def test_edge_list_duplicates_collapse():
    g = from_edge_list("2\n0 1\n1 0")
    assert g == complete(2) and g.m == 1


@pytest.mark.parametrize("text", ["3\n0 0", "3\n0 3", "3\n0 x", "3\n0", ""])
def test_edge_list_errors(text):
    with pytest.raises(GraphFormatError):
        from_edge_list(text)


# -- structure ------------------------------------------------------------

def test_is_connected():
    assert is_connected(path(5))
    assert not is_connected(from_edge_list("4\n0 1\n2 3"))
    assert is_connected(empty(1))


def test_components():
    g = from_edge_list("5\n0 3\n1 2")
    assert components(g) == [[0, 3], [1, 2], [4]]


def test_delete_vertex_examples():
    assert delete_vertex(cone(path(20)), 0) == path(20)
    assert delete_vertex(complete(3), 0) == complete(2)
    assert delete_vertex(path(4), 3) == path(3)
    assert delete_vertex(path(4), 0) == path(3)
    with pytest.raises(IndexError):
        delete_vertex(path(3), 3)
    with pytest.raises(ValueError):
        delete_vertex(empty(1), 0)


@given(graphs(max_n=10))
def test_delete_cone_apex_is_exact_inverse(h):
    assert delete_vertex(cone(h), 0) == h


@given(graphs(max_n=9), st.data())
def test_delete_vertex_keeps_other_edges(g, data):
    if g.n < 2:
        return
    i = data.draw(st.integers(0, g.n - 1))
    h = delete_vertex(g, i)
    keep = [v for v in range(g.n) if v != i]
    for a, b in itertools.combinations(range(h.n), 2):
        assert h.has_edge(a, b) == g.has_edge(keep[a], keep[b])


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0])  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, [0b01, 0])  # loop
    g = complete(4)
    with pytest.raises(AttributeError):
        g.n = 3


# -- families -------------------------------------------------------------

@given(graphs())
def test_handshake(g):
    assert 2 * g.m == sum(g.degrees)
    assert g.max_degree <= g.n - 1 and g.min_degree >= 0


def test_complete_bipartite():
    g = complete_bipartite(2, 3)
    assert (g.n, g.m) == (5, 6)
    assert sorted(g.degrees, reverse=True) == [3, 3, 2, 2, 2]
    star = complete_bipartite(1, 4)
    assert star.degrees == (4, 1, 1, 1, 1)
    assert set(complete_bipartite(3, 3).degrees) == {3}
    with pytest.raises(ValueError):
        complete_bipartite(0, 3)


def test_pineapple():
    g = pineapple(10, 6)
    assert (g.n, g.m, g.max_degree) == (10, 19, 9)
    k = 5
    assert pineapple(2 * k, k + 1) == g
    assert sorted(g.degrees) == [1] * 4 + [5] * 5 + [9]
    assert pineapple(5, 5) == complete(5)
    with pytest.raises(ValueError):
        pineapple(5, 1)
    with pytest.raises(ValueError):
        pineapple(5, 6)


def test_cone():
    g = cone(path(20))
    assert g.n == 21
    assert sorted(g.degrees) == [2, 2] + [3] * 18 + [20]
    assert cone(empty(4)) == complete_bipartite(1, 4)
    assert cone(complete(4)) == complete(5)


@pytest.mark.parametrize("k", range(3, 21))
def test_harmonic_tk_degrees_and_harmonicity(k):
    g = harmonic_tk(k)
    assert (g.n, g.m) == (3 * k, 4 * k)
    assert sorted(g.degrees) == [2] * (2 * k) + [4] * k
    d = np.array(g.degrees)
    assert np.array_equal(g.adjacency().astype(int) @ d, 3 * d)
    assert int((d * d).sum()) == 24 * k


def test_harmonic_tk_range():
    with pytest.raises(ValueError):
        harmonic_tk(2)


def test_small_families():
    p = path(20)
    assert (p.m, p.max_degree, p.min_degree) == (19, 2, 1)
    assert set(cycle(5).degrees) == {2}
    assert set(complete(4).degrees) == {3}
    assert path(1).m == 0
    with pytest.raises(ValueError):
        cycle(2)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("biclique 2 3", complete_bipartite(2, 3)),
        ("pineapple 10 6", pineapple(10, 6)),
        ("cone path 20", cone(path(20))),
        ("cone cone path 3", cone(cone(path(3)))),
        ("path 3", path(3)),
        ("cycle 5", cycle(5)),
        ("complete 4", complete(4)),
        ("tk 4", harmonic_tk(4)),
        ("cone empty 3", complete_bipartite(1, 3)),
        ("cone(path(4))", cone(path(4))),
    ],
)
def test_family_specs(text, expected):
    assert build_family(text) == expected


def test_family_spec_str_round_trip():
    for text in ["biclique 2 3", "cone cone path 3", "tk 7"]:
        assert str(parse_family(text)) == text


@pytest.mark.parametrize("text", ["", "cone", "path", "path x", "wheel 5", "path 3 4", "cycle 2", "pineapple 3 5"])
def test_family_spec_errors(text):
    with pytest.raises(GraphFormatError):
        build_family(text)


# -- enumeration ----------------------------------------------------------

@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)])
def test_enumeration_counts_match_brute_force(n, count):
    assert brute_connected_classes(n) == count
    assert sum(1 for _ in enumerate_connected(n)) == count


def test_enumeration_n3_graphs():
    got = list(enumerate_connected(3))
    assert {g.m for g in got} == {2, 3}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_enumeration_matches_graph_atlas(n):
    atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h)]
    ours = [nx.Graph(g.edges()) if g.m else nx.empty_graph(1) for g in enumerate_connected(n)]
    assert len(ours) == len(atlas)
    if n <= 6:
        unmatched = list(atlas)
        for h in ours:
            hit = next(i for i, a in enumerate(unmatched) if nx.is_isomorphic(a, h))
            unmatched.pop(hit)
        assert not unmatched


@pytest.mark.parametrize("n, count", [(2, 1), (3, 4), (4, 38), (5, 728)])
def test_labeled_enumeration(n, count):
    got = list(enumerate_connected(n, dedup=False))
    assert len(got) == count
    assert len(set(got)) == count
    assert all(is_connected(g) for g in got)


def test_dedup_keeps_orbit_minimum():
    pairs = [(i, j) for j in range(1, 5) for i in range(j)]
    for g in enumerate_connected(5):
        canon = brute_canonical(5, g.edges())
        assert canon == brute_canonical(5, relabel(g, random.Random(g.m).sample(range(5), 5)).edges())
        code = sum(1 << k for k, (i, j) in enumerate(pairs) if g.has_edge(i, j))
        for perm in itertools.permutations(range(5)):
            other = sum(1 << k for k, (i, j) in enumerate(pairs) if g.has_edge(perm[i], perm[j]))
            assert code <= other


@pytest.mark.parametrize("parts", [1, 3, 4, 7])
def test_enumeration_partitions_cover_stream(parts):
    whole = list(enumerate_connected(6))
    split = [g for i in range(parts) for g in enumerate_connected(6, partition=(i, parts))]
    assert split == whole


def test_enumeration_range():
    with pytest.raises(ValueError):
        list(enumerate_connected(8))
    with pytest.raises(ValueError):
        list(enumerate_connected(0))
