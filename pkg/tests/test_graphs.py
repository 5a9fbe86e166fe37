import itertools

import pytest
from hypothesis import given, strategies as st

from staircase.errors import ArgumentError, UnsupportedGraphError
from staircase.graphs import DynkinGraph, build_dynkin, custom_graph, is_connected_subset, path_between


def test_type_a_path():
    g = build_dynkin("A", 3)
    assert g.edges == frozenset({(1, 2, 3), (2, 3, 3)})
    assert g.m(1, 3) == 2 and g.m(2, 2) == 1


def test_type_b_double_edge_at_the_end():
    g = build_dynkin("B", 3)
    assert g.m(2, 3) == 4 and g.m(1, 2) == 3


def test_type_d_fork_at_three():
    g = build_dynkin("D", 4)
    assert {(u, v) for u, v, _ in g.edges} == {(1, 3), (2, 3), (3, 4)}


@pytest.mark.parametrize("family,rank", [("A", 0), ("B", 0), ("D", 2), ("E", 6)])
def test_out_of_range(family, rank):
    with pytest.raises(ArgumentError):
        build_dynkin(family, rank)


def test_self_loops_rejected():
    with pytest.raises(ArgumentError):
        custom_graph(3, [(1, 1)])


@pytest.mark.parametrize(
    "family,rank,subset,expected",
    [("A", 5, {2, 3, 4}, True), ("A", 5, {1, 3}, False), ("D", 4, {1, 2}, False), ("D", 4, {1, 2, 3}, True)],
)
def test_connected_subsets(family, rank, subset, expected):
    assert is_connected_subset(build_dynkin(family, rank), subset) is expected


def test_empty_subset_is_not_connected():
    assert not is_connected_subset(build_dynkin("A", 2), set())


def test_unknown_vertex():
    with pytest.raises(ArgumentError):
        is_connected_subset(build_dynkin("A", 2), {3})


def test_paths():
    assert path_between(build_dynkin("A", 5), 2, 4) == [2, 3, 4]
    assert path_between(build_dynkin("D", 5), 1, 2) == [1, 3, 2]
    assert path_between(build_dynkin("A", 5), 3, 3) == [3]


def test_path_needs_a_tree():
    cycle = custom_graph(3, [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(UnsupportedGraphError):
        path_between(cycle, 1, 3)


def _union_find_connected(g: DynkinGraph, subset) -> bool:
    parent = {v: v for v in subset}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v, _ in g.edges:
        if u in parent and v in parent:
            parent[find(u)] = find(v)
    return len({find(v) for v in subset}) == 1 if subset else False


@pytest.mark.parametrize("family,rank", [(f, n) for f in "ABCD" for n in range(1, 7) if f != "D" or n >= 3])
def test_every_family_is_a_tree_and_subsets_agree_with_union_find(family, rank):
    g = build_dynkin(family, rank)
    assert g.is_tree()
    for size in range(rank + 1):
        for subset in itertools.combinations(g.vertices, size):
            assert is_connected_subset(g, subset) == _union_find_connected(g, set(subset))


@given(st.sampled_from([("A", 6), ("D", 6), ("B", 5)]), st.data())
def test_paths_reverse(fg, data):
    g = build_dynkin(*fg)
    t = data.draw(st.integers(1, g.rank))
    r = data.draw(st.integers(1, g.rank))
    assert path_between(g, t, r)[::-1] == path_between(g, r, t)


def test_json_round_trip():
    g = build_dynkin("D", 5)
    assert g.to_json() == {"family": "D", "rank": 5, "edges": [[1, 3, 3], [2, 3, 3], [3, 4, 3], [4, 5, 3]]}
    assert DynkinGraph.from_json(g.to_json()) == g
