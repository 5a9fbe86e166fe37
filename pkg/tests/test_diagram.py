import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from staircase.diagram import StaircaseDiagram, axiom_violations, validate
from staircase.enumeration import connected_subsets, enumerate_diagrams
from staircase.errors import AxiomViolationError, PosetError, RepresentationError
from staircase.graphs import build_dynkin

A11 = build_dynkin("A", 11)
EXAMPLE_BLOCKS = [{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {6, 7}, {7, 8}, {9, 10}, {10, 11}]
EXAMPLE_COVERS = [(0, 1), (1, 2), (2, 3), (5, 4), (4, 3), (5, 6)]


@pytest.fixture(scope="module")
def example():
    return validate(A11, EXAMPLE_BLOCKS, EXAMPLE_COVERS)


def _all(family, rank):
    return list(enumerate_diagrams(build_dynkin(family, rank)))


SMALL = {key: _all(*key) for key in [("A", 4), ("D", 4), ("B", 3)]}
diagrams = st.sampled_from(SMALL[("A", 4)] + SMALL[("D", 4)] + SMALL[("B", 3)])


# -- a literal, independent reading of the axioms ------------------------


def _connected(g, vs):
    vs = set(vs)
    if not vs:
        return False
    seen, stack = set(), [next(iter(vs))]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(y for y in vs if g.adjacent(x, y))
    return seen == vs


def oracle_is_staircase(g, blocks, le):
    """``le`` is a set of pairs (i, j) meaning blocks[i] <= blocks[j], reflexive and transitive."""
    n = len(blocks)
    lt = {(i, j) for i, j in le if i != j}
    covers = {(i, j) for i, j in lt if not any((i, k) in lt and (k, j) in lt for k in range(n))}
    cmp = lambda i, j: (i, j) in le or (j, i) in le
    if not all(_connected(g, b) for b in blocks):
        return False
    if not all(_connected(g, blocks[i] | blocks[j]) for i, j in covers):
        return False
    at = {s: [i for i in range(n) if s in blocks[i]] for s in g.vertices}
    for s in g.vertices:
        if not all(cmp(i, j) for i in at[s] for j in at[s]):
            return False
    for s in g.vertices:
        for t in g.neighbours(s):
            union = set(at[s]) | set(at[t])
            if not all(cmp(i, j) for i in union for j in union):
                return False
            for part in (at[s], at[t]):
                for x in part:
                    for y in part:
                        for z in union - set(part):
                            if (x, z) in lt and (z, y) in lt:
                                return False
    for i in range(n):
        mins = any(all((i, j) in le for j in at[s]) for s in blocks[i])
        maxs = any(all((j, i) in le for j in at[s]) for s in blocks[i])
        if not (mins and maxs):
            return False
    return True


def _partial_orders(n):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(pairs)):
        lt = {p for k, p in enumerate(pairs) if bits >> k & 1}
        if any((j, i) in lt for i, j in lt):
            continue
        if any((i, j) in lt and (j, k) in lt and (i, k) not in lt for i in range(n) for j in range(n) for k in range(n)):
            continue
        yield lt


def _hasse(lt, n):
    return {(i, j) for i, j in lt if not any((i, k) in lt and (k, j) in lt for k in range(n))}


@pytest.mark.parametrize("family,rank,expected", [("A", 2, 6), ("A", 3, 22), ("D", 3, 22), ("B", 3, 22)])
def test_validate_matches_brute_force_over_all_block_posets(family, rank, expected):
    g = build_dynkin(family, rank)
    subsets = [frozenset(s) for size in range(1, rank + 1) for s in itertools.combinations(g.vertices, size)]
    accepted = 0
    orders = {k: list(_partial_orders(k)) for k in range(rank + 1)}
    for k in range(rank + 1):
        for blocks in itertools.combinations(subsets, k):
            for lt in orders[k]:
                le = lt | {(i, i) for i in range(k)}
                want = oracle_is_staircase(g, blocks, le)
                violations, _, _ = axiom_violations(g, blocks, _hasse(lt, k))
                assert want == (not violations), (blocks, lt)
                accepted += want
    assert accepted == expected


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_validate_matches_brute_force_on_random_rank5_posets(data):
    g = data.draw(st.sampled_from([build_dynkin("A", 5), build_dynkin("D", 5)]))
    pool = connected_subsets(g)
    k = data.draw(st.integers(1, 4))
    blocks = data.draw(st.lists(st.sampled_from(pool), min_size=k, max_size=k, unique=True))
    rank_of = data.draw(st.permutations(range(k)))
    pairs = [(i, j) for i in range(k) for j in range(k) if rank_of[i] < rank_of[j]]
    chosen = {p for p in pairs if data.draw(st.booleans())}
    lt = set(chosen)
    changed = True
    while changed:
        changed = False
        for i, j in list(lt):
            for a, b in list(lt):
                if j == a and (i, b) not in lt:
                    lt.add((i, b))
                    changed = True
    le = lt | {(i, i) for i in range(k)}
    violations, _, _ = axiom_violations(g, blocks, _hasse(lt, k))
    assert oracle_is_staircase(g, blocks, le) == (not violations)


# -- published examples ------------------------------------------------------


def test_example_diagram_is_valid(example):
    assert len(example) == 7


def test_unrelated_overlapping_blocks_fail_at_s2():
    with pytest.raises(AxiomViolationError) as info:
        validate(build_dynkin("A", 3), [[1, 2], [2, 3]], [])
    axioms = {(v.axiom, v.witness[0]) for v in info.value.violations}
    assert ("2", 2) in axioms
    assert any(v.axiom == "3" for v in info.value.violations)


def test_nested_blocks_fail_axiom_four():
    with pytest.raises(AxiomViolationError) as info:
        validate(build_dynkin("A", 3), [[2, 3], [1, 2, 3]], [(0, 1)])
    assert {v.axiom for v in info.value.violations} == {"4"}
    assert ((2, 3), "max") in {v.witness for v in info.value.violations}


def test_all_violations_are_reported():
    with pytest.raises(AxiomViolationError) as info:
        validate(build_dynkin("A", 4), [[1, 3], [2, 3], [3, 4]], [])
    assert {"1", "2"} <= {v.axiom for v in info.value.violations}


def test_cycle_and_transitive_cover_errors():
    g = build_dynkin("A", 3)
    with pytest.raises(PosetError):
        validate(g, [[1, 2], [2, 3]], [(0, 1), (1, 0)])
    with pytest.raises(RepresentationError):
        validate(g, [[1], [1, 2], [2, 3]], [(0, 1), (1, 2), (0, 2)])


def test_chain_at(example):
    assert example.chain_at({3}) == [frozenset({1, 2, 3}), frozenset({2, 3, 4}), frozenset({3, 4, 5})]
    assert example.chain_at({3, 4}) == [frozenset({2, 3, 4}), frozenset({3, 4, 5})]
    assert example.chain_at({1, 11}) == []


@pytest.mark.parametrize(
    "block,jr",
    [
        ({2, 3, 4}, {2, 3}),
        ({3, 4, 5}, {3, 4}),
        ({6, 7}, {7}),
        ({10, 11}, {10}),
        ({1, 2, 3}, set()),
        ({7, 8}, set()),
        ({9, 10}, set()),
    ],
)
def test_right_boundary_sets(example, block, jr):
    assert example.boundary_sets(example.index(block))[0] == frozenset(jr)


def test_critical_points_and_elementary(example):
    # s5 sits only in {3, 4, 5}, so it is critical alongside 1, 6, 8, 9, 11.
    assert example.critical_points() == frozenset({1, 5, 6, 8, 9, 11})
    assert not example.is_elementary()
    two = validate(build_dynkin("A", 3), [[1, 2], [2, 3]], [(0, 1)])
    assert two.critical_points() == frozenset({1, 3})
    assert two.is_elementary()
    assert two.descents() == (frozenset({2, 3}), frozenset({1, 2}))


def test_single_block_descents_and_boundary():
    d = validate(build_dynkin("A", 3), [[1, 2, 3]], [])
    assert d.descents() == (frozenset({1, 2, 3}), frozenset({1, 2, 3}))
    assert d.boundary_sets(0) == (frozenset(), frozenset())
    assert d.critical_points() == frozenset({1, 2, 3})


def test_flip_of_two_block_chain():
    g = build_dynkin("A", 3)
    d = validate(g, [[1, 2], [2, 3]], [(0, 1)])
    assert d.flip() == validate(g, [[2, 3], [1, 2]], [(0, 1)])


def test_support_and_components():
    g = build_dynkin("A", 12)
    blocks = [[1, 2], [2, 3], [4, 5], [5, 6], [8, 9], [9, 10, 11], [11, 12]]
    d = StaircaseDiagram.from_order(g, blocks, [(0, 1), (2, 1), (2, 3), (4, 5), (6, 5)])
    assert d.support == frozenset(range(1, 7)) | frozenset(range(8, 13))
    parts = d.connected_components()
    assert len(parts) == 2
    for a, b in itertools.combinations(parts, 2):
        assert not any(g.adjacent(x, y) or x == y for x in a.support for y in b.support)


def test_empty_diagram():
    d = StaircaseDiagram.empty(build_dynkin("A", 3))
    assert len(d) == 0 and d.support == frozenset()
    assert d == validate(build_dynkin("A", 3), [], [])


def test_canonical_encoding_ignores_block_order(example):
    perm = [6, 3, 0, 5, 1, 4, 2]
    blocks = [EXAMPLE_BLOCKS[i] for i in perm]
    where = {old: new for new, old in enumerate(perm)}
    covers = [(where[i], where[j]) for i, j in EXAMPLE_COVERS]
    other = validate(A11, blocks, covers)
    assert other.canonical_encode() == example.canonical_encode()
    assert other == example


def test_encoding_distinguishes_flip():
    d = validate(build_dynkin("A", 3), [[1, 2], [2, 3]], [(0, 1)])
    assert d.canonical_encode() != d.flip().canonical_encode()


def test_json_round_trip(example):
    text = json.dumps(example.to_json())
    assert StaircaseDiagram.from_json(A11, json.loads(text)) == example


# -- properties over enumerated diagrams --------------------------------------


@settings(max_examples=200, deadline=None)
@given(diagrams)
def test_no_block_contains_another(d):
    for a, b in itertools.permutations(d.blocks, 2):
        assert not a <= b


@settings(max_examples=200, deadline=None)
@given(diagrams)
def test_touching_blocks_are_comparable(d):
    g = d.graph
    for i, j in itertools.combinations(range(len(d)), 2):
        a, b = d.blocks[i], d.blocks[j]
        if a & b or any(g.adjacent(x, y) for x in a for y in b):
            assert d.comparable(i, j)


@settings(max_examples=200, deadline=None)
@given(diagrams)
def test_flip_is_an_involution_preserving_structure(d):
    f = d.flip()
    assert f.flip() == d
    assert validate(d.graph, f.blocks, f.covers) == f
    assert f.critical_points() == d.critical_points()
    dl, dr = d.descents()
    assert f.descents() == (dr, dl)
    for i in range(len(d)):
        jr, jl = d.boundary_sets(i)
        assert f.boundary_sets(i) == (jl, jr)


@settings(max_examples=200, deadline=None)
@given(diagrams)
def test_extremal_blocks_hold_critical_points(d):
    crit = d.critical_points()
    for i in set(d.minimal_blocks()) | set(d.maximal_blocks()):
        assert d.blocks[i] & crit


@settings(max_examples=100, deadline=None)
@given(diagrams)
def test_every_linear_extension_is_order_preserving(d):
    for ext in itertools.islice(d.linear_extensions(), 20):
        pos = {b: k for k, b in enumerate(ext)}
        assert sorted(ext) == list(range(len(d)))
        for i, j in d.covers:
            assert pos[i] < pos[j]


@settings(max_examples=100, deadline=None)
@given(diagrams)
def test_json_and_encoding_round_trip(d):
    back = StaircaseDiagram.from_json(d.graph, json.loads(json.dumps(d.to_json())))
    assert back == d and back.canonical_encode() == d.canonical_encode()


@pytest.mark.parametrize("family,rank", [("A", 6), ("D", 6), ("B", 5)])
def test_vertex_chains_are_saturated_over_trees(family, rank):
    for d in enumerate_diagrams(build_dynkin(family, rank)):
        for s in d.support:
            chain = set(d.blocks_at(s))
            for x in chain:
                for y in chain:
                    for z in range(len(d)):
                        if z not in chain:
                            assert not (d.less(x, z) and d.less(z, y))
