import pytest
from hypothesis import given, settings, strategies as st

from staircase.diagram import validate
from staircase.enumeration import (
    bc_labelled_closed_forms,
    catalan_almost_surjective_target,
    catalan_number,
    catalan_prediction,
    count_bc_labelled,
    count_diagrams,
    decompose_elementary,
    dz_closed_form,
    enumerate_diagrams,
    gothic_g,
    gothic_g1,
    h_diagram,
    in_z_minus,
    in_z_plus,
    is_middle_source,
    reassemble,
    swap_fork,
    z_closed_form,
    z_d_generated,
    z_d_part_closed_forms,
    z_family,
)
from staircase.errors import ArgumentError, CapabilityError
from staircase.graphs import build_dynkin
from staircase.series import recurrence_series

A_COUNTS = {1: 2, 2: 6, 3: 22, 4: 88, 5: 366, 6: 1552}
D_COUNTS = {3: 22, 4: 108, 5: 490, 6: 2164}


def _keys(ds):
    return {d.canonical_encode() for d in ds}


@pytest.mark.parametrize("n,count", A_COUNTS.items())
def test_type_a_counts(n, count):
    g = build_dynkin("A", n)
    diagrams = list(enumerate_diagrams(g))
    assert len(diagrams) == len(_keys(diagrams)) == count == count_diagrams(g)


@pytest.mark.parametrize("n,count", D_COUNTS.items())
def test_type_d_counts(n, count):
    assert count_diagrams(build_dynkin("D", n)) == count


def test_enumeration_basics():
    g = build_dynkin("A", 1)
    first, second = enumerate_diagrams(g)
    assert len(first) == 0 and second.blocks == (frozenset({1}),)
    assert all(d.is_fully_supported() for d in enumerate_diagrams(build_dynkin("A", 3), fully_supported=True))


def test_every_enumerated_diagram_validates():
    for d in enumerate_diagrams(build_dynkin("D", 4)):
        validate(d.graph, d.blocks, d.covers)


def test_threads_do_not_change_counts():
    g = build_dynkin("A", 6)
    assert count_diagrams(g, threads=2) == count_diagrams(g) == 1552
    assert count_diagrams(g, fully_supported=True, threads=2) == count_diagrams(g, fully_supported=True)


def test_budget():
    with pytest.raises(CapabilityError) as exc:
        next(enumerate_diagrams(build_dynkin("A", 10)))
    assert exc.value.reason == "enumeration_budget"
    assert count_diagrams(build_dynkin("A", 3), max_rank=3) == 22


def test_three_piece_decomposition():
    d = validate(build_dynkin("A", 9), [[1, 2], [2, 3, 4, 5], [4, 5, 6], [5, 6, 7, 8], [8, 9]], [(0, 1), (1, 2), (2, 3), (3, 4)])
    pieces = decompose_elementary(d)
    assert [sorted(p.support) for p in pieces] == [[1, 2, 3], [3, 4, 5, 6, 7], [7, 8, 9]]
    assert all(p.is_elementary() for p in pieces)
    assert reassemble(pieces) == d


@pytest.mark.parametrize("n", range(1, 7))
def test_decomposition_matches_critical_points(n):
    for d in enumerate_diagrams(build_dynkin("A", n)):
        if not len(d) or not d.is_connected():
            continue
        pieces = decompose_elementary(d)
        cuts = d.critical_points() - d.support_leaves()
        assert len(pieces) == len(cuts) + 1
        assert all(p.is_elementary() for p in pieces)
        for a, b in zip(pieces, pieces[1:]):
            assert a.support & b.support <= cuts and len(a.support & b.support) == 1
        assert reassemble(pieces) == d
        if d.is_elementary():
            assert pieces == [d]


def test_decomposition_needs_connected_support():
    d = validate(build_dynkin("A", 3), [[1], [3]], [])
    with pytest.raises(ArgumentError):
        decompose_elementary(d)


@pytest.mark.parametrize("n", range(1, 9))
def test_z_a_counts(n):
    z = z_family("A", n)
    assert len(z.members) == z_closed_form(n) == [1, 3, 2, 4, 10, 28, 84, 264][n - 1]
    if n >= 3:
        assert len(z.members) == 2 * len(z.plus) == 2 * len(z.minus)
        assert not _keys(z.plus) & _keys(z.minus)
    assert _keys(d.flip() for d in z.plus) == _keys(z.minus)
    assert all(d.is_chain() for d in z.members)


@pytest.mark.parametrize("n", range(3, 8))
def test_z_d_counts(n):
    z = z_family("D", n)
    assert len(z.members) == dz_closed_form(n) == {3: 11, 4: 30, 5: 68, 6: 174, 7: 492}[n]
    assert len(z.members) == sum(len(z.parts[k]) for k in ("D1", "D2", "D3"))
    got = {k: len(z.parts[k]) for k in ("D1", "D2o", "D3o", "D3o+")}
    assert got == z_d_part_closed_forms(n)
    assert _keys(d.flip() for d in z.plus) == _keys(z.minus)
    assert all(d.is_chain() for d in z.parts["D1"] + z.parts["D2o"])


def test_small_d_parts():
    z = z_family("D", 3)
    assert len(z.parts["D1"]) == 1 and len(z.parts["D2o"]) == 3


@pytest.mark.parametrize("n", range(4, 7))
def test_d_families_from_seeds(n):
    z = z_family("D", n)
    gen = z_d_generated(n)
    plus = _keys(z.plus)
    assert _keys(gen["D1+"]) == _keys(z.parts["D1"]) & plus
    assert _keys(gen["D2o+"]) == _keys(z.parts["D2o"]) & plus
    assert _keys(gen["D3o+"]) == _keys(z.parts["D3o+"])


def _sources(family, n):
    z = z_family(family, n)
    return [d for d in z.members if in_z_plus(d) or (family == "D" and is_middle_source(d))]


@pytest.mark.parametrize("family,n", [("A", 3), ("A", 4), ("A", 5), ("A", 6), ("D", 4), ("D", 5)])
def test_catalan_counts_and_disjointness(family, n):
    for p in (1, 2, 3):
        seen = set()
        for d in _sources(family, n):
            image = gothic_g(d, p)
            keys = _keys(image)
            assert len(keys) == len(image)
            assert not keys & seen
            seen |= keys
            assert all(in_z_plus(x) or is_middle_source(x) for x in image)
            try:
                want = catalan_prediction(d, p)
            except ArgumentError:
                continue
            assert len(image) == want


def test_catalan_anchor_in_type_d():
    g = build_dynkin("D", 4)
    d = validate(g, [[1, 3, 4], [2, 3, 4]], [(0, 1)])
    assert [len(gothic_g(d, p)) for p in (3, 4)] == [2, 5]
    for n in (4, 5):
        assert [len(gothic_g(h_diagram(n), p)) for p in (1, 2, 3)] == [catalan_number(p) for p in (1, 2, 3)]


def test_catalan_pair_union():
    g = build_dynkin("A", 4)
    two = validate(g, [[1, 2], [2, 3], [3, 4]], [(0, 1), (1, 2)])
    three = validate(g, [[1, 2, 3], [2, 3, 4]], [(0, 1)])
    for p in range(1, 5):
        union = _keys(gothic_g(two, p)) | _keys(gothic_g(three, p))
        assert len(union) == catalan_number(p + 2)


def test_generator_rejects_bad_p():
    d = validate(build_dynkin("A", 3), [[1, 2], [2, 3]], [(0, 1)])
    with pytest.raises(ArgumentError):
        gothic_g(d, 0)


@pytest.mark.parametrize("n", range(3, 7))
def test_one_step_coverage_type_a(n):
    image = set()
    for d in z_family("A", n).plus:
        image |= _keys(gothic_g1(d))
    target = {d.canonical_encode() for d in z_family("A", n + 1).plus if catalan_almost_surjective_target(d)}
    assert image == target


@pytest.mark.parametrize("n", range(4, 7))
def test_one_step_coverage_type_d(n):
    # Middle-chain sources and the fork mirror complete the image.
    image = set()
    for d in _sources("D", n):
        for x in gothic_g1(d):
            for y in (x, swap_fork(x)):
                if in_z_plus(y):
                    image.add(y.canonical_encode())
    target = {d.canonical_encode() for d in z_family("D", n + 1).plus if catalan_almost_surjective_target(d)}
    assert image == target


def test_over_chains_plus_and_minus_meet_only_at_single_block():
    for d in z_family("A", 2).members:
        if in_z_plus(d) and in_z_minus(d):
            assert len(d.blocks_at(2)) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_bc_labelled_counts(n):
    abar = [1] + [int(c) for c in recurrence_series("Abar", n).coefficients[1 : n + 1]]
    got = count_bc_labelled(n)
    assert got == bc_labelled_closed_forms(n, abar)
    if n >= 3:
        assert got.lambda23[1] == 1 and got.lambda23[2] == 4
    if n == 3:
        assert got.lambda1_nonmax == 5


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(list(enumerate_diagrams(build_dynkin("A", 5)))))
def test_z_membership_is_flip_symmetric(d):
    assert in_z_plus(d) == in_z_minus(d.flip())
