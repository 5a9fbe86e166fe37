import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from staircase.enumeration import count_diagrams, dz_closed_form, z_closed_form
from staircase.errors import ArgumentError, ArithmeticSeriesError
from staircase.graphs import build_dynkin
from staircase.series import (
    CLOSED_FAMILIES,
    RECURRENCE_FAMILIES,
    PowerSeries,
    asymptotics,
    catalan,
    closed_form_series,
    geometric,
    poly,
    recurrence_series,
    sqrt_one_minus_4t,
    t_power,
)

EXPECTED = {
    "A": [1, 2, 6, 22, 88, 366, 1552, 6652, 28696],
    "B": [1, 2, 7, 28, 116, 490, 2094, 9014, 38988],
    "C": [1, 2, 7, 28, 114, 472, 1988, 8480, 36474],
    "BC": [1, 2, 8, 34, 142, 596, 2530, 10842, 46766],
    "Abar": [0, 1, 3, 11, 43, 173, 707, 2917, 12111],
    "Bbar": [0, 1, 4, 16, 64, 260, 1068, 4420, 18388],
}

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=8)


def test_basic_arithmetic():
    a = poly([1, 2], 4)
    assert (a * a).coefficients == (1, 4, 4, 0, 0)
    assert (a - a).valuation() is None
    assert (1 / geometric(5)).coefficients == (1, -1, 0, 0, 0, 0)
    assert t_power(2, 4).shift(1).coefficients == (0, 0, 0, 1, 0, 0)
    assert (a**0).coefficients == (1, 0, 0, 0, 0)
    assert poly([1, Fraction(1, 2)], 1).coefficients == (1, Fraction(1, 2))


def test_orders_take_the_minimum():
    assert (poly([1], 3) + poly([1], 5)).order == 3


def test_division_errors():
    with pytest.raises(ArithmeticSeriesError):
        poly([1], 3) / poly([0], 3)
    with pytest.raises(ArithmeticSeriesError):
        poly([1], 3) / t_power(1, 3)
    with pytest.raises(ArithmeticSeriesError):
        t_power(2, 2) / t_power(3, 2)
    assert (t_power(2, 5) / t_power(1, 5)).coefficients == (0, 1, 0, 0, 0)


def test_bad_arguments():
    with pytest.raises(ArgumentError):
        poly([1], 2).truncate(3)
    with pytest.raises(ArgumentError):
        poly([1], 2).shift(-1)
    with pytest.raises(ArgumentError):
        poly([1], 2) ** -1
    with pytest.raises(ArgumentError):
        closed_form_series("E", 5)
    with pytest.raises(ArgumentError):
        closed_form_series("Abar", 5)


def test_catalan_and_square_root():
    assert catalan(7).coefficients == (1, 1, 2, 5, 14, 42, 132, 429)
    r = sqrt_one_minus_4t(20)
    assert (r * r).coefficients == (1, -4) + (0,) * 19
    c = catalan(20)
    assert (c - 1 - t_power(1, 20) * c * c).valuation() is None


@given(coeff_lists, coeff_lists.filter(lambda c: c[0] != 0))
def test_division_inverts_multiplication(a, b):
    x, y = poly(a, 7), poly(b, 7)
    assert (x * y) / y == x
    assert (x * y) == (y * x)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_distributive(a, b, c):
    x, y, z = poly(a, 6), poly(b, 6), poly(c, 6)
    assert x * (y + z) == x * y + x * z


@pytest.mark.parametrize("family", sorted(EXPECTED))
def test_known_coefficients(family, order=8):
    assert list(recurrence_series(family, order).coefficients) == EXPECTED[family]
    if family in CLOSED_FAMILIES:
        assert list(closed_form_series(family, order).coefficients) == EXPECTED[family]


@pytest.mark.parametrize("family", CLOSED_FAMILIES)
def test_closed_form_equals_recurrence(family):
    assert closed_form_series(family, 30) == recurrence_series(family, 30)


def test_b_plus_c_identity():
    a, b, c, bc = (closed_form_series(f, 30) for f in ("A", "B", "C", "BC"))
    assert a + bc == b + c


@pytest.mark.parametrize("family", RECURRENCE_FAMILIES)
def test_coefficients_are_nonnegative_integers(family):
    for x in recurrence_series(family, 25).coefficients:
        assert isinstance(x, int) and x >= 0


def test_z_series_match_closed_counts():
    az = recurrence_series("A_Z", 12).coefficients
    assert [az[n] for n in range(1, 13)] == [z_closed_form(n) for n in range(1, 13)]
    dz = recurrence_series("D_Z", 12).coefficients
    assert [dz[n] for n in range(3, 13)] == [dz_closed_form(n) for n in range(3, 13)]


def test_series_agree_with_enumeration():
    a = recurrence_series("A", 6).coefficients
    d = recurrence_series("D", 6).coefficients
    assert [a[n] for n in range(1, 7)] == [count_diagrams(build_dynkin("A", n)) for n in range(1, 7)]
    assert [d[n] for n in range(3, 7)] == [count_diagrams(build_dynkin("D", n)) for n in range(3, 7)]


def test_unicode_family_names():
    assert recurrence_series("Ā", 5) == recurrence_series("Abar", 5)


def test_asymptotics():
    data = asymptotics(15)
    assert abs(float(data.alpha) - 0.2281554937) < 1e-9
    assert abs(float(data.growth_ratio) - 4.3829757679) < 1e-9
    assert abs(float(data.alpha) - float(data.alpha_radical)) < 1e-12
    want = {"A": 0.0453519607, "B": 0.0620228175, "C": 0.0573012313, "D": 0.0672691196, "BC": 0.0739720882}
    for fam, value in want.items():
        assert abs(float(data.constants[fam]) - value) < 1e-9
        assert abs(float(data.residue_checks[fam]) - value) < 1e-5
        assert abs(float(data.ratios[fam]) - float(data.growth_ratio)) / float(data.growth_ratio) < 0.01
    blob = data.to_json()
    assert blob["digits"] == 15
    json.dumps(blob)
    with pytest.raises(ArgumentError):
        asymptotics(5)
