"""Exact truncated power series and the generating series of smooth elements.

Coefficients are :class:`fractions.Fraction`; floating point only appears in
:func:`asymptotics`, which uses mpmath at a caller-chosen precision.

>>> catalan(5).coefficients
(1, 1, 2, 5, 14, 42)
>>> recurrence_series("A", 4).coefficients
(1, 2, 6, 22, 88)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

import mpmath

from .errors import ArgumentError, ArithmeticSeriesError

DEFAULT_ORDER = 30
CLOSED_FAMILIES = ("A", "B", "C", "D", "BC")
RECURRENCE_FAMILIES = ("A", "Abar", "A_Z", "B", "Bbar", "C", "Cbar", "BC", "BCbar", "D", "Dbar", "D_Z")
_ALIASES = {"Ā": "Abar", "B̄": "Bbar", "C̄": "Cbar", "B̄C": "BCbar", "BC̄": "BCbar", "D̄": "Dbar", "AZ": "A_Z", "DZ": "D_Z"}


class PowerSeries:
    """A formal power series known exactly up to and including degree ``order``."""

    __slots__ = ("_c", "order")

    def __init__(self, coefficients: Iterable, order: int | None = None):
        c = [Fraction(x) for x in coefficients]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ArgumentError("order must be nonnegative")
        c = c[: order + 1] + [Fraction(0)] * (order + 1 - len(c))
        self._c = tuple(c)
        self.order = order

    @property
    def coefficients(self) -> tuple:
        """Coefficients ``0..order``; integral values are returned as ``int``."""
        return tuple(int(x) if x.denominator == 1 else x for x in self._c)

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise IndexError(f"degree {n} outside 0..{self.order}")
        return self._c[n]

    def __len__(self) -> int:
        return self.order + 1

    def __repr__(self) -> str:
        return f"PowerSeries({list(self.coefficients)!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.order, self._c))

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ArgumentError(f"cannot extend a series known to order {self.order}")
        return PowerSeries(self._c, order)

    def valuation(self) -> int | None:
        """Lowest degree with nonzero coefficient, ``None`` for the zero series."""
        return next((i for i, x in enumerate(self._c) if x), None)

    def first_mismatch(self, other: "PowerSeries") -> int | None:
        n = min(self.order, other.order)
        return next((i for i in range(n + 1) if self._c[i] != other._c[i]), None)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return PowerSeries([self._c[i] + other._c[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-x for x in self._c], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        a, b = self._c, other._c
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                ai = a[i]
                for j in range(n + 1 - i):
                    out[i + j] += ai * b[j]
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(self._coerce(other), self)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by ``t**k`` (``k >= 0``); the known order grows by ``k``."""
        if k < 0:
            raise ArgumentError("shift must be nonnegative")
        return PowerSeries([0] * k + list(self._c), self.order + k)

    def __pow__(self, k: int) -> "PowerSeries":
        if not isinstance(k, int) or k < 0:
            raise ArgumentError("only nonnegative integer powers are supported")
        out = PowerSeries([1], self.order)
        for _ in range(k):
            out = out * self
        return out


def divide(num: PowerSeries, den: PowerSeries) -> PowerSeries:
    """Exact quotient.  A common factor ``t**v`` is cancelled first, which lowers the known order by ``v``."""
    v = den.valuation()
    if v is None:
        raise ArithmeticSeriesError("division by the zero series")
    nv = num.valuation()
    if nv is not None and nv < v:
        raise ArithmeticSeriesError(f"numerator valuation {nv} below divisor valuation {v}")
    n = min(num.order, den.order) - v
    if n < 0:
        raise ArithmeticSeriesError("not enough known terms after cancelling the common power of t")
    a = num._c[v : v + n + 1]
    b = den._c[v : v + n + 1]
    inv = 1 / b[0]
    out: list[Fraction] = []
    for k in range(n + 1):
        s = a[k] - sum(out[j] * b[k - j] for j in range(max(0, k - len(b) + 1), k))
        out.append(s * inv)
    return PowerSeries(out, n)


def poly(coeffs: Iterable, order: int) -> PowerSeries:
    """The polynomial ``sum coeffs[i] t^i`` seen as a series known to ``order``."""
    return PowerSeries(list(coeffs), order)


def t_power(k: int, order: int) -> PowerSeries:
    return poly([0] * k + [1], order)


def geometric(order: int) -> PowerSeries:
    """``1/(1-t)``."""
    return PowerSeries([1] * (order + 1), order)


@lru_cache(maxsize=None)
def _catalan_numbers(n: int) -> tuple[int, ...]:
    c = [1]
    for k in range(n):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return tuple(c)


def catalan(order: int) -> PowerSeries:
    """``Cat(t)`` from the convolution ``c_{k+1} = sum c_i c_{k-i}``."""
    return PowerSeries(_catalan_numbers(order), order)


def sqrt_one_minus_4t(order: int) -> PowerSeries:
    """``sqrt(1-4t) = 1 - 2t Cat(t)``, integral by construction."""
    return 1 - catalan(order).shift(1).truncate(order) * 2


def _polymul(*ps: list[int]) -> list[int]:
    out = [1]
    for p in ps:
        r = [0] * (len(out) + len(p) - 1)
        for i, x in enumerate(out):
            for j, y in enumerate(p):
                r[i + j] += x * y
        out = r
    return out


_ONE_MINUS_T = [1, -1]
DENOMINATOR_CUBIC = (1, -6, 8, -4)

# P_W and Q_W with W(t) = (P + Q sqrt(1-4t)) / ((1-t)^2 (1-6t+8t^2-4t^3)).
CLOSED_FORM_POLYNOMIALS: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {
    "A": (
        tuple(_polymul([1, -4], _ONE_MINUS_T, _ONE_MINUS_T, _ONE_MINUS_T)),
        tuple(_polymul([0, 1], _ONE_MINUS_T, _ONE_MINUS_T)),
    ),
    "B": (
        tuple(_polymul([1, -5, 5], _ONE_MINUS_T, _ONE_MINUS_T, _ONE_MINUS_T)),
        tuple(_polymul([0, 2, -1], _ONE_MINUS_T, _ONE_MINUS_T, _ONE_MINUS_T)),
    ),
    "C": ((1, -7, 15, -11, -2, 5), (0, 1, -1, -1, 3, -1)),
    "D": (
        tuple(_polymul([0, -4, 19, 8, -30, 16], _ONE_MINUS_T, _ONE_MINUS_T)),
        tuple(_polymul([0, 4, -15, 11, 0, -2], _ONE_MINUS_T)),
    ),
    "BC": ((1, -8, 23, -29, 14), (0, 2, -6, 7, -2)),
}


def _family(name: str, allowed: tuple[str, ...]) -> str:
    key = _ALIASES.get(name, name)
    if key not in allowed:
        raise ArgumentError(f"unknown family {name!r}; expected one of {', '.join(allowed)}")
    return key


def _check_order(order: int) -> None:
    if not isinstance(order, int) or order < 1:
        raise ArgumentError(f"order must be a positive integer, got {order!r}")


def closed_form_series(family: str, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Expand ``(P + Q sqrt(1-4t)) / ((1-t)^2 q(t))`` exactly."""
    _check_order(order)
    fam = _family(family, CLOSED_FAMILIES)
    p, q = CLOSED_FORM_POLYNOMIALS[fam]
    den = poly(_polymul(_ONE_MINUS_T, _ONE_MINUS_T, list(DENOMINATOR_CUBIC)), order)
    return (poly(p, order) + poly(q, order) * sqrt_one_minus_4t(order)) / den


# Extra known terms carried through the recurrences so that the divisions by
# series of valuation one still leave ``order`` exact terms.
_SLACK = 2


def _recurrences(n: int) -> dict[str, Callable[[], PowerSeries]]:
    t = t_power(1, n)
    cat = catalan(n)
    geo = geometric(n)
    memo: dict[str, PowerSeries] = {}

    def get(key: str) -> PowerSeries:
        if key not in memo:
            memo[key] = rules[key]()
        return memo[key]

    rules: dict[str, Callable[[], PowerSeries]] = {
        "A_Z": lambda: t + t * t + 2 * t * t * cat,
        "Abar": lambda: (t * t) / (2 * t - get("A_Z")),
        "A": lambda: (1 + get("Abar")) / (1 - t - t * get("Abar")),
        "Bbar": lambda: (2 - 2 * t) * get("Abar") - t,
        "Cbar": lambda: get("Abar") * geo + t ** 3 * (1 + 2 * get("Abar")) * geo * geo,
        "BCbar": lambda: get("Bbar") + get("Cbar") - get("Abar"),
        "B": lambda: (1 + t * get("A")) * (1 + get("Bbar")),
        "C": lambda: (1 + t * get("A")) * (1 + get("Cbar")),
        "BC": lambda: (1 + t * get("A")) * (1 + get("BCbar")),
        "D_Z": lambda: -3 * t ** 3 - 8 * t * t + (2 * t ** 4 - 2 * t ** 3 + 8 * t * t) * geo * cat,
        "Dbar": lambda: get("Abar") * get("D_Z") / t - 2 * t * t * (get("Abar") - t) * geo,
        "D": lambda: -2 * t - 3 * t * t + (2 * t - t * t + t ** 3) * get("A") + (t * get("A") + 1) * get("Dbar"),
    }
    return {k: (lambda k=k: get(k)) for k in rules}


def recurrence_series(family: str, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Build the named series from the structural recurrences (Catalan, A-bar, A, B-bar, ...)."""
    _check_order(order)
    fam = _family(family, RECURRENCE_FAMILIES)
    return _recurrences(order + _SLACK)[fam]().truncate(order)


@dataclass(frozen=True)
class AsymptoticData:
    digits: int
    alpha: mpmath.mpf
    alpha_radical: mpmath.mpf
    growth_ratio: mpmath.mpf
    constants: dict
    residue_checks: dict
    ratios: dict

    def to_json(self) -> dict:
        s = lambda x: mpmath.nstr(x, self.digits)
        return {
            "schema": "staircase/1",
            "digits": self.digits,
            "alpha": s(self.alpha),
            "growth_ratio": s(self.growth_ratio),
            "W_alpha": {k: s(v) for k, v in self.constants.items()},
            "ratio_16_15": {k: s(v) for k, v in self.ratios.items()},
        }


def _polyval(coeffs: Iterable[int], x):
    acc = mpmath.mpf(0)
    for c in reversed(tuple(coeffs)):
        acc = acc * x + c
    return acc


def _closed_value(family: str, x):
    p, q = CLOSED_FORM_POLYNOMIALS[family]
    num = _polyval(p, x) + _polyval(q, x) * mpmath.sqrt(1 - 4 * x)
    return num / ((1 - x) ** 2 * _polyval(DENOMINATOR_CUBIC, x))


def asymptotics(digits: int = 15) -> AsymptoticData:
    """Dominant pole ``alpha`` of every closed form and the residues ``W_alpha = lim (alpha-t) W(t)``."""
    if not isinstance(digits, int) or digits < 10:
        raise ArgumentError("precision must be at least 10 digits")
    with mpmath.workdps(digits + 20):
        cubic = lambda x: _polyval(DENOMINATOR_CUBIC, x)
        alpha = mpmath.findroot(cubic, (mpmath.mpf("0.2"), mpmath.mpf("0.25")), solver="anderson")
        if not mpmath.mpf("0.2") < alpha < mpmath.mpf("0.25"):
            raise ArithmeticSeriesError("root search left the bracket (0.2, 0.25)")
        r = mpmath.sqrt(33)
        alpha_radical = (4 - mpmath.cbrt(17 + 3 * r) + mpmath.cbrt(-17 + 3 * r)) / 6
        dcubic = -6 + 16 * alpha - 12 * alpha ** 2
        constants, checks, ratios = {}, {}, {}
        near = alpha - mpmath.mpf("1e-6")
        for fam in CLOSED_FAMILIES:
            p, q = CLOSED_FORM_POLYNOMIALS[fam]
            num = _polyval(p, alpha) + _polyval(q, alpha) * mpmath.sqrt(1 - 4 * alpha)
            constants[fam] = -num / ((1 - alpha) ** 2 * dcubic)
            checks[fam] = (alpha - near) * _closed_value(fam, near)
            w = closed_form_series(fam, 16)
            ratios[fam] = mpmath.mpf(w[16].numerator) / w[15].numerator
        return AsymptoticData(
            digits,
            +alpha,
            +alpha_radical,
            1 / alpha,
            constants,
            checks,
            ratios,
        )
