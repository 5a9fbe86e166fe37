"""Classical Weyl groups as (signed) permutations.

Elements are one-line windows.  Type ``A_n`` uses permutations of
``1..n+1``; types ``B_n``, ``C_n`` and ``D_n`` use signed permutations of
``1..n`` (even number of sign changes for ``D``).  A window ``w`` is the
linear map ``e_i -> sign(w_i) e_|w_i|``.

Generator realisation (vertex labels follow :mod:`staircase.graphs`):

* ``A``: ``s_i`` swaps positions ``i, i+1``.
* ``B``/``C``: ``s_i`` (``i < n``) swaps positions ``i, i+1``; ``s_n``
  negates position ``n``.
* ``D``: the chain ``s_3, ..., s_n`` swaps positions ``(n+1-k, n+2-k)`` for
  ``s_k``; the fork leaves act on positions ``n-1, n``: ``s_1`` swaps them and
  ``s_2`` swaps them with both signs flipped.

With these choices every positive root has a positive first nonzero
coordinate, which gives the length and descent tests below.

>>> W = coxeter_group("A", 2)
>>> W.from_word([1, 2, 1]) == W.from_word([2, 1, 2])
True
>>> W.longest().length
3
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, CapabilityError, HostMismatchError
from .graphs import DynkinGraph, build_dynkin

DEFAULT_ORACLE_CAP = 5
DEFAULT_GROUP_BUDGET = 10**6


def oracle_rank_cap() -> int:
    """Largest rank for which Bruhat-interval tables may be built."""
    raw = os.environ.get("STAIRCASE_ORACLE_CAP")
    if raw is None:
        return DEFAULT_ORACLE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ArgumentError(f"STAIRCASE_ORACLE_CAP must be an integer, got {raw!r}") from None
    return cap


def _compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Window of ``a * b`` (apply ``b`` first)."""
    return tuple(a[x - 1] if x > 0 else -a[-x - 1] for x in b)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of a classical Weyl group in one-line notation."""

    group: "CoxeterGroup"
    window: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group is other.group and self.window == other.window

    def __hash__(self) -> int:
        return hash((self.group.family, self.group.rank, self.window))

    def __repr__(self) -> str:
        word = "".join(f"s{s}" for s in self.reduced_word) or "e"
        return f"{self.group.family}{self.group.rank}<{word}>"

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group is not self.group:
            raise HostMismatchError(f"cannot multiply elements of {self.group} and {other.group}")
        return GroupElement(self.group, _compose(self.window, other.window))

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self.window)
        for i, x in enumerate(self.window, start=1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return GroupElement(self.group, tuple(inv))

    @property
    def is_identity(self) -> bool:
        return self.window == self.group.identity.window

    @cached_property
    def length(self) -> int:
        return self.group._length(self.window)

    def _negates(self, root: tuple[tuple[int, int], ...]) -> bool:
        # Image of a root; negative iff its first nonzero coordinate is.
        image = {}
        for coef, idx in root:
            x = self.window[idx]
            image[abs(x)] = image.get(abs(x), 0) + (coef if x > 0 else -coef)
        first = min(k for k, c in image.items() if c)
        return image[first] < 0

    @cached_property
    def right_descents(self) -> frozenset[int]:
        return frozenset(s for s, root in self.group._roots.items() if self._negates(root))

    @cached_property
    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        """Reduced word found by repeatedly stripping the smallest left descent."""
        word = []
        w = self
        while not w.is_identity:
            s = min(w.left_descents)
            word.append(s)
            w = self.group.gen(s) * w
        return tuple(word)

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(self.reduced_word)

    def to_json(self) -> list[int]:
        return list(self.window)


@dataclass(frozen=True)
class ParabolicData:
    """``w = v * u`` with ``v`` a minimal left coset representative and ``u`` in ``W_J``."""

    J: frozenset[int]
    v: GroupElement
    u: GroupElement


class Maximality(enum.Enum):
    MAXIMAL = "maximal"
    NEARLY_MAXIMAL = "nearly_maximal"
    ALMOST_MAXIMAL = "almost_maximal"
    NONE = "none"


class CoxeterGroup:
    """A classical Weyl group ``A_n``, ``B_n``, ``C_n`` or ``D_n``.

    Use :func:`coxeter_group` to get the shared instance.
    """

    def __init__(self, family: str, rank: int) -> None:
        self.graph: DynkinGraph = build_dynkin(family, rank)
        self.family = family
        self.rank = rank
        n = rank
        self.n_coords = n + 1 if family == "A" else n
        gens: dict[int, tuple[int, ...]] = {}
        roots: dict[int, tuple[tuple[int, int], ...]] = {}
        ident = list(range(1, self.n_coords + 1))

        def swap(p: int, q: int, negate: bool = False) -> tuple[int, ...]:
            w = list(ident)
            w[p], w[q] = (-w[q], -w[p]) if negate else (w[q], w[p])
            return tuple(w)

        if family == "D":
            for k in range(3, n + 1):
                p = n - k
                gens[k] = swap(p, p + 1)
                roots[k] = ((1, p), (-1, p + 1))
            gens[1] = swap(n - 2, n - 1)
            roots[1] = ((1, n - 2), (-1, n - 1))
            gens[2] = swap(n - 2, n - 1, negate=True)
            roots[2] = ((1, n - 2), (1, n - 1))
        else:
            for i in range(1, n + 1):
                if family in ("B", "C") and i == n:
                    w = list(ident)
                    w[n - 1] = -w[n - 1]
                    gens[i] = tuple(w)
                    roots[i] = ((1, n - 1),)
                else:
                    gens[i] = swap(i - 1, i)
                    roots[i] = ((1, i - 1), (-1, i))
        self._roots = roots
        self.identity = GroupElement(self, tuple(ident))
        self._gens = {s: GroupElement(self, w) for s, w in gens.items()}

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.family!r}, {self.rank})"

    @property
    def generators(self) -> tuple[int, ...]:
        return self.graph.vertices

    def gen(self, s: int) -> GroupElement:
        try:
            return self._gens[s]
        except KeyError:
            raise ArgumentError(f"no generator s{s} in {self}") from None

    def from_word(self, word: Iterable[int]) -> GroupElement:
        w = self.identity
        for s in word:
            w = w * self.gen(s)
        return w

    def element(self, window: Iterable[int]) -> GroupElement:
        """Validate and wrap a one-line window."""
        w = tuple(int(x) for x in window)
        if sorted(abs(x) for x in w) != list(range(1, self.n_coords + 1)):
            raise ArgumentError(f"{list(w)} is not a signed permutation of 1..{self.n_coords}")
        negatives = sum(1 for x in w if x < 0)
        if self.family == "A" and negatives:
            raise ArgumentError("type A windows have no signs")
        if self.family == "D" and negatives % 2:
            raise ArgumentError("type D windows need an even number of signs")
        return GroupElement(self, w)

    @property
    def order(self) -> int:
        n = self.rank
        if self.family == "A":
            return math.factorial(n + 1)
        if self.family == "D":
            return 2 ** (n - 1) * math.factorial(n)
        return 2**n * math.factorial(n)

    def _length(self, w: Sequence[int]) -> int:
        if self.family == "A":
            return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])
        top = self.n_coords + 1
        g = [top - x if x > 0 else -(top + x) for x in w]
        total = 0
        for i, j in itertools.combinations(range(len(g)), 2):
            total += (g[i] < g[j]) + (g[i] + g[j] < 0)
        if self.family != "D":
            total += sum(1 for x in g if x < 0)
        return total

    def longest(self, J: Iterable[int] | None = None) -> GroupElement:
        """Longest element ``u_J`` of the parabolic subgroup ``W_J``."""
        js = frozenset(self.generators if J is None else J)
        for s in js:
            self.gen(s)
        w = self.identity
        while True:
            ascent = next((s for s in sorted(js) if s not in w.right_descents), None)
            if ascent is None:
                return w
            w = w * self.gen(ascent)

    def parabolic_decompose(self, w: GroupElement, J: Iterable[int]) -> ParabolicData:
        self._check(w)
        js = frozenset(J)
        v, u = w, self.identity
        while True:
            s = next((s for s in sorted(js) if s in v.right_descents), None)
            if s is None:
                return ParabolicData(js, v, u)
            gs = self.gen(s)
            v, u = v * gs, gs * u

    def left_parabolic_decompose(self, w: GroupElement, J: Iterable[int]) -> tuple[GroupElement, GroupElement]:
        """``w = x * y`` with ``x`` in ``W_J`` and ``y`` a minimal right coset representative."""
        data = self.parabolic_decompose(w.inverse(), J)
        return data.u.inverse(), data.v.inverse()

    def elements(self, budget: int = DEFAULT_GROUP_BUDGET) -> Iterator[GroupElement]:
        """Every element once, in a fixed order."""
        if self.order > budget:
            raise CapabilityError(f"|W({self.family}{self.rank})| = {self.order} exceeds budget {budget}", "group_budget")
        coords = range(1, self.n_coords + 1)
        for perm in itertools.permutations(coords):
            if self.family == "A":
                yield GroupElement(self, perm)
                continue
            for signs in itertools.product((1, -1), repeat=self.n_coords):
                if self.family == "D" and signs.count(-1) % 2:
                    continue
                yield GroupElement(self, tuple(s * x for s, x in zip(signs, perm)))

    def parabolic_elements(self, J: Iterable[int]) -> list[GroupElement]:
        """All of ``W_J`` by breadth-first closure."""
        gens = [self.gen(s) for s in sorted(set(J))]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    x = w * g
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
            frontier = nxt
        return sorted(seen, key=lambda x: (x.length, x.window))

    @cached_property
    def reflections(self) -> tuple[GroupElement, ...]:
        """Reflections for the positive roots."""
        n = self.n_coords
        ident = list(range(1, n + 1))
        out = []
        for i, j in itertools.combinations(range(n), 2):
            w = list(ident)
            w[i], w[j] = w[j], w[i]
            out.append(tuple(w))
            if self.family != "A":
                w = list(ident)
                w[i], w[j] = -w[j], -w[i]
                out.append(tuple(w))
        if self.family in ("B", "C"):
            for i in range(n):
                w = list(ident)
                w[i] = -w[i]
                out.append(tuple(w))
        return tuple(GroupElement(self, w) for w in out)

    def _check(self, *ws: GroupElement) -> None:
        for w in ws:
            if w.group is not self:
                raise HostMismatchError(f"{w!r} does not belong to {self}")

    @property
    def _bruhat(self) -> "_BruhatTable":
        # The cap is read on every use so that lowering it also hides cached tables.
        cap = oracle_rank_cap()
        if self.rank > cap:
            raise CapabilityError(
                f"Bruhat tables for {self.family}{self.rank} exceed the oracle rank cap {cap}",
                "oracle_rank_cap",
            )
        return self._bruhat_table

    @cached_property
    def _bruhat_table(self) -> "_BruhatTable":
        return _BruhatTable(self)


class _BruhatTable:
    """Lower Bruhat intervals of every element, as bitmasks over an indexing."""

    def __init__(self, group: CoxeterGroup) -> None:
        elems = sorted(group.elements(), key=lambda w: w.length)
        self.index = {w.window: i for i, w in enumerate(elems)}
        self.lengths = [w.length for w in elems]
        top = max(self.lengths)
        self.level_masks = [0] * (top + 1)
        for i, l in enumerate(self.lengths):
            self.level_masks[l] |= 1 << i
        refl = [t.window for t in group.reflections]
        ideals: list[int] = []
        for i, w in enumerate(elems):
            mask = 1 << i
            for t in refl:
                j = self.index[_compose(w.window, t)]
                if self.lengths[j] == self.lengths[i] - 1:
                    mask |= ideals[j]
            ideals.append(mask)
        self.ideals = ideals

    def poincare(self, w: GroupElement) -> list[int]:
        ideal = self.ideals[self.index[w.window]]
        return [bin(ideal & m).count("1") for m in self.level_masks[: w.length + 1]]


@lru_cache(maxsize=None)
def coxeter_group(family: str, rank: int) -> CoxeterGroup:
    if family not in ("A", "B", "C", "D"):
        raise ArgumentError(f"no Coxeter kernel for family {family!r}")
    return CoxeterGroup(family, rank)


# -- functional interface -------------------------------------------------


def from_word(family: str, rank: int, word: Iterable[int]) -> GroupElement:
    return coxeter_group(family, rank).from_word(word)


def product(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def inverse(a: GroupElement) -> GroupElement:
    return a.inverse()


def length_descents_support(w: GroupElement) -> tuple[int, frozenset[int], frozenset[int], frozenset[int]]:
    return w.length, w.left_descents, w.right_descents, w.support


def longest_element(family: str, rank: int, J: Iterable[int]) -> GroupElement:
    return coxeter_group(family, rank).longest(J)


def parabolic_decompose(w: GroupElement, J: Iterable[int]) -> ParabolicData:
    return w.group.parabolic_decompose(w, J)


def is_bp_decomposition(w: GroupElement, J: Iterable[int]) -> bool:
    """Whether ``w = vu`` (parabolic w.r.t. ``J``) has ``S(v) & J <= D_L(u)``."""
    data = parabolic_decompose(w, J)
    return data.v.support & data.J <= data.u.left_descents


def bp_set(w: GroupElement) -> frozenset[int]:
    """Vertices ``s`` of ``S(w)`` such that ``w`` is BP w.r.t. ``S(w) - {s}``."""
    if w.is_identity:
        raise ArgumentError("bp set of the identity is undefined")
    sup = w.support
    return frozenset(s for s in sup if is_bp_decomposition(w, sup - {s}))


def is_maximal(w: GroupElement) -> bool:
    return w == w.group.longest(w.support)


def _grassmannian_witness(w: GroupElement) -> bool:
    sup = w.support
    for s in sorted(sup):
        data = parabolic_decompose(w, sup - {s})
        if data.v.support & data.J <= data.u.left_descents and data.u.support < data.v.support:
            return True
    return False


def is_nearly_maximal(w: GroupElement) -> bool:
    return not w.is_identity and not is_maximal(w) and _grassmannian_witness(w)


def classify_maximality(w: GroupElement) -> Maximality:
    """Most specific class: almost-maximal implies nearly-maximal."""
    if w.is_identity:
        raise ArgumentError("maximality of the identity is undefined")
    if is_maximal(w):
        return Maximality.MAXIMAL
    if not _grassmannian_witness(w):
        return Maximality.NONE
    if _grassmannian_witness(w.inverse()):
        return Maximality.ALMOST_MAXIMAL
    return Maximality.NEARLY_MAXIMAL


def bruhat_leq(u: GroupElement, w: GroupElement) -> bool:
    """Bruhat order via the lifting property.

    If ``s w < w`` then ``u <= w`` iff ``min(u, s u) <= s w``; this recursion
    needs no group tables and works at any rank.
    """
    if u.group is not w.group:
        raise HostMismatchError("Bruhat comparison across different groups")
    group = w.group
    while True:
        if u.length > w.length:
            return False
        if w.is_identity:
            return u.is_identity
        s = min(w.left_descents)
        g = group.gen(s)
        if s in u.left_descents:
            u = g * u
        w = g * w


def bruhat_leq_table(u: GroupElement, w: GroupElement) -> bool:
    """Bruhat order read off the precomputed interval table (rank-capped)."""
    if u.group is not w.group:
        raise HostMismatchError("Bruhat comparison across different groups")
    table = w.group._bruhat
    return bool((table.ideals[table.index[w.window]] >> table.index[u.window]) & 1)


def poincare(w: GroupElement) -> list[int]:
    """``[#{u <= w : l(u) = k} for k = 0..l(w)]``."""
    return w.group._bruhat.poincare(w)


def is_rationally_smooth(w: GroupElement) -> bool:
    p = poincare(w)
    return p == p[::-1]


def avoids_patterns_typeA(w: GroupElement) -> bool:
    """True iff the permutation contains neither 3412 nor 4231."""
    if w.group.family != "A":
        raise ArgumentError("pattern avoidance is defined for type A only")
    bad = {(2, 3, 0, 1), (3, 1, 2, 0)}
    for combo in itertools.combinations(w.window, 4):
        ranks = tuple(sorted(combo).index(x) for x in combo)
        if ranks in bad:
            return False
    return True


def enumerate_group(family: str, rank: int, budget: int = DEFAULT_GROUP_BUDGET) -> Iterator[GroupElement]:
    return coxeter_group(family, rank).elements(budget)


def count_rationally_smooth(family: str, rank: int) -> int:
    """Palindromic-Poincare count over the whole group (the brute-force oracle)."""
    group = coxeter_group(family, rank)
    table = group._bruhat
    return sum(1 for w in group.elements() if _palindromic(table.poincare(w)))


def _palindromic(p: list[int]) -> bool:
    return p == p[::-1]


def has_complete_bp(w: GroupElement) -> bool:
    """Exhaustive search for a complete BP decomposition (Grassmannian steps down to e)."""
    return _complete_bp(w)


@lru_cache(maxsize=None)
def _complete_bp(w: GroupElement) -> bool:
    if w.is_identity:
        return True
    sup = w.support
    for s in sorted(sup):
        data = parabolic_decompose(w, sup - {s})
        if data.v.support & data.J <= data.u.left_descents and _complete_bp(data.u):
            return True
    return False
