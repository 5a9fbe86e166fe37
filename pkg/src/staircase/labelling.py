"""Labellings of staircase diagrams and the product map to the Weyl group.

A labelling assigns a group element to every block.  The product
``Lambda`` multiplies the trimmed labels ``lambda(B) u_{J_R(B)}`` from the
top of a linear extension down; :func:`phi_inverse` recovers the labelled
diagram from an element with a complete BP decomposition.

>>> from staircase.graphs import build_dynkin
>>> from staircase.diagram import validate
>>> d = validate(build_dynkin("A", 3), [[1, 2], [2, 3]], [(0, 1)])
>>> L = maximal_labelling(d)
>>> lambda_product(L).reduced_word
(2, 1, 3, 2, 1)
>>> phi_inverse(lambda_product(L)) == L
True
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .coxeter import (
    CoxeterGroup,
    GroupElement,
    Maximality,
    bp_set,
    classify_maximality,
    coxeter_group,
)
from .diagram import StaircaseDiagram
from .errors import ArgumentError, HostMismatchError, LabellingError, NoCompleteBPDecomposition
from .graphs import DynkinGraph, build_dynkin


def host_group(graph: DynkinGraph, family: str | None = None) -> CoxeterGroup:
    """The Weyl group whose labels decorate diagrams over ``graph``.

    ``family`` overrides the graph's own family; this is how type-A shaped
    diagrams carry labels from the B/C group.
    """
    fam = family or graph.family
    if fam == "BC":
        fam = "B"
    group = coxeter_group(fam, graph.rank)
    _check_host(graph, group)
    return group


def _check_host(graph: DynkinGraph, group: CoxeterGroup) -> None:
    same = group.rank == graph.rank and all(
        graph.neighbours(v) == group.graph.neighbours(v) for v in graph.vertices
    )
    if not same:
        raise HostMismatchError(f"{group} does not act on the {graph.family}{graph.rank} graph")


@dataclass(frozen=True)
class Labelling:
    """A diagram with one group element per block (aligned with ``diagram.blocks``)."""

    diagram: StaircaseDiagram
    labels: tuple[GroupElement, ...]

    def label(self, block) -> GroupElement:
        return self.labels[self.diagram.index(block)]

    @property
    def group(self) -> CoxeterGroup | None:
        return self.labels[0].group if self.labels else None

    def bar(self, block) -> GroupElement:
        """``lambda(B) u_{J_R(B)}``."""
        i = self.diagram.index(block)
        jr, _ = self.diagram.boundary_sets(i)
        x = self.labels[i]
        return x * x.group.longest(jr)

    def flip(self) -> "Labelling":
        return Labelling(self.diagram.flip(), tuple(x.inverse() for x in self.labels))

    def to_json(self) -> dict:
        data = self.diagram.to_json()
        data["labels"] = [[i, list(x.reduced_word)] for i, x in enumerate(self.labels)]
        return data

    @classmethod
    def from_json(cls, graph: DynkinGraph, data: dict, family: str | None = None) -> "Labelling":
        d = StaircaseDiagram.from_json(graph, data)
        group = host_group(graph, family)
        given = {int(i): group.from_word(word) for i, word in data["labels"]}
        return validate_labelling(d, [given[i] for i in range(len(d))])

    def __repr__(self) -> str:
        parts = ", ".join(f"{sorted(b)}:{x!r}" for b, x in zip(self.diagram.blocks, self.labels))
        return f"Labelling({parts})"


def _normalise_assignment(
    d: StaircaseDiagram, assignment: Mapping | Sequence[GroupElement]
) -> tuple[GroupElement, ...]:
    if isinstance(assignment, Mapping):
        labels: list[GroupElement | None] = [None] * len(d)
        for block, x in assignment.items():
            labels[d.index(block)] = x
        missing = [sorted(b) for b, x in zip(d.blocks, labels) if x is None]
        if missing:
            raise ArgumentError(f"no label for blocks {missing}")
        out = tuple(labels)
    else:
        out = tuple(assignment)
        if len(out) != len(d):
            raise ArgumentError(f"{len(out)} labels for {len(d)} blocks")
    groups = {x.group for x in out}
    if len(groups) > 1:
        raise HostMismatchError("labels come from different groups")
    for g in groups:
        _check_host(d.graph, g)
    return out  # type: ignore[return-value]


def labelling_violations(d: StaircaseDiagram, labels: Sequence[GroupElement]) -> list[tuple[frozenset, int]]:
    """``(block, condition)`` for each failed labelling condition."""
    out = []
    for i, (b, x) in enumerate(zip(d.blocks, labels)):
        jr, jl = d.boundary_sets(i)
        if not jr <= x.right_descents:
            out.append((b, 1))
        if not jl <= x.left_descents:
            out.append((b, 2))
        g = x.group
        if (x * g.longest(jr)).support != b or (g.longest(jl) * x).support != b:
            out.append((b, 3))
    return out


def validate_labelling(d: StaircaseDiagram, assignment: Mapping | Sequence[GroupElement]) -> Labelling:
    labels = _normalise_assignment(d, assignment)
    violations = labelling_violations(d, labels)
    if violations:
        raise LabellingError(violations)
    return Labelling(d, labels)


def maximal_labelling(d: StaircaseDiagram, family: str | None = None) -> Labelling:
    group = host_group(d.graph, family)
    return Labelling(d, tuple(group.longest(b) for b in d.blocks))


def lambda_product(L: Labelling, order: Sequence[int] | None = None) -> GroupElement:
    """``Lambda(D, lambda)``, multiplying from the top of a linear extension down.

    ``order`` may name another linear extension (bottom block first).
    """
    d = L.diagram
    if not L.labels:
        return coxeter_group(d.graph.family if d.graph.family in "ABCD" else "A", d.graph.rank).identity
    ext = d.linear_extension() if order is None else list(order)
    w = L.group.identity
    for i in reversed(ext):
        w = w * L.bar(i)
    return w


def lambda_descents(L: Labelling) -> tuple[frozenset[int], frozenset[int]]:
    """``(D_L, D_R)`` of ``Lambda`` read off the labelled diagram."""
    d = L.diagram
    left, right = set(), set()
    for s in d.support:
        nbrs = [t for t in d.graph.neighbours(s) if t in d.support]
        lo, hi = d.min_at(s), d.max_at(s)
        if all(d.leq(lo, d.min_at(t)) for t in nbrs) and s in L.labels[lo].right_descents:
            right.add(s)
        if all(d.leq(d.max_at(t), hi) for t in nbrs) and s in L.labels[hi].left_descents:
            left.add(s)
    return frozenset(left), frozenset(right)


def is_nearly_maximal_labelling(L: Labelling) -> bool:
    return all(classify_maximality(x) is not Maximality.NONE for x in L.labels)


def bp_of_lambda(L: Labelling) -> frozenset[int]:
    """``bp(Lambda)`` as the union over maximal blocks of ``bp(lambda(B)) - J_R(B)``."""
    d = L.diagram
    out: set[int] = set()
    for i in d.maximal_blocks():
        jr, _ = d.boundary_sets(i)
        out |= bp_set(L.labels[i]) - jr
    return frozenset(out)


def phi_inverse(w: GroupElement) -> Labelling:
    """The nearly-maximal labelled diagram with ``Lambda = w``.

    Raises NoCompleteBPDecomposition when ``w`` has none.
    """
    group = w.group
    graph = group.graph
    if w.is_identity:
        return Labelling(StaircaseDiagram.empty(graph), ())
    L = _peel(w)
    try:
        final = validate_labelling(StaircaseDiagram.from_order(graph, L.diagram.blocks, L.diagram.covers), L.labels)
    except Exception as exc:  # any axiom or labelling failure means no decomposition
        raise NoCompleteBPDecomposition(f"{w!r}: reconstruction is not a labelled diagram ({exc})") from None
    if lambda_product(final) != w or not is_nearly_maximal_labelling(final):
        raise NoCompleteBPDecomposition(f"{w!r} has no complete BP decomposition")
    return final


def _peel(w: GroupElement) -> Labelling:
    group = w.group
    if w.is_identity:
        return Labelling(StaircaseDiagram.empty(group.graph), ())
    bps = bp_set(w)
    if not bps:
        raise NoCompleteBPDecomposition(f"{w!r} has empty bp set")
    s = min(bps)
    v = group.parabolic_decompose(w, w.support - {s}).v
    block = v.support
    x, rest = group.left_parabolic_decompose(w, block)
    K = block & rest.support
    lower = group.longest(K) * rest
    if s in lower.support or lower.length >= w.length:
        raise NoCompleteBPDecomposition(f"{w!r}: peeling does not shrink the support")
    sub = _peel(lower)
    d0 = sub.diagram
    if block in d0.blocks:
        raise NoCompleteBPDecomposition(f"{w!r}: repeated block {sorted(block)}")
    n0 = len(d0)
    relations = set(d0.covers)
    for t in d0.support:
        if t in block or graph_touches(group.graph, t, block):
            relations.add((d0.max_at(t), n0))
    blocks = list(d0.blocks) + [block]
    labels = list(sub.labels) + [x]
    # Keep labels attached to blocks through canonical reordering.
    d = StaircaseDiagram.from_order(group.graph, blocks, relations, check=False)
    by_block = dict(zip(blocks, labels))
    return Labelling(d, tuple(by_block[b] for b in d.blocks))


def graph_touches(graph: DynkinGraph, t: int, block: frozenset) -> bool:
    return bool(graph.neighbours(t) & block)


# -- enumerating labellings ----------------------------------------------


@lru_cache(maxsize=None)
def _block_candidates(group: CoxeterGroup, block: frozenset) -> tuple[GroupElement, ...]:
    """Elements of ``W_B`` with support exactly ``B``."""
    return tuple(x for x in group.parabolic_elements(block) if x.support == block)


@lru_cache(maxsize=None)
def _nearly_maximal_candidates(group: CoxeterGroup, block: frozenset) -> tuple[GroupElement, ...]:
    return tuple(x for x in _block_candidates(group, block) if classify_maximality(x) is not Maximality.NONE)


def _labellings_from(d: StaircaseDiagram, pools: list[Sequence[GroupElement]]) -> Iterator[Labelling]:
    per_block = []
    for i, pool in enumerate(pools):
        jr, jl = d.boundary_sets(i)
        ok = []
        for x in pool:
            g = x.group
            if jr <= x.right_descents and jl <= x.left_descents:
                if (x * g.longest(jr)).support == d.blocks[i] and (g.longest(jl) * x).support == d.blocks[i]:
                    ok.append(x)
        per_block.append(ok)
    for combo in itertools.product(*per_block):
        yield Labelling(d, tuple(combo))


def all_labellings(d: StaircaseDiagram, family: str | None = None) -> Iterator[Labelling]:
    """Every labelling of ``d`` (exponential; small ranks only)."""
    group = host_group(d.graph, family)
    return _labellings_from(d, [_block_candidates(group, b) for b in d.blocks])


def nearly_maximal_labellings(d: StaircaseDiagram, family: str | None = None) -> Iterator[Labelling]:
    group = host_group(d.graph, family)
    return _labellings_from(d, [_nearly_maximal_candidates(group, b) for b in d.blocks])


# -- type BC labellings ---------------------------------------------------


def _interval(a: int, b: int) -> frozenset[int]:
    return frozenset(range(a, b + 1))


def _bc_setup(d: StaircaseDiagram, family: str) -> CoxeterGroup:
    if family not in ("B", "C", "BC"):
        raise ArgumentError(f"BC labellings need family B, C or BC, got {family!r}")
    group = host_group(d.graph, family)
    if group.family not in ("B", "C"):
        raise ArgumentError("BC labellings need a B or C host group")
    return group


def _top_interval(block: frozenset, n: int) -> int | None:
    """``r`` when ``block = [r, n]``, else None."""
    if n not in block:
        return None
    r = min(block)
    if block != _interval(r, n):
        raise ArgumentError(f"block {sorted(block)} is not an interval")
    return r


def bc_u(group: CoxeterGroup, r: int, k: int) -> GroupElement:
    """``s_{k+1} ... s_n s_{n-1} ... s_r u_{[r,n] - {r}}``."""
    n = group.rank
    word = list(range(k + 1, n + 1)) + list(range(n - 1, r - 1, -1))
    return group.from_word(word) * group.longest(_interval(r + 1, n))


def bc_u_prime(group: CoxeterGroup, r: int, k: int) -> GroupElement:
    """Longest element of ``W_{B-{r}}`` minimal over ``W_{B-{r,k+1}}``, then ``s_r ... s_k u_{B-{k}}``."""
    n = group.rank
    B = _interval(r, n)
    head = group.longest(B - {r}) * group.longest(B - {r, k + 1})
    return head * group.from_word(range(r, k + 1)) * group.longest(B - {k})


def bc_lambda1(d: StaircaseDiagram, family: str = "B") -> Labelling:
    group = _bc_setup(d, family)
    n = group.rank
    labels = []
    for b in d.blocks:
        r = _top_interval(b, n)
        if r is None:
            labels.append(group.longest(b))
        else:
            labels.append(group.from_word(range(r, n + 1)) * group.longest(b - {n}))
    return validate_labelling(d, labels)


def _bc_lambda23(d: StaircaseDiagram, k: int, family: str, prime: bool) -> Labelling | None:
    group = _bc_setup(d, family)
    n = group.rank
    labels = []
    for b in d.blocks:
        r = _top_interval(b, n)
        if r is None:
            labels.append(group.longest(b))
            continue
        if not r <= k < n:
            raise ArgumentError(f"k = {k} outside [{r}, {n - 1}] for block {sorted(b)}")
        labels.append(bc_u_prime(group, r, k) if prime else bc_u(group, r, k))
    assignment = tuple(labels)
    if labelling_violations(d, assignment):
        return None
    return Labelling(d, assignment)


def bc_lambda2(d: StaircaseDiagram, k: int, family: str = "C") -> Labelling | None:
    """``lambda_2^k``, or None when it is not a labelling of ``d``."""
    return _bc_lambda23(d, k, family, prime=False)


def bc_lambda3(d: StaircaseDiagram, k: int, family: str = "C") -> Labelling | None:
    """``lambda_3^k``, or None when it is not a labelling of ``d``."""
    return _bc_lambda23(d, k, family, prime=True)


def lambda2_valid_by_rule(d: StaircaseDiagram, k: int) -> bool:
    """Closed-form validity of ``lambda_2^k``: the block at ``n`` has ``J_R`` empty and ``J_L`` inside ``[r, k-1]``."""
    n = d.graph.rank
    at = d.blocks_at(n)
    if not at:
        return True
    i = at[0]
    jr, jl = d.boundary_sets(i)
    r = min(d.blocks[i])
    return not jr and jl <= _interval(r, k - 1)


def _bc_ks(d: StaircaseDiagram) -> list[int]:
    n = d.graph.rank
    at = d.blocks_at(n)
    if not at:
        return []
    r = min(d.blocks[at[0]])
    return list(range(r, n))


def classify_rs_labellings(d: StaircaseDiagram, family: str) -> list[Labelling]:
    """Rationally smooth, almost-maximal labellings of ``d`` for the family.

    Simply-laced families only have the maximal labelling.  ``B`` adds
    ``lambda_1``; ``C`` adds the valid ``lambda_2^k`` and ``lambda_3^k``;
    ``BC`` takes the union.  Equal labellings are listed once.
    """
    if family in ("A", "D"):
        return [maximal_labelling(d, family)]
    group = _bc_setup(d, family)
    out: list[Labelling] = [maximal_labelling(d, group.family)]
    if family in ("B", "BC"):
        out.append(bc_lambda1(d, group.family))
    if family in ("C", "BC"):
        for k in _bc_ks(d):
            for L in (bc_lambda2(d, k, group.family), bc_lambda3(d, k, group.family)):
                if L is not None:
                    out.append(L)
    unique: list[Labelling] = []
    seen = set()
    for L in out:
        key = L.labels
        if key not in seen:
            seen.add(key)
            unique.append(L)
    return unique


def bc_graph(n: int, family: str = "B") -> DynkinGraph:
    return build_dynkin("C" if family == "C" else "B", n)
