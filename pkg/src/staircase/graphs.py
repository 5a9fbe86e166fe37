"""Coxeter-Dynkin graphs.

Vertices are the integers ``1..rank``.  Only edges with ``m >= 3`` are
stored; an absent pair commutes (``m = 2``).

>>> g = build_dynkin("D", 4)
>>> sorted(g.neighbours(3))
[1, 2, 4]
>>> path_between(g, 1, 2)
[1, 3, 2]
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import ArgumentError, UnsupportedGraphError

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class DynkinGraph:
    """A loop-free labelled graph on ``1..rank`` with Coxeter exponents."""

    family: str
    rank: int
    edges: frozenset[tuple[int, int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ArgumentError(f"rank must be positive, got {self.rank}")
        normalized = set()
        for u, v, m in self.edges:
            if u == v:
                raise ArgumentError(f"self-loop at vertex {u}")
            for x in (u, v):
                if not 1 <= x <= self.rank:
                    raise ArgumentError(f"unknown vertex {x}")
            if m < 3:
                raise ArgumentError(f"stored edges need m >= 3, got {m}")
            normalized.add((min(u, v), max(u, v), m))
        if len({(u, v) for u, v, _ in normalized}) != len(normalized):
            raise ArgumentError("conflicting multiplicities on one edge")
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @cached_property
    def _adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    @cached_property
    def _multiplicity(self) -> dict[tuple[int, int], int]:
        return {(u, v): m for u, v, m in self.edges}

    def neighbours(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._adjacency[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbours(u)

    def m(self, u: int, v: int) -> int:
        """Coxeter exponent: 1 on the diagonal, 2 for commuting pairs."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return 1
        return self._multiplicity.get((min(u, v), max(u, v)), 2)

    @cached_property
    def neighbour_masks(self) -> tuple[int, ...]:
        """Bitmask of neighbours per vertex; bit ``v`` stands for vertex ``v``."""
        masks = [0] * (self.rank + 1)
        for v, ns in self._adjacency.items():
            for u in ns:
                masks[v] |= 1 << u
        return tuple(masks)

    def is_tree(self) -> bool:
        return len(self.edges) == self.rank - 1 and is_connected_subset(self, self.vertices)

    def extended(self) -> "DynkinGraph":
        """Attach a new vertex ``rank + 1`` to ``rank`` (the path used by the Catalan generator)."""
        if self.family in ("A", "D"):
            return build_dynkin(self.family, self.rank + 1)
        return DynkinGraph("Custom", self.rank + 1, self.edges | {(self.rank, self.rank + 1, 3)})

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "edges": [list(e) for e in sorted(self.edges)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DynkinGraph":
        return cls(data["family"], int(data["rank"]), frozenset(tuple(e) for e in data["edges"]))

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 1 <= v <= self.rank):
            raise ArgumentError(f"unknown vertex {v!r} in rank-{self.rank} graph")


def build_dynkin(family: str, rank: int) -> DynkinGraph:
    """The classical Dynkin graph.

    A, B, C are the path ``1-2-...-n`` (B and C carry ``m = 4`` on
    ``{n-1, n}``).  D has the fork at vertex 3: edges ``{1,3}``, ``{2,3}``
    and ``{i, i+1}`` for ``3 <= i < n``.
    """
    if family not in FAMILIES:
        raise ArgumentError(f"unknown family {family!r}")
    if not isinstance(rank, int) or rank < (3 if family == "D" else 1):
        raise ArgumentError(f"rank {rank!r} out of range for family {family}")
    if family == "D":
        edges = {(1, 3, 3), (2, 3, 3)} | {(i, i + 1, 3) for i in range(3, rank)}
    else:
        edges = {(i, i + 1, 3) for i in range(1, rank)}
        if family in ("B", "C") and rank >= 2:
            edges.discard((rank - 1, rank, 3))
            edges.add((rank - 1, rank, 4))
    return DynkinGraph(family, rank, frozenset(edges))


def custom_graph(rank: int, edges: Iterable[tuple[int, int] | tuple[int, int, int]]) -> DynkinGraph:
    triples = frozenset((e[0], e[1], e[2] if len(e) > 2 else 3) for e in edges)
    return DynkinGraph("Custom", rank, triples)


def is_connected_subset(g: DynkinGraph, subset: Iterable[int]) -> bool:
    """True iff the induced subgraph on ``subset`` is nonempty and connected."""
    vs = set(subset)
    for v in vs:
        g._check_vertex(v)
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        for u in g.neighbours(stack.pop()):
            if u in vs and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen == vs


def path_between(g: DynkinGraph, t: int, r: int) -> list[int]:
    """Vertices of the unique path from ``t`` to ``r`` in a tree, endpoints included."""
    g._check_vertex(t)
    g._check_vertex(r)
    if len(g.edges) >= g.rank or not is_connected_subset(g, g.vertices):
        raise UnsupportedGraphError("path_between needs a tree")
    parent = {t: t}
    queue = deque([t])
    while queue:
        x = queue.popleft()
        for y in sorted(g.neighbours(x)):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [r]
    while path[-1] != t:
        path.append(parent[path[-1]])
    return path[::-1]
