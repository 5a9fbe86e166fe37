"""Staircase diagrams: posets of connected vertex blocks.

A block poset over a graph is a staircase diagram when

1. every block is connected, and every cover ``B' < B`` has a connected union;
2. the blocks containing any vertex ``s`` form a chain;
3. for adjacent ``s, t`` the blocks containing ``s`` or ``t`` form a chain in
   which each of the two single-vertex chains is saturated;
4. every block is the least block containing some vertex and the greatest
   block containing some (possibly other) vertex.

Blocks are stored in canonical order, sorted by ``(min vertex, size,
contents)``, so two equal diagrams always have identical internals.  The
order is kept as one bitmask per block: bit ``j`` of ``_below[i]`` is set
iff ``blocks[j] <= blocks[i]``.

>>> from staircase.graphs import build_dynkin
>>> d = validate(build_dynkin("A", 3), [[1, 2], [2, 3]], [(0, 1)])
>>> sorted(d.critical_points())
[1, 3]
>>> d.flip().canonical_encode() != d.canonical_encode()
True
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    ArgumentError,
    AxiomViolationError,
    PosetError,
    RepresentationError,
)
from .graphs import DynkinGraph, is_connected_subset

Block = frozenset


class Violation(NamedTuple):
    """One failed axiom; ``witness`` names the offending vertices or blocks."""

    axiom: str
    witness: tuple


def block_key(block: Iterable[int]) -> tuple:
    vs = sorted(block)
    return (vs[0], len(vs), tuple(vs))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Reflexive-transitive closure as below-masks; raises PosetError on cycles."""
    lower: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for i, j in pairs:
        lower[j].append(i)
    upper: list[list[int]] = [[] for _ in range(n)]
    for j in range(n):
        for i in set(lower[j]):
            upper[i].append(j)
            indeg[j] += 1
    below = [1 << i for i in range(n)]
    ready = [i for i in range(n) if indeg[i] == 0]
    done = 0
    while ready:
        i = ready.pop()
        done += 1
        for j in upper[i]:
            below[j] |= below[i]
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if done != n:
        raise PosetError("cover relations contain a cycle")
    return below


def _hasse(below: Sequence[int]) -> frozenset[tuple[int, int]]:
    covers = set()
    for j, mask in enumerate(below):
        strict = mask & ~(1 << j)
        for i in _bits(strict):
            # i < j is a cover iff no k with i < k < j
            if not any((below[k] >> i) & 1 for k in _bits(strict) if k != i):
                covers.add((i, j))
    return frozenset(covers)


class StaircaseDiagram:
    """An immutable, validated staircase diagram.

    Construct through :func:`validate` (checks everything) or
    :meth:`from_order` (accepts any generating relation, not just covers).
    """

    __slots__ = ("graph", "blocks", "_below", "__dict__")

    def __init__(self, graph: DynkinGraph, blocks: Sequence[frozenset], below: Sequence[int]):
        # Trusted constructor: blocks must already be in canonical order.
        self.graph = graph
        self.blocks: tuple[frozenset, ...] = tuple(blocks)
        self._below: tuple[int, ...] = tuple(below)

    # -- construction -----------------------------------------------------

    @classmethod
    def _canonical(cls, graph: DynkinGraph, blocks: Sequence[frozenset], below: Sequence[int]) -> "StaircaseDiagram":
        order = sorted(range(len(blocks)), key=lambda i: block_key(blocks[i]))
        position = [0] * len(blocks)
        for new, old in enumerate(order):
            position[old] = new
        new_below = []
        for old in order:
            mask = 0
            for j in _bits(below[old]):
                mask |= 1 << position[j]
            new_below.append(mask)
        return cls(graph, [blocks[i] for i in order], new_below)

    @classmethod
    def from_order(
        cls,
        graph: DynkinGraph,
        blocks: Iterable[Iterable[int]],
        relations: Iterable[tuple[int, int]] = (),
        *,
        check: bool = True,
    ) -> "StaircaseDiagram":
        """Build from blocks and any set of pairs ``(i, j)`` meaning ``B_i < B_j``.

        The order is the transitive closure of ``relations``.
        """
        bs = [frozenset(b) for b in blocks]
        below = _closure(len(bs), relations)
        if check:
            return validate(graph, bs, _hasse(below))
        return cls._canonical(graph, bs, below)

    @classmethod
    def empty(cls, graph: DynkinGraph) -> "StaircaseDiagram":
        return cls(graph, (), ())

    # -- order queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.blocks)

    def index(self, block: Iterable[int] | int) -> int:
        if isinstance(block, int):
            if not 0 <= block < len(self.blocks):
                raise ArgumentError(f"block index {block} out of range")
            return block
        b = frozenset(block)
        try:
            return self._index_of[b]
        except KeyError:
            raise ArgumentError(f"{sorted(b)} is not a block of this diagram") from None

    @cached_property
    def _index_of(self) -> dict[frozenset, int]:
        return {b: i for i, b in enumerate(self.blocks)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Vertex bitmask per block (bit ``v`` for vertex ``v``)."""
        return tuple(sum(1 << v for v in b) for b in self.blocks)

    @cached_property
    def _above(self) -> tuple[int, ...]:
        above = [0] * len(self.blocks)
        for j, mask in enumerate(self._below):
            for i in _bits(mask):
                above[i] |= 1 << j
        return tuple(above)

    def leq(self, a, b) -> bool:
        """``a <= b`` in the diagram order (blocks or indices)."""
        return bool((self._below[self.index(b)] >> self.index(a)) & 1)

    def less(self, a, b) -> bool:
        i, j = self.index(a), self.index(b)
        return i != j and bool((self._below[j] >> i) & 1)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    @cached_property
    def covers(self) -> frozenset[tuple[int, int]]:
        """Hasse diagram as index pairs ``(lower, upper)``."""
        return _hasse(self._below)

    def down_set(self, block) -> list[int]:
        return list(_bits(self._below[self.index(block)]))

    def up_set(self, block) -> list[int]:
        return list(_bits(self._above[self.index(block)]))

    def minimal_blocks(self) -> list[int]:
        return [i for i, m in enumerate(self._below) if m == 1 << i]

    def maximal_blocks(self) -> list[int]:
        return [i for i, m in enumerate(self._above) if m == 1 << i]

    def is_chain(self) -> bool:
        return all(self._below[i] | self._above[i] == (1 << len(self)) - 1 for i in range(len(self)))

    def _sorted_chain(self, indices: Iterable[int]) -> list[int]:
        # Blocks of a chain are ordered by the size of their down-sets.
        return sorted(indices, key=lambda i: bin(self._below[i]).count("1"))

    @cached_property
    def _at(self) -> dict[int, tuple[int, ...]]:
        at: dict[int, list[int]] = {}
        for i, b in enumerate(self.blocks):
            for s in b:
                at.setdefault(s, []).append(i)
        return {s: tuple(self._sorted_chain(ix)) for s, ix in at.items()}

    def blocks_at(self, s: int) -> tuple[int, ...]:
        """Indices of the blocks containing ``s``, ascending in the order."""
        return self._at.get(s, ())

    def chain_at(self, J: Iterable[int]) -> list[frozenset]:
        """Blocks containing every vertex of ``J``, ascending."""
        js = frozenset(J)
        if not js:
            raise ArgumentError("chain_at needs a nonempty vertex set")
        ix = [i for i, b in enumerate(self.blocks) if js <= b]
        return [self.blocks[i] for i in self._sorted_chain(ix)]

    def min_at(self, s: int) -> int | None:
        chain = self.blocks_at(s)
        return chain[0] if chain else None

    def max_at(self, s: int) -> int | None:
        chain = self.blocks_at(s)
        return chain[-1] if chain else None

    def linear_extension(self) -> list[int]:
        """Repeatedly take the minimal remaining block with the smallest key."""
        remaining = (1 << len(self)) - 1
        out = []
        while remaining:
            for i in range(len(self)):
                if (remaining >> i) & 1 and not (self._below[i] & remaining & ~(1 << i)):
                    out.append(i)
                    remaining &= ~(1 << i)
                    break
        return out

    def linear_extensions(self) -> Iterator[list[int]]:
        """Every linear extension (exponential; for small diagrams)."""

        def rec(remaining: int, prefix: list[int]) -> Iterator[list[int]]:
            if not remaining:
                yield list(prefix)
                return
            for i in _bits(remaining):
                if not (self._below[i] & remaining & ~(1 << i)):
                    prefix.append(i)
                    yield from rec(remaining & ~(1 << i), prefix)
                    prefix.pop()

        return rec((1 << len(self)) - 1, [])

    # -- derived sets -----------------------------------------------------

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset().union(*self.blocks) if self.blocks else frozenset()

    def is_fully_supported(self) -> bool:
        return len(self.support) == self.graph.rank

    def boundary_sets(self, block) -> tuple[frozenset[int], frozenset[int]]:
        """``(J_R, J_L)``: vertices of the block where it is not the least / greatest."""
        i = self.index(block)
        b = self.blocks[i]
        jr = frozenset(s for s in b if self.min_at(s) != i)
        jl = frozenset(s for s in b if self.max_at(s) != i)
        return jr, jl

    def descents(self) -> tuple[frozenset[int], frozenset[int]]:
        """``(D_L, D_R)`` of the diagram.

        ``s`` is a right descent when the least block at ``s`` lies weakly
        below the least block at every supported neighbour; left descents use
        greatest blocks instead.
        """
        right, left = set(), set()
        for s in self.support:
            nbrs = [t for t in self.graph.neighbours(s) if t in self.support]
            lo, hi = self.min_at(s), self.max_at(s)
            if all(self.leq(lo, self.min_at(t)) for t in nbrs):
                right.add(s)
            if all(self.leq(self.max_at(t), hi) for t in nbrs):
                left.add(s)
        return frozenset(left), frozenset(right)

    def critical_points(self) -> frozenset[int]:
        return frozenset(s for s, chain in self._at.items() if len(chain) == 1)

    def support_leaves(self) -> frozenset[int]:
        """Vertices of degree at most one in the induced support graph.

        In the rank-3 type D graph the fork vertex 3 is treated as a leaf too.
        """
        sup = self.support
        leaves = {s for s in sup if len(self.graph.neighbours(s) & sup) <= 1}
        if self.graph.family == "D" and self.graph.rank == 3 and 3 in sup:
            leaves.add(3)
        return frozenset(leaves)

    def is_connected(self) -> bool:
        return bool(self.blocks) and is_connected_subset(self.graph, self.support)

    def is_elementary(self) -> bool:
        if not self.is_connected():
            raise ArgumentError("elementary test needs a diagram with connected support")
        return self.critical_points() <= self.support_leaves()

    # -- transformations --------------------------------------------------

    def flip(self) -> "StaircaseDiagram":
        return StaircaseDiagram(self.graph, self.blocks, self._above)

    def induced(self, indices: Iterable[int], *, check: bool = False) -> "StaircaseDiagram":
        """Sub-poset on the given blocks with the induced order."""
        ix = sorted(set(indices))
        pos = {old: new for new, old in enumerate(ix)}
        below = []
        for old in ix:
            mask = 0
            for j in _bits(self._below[old]):
                if j in pos:
                    mask |= 1 << pos[j]
            below.append(mask)
        blocks = [self.blocks[i] for i in ix]
        if check:
            return validate(self.graph, blocks, _hasse(below))
        return StaircaseDiagram(self.graph, blocks, below)

    def lower_ideal(self, indices: Iterable[int]) -> "StaircaseDiagram":
        """The down-closure of the given blocks as a diagram."""
        mask = 0
        for i in indices:
            mask |= self._below[i]
        return self.induced(_bits(mask))

    def connected_components(self) -> list["StaircaseDiagram"]:
        remaining = set(self.support)
        comps = []
        while remaining:
            seed = min(remaining)
            comp = {seed}
            stack = [seed]
            while stack:
                for u in self.graph.neighbours(stack.pop()):
                    if u in remaining and u not in comp:
                        comp.add(u)
                        stack.append(u)
            remaining -= comp
            comps.append(self.induced(i for i, b in enumerate(self.blocks) if b <= comp))
        return comps

    def rehost(self, graph: DynkinGraph) -> "StaircaseDiagram":
        """Same blocks and order over another graph (no validation)."""
        return StaircaseDiagram(graph, self.blocks, self._below)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "blocks": [sorted(b) for b in self.blocks],
            "covers": [list(c) for c in sorted(self.covers)],
        }

    def canonical_encode(self) -> bytes:
        return json.dumps(self.to_json(), separators=(",", ":")).encode()

    @classmethod
    def from_json(cls, graph: DynkinGraph, data: dict) -> "StaircaseDiagram":
        return validate(graph, data["blocks"], [tuple(c) for c in data["covers"]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StaircaseDiagram):
            return NotImplemented
        return self.blocks == other.blocks and self._below == other._below

    def __hash__(self) -> int:
        return hash((self.blocks, self._below))

    def __repr__(self) -> str:
        blocks = ", ".join(str(sorted(b)) for b in self.blocks)
        covers = ", ".join(f"{i}<{j}" for i, j in sorted(self.covers))
        return f"StaircaseDiagram([{blocks}]; {covers})"


def axiom_violations(
    graph: DynkinGraph,
    blocks: Sequence[Iterable[int]],
    covers: Iterable[tuple[int, int]],
) -> tuple[list[Violation], list[frozenset], list[int]]:
    """Check every staircase axiom and return ``(violations, blocks, below)``.

    Structural problems raise instead: bad input is an ArgumentError, a cyclic
    relation a PosetError and a transitive cover a RepresentationError.
    """
    bs: list[frozenset] = []
    for b in blocks:
        fb = frozenset(b)
        if not fb:
            raise ArgumentError("blocks must be nonempty")
        for v in fb:
            graph._check_vertex(v)
        bs.append(fb)
    if len(set(bs)) != len(bs):
        raise ArgumentError("duplicate block")
    cover_set = set()
    for pair in covers:
        i, j = pair
        if not (0 <= i < len(bs) and 0 <= j < len(bs)) or i == j:
            raise ArgumentError(f"invalid cover {pair!r}")
        cover_set.add((i, j))
    below = _closure(len(bs), cover_set)
    extra = cover_set - _hasse(below)
    if extra:
        i, j = min(extra)
        raise RepresentationError(f"cover {sorted(bs[i])} < {sorted(bs[j])} is implied transitively")

    def le(i: int, j: int) -> bool:
        return bool((below[j] >> i) & 1)

    def comparable(i: int, j: int) -> bool:
        return le(i, j) or le(j, i)

    out: list[Violation] = []
    for i, b in enumerate(bs):
        if not is_connected_subset(graph, b):
            out.append(Violation("1", (tuple(sorted(b)),)))
    for i, j in sorted(cover_set):
        if not is_connected_subset(graph, bs[i] | bs[j]):
            out.append(Violation("1", (tuple(sorted(bs[i])), tuple(sorted(bs[j])))))

    at = {s: [i for i, b in enumerate(bs) if s in b] for s in graph.vertices}
    for s, chain in at.items():
        if any(not comparable(i, j) for i in chain for j in chain):
            out.append(Violation("2", (s,)))

    for s in graph.vertices:
        for t in sorted(graph.neighbours(s)):
            if t < s:
                continue
            union = sorted(set(at[s]) | set(at[t]))
            bad = any(not comparable(i, j) for i in union for j in union)
            for part in (at[s], at[t]):
                inside = set(part)
                for x in part:
                    for y in part:
                        for z in union:
                            if z not in inside and z != x and z != y and le(x, z) and le(z, y):
                                bad = True
            if bad:
                out.append(Violation("3", (s, t)))

    for i, b in enumerate(bs):
        is_min = any(all(le(i, j) for j in at[s]) for s in b)
        is_max = any(all(le(j, i) for j in at[s]) for s in b)
        if not is_min:
            out.append(Violation("4", (tuple(sorted(b)), "min")))
        if not is_max:
            out.append(Violation("4", (tuple(sorted(b)), "max")))
    return out, bs, below


def validate(
    graph: DynkinGraph,
    blocks: Sequence[Iterable[int]],
    covers: Iterable[tuple[int, int]],
) -> StaircaseDiagram:
    """Return the sealed diagram or raise AxiomViolationError listing all failures."""
    violations, bs, below = axiom_violations(graph, blocks, covers)
    if violations:
        raise AxiomViolationError(violations)
    return StaircaseDiagram._canonical(graph, bs, below)
