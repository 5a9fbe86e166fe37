"""Exhaustive and structured enumeration of staircase diagrams.

The generic search grows diagrams one block at a time, always adding the new
block as a maximal element.  Removing a maximal block from a staircase
diagram leaves a staircase diagram, so every diagram has a canonical parent:
itself minus its maximal block of largest key.  A child is kept only when
the new block is that block (canonical augmentation), which visits every
diagram exactly once without a dedupe set.

>>> from staircase.graphs import build_dynkin
>>> count_diagrams(build_dynkin("A", 4))
88
>>> count_diagrams(build_dynkin("D", 4))
108
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Iterator

from .diagram import StaircaseDiagram, _bits, _closure, _hasse, block_key, validate
from .errors import ArgumentError, AxiomViolationError, CapabilityError
from .graphs import DynkinGraph, build_dynkin, is_connected_subset, path_between

DEFAULT_MAX_RANK = 9


def catalan_number(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


# -- generic search ---------------------------------------------------------


def connected_subsets(g: DynkinGraph) -> list[frozenset[int]]:
    """All nonempty connected vertex subsets, in block-key order."""
    out = []
    for size in range(1, g.rank + 1):
        for combo in itertools.combinations(g.vertices, size):
            if is_connected_subset(g, combo):
                out.append(frozenset(combo))
    out.sort(key=block_key)
    return out


class _Search:
    """Mutable DFS state over one graph."""

    def __init__(self, g: DynkinGraph) -> None:
        self.g = g
        self.cands = connected_subsets(g)
        nbr = g.neighbour_masks
        self.cmask = [sum(1 << v for v in c) for c in self.cands]
        self.cverts = [sorted(c) for c in self.cands]
        self.closed = []
        for c in self.cands:
            m = 0
            for v in c:
                m |= (1 << v) | nbr[v]
            self.closed.append(m)
        self.nbr_lists = {v: sorted(g.neighbours(v)) for v in g.vertices}
        self.full = sum(1 << v for v in g.vertices)
        self.top = [-1] * (g.rank + 1)
        self.below: list[int] = []
        self.blocks: list[int] = []
        self.support = 0
        self.maximal = 0

    def children(self) -> Iterator[int]:
        """Yield each valid canonical child's candidate index with the child applied.

        The state is restored when the generator resumes.
        """
        top = self.top
        below = self.below
        blocks = self.blocks
        for m, cm in enumerate(self.cmask):
            if not cm & ~self.support:
                continue
            verts = self.cverts[m]
            pos = len(blocks)
            down = 1 << pos
            for v in _bits(self.closed[m]):
                j = top[v]
                if j >= 0:
                    down |= below[j]
            ok = True
            for s in verts:
                ts = top[s]
                if ts < 0:
                    continue
                for t in self.nbr_lists[s]:
                    tt = top[t]
                    if tt >= 0 and not (below[ts] >> tt) & 1:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            # Old blocks losing a vertex must stay greatest at some other vertex.
            losing = 0
            for s in verts:
                if top[s] >= 0:
                    losing |= 1 << top[s]
            for j in _bits(losing):
                if not any(top[v] == j for v in _bits(self.cmask_of(j) & ~cm)):
                    ok = False
                    break
            if not ok:
                continue
            new_max = (self.maximal & ~down) | (1 << pos)
            if any(blocks[j] > m for j in _bits(new_max & ~(1 << pos))):
                continue
            saved = (self.maximal, self.support, [top[s] for s in verts])
            blocks.append(m)
            below.append(down)
            self.maximal = new_max
            self.support |= cm
            for s in verts:
                top[s] = pos
            yield m
            for s, old in zip(verts, saved[2]):
                top[s] = old
            blocks.pop()
            below.pop()
            self.maximal, self.support = saved[0], saved[1]

    def cmask_of(self, pos: int) -> int:
        return self.cmask[self.blocks[pos]]

    def diagram(self) -> StaircaseDiagram:
        return StaircaseDiagram._canonical(self.g, [self.cands[m] for m in self.blocks], self.below)


def check_budget(g: DynkinGraph, max_rank: int) -> None:
    if g.rank > max_rank:
        raise CapabilityError(f"enumeration at rank {g.rank} exceeds the budget {max_rank}", "enumeration_budget")


def enumerate_diagrams(
    g: DynkinGraph, fully_supported: bool = False, *, max_rank: int = DEFAULT_MAX_RANK
) -> Iterator[StaircaseDiagram]:
    """Every staircase diagram over ``g`` exactly once, in depth-first order.

    The empty diagram comes first unless ``fully_supported`` is set.
    """
    check_budget(g, max_rank)
    search = _Search(g)

    def rec() -> Iterator[StaircaseDiagram]:
        if not fully_supported or search.support == search.full:
            yield search.diagram()
        for _ in search.children():
            yield from rec()

    return rec()


def _count_from(search: _Search, fully_supported: bool) -> int:
    total = 1 if (not fully_supported or search.support == search.full) else 0
    for _ in search.children():
        total += _count_from(search, fully_supported)
    return total


def _count_branch(args: tuple[DynkinGraph, bool, int]) -> int:
    g, fully_supported, first = args
    search = _Search(g)
    for m in search.children():
        if m == first:
            return _count_from(search, fully_supported)
    return 0


def count_diagrams(
    g: DynkinGraph, fully_supported: bool = False, *, max_rank: int = DEFAULT_MAX_RANK, threads: int = 1
) -> int:
    """Number of staircase diagrams over ``g``; ``threads > 1`` splits by first block."""
    check_budget(g, max_rank)
    if threads <= 1:
        return _count_from(_Search(g), fully_supported)
    search = _Search(g)
    firsts = list(search.children())
    root = 0 if fully_supported and g.rank else 1
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(_count_branch, [(g, fully_supported, m) for m in firsts])
        return root + sum(parts)


# -- elementary decomposition ---------------------------------------------


def _components(g: DynkinGraph, vertices: set[int]) -> list[frozenset[int]]:
    remaining = set(vertices)
    out = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        stack = [seed]
        while stack:
            for u in g.neighbours(stack.pop()):
                if u in remaining and u not in comp:
                    comp.add(u)
                    stack.append(u)
        remaining -= comp
        out.append(frozenset(comp))
    return out


def restrict(d: StaircaseDiagram, vertices: Iterable[int]) -> StaircaseDiagram:
    """Intersect every block with ``vertices``, keep the induced order, drop empty blocks."""
    keep = frozenset(vertices)
    pairs = []
    for i, b in enumerate(d.blocks):
        if b & keep:
            pairs.append((i, b & keep))
    if len({b for _, b in pairs}) != len(pairs):
        raise ArgumentError("restriction merges two blocks")
    pos = {old: new for new, (old, _) in enumerate(pairs)}
    below = []
    for old, _ in pairs:
        mask = 0
        for j in d.down_set(old):
            if j in pos:
                mask |= 1 << pos[j]
        below.append(mask)
    return StaircaseDiagram._canonical(d.graph, [b for _, b in pairs], below)


def decompose_elementary(d: StaircaseDiagram) -> list[StaircaseDiagram]:
    """Split ``d`` at non-leaf critical points into elementary pieces.

    Pieces are ordered by their smallest vertex; neighbouring pieces share
    exactly one cut vertex.
    """
    if not d.is_connected():
        raise ArgumentError("decomposition needs a diagram with connected support")
    cuts = sorted(d.critical_points() - d.support_leaves())
    if not cuts:
        return [d]
    c = cuts[0]
    pieces = []
    for comp in _components(d.graph, set(d.support) - {c}):
        pieces.extend(decompose_elementary(restrict(d, comp | {c})))
    return sorted(pieces, key=lambda p: (min(p.support), sorted(p.support)))


def reassemble(pieces: list[StaircaseDiagram]) -> StaircaseDiagram:
    """Glue pieces back together by merging blocks that meet at a cut vertex."""
    if not pieces:
        raise ArgumentError("nothing to reassemble")
    graph = pieces[0].graph
    groups: list[set[int]] = []
    owner: list[list[int]] = []
    for p in pieces:
        ids = []
        # Only blocks of earlier pieces may absorb this piece's blocks.
        earlier = [set(grp) for grp in groups]
        for b in p.blocks:
            hit = [k for k, grp in enumerate(earlier) if grp & b]
            if not hit:
                groups.append(set(b))
                ids.append(len(groups) - 1)
            else:
                if len(hit) > 1:
                    raise ArgumentError("a block meets two earlier pieces")
                k = hit[0]
                groups[k] |= b
                ids.append(k)
        owner.append(ids)
    relations = set()
    for p, ids in zip(pieces, owner):
        for i, j in p.covers:
            relations.add((ids[i], ids[j]))
    return StaircaseDiagram.from_order(graph, [frozenset(g) for g in groups], relations)


# -- the Catalan generator --------------------------------------------------


def _extend(d: StaircaseDiagram, blocks: list[frozenset], relations: set[tuple[int, int]]) -> StaircaseDiagram:
    try:
        return StaircaseDiagram.from_order(d.graph.extended(), blocks, relations)
    except AxiomViolationError as exc:
        raise ArgumentError(f"the generator is undefined on {d!r}: {exc}") from None


def _is_middle_chain(d: StaircaseDiagram, n: int) -> bool:
    """``d`` is a three-block chain whose middle block is the only one at ``n``."""
    if len(d) != 3 or not d.is_chain():
        return False
    order = d.linear_extension()
    return d.blocks_at(n) == (order[1],)


def gothic_g1(d: StaircaseDiagram) -> list[StaircaseDiagram]:
    """One step of the Catalan generator, adding the leaf ``n + 1`` beyond ``n``."""
    n = d.graph.rank
    at = d.blocks_at(n)
    if not at:
        raise ArgumentError(f"vertex {n} is not supported")
    top = at[-1]
    if top not in d.maximal_blocks():
        if d.graph.family == "D" and _is_middle_chain(d, n):
            return _gothic_middle(d)
        raise ArgumentError(f"vertex {n} is not in a maximal block")
    new = n + 1
    blocks = list(d.blocks)
    covers = set(d.covers)
    bd = d.blocks[top]
    if len(at) > 1:
        return [_extend(d, blocks + [frozenset({new})], covers | {(top, len(blocks))})]
    # Blocks at a neighbour of n absorb n; B_D absorbs the new leaf.
    touching = set()
    for t in d.graph.neighbours(n):
        touching.update(d.blocks_at(t))
    touching.discard(top)
    grown = []
    for i, b in enumerate(blocks):
        if i == top:
            grown.append(b | {new})
        elif i in touching:
            grown.append(b | {n})
        else:
            grown.append(b)
    out = [_extend(d, grown, covers)]
    for sub in _proper_subsets_with(d.graph, bd, n):
        out.append(_extend(d, blocks + [sub | {new}], covers | {(top, len(blocks))}))
    return out


def _proper_subsets_with(g: DynkinGraph, block: frozenset, v: int) -> list[frozenset]:
    out = []
    members = sorted(block)
    for size in range(1, len(members)):
        for combo in itertools.combinations(members, size):
            s = frozenset(combo)
            if v in s and is_connected_subset(g, s):
                out.append(s)
    return sorted(out, key=block_key)


def _touches(g: DynkinGraph, a: frozenset, b: frozenset) -> bool:
    return bool(a & b) or any(g.neighbours(x) & b for x in a)


def _gothic_middle(d: StaircaseDiagram) -> list[StaircaseDiagram]:
    n = d.graph.rank
    low, mid, high = d.linear_extension()
    bl, bm, bh = d.blocks[low], d.blocks[mid], d.blocks[high]
    # The fork leaves s1, s2 are interchangeable; either may sit in the bottom block.
    if not ({1, 2} <= (bl | bh) and not bl & bh & {1, 2}):
        raise ArgumentError("middle-block extension needs the fork leaves in the outer blocks")
    new = n + 1
    base = [bl | {n}, bm | {new}, bh]
    out = [_extend(d, base, {(0, 1), (1, 2)})]
    for sub in _proper_subsets_with(d.graph, bm, n):
        if not _touches(d.graph, sub, bh):
            out.append(_extend(d, [bl, bm, bh, sub | {new}], {(0, 1), (1, 2), (1, 3)}))
    return out


def gothic_g(d: StaircaseDiagram, p: int) -> list[StaircaseDiagram]:
    """``p`` iterations of the generator; the result is sorted and duplicate-free."""
    if p < 1:
        raise ArgumentError("p must be positive")
    layer = [d]
    for _ in range(p):
        nxt = {}
        for x in layer:
            for y in gothic_g1(x):
                nxt[y.canonical_encode()] = y
        layer = [nxt[k] for k in sorted(nxt)]
    return layer


def h_diagram(n: int) -> StaircaseDiagram:
    """``([s1, s_{n-1}] < [s3, s_n] < [s2, s_{n-1}])`` over ``D_n``; ``({1} < {3} < {2})`` when n = 3."""
    g = build_dynkin("D", n)
    if n == 3:
        blocks = [{1}, {3}, {2}]
    else:
        blocks = [path_between(g, 1, n - 1), path_between(g, 3, n), path_between(g, 2, n - 1)]
    return StaircaseDiagram.from_order(g, blocks, [(0, 1), (1, 2)])


# -- Z families -------------------------------------------------------------


def swap_fork(d: StaircaseDiagram) -> StaircaseDiagram:
    """Exchange the fork leaves ``s1`` and ``s2`` of a type D diagram."""
    if d.graph.family != "D":
        raise ArgumentError("fork swap needs a type D diagram")
    m = {1: 2, 2: 1}
    return StaircaseDiagram.from_order(d.graph, [frozenset(m.get(v, v) for v in b) for b in d.blocks], d.covers)


def is_middle_source(d: StaircaseDiagram) -> bool:
    """A type D diagram where the middle-block variant of the generator applies."""
    n = d.graph.rank
    if d.graph.family != "D" or not _is_middle_chain(d, n):
        return False
    return in_z_d3_circ_plus(d) or in_z_d3_circ_plus(swap_fork(d))


def catalan_prediction(d: StaircaseDiagram, p: int) -> int:
    """Predicted ``|G_p(d)|`` for a generator source.

    Non-critical ``s_n`` gives ``c_{p-1}``; otherwise ``|B_D| = 1, 2, 3``
    give ``c_p``, ``c_{p+1}`` and ``c_{p+2} - c_{p+1}`` (the last one is the
    share of a seed pair whose union has ``c_{p+2}`` members).  A
    middle-block source counts as if its middle block had one vertex more
    than the number of subsets the variant may add.
    """
    if p < 1:
        raise ArgumentError("p must be positive")
    n = d.graph.rank
    if d.graph.family == "D" and is_middle_source(d):
        _, mid, high = d.linear_extension()
        subsets = _proper_subsets_with(d.graph, d.blocks[mid], n)
        size = 1 + sum(not _touches(d.graph, x, d.blocks[high]) for x in subsets)
    elif not in_z_plus(d):
        raise ArgumentError(f"vertex {n} is not in a maximal block")
    elif len(d.blocks_at(n)) > 1:
        return catalan_number(p - 1)
    else:
        size = len(d.blocks[d.blocks_at(n)[-1]])
    if size == 1:
        return catalan_number(p)
    if size == 2:
        return catalan_number(p + 1)
    if size == 3:
        return catalan_number(p + 2) - catalan_number(p + 1)
    raise ArgumentError(f"no prediction for a top block of size {size}")


def in_z(d: StaircaseDiagram) -> bool:
    return d.is_fully_supported() and d.is_elementary()


def in_z_plus(d: StaircaseDiagram) -> bool:
    n = d.graph.rank
    at = d.blocks_at(n)
    return bool(at) and at[-1] in d.maximal_blocks()


def in_z_minus(d: StaircaseDiagram) -> bool:
    n = d.graph.rank
    at = d.blocks_at(n)
    return bool(at) and at[0] in d.minimal_blocks()


@dataclass
class ZFamily:
    """Fully supported elementary diagrams of one rank, split by the tags used in counting."""

    family: str
    n: int
    members: list[StaircaseDiagram]
    plus: list[StaircaseDiagram]
    minus: list[StaircaseDiagram]
    parts: dict[str, list[StaircaseDiagram]] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        out = {"Z": len(self.members), "Z+": len(self.plus), "Z-": len(self.minus)}
        out.update({k: len(v) for k, v in self.parts.items()})
        return out


def d_fork_blocks(d: StaircaseDiagram) -> tuple[int, int] | None:
    """``(B0', B0'')``, the blocks at ``s1`` and ``s2``, or None when a block holds both."""
    at1, at2 = d.blocks_at(1), d.blocks_at(2)
    if set(at1) & set(at2):
        return None
    if len(at1) != 1 or len(at2) != 1:
        raise ArgumentError("expected unique blocks at s1 and s2")
    return at1[0], at2[0]


def d_class(d: StaircaseDiagram) -> str:
    """``"D1"``, ``"D2"`` or ``"D3"`` for a member of Z_D."""
    fork = d_fork_blocks(d)
    if fork is None:
        return "D1"
    a, b = fork
    if (a, b) in d.covers or (b, a) in d.covers:
        return "D2"
    return "D3"


def _relabel_without_s2(d: StaircaseDiagram, drop: int) -> StaircaseDiagram | None:
    """``d`` minus a block, read on the path ``1, 3, 4, ..., n`` as type ``A_{n-1}``."""
    n = d.graph.rank
    mapping = {1: 1}
    mapping.update({k: k - 1 for k in range(3, n + 1)})
    keep = [i for i in range(len(d)) if i != drop]
    sub = d.induced(keep)
    if any(2 in b for b in sub.blocks):
        return None
    blocks = [frozenset(mapping[v] for v in b) for b in sub.blocks]
    try:
        return validate(build_dynkin("A", n - 1), blocks, sub.covers)
    except Exception:
        return None


def in_z_d3_circ_plus(d: StaircaseDiagram) -> bool:
    fork = d_fork_blocks(d)
    if fork is None:
        return False
    a, b = fork
    if not d.less(a, b):
        return False
    rest = _relabel_without_s2(d, b)
    return rest is not None and in_z(rest) and in_z_plus(rest)


def z_family(family: str, n: int, *, max_rank: int = DEFAULT_MAX_RANK) -> ZFamily:
    """Filter the generic enumerator down to ``Z(n)`` and its tagged parts."""
    if family not in ("A", "D"):
        raise ArgumentError("Z families exist for A and D")
    g = build_dynkin(family, n)
    members = [d for d in enumerate_diagrams(g, fully_supported=True, max_rank=max_rank) if d.is_elementary()]
    z = ZFamily(family, n, members, [d for d in members if in_z_plus(d)], [d for d in members if in_z_minus(d)])
    if family == "D":
        classes = {d: d_class(d) for d in members}
        for tag in ("D1", "D2", "D3"):
            z.parts[tag] = [d for d in members if classes[d] == tag]
        for tag in ("D2", "D3"):
            z.parts[f"{tag}o"] = [d for d in z.parts[tag] if d.less(*d_fork_blocks(d))]
        z.parts["D3o+"] = [d for d in z.parts["D3o"] if in_z_d3_circ_plus(d)]
    return z


def z_closed_form(n: int) -> int:
    """``|Z_A(n)|``."""
    if n == 1:
        return 1
    if n == 2:
        return 3
    return 2 * catalan_number(n - 2)


def dz_closed_form(n: int) -> int:
    """``|Z_D(n)|``."""
    if n == 3:
        return 11
    return -2 * catalan_number(n - 3) + 8 * sum(catalan_number(k) for k in range(n - 1))


def z_d_part_closed_forms(n: int) -> dict[str, int]:
    c = catalan_number
    d1 = 1 if n == 3 else 4 * c(n - 2) - 2 * c(n - 3)
    d2o = 3 if n == 3 else 1 + 2 * sum(c(k) for k in range(n - 1))
    d3o = -1 + 2 * sum(c(k) for k in range(n - 2))
    d3op = sum(c(k) for k in range(n - 2))
    return {"D1": d1, "D2o": d2o, "D3o": d3o, "D3o+": d3op}


def _gothic_upto(d: StaircaseDiagram, p: int) -> list[StaircaseDiagram]:
    return [d] if p == 0 else gothic_g(d, p)


def _d_diagram(n: int, blocks: list[Iterable[int]], relations: list[tuple[int, int]]) -> StaircaseDiagram:
    return StaircaseDiagram.from_order(build_dynkin("D", n), blocks, relations)


def z_d_generated(n: int) -> dict[str, list[StaircaseDiagram]]:
    """``Z_D1 & Z+``, ``Z_D2o & Z+`` and ``Z_D3o+`` rebuilt from their seeds by the generator."""
    if n < 4:
        raise ArgumentError("seed generation starts at rank 4")
    g4 = build_dynkin("D", 4)
    p4 = n - 4
    d1_seeds = [
        _d_diagram(4, [{1, 2, 3}, {3, 4}], [(0, 1)]),
        _d_diagram(4, [{1, 2, 3}, path_between(g4, 1, 4)], [(0, 1)]),
        _d_diagram(4, [{1, 2, 3}, path_between(g4, 2, 4)], [(0, 1)]),
    ]
    d2_parts = [_gothic_upto(_d_diagram(3, [{1}, {2, 3}], [(0, 1)]), n - 3)]
    d2_parts.append(_gothic_upto(_d_diagram(4, [{1, 3}, {2, 3}, {3, 4}], [(0, 1), (1, 2)]), p4))
    for k in range(3, n + 1):
        gk = build_dynkin("D", k)
        seed = _d_diagram(k, [path_between(gk, 1, k), path_between(gk, 2, k)], [(0, 1)])
        d2_parts.append(_gothic_upto(seed, n - k))
    d3_parts = [_gothic_upto(h_diagram(k), n - k) for k in range(3, n + 1)]

    def union(parts: Iterable[list[StaircaseDiagram]]) -> list[StaircaseDiagram]:
        seen = {}
        for part in parts:
            for x in part:
                seen[x.canonical_encode()] = x
        return [seen[k] for k in sorted(seen)]

    return {
        "D1+": union(_gothic_upto(s, p4) for s in d1_seeds),
        "D2o+": union(d2_parts),
        "D3o+": union(d3_parts),
    }


def catalan_almost_surjective_target(d: StaircaseDiagram) -> bool:
    """Membership test for the image of the one-step generator over all of Z+(n)."""
    m = d.graph.rank
    if not (in_z(d) and in_z_plus(d)):
        return False
    if len(d.blocks_at(m)) != 1:
        return False
    at_prev = d.blocks_at(m - 1)
    if set(d.blocks_at(m)) <= set(at_prev) and len(at_prev) > 2:
        low = at_prev[0]
        return any(r != m - 1 and d.min_at(r) == low for r in d.blocks[low])
    return True


# -- BC labelled counts ---------------------------------------------------


@dataclass
class BCLabelledCounts:
    n: int
    maximal: int
    lambda1_nonmax: int
    lambda23: dict[int, int]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "maximal": self.maximal,
            "lambda1_nonmax": self.lambda1_nonmax,
            "lambda23": {str(k): v for k, v in sorted(self.lambda23.items())},
        }


def count_bc_labelled(n: int, *, max_rank: int = DEFAULT_MAX_RANK) -> BCLabelledCounts:
    """Build and validate the BC labellings over all fully supported diagrams of rank ``n``."""
    from .labelling import bc_lambda1, bc_lambda2, bc_lambda3, maximal_labelling

    g = build_dynkin("B", n)
    maximal = 0
    l1 = 0
    l23: dict[int, int] = {k: 0 for k in range(1, n)}
    for d in enumerate_diagrams(g, fully_supported=True, max_rank=max_rank):
        maximal += 1
        lam0 = maximal_labelling(d)
        if bc_lambda1(d).labels != lam0.labels:
            l1 += 1
        for k in range(1, n):
            r = min(d.blocks[d.blocks_at(n)[0]])
            if not r <= k:
                continue
            found = {L.labels for L in (bc_lambda2(d, k, "B"), bc_lambda3(d, k, "B")) if L is not None}
            l23[k] += len(found)
    return BCLabelledCounts(n, maximal, l1, l23)


def bc_labelled_closed_forms(n: int, abar: list[int]) -> BCLabelledCounts:
    """The same record from ``abar[k] = |A-bar(k)|`` (with ``abar[0] = 1``)."""
    l1 = abar[n] - 2 * abar[n - 1] if n >= 2 else 0
    l23 = {}
    for k in range(1, n):
        l23[k] = 1 if k == 1 else 1 + abar[k] + 2 * sum(abar[ell] for ell in range(1, k - 1))
    return BCLabelledCounts(n, abar[n], l1, l23)
