"""Realizable quotient graphs of a word's open trail, and the invariant beta.

The open trail of w spells w along a path: vertices s_0..s_|w|, one labeled
directed edge per letter (reversed when the letter is an inverse). A
partition of the trail vertices is *realizable* when

  1. s_0 and s_|w| land in the same block, and
  2. the quotient is folded: no two edges with the same generator label
     share an origin block or a terminus block.

Folding closure is forced by two rules per pair of same-generator letters
(h, l): with equal signs, s_{h-1} ~ s_{l-1} iff s_h ~ s_l; with opposite
signs, s_{h-1} ~ s_l iff s_h ~ s_{l-1}. Closing under these rules in any
order yields the same partition.

Q_w denotes the set of all realizable quotients of w. Every member is a
coarsening of the universal graph (the circle quotient generated by merging
the two trail endpoints), which is the backbone of the budgeted
enumeration. ``beta(w)`` is the smallest Euler characteristic of a type-B
member of Q_w, where type A means some minimum-size generating set of
vertex pairs contains the endpoint pair {s_0, s_|w|}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property

from .errors import DomainError, InternalConsistencyError, ResourceLimitError
from .partition import VertexPartition, find, parent_from_key, rgs_key, union
from .words import Word, cyclic_reduce, reduce_word

FULL_ENUMERATION_CAP = 10

#: value of beta/phi when no witness exists at all
INFINITE = float("inf")


@dataclass(frozen=True)
class GreaterThan:
    """Marker for a value known only to exceed ``bound`` (budgeted search)."""

    bound: int

    def __str__(self) -> str:
        return f">{self.bound}"


def format_level(value) -> str:
    """Render a phi/beta value: an integer, ``inf``, or ``>c``."""
    if isinstance(value, GreaterThan):
        return str(value)
    if value == INFINITE:
        return "inf"
    return str(int(value))


@dataclass(frozen=True)
class OpenTrail:
    """The labeled directed path graph spelling a word."""

    word: Word
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]  # (origin, terminus, generator)

    @cached_property
    def fold_rules(self) -> tuple[tuple[int, int, int, int], ...]:
        """One rule (a1, b1, a2, b2) per same-generator letter pair.

        The rule reads: a1 ~ b1 iff a2 ~ b2 in any folded partition.
        """
        letters = self.word.letters
        rules = []
        for h in range(1, len(letters) + 1):
            for l in range(h + 1, len(letters) + 1):
                if letters[h - 1].generator != letters[l - 1].generator:
                    continue
                if letters[h - 1].sign == letters[l - 1].sign:
                    rules.append((h - 1, l - 1, h, l))
                else:
                    rules.append((h - 1, l, h, l - 1))
        return tuple(rules)

    @cached_property
    def rules_by_last_vertex(self) -> tuple[tuple[tuple[int, int, int, int], ...], ...]:
        """fold_rules grouped by their largest vertex index (for pruning)."""
        grouped: list[list[tuple[int, int, int, int]]] = [
            [] for _ in range(self.vertex_count)
        ]
        for rule in self.fold_rules:
            grouped[max(rule)].append(rule)
        return tuple(tuple(g) for g in grouped)


def build_trail(w: Word) -> OpenTrail:
    """Open trail of ``w``: |w|+1 vertices, edge j reversed when sign is -1."""
    edges = []
    for j, letter in enumerate(w.letters, start=1):
        if letter.sign > 0:
            edges.append((j - 1, j, letter.generator))
        else:
            edges.append((j, j - 1, letter.generator))
    return OpenTrail(word=w, vertex_count=len(w.letters) + 1, edges=tuple(edges))


def closure_inplace(parent: list[int], rules) -> None:
    """Close ``parent`` under the fold rules, in place."""
    changed = True
    while changed:
        changed = False
        for a1, b1, a2, b2 in rules:
            one = find(parent, a1) == find(parent, b1)
            two = find(parent, a2) == find(parent, b2)
            if one != two:
                if one:
                    union(parent, a2, b2)
                else:
                    union(parent, a1, b1)
                changed = True


def fold_closure(trail: OpenTrail, p: VertexPartition) -> VertexPartition:
    """Smallest folded coarsening of ``p``; idempotent, order-independent."""
    out = p.copy()
    closure_inplace(out.parent, trail.fold_rules)
    return out


def is_realizable(trail: OpenTrail, p: VertexPartition) -> bool:
    """True when the trail endpoints coincide in the (folded) partition."""
    return p.same(0, trail.vertex_count - 1)


@dataclass(frozen=True)
class QuotientGraph:
    """A realizable quotient, identified by its vertex partition.

    ``partition_key`` is the restricted-growth string over s_0..s_|w|;
    blocks are ordered by smallest member, which matches the key's block
    numbering. Edges are deduplicated (block, block, generator) triples.
    """

    trail: OpenTrail = field(repr=False, compare=False)
    partition_key: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int], ...]
    edge_counts: tuple[tuple[int, int], ...]  # (generator, count), sorted
    chi: int
    type_tag: str = "unknown"

    @property
    def v(self) -> int:
        return len(self.blocks)

    @property
    def e(self) -> int:
        return len(self.edges)

    def same_block(self, a: int, b: int) -> bool:
        return self.partition_key[a] == self.partition_key[b]

    def partition(self) -> VertexPartition:
        return VertexPartition.from_key(self.partition_key)

    def germ_degree(self, block_index: int) -> int:
        """Incident edge ends at a block; a loop contributes two."""
        return sum(
            (frm == block_index) + (to == block_index) for frm, to, _ in self.edges
        )


def quotient_from_key(trail: OpenTrail, key: tuple[int, ...]) -> QuotientGraph:
    """Build the quotient graph for a folded partition key.

    Raises DomainError when the partition is not folded.
    """
    block_members: dict[int, list[int]] = {}
    for vertex, block in enumerate(key):
        block_members.setdefault(block, []).append(vertex)
    blocks = tuple(tuple(block_members[b]) for b in range(len(block_members)))
    edge_set = {(key[o], key[t], gen) for o, t, gen in trail.edges}
    edges = tuple(sorted(edge_set))
    by_gen: dict[int, list[tuple[int, int]]] = {}
    for frm, to, gen in edges:
        by_gen.setdefault(gen, []).append((frm, to))
    for gen, ends in by_gen.items():
        origins = [frm for frm, _ in ends]
        termini = [to for _, to in ends]
        if len(set(origins)) != len(origins) or len(set(termini)) != len(termini):
            raise DomainError("partition is not folded")
    edge_counts = tuple(sorted((gen, len(ends)) for gen, ends in by_gen.items()))
    chi = len(edges) - len(blocks) + 1
    return QuotientGraph(
        trail=trail,
        partition_key=key,
        blocks=blocks,
        edges=edges,
        edge_counts=edge_counts,
        chi=chi,
    )


def euler_characteristic(g: QuotientGraph) -> int:
    """chi = e - v + 1; non-negative for connected quotients."""
    return g.e - g.v + 1


def universal_graph(w: Word) -> QuotientGraph:
    """The circle quotient generated by merging the trail endpoints.

    Requires a nonempty, cyclically reduced word; the result then has
    exactly |w| vertices, |w| edges and chi = 1.
    """
    if len(w) == 0:
        raise DomainError("universal_graph requires a nonempty word")
    if not w.is_cyclically_reduced():
        raise DomainError("universal_graph requires a cyclically reduced word")
    trail = build_trail(w)
    parent = list(range(trail.vertex_count))
    union(parent, 0, trail.vertex_count - 1)
    closure_inplace(parent, trail.fold_rules)
    g = quotient_from_key(trail, rgs_key(parent))
    if g.v != len(w) or g.e != len(w) or g.chi != 1:
        raise InternalConsistencyError(
            f"universal graph of {w.text()!r} is not a simple circle"
        )
    return g


def _enumerate_full(trail: OpenTrail) -> list[QuotientGraph]:
    """All realizable partitions, by pruned restricted-growth search."""
    n = trail.vertex_count
    rules_at = trail.rules_by_last_vertex
    assign = [0] * n
    keys: list[tuple[int, ...]] = []

    def admissible(t: int) -> bool:
        for a1, b1, a2, b2 in rules_at[t]:
            if (assign[a1] == assign[b1]) != (assign[a2] == assign[b2]):
                return False
        return True

    def descend(t: int, next_block: int) -> None:
        if t == n:
            if assign[0] == assign[n - 1]:
                keys.append(tuple(assign))
            return
        for b in range(next_block + 1):
            assign[t] = b
            if admissible(t):
                descend(t + 1, max(next_block, b + 1))

    descend(0, 0)
    graphs = [quotient_from_key(trail, key) for key in keys]
    graphs.sort(key=lambda g: (g.chi, g.partition_key))
    return graphs


def _enumerate_up_to_chi(w: Word, max_chi: int) -> list[QuotientGraph]:
    """All members of Q_w with chi <= max_chi, for cyclically reduced w.

    Breadth-first coarsening from the universal graph: merge one pair of
    blocks, take the fold closure, keep results with chi within budget,
    deduplicate by partition key, and repeat until no new partitions
    appear. Running to a fixpoint (rather than to a fixed merge depth)
    also covers coarsening steps that leave chi unchanged.
    """
    base = universal_graph(w)
    if max_chi < 1:
        return []
    rules = base.trail.fold_rules
    accepted: dict[tuple[int, ...], QuotientGraph] = {base.partition_key: base}
    seen: set[tuple[int, ...]] = {base.partition_key}
    queue = [base]
    while queue:
        g = queue.pop()
        representatives = [block[0] for block in g.blocks]
        for a, b in itertools.combinations(representatives, 2):
            parent = parent_from_key(g.partition_key)
            union(parent, a, b)
            closure_inplace(parent, rules)
            key = rgs_key(parent)
            if key in seen:
                continue
            seen.add(key)
            candidate = quotient_from_key(g.trail, key)
            if candidate.chi <= max_chi:
                accepted[key] = candidate
                queue.append(candidate)
    graphs = sorted(accepted.values(), key=lambda g: (g.chi, g.partition_key))
    return graphs


def enumerate_quotients(
    w: Word,
    mode: str = "full",
    max_chi: int | None = None,
    cap: int = FULL_ENUMERATION_CAP,
) -> list[QuotientGraph]:
    """Enumerate Q_w.

    mode="full": every realizable partition; requires |w| <= cap.
    mode="up_to_chi": the subset with chi <= max_chi, found by coarsening
    from the universal graph (w must be nonempty and cyclically reduced).
    """
    if mode == "full":
        if len(w) > cap:
            raise ResourceLimitError(
                f"full enumeration capped at |w| <= {cap}, got |w| = {len(w)}"
            )
        return _enumerate_full(build_trail(w))
    if mode == "up_to_chi":
        if max_chi is None:
            raise DomainError("mode='up_to_chi' requires max_chi")
        return _enumerate_up_to_chi(w, max_chi)
    raise DomainError(f"unknown enumeration mode {mode!r}")


def _generates(trail: OpenTrail, pairs, target_key: tuple[int, ...]) -> bool:
    parent = list(range(trail.vertex_count))
    for a, b in pairs:
        union(parent, a, b)
    closure_inplace(parent, trail.fold_rules)
    return rgs_key(parent) == target_key


def _equivalent_pairs(g: QuotientGraph) -> list[tuple[int, int]]:
    pairs = []
    for block in g.blocks:
        pairs.extend(itertools.combinations(block, 2))
    return pairs


def classify_type(g: QuotientGraph) -> str:
    """Type "A" when some generating pair set of size chi(g) contains the
    endpoint pair {s_0, s_|w|}; otherwise "B".

    Candidate pairs are restricted to pairs already merged in g, which is
    sound because the closure of any other pair is not contained in g. A
    chi = 0 quotient (empty word) is type B by convention, so that
    beta(empty) = 0.
    """
    last = g.trail.vertex_count - 1
    if not g.same_block(0, last):
        raise DomainError("graph is not realizable: endpoints not merged")
    if g.chi == 0:
        return "B"
    mandatory = (0, last)
    extras = [p for p in _equivalent_pairs(g) if p != mandatory]
    for extra in itertools.combinations(extras, g.chi - 1):
        if _generates(g.trail, (mandatory,) + extra, g.partition_key):
            return "A"
    return "B"


def with_type(g: QuotientGraph) -> QuotientGraph:
    """Copy of ``g`` with its type tag filled in."""
    if g.type_tag != "unknown":
        return g
    return replace(g, type_tag=classify_type(g))


def smallest_generating_size(g: QuotientGraph) -> int:
    """Exhaustive minimum size of a generating pair set for ``g``.

    Independent of chi; used to cross-check that the minimum always equals
    chi(g) for realizable quotients.
    """
    pairs = _equivalent_pairs(g)
    for size in range(len(pairs) + 1):
        for subset in itertools.combinations(pairs, size):
            if _generates(g.trail, subset, g.partition_key):
                return size
    raise InternalConsistencyError("the full pair set must generate g")


@dataclass(frozen=True)
class QuotientCensus:
    """Counts of quotients by chi, with type-B counts, from one search."""

    max_chi: int
    total_by_chi: tuple[tuple[int, int], ...]
    type_b_by_chi: tuple[tuple[int, int], ...]
    complete: bool  # True when the census covers all of Q_w (full mode)

    def type_b_count(self, chi: int) -> int:
        return dict(self.type_b_by_chi).get(chi, 0)

    def total_count(self, chi: int) -> int:
        return dict(self.total_by_chi).get(chi, 0)


def _census(graphs, max_chi: int, complete: bool) -> QuotientCensus:
    totals: dict[int, int] = {}
    type_b: dict[int, int] = {}
    for g in graphs:
        totals[g.chi] = totals.get(g.chi, 0) + 1
        if classify_type(g) == "B":
            type_b[g.chi] = type_b.get(g.chi, 0) + 1
    return QuotientCensus(
        max_chi=max_chi,
        total_by_chi=tuple(sorted(totals.items())),
        type_b_by_chi=tuple(sorted(type_b.items())),
        complete=complete,
    )


def beta_details(
    w: Word,
    chi_budget: int = 3,
    allow_full: bool = False,
    cap: int = FULL_ENUMERATION_CAP,
):
    """(beta value, census). Computed on the cyclic core of the reduction.

    beta reduces to 0 exactly when w reduces to the empty word. Otherwise
    it is the smallest chi of a type-B quotient found within the budget;
    with ``allow_full`` a full enumeration settles the remaining cases
    (returning INFINITE when no type-B quotient exists at all), and
    without it the marker GreaterThan(chi_budget) is returned.
    """
    reduced = reduce_word(w)
    if len(reduced) == 0:
        census = QuotientCensus(0, ((0, 1),), ((0, 1),), True)
        return 0, census
    core, _ = cyclic_reduce(reduced)
    graphs = _enumerate_up_to_chi(core, chi_budget)
    census = _census(graphs, chi_budget, complete=False)
    candidates = [chi for chi, count in census.type_b_by_chi if count > 0]
    if candidates:
        return min(candidates), census
    if not allow_full:
        return GreaterThan(chi_budget), census
    if len(core) > cap:
        raise ResourceLimitError(
            f"full enumeration capped at |w| <= {cap}, got |w| = {len(core)}"
        )
    graphs = _enumerate_full(build_trail(core))
    census = _census(graphs, max(g.chi for g in graphs), complete=True)
    candidates = [chi for chi, count in census.type_b_by_chi if count > 0]
    if candidates:
        return min(candidates), census
    return INFINITE, census


def beta(
    w: Word,
    chi_budget: int = 3,
    allow_full: bool = False,
    cap: int = FULL_ENUMERATION_CAP,
):
    """Smallest chi of a type-B quotient of w (see ``beta_details``)."""
    value, _ = beta_details(w, chi_budget=chi_budget, allow_full=allow_full, cap=cap)
    return value


def to_dot(g: QuotientGraph, name: str = "quotient") -> str:
    """DOT rendering: blocks named by their sorted s-indices, labeled edges."""
    lines = [f"digraph {name} {{"]
    names = ["|".join(f"s{i}" for i in block) for block in g.blocks]
    for block_name in names:
        lines.append(f'  "{block_name}";')
    for frm, to, gen in sorted(g.edges):
        lines.append(f'  "{names[frm]}" -> "{names[to]}" [label="{gen}"];')
    lines.append("}")
    return "\n".join(lines)
