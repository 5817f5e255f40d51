"""The pair graph of the universal circle quotient, and the component <->
chi-2-type-A-quotient correspondence.

For a nonempty, cyclically reduced, non-power word w, the universal graph
is a labeled circle on vertices v_0..v_{|w|-1}. Its *pair graph* has one
vertex per unordered pair {v_i, v_j} and one labeled edge per unordered
pair of same-generator circle edges, joining the pair of origins to the
pair of termini. Every vertex has degree at most two and the graph is a
forest, so each connected component is an isolated vertex or a simple
path.

A path component records a maximal cyclic repetition in w: the same
subword u read at two cyclic places, either both plainly ("coherent") or
once plainly and once inverted ("non-coherent"). A repetition is
*overlapping* when the two appearances touch, equivalently when the
component's pairs are not all disjoint; non-coherent repetitions are
never overlapping.

Merging the two vertices of any pair in a component (on top of the
endpoint merge that creates the circle) folds down to the same chi = 2,
type-A quotient, giving a map f from components onto those quotients.
``factorize`` expresses a cyclic shift of w in two shrinking subwords
(a_n, b_n), halting when neither is a prefix of the other; the terminal
step determines the quotient's shape (figure-eight, theta, or barbell)
and drives the inverse map h, which recovers the component from the
quotient alone. ``verify_bijection`` machine-checks that f and h are
mutually inverse and that the component count matches an independent
enumeration of the chi = 2 type-A quotients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from math import comb

from .errors import DomainError, InternalConsistencyError
from .partition import rgs_key, union
from .quotients import (
    GreaterThan,
    QuotientGraph,
    build_trail,
    classify_type,
    closure_inplace,
    enumerate_quotients,
    quotient_from_key,
    universal_graph,
)
from .series import phi
from .words import Letter, Word, inverse, power_root

Pair = tuple[int, int]


def _sorted_pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class UpsilonEdge:
    """One pair-graph edge, from a pair of same-generator circle edges.

    ``letters`` holds the two 1-based letter positions; ``same_sign`` says
    whether the letters carry equal exponents.
    """

    src: Pair
    dst: Pair
    generator: int
    letters: tuple[int, int]
    same_sign: bool


@dataclass(frozen=True)
class PairGraph:
    word: Word
    base: QuotientGraph = field(repr=False)
    vertices: tuple[Pair, ...]
    edges: tuple[UpsilonEdge, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def expected_component_count(self) -> int:
        """C(|w|, 2) minus the number of edges (valid for forests)."""
        return len(self.vertices) - len(self.edges)


@dataclass(frozen=True)
class Repetition:
    """A maximal cyclic repetition: ``subword`` read from the vertex after
    ``starts[0]`` and, plainly or inverted, from the vertex after
    ``starts[1]``."""

    subword: Word
    starts: tuple[int, int]
    length: int
    inverted: bool


@dataclass(frozen=True)
class Component:
    """A connected component of the pair graph, in path order."""

    word: Word
    vertices: tuple[Pair, ...]
    edges: tuple[UpsilonEdge, ...]
    kind: str  # "isolated" | "coherent" | "non_coherent"
    repetition: Repetition | None
    overlapping: bool

    def vertex_set(self) -> frozenset[Pair]:
        return frozenset(self.vertices)


def _vertex_of_letter(position: int, sign: int, length: int) -> tuple[int, int]:
    """(origin, terminus) of the circle edge for the letter at ``position``."""
    if sign > 0:
        return position - 1, position % length
    return position % length, position - 1


def build_pair_graph(w: Word) -> PairGraph:
    """Construct the pair graph; requires cyclically reduced non-power w."""
    if len(w) == 0:
        raise DomainError("pair graph requires a nonempty word")
    if not w.is_cyclically_reduced():
        raise DomainError("pair graph requires a cyclically reduced word")
    if power_root(w)[1] > 1:
        raise DomainError("pair graph requires a word that is not a proper power")
    base = universal_graph(w)
    length = len(w)
    vertices = tuple(itertools.combinations(range(length), 2))
    edges = []
    letters = w.letters
    for p, q in itertools.combinations(range(1, length + 1), 2):
        if letters[p - 1].generator != letters[q - 1].generator:
            continue
        op, tp = _vertex_of_letter(p, letters[p - 1].sign, length)
        oq, tq = _vertex_of_letter(q, letters[q - 1].sign, length)
        if op == oq or tp == tq:
            raise InternalConsistencyError("universal circle graph is not folded")
        edges.append(
            UpsilonEdge(
                src=_sorted_pair(op, oq),
                dst=_sorted_pair(tp, tq),
                generator=letters[p - 1].generator,
                letters=(p, q),
                same_sign=letters[p - 1].sign == letters[q - 1].sign,
            )
        )
    return PairGraph(word=w, base=base, vertices=vertices, edges=tuple(edges))


def _cyclic_subword(w: Word, after_vertex: int, length: int) -> tuple[Letter, ...]:
    """Letters read just after circle vertex ``after_vertex``."""
    n = len(w.letters)
    return tuple(w.letters[(after_vertex + t) % n] for t in range(length))


def _classify_path(w: Word, path: list[Pair], edges: list[UpsilonEdge]) -> Component:
    length = len(w)
    kinds = {e.same_sign for e in edges}
    if len(kinds) != 1:
        raise InternalConsistencyError("mixed edge kinds in one path component")
    coherent = kinds.pop()
    m = len(edges)
    coords = [c for pair in path for c in pair]
    overlapping = len(set(coords)) < 2 * len(path)

    if coherent:
        # Both walk directions can satisfy the +1 shift chain when the two
        # starts are |w|/2 apart, so validate the repetition itself and
        # demand a unique surviving orientation (two would force a period).
        survivors = []
        for ordered in (path, path[::-1]):
            begin = ordered[0]
            chain_ok = all(
                pair == _sorted_pair((begin[0] + t) % length, (begin[1] + t) % length)
                for t, pair in enumerate(ordered)
            )
            if not chain_ok:
                continue
            if _cyclic_subword(w, begin[0], m) != _cyclic_subword(w, begin[1], m):
                continue
            before = (
                w.letters[(begin[0] - 1) % length],
                w.letters[(begin[1] - 1) % length],
            )
            after = (
                w.letters[(begin[0] + m) % length],
                w.letters[(begin[1] + m) % length],
            )
            if before[0] == before[1] or after[0] == after[1]:
                continue
            survivors.append(ordered)
        if len(survivors) != 1:
            raise InternalConsistencyError(
                f"coherent path admits {len(survivors)} orientations"
            )
        ordered = survivors[0]
        begin = ordered[0]
        repetition = Repetition(
            subword=Word(_cyclic_subword(w, begin[0], m), w.k),
            starts=begin,
            length=m,
            inverted=False,
        )
        return Component(
            word=w,
            vertices=tuple(ordered),
            edges=tuple(edges),
            kind="coherent",
            repetition=repetition,
            overlapping=overlapping,
        )

    # non-coherent: one coordinate advances while the other recedes
    assignments = []
    for a0, b0 in (path[0], path[0][::-1]):
        chain_ok = all(
            set(path[t]) == {(a0 + t) % length, (b0 - t) % length}
            for t in range(len(path))
        )
        if chain_ok:
            assignments.append((a0, b0))
    if len(assignments) != 1:
        raise InternalConsistencyError(
            f"non-coherent path has {len(assignments)} strand assignments"
        )
    a0, b0 = assignments[0]
    u = _cyclic_subword(w, a0, m)
    inverted_start = (b0 - m) % length
    mirrored = _cyclic_subword(w, inverted_start, m)
    if mirrored != tuple(inverse(Word(u, w.k)).letters):
        raise InternalConsistencyError("non-coherent repetition words disagree")
    if overlapping:
        raise InternalConsistencyError("non-coherent repetition must not overlap")
    repetition = Repetition(
        subword=Word(u, w.k), starts=(a0, inverted_start), length=m, inverted=True
    )
    return Component(
        word=w,
        vertices=tuple(path),
        edges=tuple(edges),
        kind="non_coherent",
        repetition=repetition,
        overlapping=False,
    )


def components(pg: PairGraph) -> list[Component]:
    """Connected components, classified. Raises on any cycle or vertex of
    degree three or more (impossible under the construction's
    preconditions; such a finding means a bug)."""
    adjacency: dict[Pair, list[tuple[int, Pair]]] = {v: [] for v in pg.vertices}
    for idx, edge in enumerate(pg.edges):
        adjacency[edge.src].append((idx, edge.dst))
        adjacency[edge.dst].append((idx, edge.src))
    for vertex, incident in adjacency.items():
        if len(incident) > 2:
            raise InternalConsistencyError(f"pair-graph vertex {vertex} has degree > 2")
    seen: set[Pair] = set()
    out: list[Component] = []
    for root in pg.vertices:
        if root in seen:
            continue
        stack = [root]
        comp_vertices = []
        comp_edges = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            comp_vertices.append(v)
            for idx, other in adjacency[v]:
                comp_edges.add(idx)
                if other not in seen:
                    stack.append(other)
        if len(comp_edges) != len(comp_vertices) - 1:
            raise InternalConsistencyError(
                f"pair graph of {pg.word.text()!r} contains a cycle"
            )
        if not comp_edges:
            out.append(
                Component(
                    word=pg.word,
                    vertices=(root,),
                    edges=(),
                    kind="isolated",
                    repetition=None,
                    overlapping=False,
                )
            )
            continue
        endpoints = sorted(v for v in comp_vertices if len(adjacency[v]) <= 1)
        if len(endpoints) != 2:
            raise InternalConsistencyError("path component without two endpoints")
        start = endpoints[0]
        path = [start]
        walked: set[int] = set()
        edge_seq = []
        current = start
        while True:
            step = [
                (idx, other)
                for idx, other in adjacency[current]
                if idx not in walked
            ]
            if not step:
                break
            idx, nxt = step[0]
            walked.add(idx)
            edge_seq.append(pg.edges[idx])
            path.append(nxt)
            current = nxt
        out.append(_classify_path(pg.word, path, edge_seq))
    return out


def choose_anchors(c: Component) -> tuple[int, int]:
    """The circle vertices (x, y) that seed the factorization of w.

    Isolated components use their vertex in ascending order. A coherent
    component uses the two appearance starts, ordered so the forward arc
    from x to y is the shorter one (ascending on ties). A non-coherent
    component has two valid (end-of-one, start-of-the-other) choices; the
    one with smaller x is taken.
    """
    length = len(c.word)
    if c.kind == "isolated":
        return c.vertices[0]
    rep = c.repetition
    if rep is None:
        raise InternalConsistencyError("path component without repetition data")
    if c.kind == "coherent":
        s0, s1 = rep.starts
        d01 = (s1 - s0) % length
        d10 = (s0 - s1) % length
        if d01 < d10:
            return s0, s1
        if d10 < d01:
            return s1, s0
        return _sorted_pair(s0, s1)
    plain, inverted = rep.starts
    first = ((plain + rep.length) % length, inverted)
    second = ((inverted + rep.length) % length, plain)
    return first if first[0] < second[0] else second


@dataclass(frozen=True)
class FigureEight:
    name = "figure_eight"


@dataclass(frozen=True)
class Theta:
    common_prefix: Word
    name = "theta"


@dataclass(frozen=True)
class Barbell:
    bridge: Word
    loop: Word
    name = "barbell"


Shape = FigureEight | Theta | Barbell


@dataclass(frozen=True)
class FactorStep:
    """One expression of the shifted word over subwords a and b."""

    expression: tuple[str, ...]
    a: Word
    b: Word


@dataclass(frozen=True)
class Factorization:
    shift: int
    steps: tuple[FactorStep, ...]
    shape: Shape

    @property
    def terminal_index(self) -> int:
        return len(self.steps) - 1


def _expand(expression: tuple[str, ...], a: Word, b: Word) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym in expression:
        out.extend(a.letters if sym == "a" else b.letters)
    return tuple(out)


def _has_cyclic_run(expression: tuple[str, ...], sym: str, run: int) -> bool:
    n = len(expression)
    if n == 0:
        return False
    if all(s == sym for s in expression):
        return True
    doubled = expression + expression
    best = 0
    streak = 0
    for s in doubled:
        streak = streak + 1 if s == sym else 0
        best = max(best, streak)
    return min(best, n) >= run


def _shape_from_step(step: FactorStep) -> Shape:
    a, b = step.a, step.b
    head_a, head_b = a.letters[0], b.letters[0]
    tail_a_inv, tail_b_inv = a.letters[-1].inverse(), b.letters[-1].inverse()
    theta_case = head_a == head_b
    barbell_case = head_b == tail_b_inv
    if theta_case and barbell_case:
        raise InternalConsistencyError("theta and barbell conditions cannot coexist")
    if not theta_case and not barbell_case:
        return FigureEight()
    if theta_case:
        prefix = []
        for la, lb in zip(a.letters, b.letters):
            if la != lb:
                break
            prefix.append(la)
        if not prefix or len(prefix) >= min(len(a), len(b)):
            raise InternalConsistencyError("theta prefix must be strict and nonempty")
        return Theta(common_prefix=Word(tuple(prefix), a.k))
    letters = list(b.letters)
    bridge: list[Letter] = []
    while len(letters) >= 2 and letters[0] == letters[-1].inverse():
        bridge.append(letters[0])
        letters = letters[1:-1]
    if not bridge or not letters:
        raise InternalConsistencyError("barbell loop decomposition failed")
    return Barbell(bridge=Word(tuple(bridge), b.k), loop=Word(tuple(letters), b.k))


def shape_of(fac: Factorization) -> Shape:
    """Shape of the folded quotient, read off the terminal subwords."""
    return _shape_from_step(fac.steps[-1])


def _gamma_partition_blocks(
    expression: tuple[str, ...], a_len: int, b_len: int, shift: int, length: int
) -> list[list[int]]:
    """Blocks of circle vertices identified by wrapping the expression's
    symbol occurrences into an a-loop and a b-loop joined at one vertex."""
    starts: dict[str, list[int]] = {"a": [], "b": []}
    position = shift
    for sym in expression:
        starts[sym].append(position)
        position = (position + (a_len if sym == "a" else b_len)) % length
    if position != shift:
        raise InternalConsistencyError("expression does not close up around the circle")
    blocks = [[(s % length) for s in starts["a"] + starts["b"]]]
    for sym, sym_len in (("a", a_len), ("b", b_len)):
        for offset in range(1, sym_len):
            blocks.append([(s + offset) % length for s in starts[sym]])
    return blocks


def _assert_step_properties(
    w: Word, shift: int, step: FactorStep, index: int, f_key: tuple[int, ...]
) -> None:
    """The six per-step factorization properties; any failure is a bug."""
    length = len(w)
    target = tuple(w.letters[(shift + t) % length] for t in range(length))
    if _expand(step.expression, step.a, step.b) != target:
        raise InternalConsistencyError(f"step {index}: expression does not spell w_x")
    if step.a.letters == step.b.letters:
        raise InternalConsistencyError(f"step {index}: a and b coincide")
    doubled = step.expression + step.expression
    for i in range(len(step.expression)):
        if doubled[i] == doubled[i + 1] == "b":
            raise InternalConsistencyError(f"step {index}: b repeats consecutively")
    if index == 0:
        if step.expression != ("a", "b"):
            raise InternalConsistencyError("step 0 must be the two-symbol expression")
    elif not _has_cyclic_run(step.expression, "a", 2):
        raise InternalConsistencyError(f"step {index}: a must repeat consecutively")
    a, b = step.a, step.b
    pairs = (
        (a.letters[-1].inverse(), b.letters[0]),
        (b.letters[-1].inverse(), a.letters[0]),
        (a.letters[-1].inverse(), a.letters[0]),
        (a.letters[-1], b.letters[-1]),
    )
    if any(lhs == rhs for lhs, rhs in pairs):
        raise InternalConsistencyError(f"step {index}: boundary letters collide")
    for block in _gamma_partition_blocks(
        step.expression, len(a), len(b), shift, length
    ):
        if len({f_key[v] for v in block}) != 1:
            raise InternalConsistencyError(
                f"step {index}: intermediate quotient is not refined by f(C)"
            )


def quotient_of_component(c: Component) -> QuotientGraph:
    """The chi = 2 type-A quotient generated by the endpoint pair plus any
    vertex of the component (all vertices agree)."""
    w = c.word
    trail = build_trail(w)
    last = trail.vertex_count - 1
    keys = set()
    for i, j in c.vertices:
        parent = list(range(trail.vertex_count))
        union(parent, 0, last)
        union(parent, i, j)
        closure_inplace(parent, trail.fold_rules)
        keys.add(rgs_key(parent))
    if len(keys) != 1:
        raise InternalConsistencyError(
            "vertices of one component generated different quotients"
        )
    g = quotient_from_key(trail, keys.pop())
    if g.chi != 2:
        raise InternalConsistencyError(
            f"component quotient has chi={g.chi}, expected 2"
        )
    return replace(g, type_tag="A")


def factorize(c: Component) -> Factorization:
    """Recursive factorization of the component's word shift.

    Starting from w_x = a_0 b_0 cut at the chosen anchors, each step strips
    the shorter subword off the longer while one is a prefix of the other;
    the expression tracks how the two subwords tile the circle. Terminates
    because |a| + |b| strictly decreases. All step properties are checked;
    the step count is 0 exactly for components that do not overlap.
    """
    w = c.word
    length = len(w)
    x, y = choose_anchors(c)
    if _sorted_pair(x, y) not in c.vertex_set():
        raise InternalConsistencyError("anchors are not a vertex of the component")
    a = Word(_cyclic_subword(w, x, (y - x) % length), w.k)
    b = Word(_cyclic_subword(w, y, (x - y) % length), w.k)
    steps = [FactorStep(expression=("a", "b"), a=a, b=b)]
    while True:
        a, b = steps[-1].a, steps[-1].b
        expression = steps[-1].expression
        if a.letters == b.letters:
            raise InternalConsistencyError("factorization reached equal subwords")
        if len(a) < len(b) and b.letters[: len(a)] == a.letters:
            new_a = a
            new_b = Word(b.letters[len(a):], w.k)
            new_expression = tuple(
                sym for old in expression for sym in (("a",) if old == "a" else ("a", "b"))
            )
        elif len(b) < len(a) and a.letters[: len(b)] == b.letters:
            new_a = b
            new_b = Word(a.letters[len(b):], w.k)
            new_expression = tuple(
                sym for old in expression for sym in (("a", "b") if old == "a" else ("a",))
            )
        else:
            break
        steps.append(FactorStep(expression=new_expression, a=new_a, b=new_b))
    f_key = quotient_of_component(c).partition_key
    for index, step in enumerate(steps):
        _assert_step_properties(w, x, step, index, f_key)
    stops_immediately = c.kind in ("isolated", "non_coherent") or not c.overlapping
    if (len(steps) == 1) != stops_immediately:
        raise InternalConsistencyError(
            "factorization depth disagrees with the component kind"
        )
    shape = _shape_from_step(steps[-1])
    return Factorization(shift=x, steps=tuple(steps), shape=shape)


# ---------------------------------------------------------------------------
# the inverse map: quotient -> component
# ---------------------------------------------------------------------------

def _wedge_segments(
    g: QuotientGraph, w: Word, boundaries: list[int]
) -> list[tuple[int, tuple[Letter, ...]]] | None:
    length = len(w)
    if len(boundaries) < 2:
        return None
    segments = []
    for i, start in enumerate(boundaries):
        end = boundaries[(i + 1) % len(boundaries)]
        seg_len = (end - start) % length
        if seg_len == 0:
            return None
        segments.append((start, _cyclic_subword(w, start, seg_len)))
    return segments


def _recover_anchor_pair(
    w: Word, segments: list[tuple[int, tuple[Letter, ...]]]
) -> tuple[int, int] | None:
    """Reverse the factorization recursion on a segmented reading of w.

    ``segments`` cuts the circle at a candidate wedge block; each segment
    should be an occurrence of one of the two terminal subwords. The
    recursion inverts one step at a time (merging each b with its
    preceding a) until the two-symbol base expression remains, whose
    occurrence starts are the anchors. Returns None when the segmentation
    is not consistent with any factorization.
    """
    words = {seg[1] for seg in segments}
    if len(words) != 2:
        return None
    count = len(segments)
    adjacent_repeats = {
        segments[i][1]
        for i in range(count)
        if segments[i][1] == segments[(i + 1) % count][1]
    }
    if len(adjacent_repeats) != 1:
        return None
    a_word = adjacent_repeats.pop()
    syms = [(start, "a" if letters == a_word else "b") for start, letters in segments]
    for _ in range(2 * len(w) + 2):
        labels = [sym for _, sym in syms]
        n_a = labels.count("a")
        n_b = labels.count("b")
        if n_a == 1:
            if n_b != 1:
                return None
            x = next(start for start, sym in syms if sym == "a")
            y = next(start for start, sym in syms if sym == "b")
            return x, y
        if n_b == 0:
            return None
        size = len(syms)
        for i in range(size):
            if labels[i] == "b" and labels[(i + 1) % size] == "b":
                return None
            if labels[i] == "b" and labels[(i - 1) % size] != "a":
                return None
        was_prefix_step = _has_cyclic_run(tuple(labels), "a", 3)
        merged_label = "b" if was_prefix_step else "a"
        lone_label = "a" if was_prefix_step else "b"
        new_syms = []
        for i in range(size):
            if labels[i] == "b":
                continue
            if labels[(i + 1) % size] == "b":
                new_syms.append((syms[i][0], merged_label))
            else:
                new_syms.append((syms[i][0], lone_label))
        syms = new_syms
    return None


def component_of_quotient(
    g: QuotientGraph,
    w: Word,
    pair_graph: PairGraph | None = None,
    comps: list[Component] | None = None,
) -> Component:
    """The unique component whose folding produces ``g``.

    When only one component is realized by g (some pair of its vertices is
    merged in g), that component is the answer. Otherwise g came from an
    overlapping repetition; the wedge block of g cuts the circle into
    occurrences of the terminal subwords, and reversing the factorization
    recursion recovers the anchors. Every recovered candidate is validated
    by folding; two distinct surviving components would contradict
    injectivity and raise.
    """
    if g.trail.word != w:
        raise DomainError("quotient graph does not belong to this word")
    if g.chi != 2:
        raise DomainError(f"expected a chi = 2 quotient, got chi = {g.chi}")
    if classify_type(g) != "A":
        raise DomainError("expected a type-A quotient")
    if pair_graph is None:
        pair_graph = build_pair_graph(w)
    if comps is None:
        comps = components(pair_graph)
    length = len(w)
    key = g.partition_key

    realized = []
    for comp in comps:
        flags = {key[i] == key[j] for i, j in comp.vertices}
        if len(flags) != 1:
            raise InternalConsistencyError(
                "a component is only partially realized by the quotient"
            )
        if flags.pop():
            realized.append(comp)
    if not realized:
        raise InternalConsistencyError("no component is realized by the quotient")
    if len(realized) == 1:
        return realized[0]

    by_pair: dict[Pair, Component] = {}
    for comp in comps:
        for pair in comp.vertices:
            by_pair[pair] = comp
    trail = g.trail
    last = trail.vertex_count - 1
    found: list[Component] = []
    branch_blocks = [i for i in range(g.v) if g.germ_degree(i) >= 3]
    for block_index in branch_blocks:
        boundaries = sorted({member % length for member in g.blocks[block_index]})
        segments = _wedge_segments(g, w, boundaries)
        if segments is None:
            continue
        anchors = _recover_anchor_pair(w, segments)
        if anchors is None:
            continue
        x, y = anchors
        parent = list(range(trail.vertex_count))
        union(parent, 0, last)
        union(parent, x, y)
        closure_inplace(parent, trail.fold_rules)
        if rgs_key(parent) != key:
            continue
        candidate = by_pair[_sorted_pair(x, y)]
        if candidate not in found:
            found.append(candidate)
    if len(found) != 1:
        raise InternalConsistencyError(
            f"recovered {len(found)} candidate components for one quotient"
        )
    return found[0]


# ---------------------------------------------------------------------------
# the bijection verifier
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentReport:
    kind: str
    anchors: tuple[int, int]
    depth: int
    shape: str
    quotient_key: tuple[int, ...]
    repetition: str | None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "anchors": list(self.anchors),
            "depth": self.depth,
            "shape": self.shape,
            "quotient_key": list(self.quotient_key),
            "repetition": self.repetition,
        }


@dataclass(frozen=True)
class BijectionReport:
    word: str
    ok: bool
    vacuous: bool
    n_pair_vertices: int
    n_pair_edges: int
    n_components: int
    expected_components: int
    quotient_count: int
    acyclic_ok: bool
    count_ok: bool
    image_ok: bool
    roundtrip_ok: bool
    components: tuple[ComponentReport, ...]
    failures: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "ok": self.ok,
            "vacuous": self.vacuous,
            "pair_graph": {
                "vertices": self.n_pair_vertices,
                "edges": self.n_pair_edges,
                "components": self.n_components,
                "expected_components": self.expected_components,
            },
            "chi2_type_a_quotients": self.quotient_count,
            "checks": {
                "acyclic": self.acyclic_ok,
                "component_count": self.count_ok,
                "image_matches_enumeration": self.image_ok,
                "roundtrip_identity": self.roundtrip_ok,
            },
            "components": [c.to_json() for c in self.components],
            "failures": list(self.failures),
        }


def _chi2_type_a_keys(w: Word) -> list[tuple[int, ...]]:
    keys = []
    for g in enumerate_quotients(w, mode="up_to_chi", max_chi=2):
        if g.chi == 2 and classify_type(g) == "A":
            keys.append(g.partition_key)
    return sorted(keys)


def verify_bijection(w: Word) -> BijectionReport:
    """Machine-check the component <-> quotient correspondence for ``w``.

    Asserts: the pair graph is a forest; the component count equals
    C(|w|,2) minus the edge count; folding the components yields exactly
    the chi = 2 type-A quotients found by independent enumeration, without
    repetition; and the inverse map returns every component. Words of
    length one have an empty pair graph and report the vacuous case.
    """
    if len(w) == 0 or not w.is_cyclically_reduced():
        raise DomainError("verify_bijection requires a nonempty cyclically reduced word")
    level = phi(w, i_max=1)
    if not isinstance(level, GreaterThan):
        raise DomainError(f"verify_bijection requires phi(w) >= 2, found phi = {level}")

    failures: list[str] = []
    pg = build_pair_graph(w)
    acyclic_ok = True
    try:
        comps = components(pg)
    except InternalConsistencyError as exc:
        return BijectionReport(
            word=w.text(),
            ok=False,
            vacuous=False,
            n_pair_vertices=pg.n_vertices,
            n_pair_edges=pg.n_edges,
            n_components=0,
            expected_components=pg.expected_component_count(),
            quotient_count=0,
            acyclic_ok=False,
            count_ok=False,
            image_ok=False,
            roundtrip_ok=False,
            components=(),
            failures=(f"cycle check: {exc}",),
        )

    expected = pg.expected_component_count()
    count_ok = len(comps) == expected

    image_keys: list[tuple[int, ...]] = []
    reports: list[ComponentReport] = []
    roundtrip_ok = True
    for comp in comps:
        try:
            g = quotient_of_component(comp)
            fac = factorize(comp)
            back = component_of_quotient(g, w, pair_graph=pg, comps=comps)
        except InternalConsistencyError as exc:
            failures.append(f"component {comp.vertices[0]}: {exc}")
            roundtrip_ok = False
            continue
        if back is not comp and back != comp:
            roundtrip_ok = False
            failures.append(
                f"component {comp.vertices[0]}: inverse returned {back.vertices[0]}"
            )
        image_keys.append(g.partition_key)
        rep = comp.repetition
        reports.append(
            ComponentReport(
                kind=comp.kind,
                anchors=choose_anchors(comp),
                depth=fac.terminal_index,
                shape=fac.shape.name,
                quotient_key=g.partition_key,
                repetition=None if rep is None else rep.subword.text(),
            )
        )

    independent = _chi2_type_a_keys(w)
    injective = len(set(image_keys)) == len(image_keys)
    image_ok = injective and sorted(image_keys) == independent
    if not injective:
        failures.append("two components folded to the same quotient")
    if sorted(image_keys) != independent:
        failures.append(
            f"image size {len(set(image_keys))} vs enumerated {len(independent)}"
        )

    ok = acyclic_ok and count_ok and image_ok and roundtrip_ok and not failures
    return BijectionReport(
        word=w.text(),
        ok=ok,
        vacuous=len(w) == 1,
        n_pair_vertices=pg.n_vertices,
        n_pair_edges=pg.n_edges,
        n_components=len(comps),
        expected_components=expected,
        quotient_count=len(independent),
        acyclic_ok=acyclic_ok,
        count_ok=count_ok,
        image_ok=image_ok,
        roundtrip_ok=roundtrip_ok,
        components=tuple(reports),
        failures=tuple(failures),
    )


_PALETTE = (
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a",
    "#66a61e", "#e6ab02", "#a6761d", "#666666",
)


def pair_graph_dot(pg: PairGraph, comps: list[Component] | None = None) -> str:
    """DOT rendering of the pair graph, colored by component."""
    if comps is None:
        comps = components(pg)
    color_of: dict[Pair, str] = {}
    for index, comp in enumerate(comps):
        for pair in comp.vertices:
            color_of[pair] = _PALETTE[index % len(_PALETTE)]
    lines = ["digraph pairs {"]
    for i, j in pg.vertices:
        name = f"v{i}|v{j}"
        lines.append(f'  "{name}" [color="{color_of[(i, j)]}"];')
    for edge in pg.edges:
        src = f"v{edge.src[0]}|v{edge.src[1]}"
        dst = f"v{edge.dst[0]}|v{edge.dst[1]}"
        lines.append(f'  "{src}" -> "{dst}" [label="{edge.generator}"];')
    lines.append("}")
    return "\n".join(lines)
