"""Ground-truth fixed-point statistics of word maps on S_n.

The word map substitutes concrete permutations for the generators of a
word and composes LEFT TO RIGHT: the trail of a point p applies the
permutation of the first letter, then the second, and so on. An inverse
letter applies the inverse permutation. Most libraries compose the other
way; fixed-point counts of individual tuples depend on this choice even
though the induced distributions agree.

``exact_expectation`` averages the fixed-point count over every tuple of
permutations (feasible for tiny n); ``monte_carlo_expectation`` samples
tuples with a seeded PCG64 generator. Both are deliberately independent
of the quotient-graph machinery so they can serve as its oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, sqrt

import numpy as np

from .errors import DomainError, ResourceLimitError
from .words import Word

PRNG_ID = "numpy-pcg64"
DEFAULT_TUPLE_BUDGET = 1_000_000
_CHUNK = 1 << 14


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0..n-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise DomainError("images must be a bijection of 0..n-1")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> "Permutation":
        out = [0] * len(self.images)
        for i, image in enumerate(self.images):
            out[image] = i
        return Permutation(tuple(out))


def word_map(w: Word, sigmas) -> Permutation:
    """The permutation w(sigma_1, ..., sigma_k), composed left to right."""
    if not sigmas and len(w) == 0:
        return Permutation.identity(0)
    degrees = {sigma.degree for sigma in sigmas}
    if len(degrees) > 1:
        raise DomainError(f"permutation degrees differ: {sorted(degrees)}")
    needed = max((letter.generator for letter in w.letters), default=0)
    if needed > len(sigmas):
        raise DomainError(f"word uses generator {needed} but only {len(sigmas)} permutations given")
    n = degrees.pop() if degrees else 0
    tables = [sigma.images for sigma in sigmas]
    inverses = [sigma.inverse().images for sigma in sigmas]
    out = []
    for start in range(n):
        point = start
        for letter in w.letters:
            table = tables if letter.sign > 0 else inverses
            point = table[letter.generator - 1][point]
        out.append(point)
    return Permutation(tuple(out))


def count_fixed_points(p: Permutation) -> int:
    return sum(1 for i, image in enumerate(p.images) if i == image)


def _letter_plan(w: Word) -> list[tuple[int, int]]:
    """Map each letter to (slot among the distinct generators used, sign)."""
    order = sorted({letter.generator for letter in w.letters})
    slot = {gen: i for i, gen in enumerate(order)}
    return [(slot[letter.generator], letter.sign) for letter in w.letters]


def exact_expectation(w: Word, n: int, budget: int = DEFAULT_TUPLE_BUDGET) -> Fraction:
    """Exact average fixed-point count over all tuples in S_n^k'.

    k' counts only the generators that occur in w; the unused ones
    integrate out. Raises ResourceLimitError when (n!)^k' exceeds the
    budget, reporting the tuple count.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    plan = _letter_plan(w)
    k_used = 1 + max((slot for slot, _ in plan), default=-1)
    if k_used == 0:
        return Fraction(n)
    tuple_count = factorial(n) ** k_used
    if tuple_count > budget:
        raise ResourceLimitError(
            f"exhaustive expectation needs {tuple_count} tuples, over budget {budget}"
        )
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int16)
    fact = perms.shape[0]
    invs = np.empty_like(perms)
    rows = np.arange(fact)[:, None]
    invs[rows, perms] = np.arange(n, dtype=np.int16)[None, :]

    total = 0
    identity = np.arange(n, dtype=np.int16)
    for chunk_start in range(0, tuple_count, _CHUNK):
        flat = np.arange(chunk_start, min(chunk_start + _CHUNK, tuple_count))
        slots = []
        rest = flat
        for _ in range(k_used):
            rest, this = np.divmod(rest, fact)
            slots.append(this)
        state = np.broadcast_to(identity, (len(flat), n)).copy()
        for slot, sign in plan:
            table = perms if sign > 0 else invs
            state = np.take_along_axis(table[slots[slot]], state, axis=1)
        total += int((state == identity[None, :]).sum())
    return Fraction(total, tuple_count)


@dataclass(frozen=True)
class ExpectationEstimate:
    """Monte-Carlo estimate of E[#fixed points]."""

    mean: float
    std_error: float
    samples: int
    seed: int
    prng: str = PRNG_ID
    degenerate: bool = False


def monte_carlo_expectation(w: Word, n: int, samples: int, seed: int) -> ExpectationEstimate:
    """Seeded sampling estimate; bit-reproducible for a fixed seed.

    Permutations are drawn with numpy's PCG64 generator, whose
    ``permutation`` is an unbiased Fisher-Yates shuffle. A single sample
    reports std_error 0 and is flagged degenerate.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    plan = _letter_plan(w)
    k_used = 1 + max((slot for slot, _ in plan), default=-1)
    identity = np.arange(n, dtype=np.int64)
    counts = np.empty(samples, dtype=np.int64)
    batch = max(1, min(samples, (1 << 22) // max(1, n)))
    done = 0
    while done < samples:
        b = min(batch, samples - done)
        tables = []
        for _ in range(k_used):
            block = np.empty((b, n), dtype=np.int64)
            for row in range(b):
                block[row] = rng.permutation(n)
            tables.append(block)
        inverses = []
        rows = np.arange(b)[:, None]
        for block in tables:
            inv = np.empty_like(block)
            inv[rows, block] = identity[None, :]
            inverses.append(inv)
        state = np.broadcast_to(identity, (b, n)).copy()
        for slot, sign in plan:
            table = tables[slot] if sign > 0 else inverses[slot]
            state = np.take_along_axis(table, state, axis=1)
        counts[done:done + b] = (state == identity[None, :]).sum(axis=1)
        done += b
    mean = float(counts.mean())
    if samples == 1:
        return ExpectationEstimate(mean, 0.0, samples, seed, degenerate=True)
    std_error = float(counts.std(ddof=1) / sqrt(samples))
    return ExpectationEstimate(mean, std_error, samples, seed)
