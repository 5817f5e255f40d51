"""Words over the signed alphabet {g_1, g_1^-1, ..., g_k, g_k^-1}.

Text format: one ASCII letter per symbol. Lowercase ``a``..``z`` stand for
the generators g_1..g_26 and uppercase letters for their inverses, so
``"abAB"`` is the commutator g_1 g_2 g_1^-1 g_2^-1. This caps k at 26,
which is ample for exhaustive desk-scale runs.

Letter ordering used everywhere (canonical forms, corpus order): generator
index ascending, then sign with +1 before -1, i.e. a < A < b < B < ...
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import DomainError, InternalConsistencyError, ParseError

MAX_GENERATORS = 26


class Letter(NamedTuple):
    """A signed generator: 1-based ``generator`` index and ``sign`` in {+1, -1}."""

    generator: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)

    def sort_key(self) -> tuple[int, int]:
        return (self.generator, 0 if self.sign > 0 else 1)

    def to_char(self) -> str:
        char = chr(ord("a") + self.generator - 1)
        return char if self.sign > 0 else char.upper()


@dataclass(frozen=True)
class Word:
    """An immutable word together with its alphabet size ``k``."""

    letters: tuple[Letter, ...]
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= MAX_GENERATORS:
            raise DomainError(f"alphabet size must be in 0..{MAX_GENERATORS}, got {self.k}")
        for letter in self.letters:
            if letter.sign not in (-1, 1):
                raise DomainError(f"letter sign must be +1 or -1, got {letter.sign}")
            if not 1 <= letter.generator <= self.k:
                raise DomainError(
                    f"letter {letter!r} outside alphabet of size {self.k}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __str__(self) -> str:
        return self.text()

    def text(self) -> str:
        return "".join(letter.to_char() for letter in self.letters)

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(letter.sort_key() for letter in self.letters)

    def is_reduced(self) -> bool:
        return all(
            self.letters[i] != self.letters[i + 1].inverse()
            for i in range(len(self.letters) - 1)
        )

    def is_cyclically_reduced(self) -> bool:
        if not self.is_reduced():
            return False
        if len(self.letters) < 2:
            return True
        return self.letters[0] != self.letters[-1].inverse()

    def generator_counts(self) -> dict[int, int]:
        """How many letters use each generator, ignoring signs."""
        counts: dict[int, int] = {}
        for letter in self.letters:
            counts[letter.generator] = counts.get(letter.generator, 0) + 1
        return counts


def word_from_letters(letters, k: int) -> Word:
    return Word(tuple(letters), k)


def parse_word(text: str, k_override: int | None = None) -> Word:
    """Parse the single-letter text format; ``""`` is the empty word.

    ``k`` is the largest generator index present unless ``k_override`` asks
    for a larger ambient alphabet.
    """
    letters = []
    max_gen = 0
    for char in text:
        if not char.isascii() or not char.isalpha():
            raise ParseError(f"invalid character {char!r} in word {text!r}")
        gen = ord(char.lower()) - ord("a") + 1
        sign = 1 if char.islower() else -1
        max_gen = max(max_gen, gen)
        letters.append(Letter(gen, sign))
    k = max_gen
    if k_override is not None:
        if k_override < max_gen:
            raise DomainError(
                f"k_override={k_override} smaller than largest generator {max_gen}"
            )
        if k_override > MAX_GENERATORS:
            raise DomainError(f"k_override={k_override} exceeds {MAX_GENERATORS}")
        k = k_override
    return Word(tuple(letters), k)


def reduce_word(w: Word) -> Word:
    """Free reduction: cancel adjacent mutually inverse letters.

    >>> parse_word("aAb").text()
    'aAb'
    >>> reduce_word(parse_word("aAb")).text()
    'b'
    """
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack), w.k)


def inverse(w: Word) -> Word:
    """The reversed word with all signs flipped."""
    return Word(tuple(letter.inverse() for letter in reversed(w.letters)), w.k)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator core conjugator^-1``.

    The input is freely reduced first; the core is cyclically reduced.
    """
    letters = list(reduce_word(w).letters)
    prefix: list[Letter] = []
    while len(letters) >= 2 and letters[0] == letters[-1].inverse():
        prefix.append(letters[0])
        letters = letters[1:-1]
    return Word(tuple(letters), w.k), Word(tuple(prefix), w.k)


def cyclic_shift(w: Word, x: int) -> Word:
    """Rotate the letters ``x`` steps to the left (taken mod |w|)."""
    if not w.letters:
        return w
    x %= len(w.letters)
    return Word(w.letters[x:] + w.letters[:x], w.k)


def power_root(w: Word) -> tuple[Word, int]:
    """Shortest ``u`` and largest ``d`` with ``w == u^d`` letter for letter.

    The empty word returns ``(empty, 0)``; ``d == 1`` means w is not a
    proper power. Requires a cyclically reduced input.
    """
    if not w.is_cyclically_reduced():
        raise DomainError("power_root requires a cyclically reduced word")
    n = len(w.letters)
    if n == 0:
        return w, 0
    for period in range(1, n + 1):
        if n % period:
            continue
        if all(w.letters[i] == w.letters[i % period] for i in range(period, n)):
            return Word(w.letters[:period], w.k), n // period
    raise InternalConsistencyError("period search fell through")  # pragma: no cover


def canonical_form(w: Word, use_inversion: bool = True, use_shift: bool = True) -> Word:
    """Lexicographically smallest member of the selected orbit of ``w``.

    The orbit is {cyclic shifts} x {w, w^-1} as selected by the flags; the
    letter order is the module-level one. Used as a dedup key for corpus
    scans, which is sound because the scanned invariants are unchanged by
    these moves.
    """
    if not w.is_cyclically_reduced():
        raise DomainError("canonical_form requires a cyclically reduced word")
    candidates = [w]
    if use_inversion:
        candidates.append(inverse(w))
    if use_shift:
        candidates = [
            cyclic_shift(c, i) for c in candidates for i in range(max(1, len(w)))
        ]
    return min(candidates, key=Word.sort_key)
