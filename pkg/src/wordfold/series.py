"""Exact fixed-point statistics as rational functions and 1/n series.

For a word w, Phi(w, n) = (E[#fixed points of the word map] - 1) / n is a
rational function of n with non-positive degree. It equals -1/n plus one
term per realizable quotient graph: the term for a quotient with v
vertices and e_j edges of generator j is

    (n-1)(n-2)...(n-v+1) / prod_j [ n(n-1)...(n-e_j+1) ]

and has degree -chi. Expanded around n = infinity this gives an integer
series  Phi(w, n) = sum_i a_i(w) / n^i  valid for n >= |w|; phi(w) is the
index of the first nonzero coefficient (infinity when Phi vanishes
identically). The coefficient a_i only receives contributions from
quotients with chi <= i, so a_0..a_imax need only the budgeted
enumeration.

Everything here is exact: integer polynomials, Fractions, and truncated
integer series in the variable t = 1/n (each factor n - c contributes
(1 - c t)/t, and 1/(1 - c t) expands to sum_m c^m t^m, so the truncated
expansions stay integral by construction). No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError, InternalConsistencyError, ResourceLimitError
from .quotients import (
    FULL_ENUMERATION_CAP,
    GreaterThan,
    INFINITE,
    QuotientGraph,
    beta,
    build_trail,
    enumerate_quotients,
    format_level,
)
from .words import Word, cyclic_reduce, reduce_word

BigRational = Fraction


# ---------------------------------------------------------------------------
# dense integer polynomials as coefficient tuples, lowest degree first
# ---------------------------------------------------------------------------

def _trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_add(a, b) -> tuple[int, ...]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _poly_mul(a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(list(out))


def _poly_from_roots(roots) -> tuple[int, ...]:
    """prod (n - r) over the given integer roots."""
    poly: tuple[int, ...] = (1,)
    for r in roots:
        poly = _poly_mul(poly, (-r, 1))
    return poly


def _poly_eval(poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _poly_content(poly) -> int:
    g = 0
    for c in poly:
        g = gcd(g, abs(c))
    return g


def _poly_divexact_by_x(poly) -> tuple[int, ...]:
    if poly and poly[0] != 0:
        raise InternalConsistencyError("polynomial not divisible by n")
    return tuple(poly[1:])


def _poly_frac_divmod(a, b):
    """Quotient and remainder of Fraction-coefficient polynomials."""
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _poly_gcd(a, b) -> tuple[int, ...]:
    """Primitive gcd of integer polynomials (monic Euclid over Q)."""
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fb and any(fb):
        _, r = _poly_frac_divmod(fa, fb)
        fa, fb = fb, r
    if not fa:
        return ()
    denom_lcm = 1
    for c in fa:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in fa]
    content = _poly_content(ints)
    if content:
        ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _poly_divexact(a, b) -> tuple[int, ...]:
    q, r = _poly_frac_divmod([Fraction(c) for c in a], [Fraction(c) for c in b])
    if any(r):
        raise InternalConsistencyError("inexact polynomial division")
    out = []
    for c in q:
        if c.denominator != 1:
            raise InternalConsistencyError("inexact polynomial division")
        out.append(int(c))
    return _trim(out)


@dataclass(frozen=True)
class RationalFunctionN:
    """num/den with integer-coefficient polynomials in the symbol n.

    Stored content-reduced with a positive leading denominator
    coefficient. Equality is by cross multiplication, so representations
    that differ by a common polynomial factor compare equal.
    """

    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        if not self.den:
            raise DomainError("denominator must not be identically zero")

    @staticmethod
    def make(num, den) -> "RationalFunctionN":
        num = _trim(list(num))
        den = _trim(list(den))
        if not den:
            raise DomainError("denominator must not be identically zero")
        common = gcd(_poly_content(num), _poly_content(den))
        if common > 1:
            num = tuple(c // common for c in num)
            den = tuple(c // common for c in den)
        if den[-1] < 0:
            num = tuple(-c for c in num)
            den = tuple(-c for c in den)
        return RationalFunctionN(num, den)

    def is_zero(self) -> bool:
        return not self.num

    def degree(self) -> int | None:
        """deg(num) - deg(den); None for the zero function."""
        if not self.num:
            return None
        return (len(self.num) - 1) - (len(self.den) - 1)

    def evaluate(self, n: int) -> Fraction:
        denom = _poly_eval(self.den, Fraction(n))
        if denom == 0:
            raise DomainError(f"denominator vanishes at n={n}")
        return _poly_eval(self.num, Fraction(n)) / denom

    def reduced(self) -> "RationalFunctionN":
        """Cancel the polynomial gcd of num and den (for display)."""
        if not self.num:
            return RationalFunctionN.make((), (1,))
        g = _poly_gcd(self.num, self.den)
        if len(g) <= 1:
            return RationalFunctionN.make(self.num, self.den)
        return RationalFunctionN.make(
            _poly_divexact(self.num, g), _poly_divexact(self.den, g)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunctionN):
            return NotImplemented
        return _poly_mul(self.num, other.den) == _poly_mul(other.num, self.den)

    def __hash__(self) -> int:
        reduced = self.reduced()
        return hash((reduced.num, reduced.den))


@dataclass(frozen=True)
class LaurentCoefficients:
    """Integer coefficients a_0..a_imax of Phi as a series in 1/n.

    ``validity_floor`` is the smallest n for which the series is known to
    represent Phi (the length of the reduced word).
    """

    coeffs: tuple[int, ...]
    validity_floor: int

    @property
    def i_max(self) -> int:
        return len(self.coeffs) - 1


def quotient_term(g: QuotientGraph) -> RationalFunctionN:
    """The probability term of one quotient graph, exactly."""
    num = _poly_from_roots(range(1, g.v))
    den: tuple[int, ...] = (1,)
    for _, count in g.edge_counts:
        den = _poly_mul(den, _poly_from_roots(range(count)))
    return RationalFunctionN.make(num, den)


def phi_function(w: Word, cap: int = FULL_ENUMERATION_CAP) -> RationalFunctionN:
    """Phi_w as an exact rational function, from the full enumeration.

    Computed on the reduced word; |reduced w| must be within the cap. The
    terms are summed over the shared denominator prod_j n(n-1)...(n-m_j+1)
    where m_j counts the letters of generator j, which every term's
    denominator divides.
    """
    reduced = reduce_word(w)
    length = len(reduced)
    if length == 0:
        return RationalFunctionN.make((-1, 1), (0, 1))  # (n-1)/n
    if length > cap:
        raise ResourceLimitError(
            f"full enumeration capped at |w| <= {cap}, got |w| = {length}"
        )
    counts = reduced.generator_counts()
    shared_den: tuple[int, ...] = (1,)
    for gen in sorted(counts):
        shared_den = _poly_mul(shared_den, _poly_from_roots(range(counts[gen])))
    total: tuple[int, ...] = ()
    for g in enumerate_quotients(reduced, mode="full", cap=cap):
        numerator = _poly_from_roots(range(1, g.v))
        e_by_gen = dict(g.edge_counts)
        for gen in sorted(counts):
            e_j = e_by_gen.get(gen, 0)
            numerator = _poly_mul(numerator, _poly_from_roots(range(e_j, counts[gen])))
        total = _poly_add(total, numerator)
    total = _poly_add(total, tuple(-c for c in _poly_divexact_by_x(shared_den)))
    rf = RationalFunctionN.make(total, shared_den)
    degree = rf.degree()
    if degree is not None and degree > 0:
        raise InternalConsistencyError("Phi must have non-positive degree")
    return rf


def _series_inverse_factor(constant: int, order: int) -> tuple[int, ...]:
    """Truncated expansion of 1/(1 - constant*t)."""
    out = [1]
    for _ in range(order):
        out.append(out[-1] * constant)
    return tuple(out)


def _series_mul(a, b, order: int) -> tuple[int, ...]:
    out = [0] * (order + 1)
    for i, ca in enumerate(a):
        if i > order or not ca:
            continue
        for j, cb in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ca * cb
    return tuple(out)


def _term_series(g: QuotientGraph, order: int) -> tuple[int, ...]:
    """Expansion of quotient_term(g) in t = 1/n, truncated at t^order."""
    if g.chi > order:
        return (0,) * (order + 1)
    rest = order - g.chi
    series: tuple[int, ...] = (1,) + (0,) * rest
    for i in range(1, g.v):
        series = _series_mul(series, (1, -i), rest)
    for _, count in g.edge_counts:
        for i in range(1, count):
            series = _series_mul(series, _series_inverse_factor(i, rest), rest)
    return (0,) * g.chi + series


def series_coeffs(w: Word, i_max: int) -> LaurentCoefficients:
    """Exact a_0..a_imax of Phi_w.

    Quotients with chi <= i_max are enumerated on the cyclic core of the
    reduced word (expectations are conjugation invariant, so the
    coefficients agree); their truncated expansions are summed and the
    series of 1/n subtracted. All arithmetic is over the integers.
    """
    if i_max < 0:
        raise DomainError("i_max must be >= 0")
    reduced = reduce_word(w)
    if len(reduced) == 0:
        coeffs = [1] + [-1] * (1 if i_max >= 1 else 0) + [0] * max(0, i_max - 1)
        return LaurentCoefficients(tuple(coeffs[: i_max + 1]), 0)
    core, _ = cyclic_reduce(reduced)
    acc = [0] * (i_max + 1)
    for g in enumerate_quotients(core, mode="up_to_chi", max_chi=i_max):
        for i, c in enumerate(_term_series(g, i_max)):
            acc[i] += c
    if i_max >= 1:
        acc[1] -= 1
    return LaurentCoefficients(tuple(acc), len(reduced))


def phi(w: Word, i_max: int = 2, allow_full: bool = False,
        cap: int = FULL_ENUMERATION_CAP):
    """Index of the first nonzero a_i.

    Searches a_0..a_imax first. When all vanish: with ``allow_full`` the
    exact rational function settles the answer (INFINITE when Phi is
    identically zero, otherwise minus its degree); without it the marker
    GreaterThan(i_max) is returned.
    """
    coeffs = series_coeffs(w, i_max).coeffs
    for i, a in enumerate(coeffs):
        if a != 0:
            return i
    if not allow_full:
        return GreaterThan(i_max)
    rf = phi_function(w, cap=cap)
    if rf.is_zero():
        return INFINITE
    degree = rf.degree()
    level = -degree
    if level <= i_max:
        raise InternalConsistencyError(
            f"degree disagrees with vanishing coefficients for {w.text()!r}"
        )
    return level


def expected_fixed_points(w: Word, n: int, cap: int = FULL_ENUMERATION_CAP) -> Fraction:
    """E[#fixed points] = 1 + n * Phi_w(n), exactly. Requires n >= |w|."""
    if n < len(w):
        raise DomainError(f"formula validity requires n >= |w|; got n={n}, |w|={len(w)}")
    if n < 1:
        raise DomainError("n must be at least 1")
    return 1 + n * phi_function(w, cap=cap).evaluate(n)


def series_json(w: Word, i_max: int = 2, allow_full: bool = True,
                chi_budget: int = 3, cap: int = FULL_ENUMERATION_CAP) -> dict:
    """JSON-ready report; big integers are rendered as decimal strings."""
    coeffs = series_coeffs(w, i_max)
    phi_value = phi(w, i_max, allow_full=allow_full, cap=cap)
    beta_value = beta(w, chi_budget=chi_budget, allow_full=allow_full, cap=cap)
    out = {
        "word": w.text(),
        "k": w.k,
        "coeffs": [str(c) for c in coeffs.coeffs],
        "phi": format_level(phi_value),
        "beta": format_level(beta_value),
    }
    if allow_full and len(reduce_word(w)) <= cap:
        rf = phi_function(w, cap=cap).reduced()
        out["rational"] = {
            "num": [str(c) for c in rf.num],
            "den": [str(c) for c in rf.den],
        }
    return out
