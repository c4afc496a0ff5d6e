"""Exact codec between nonzero rationals and two-sided located words.

A word with profile k_n = |n| carries digits q_t = |letter at t|; its value
is

    sum over t < 0 of q_t * (-1)^(-t) / ((-t)+1)!  +
    sum over t > 0 of q_t * (-1)^(t+1) * t!

Every nonzero rational has exactly one such digit expansion with
0 <= q_{-s} <= s and 0 <= q_r <= r, which makes the evaluation map a
bijection onto the nonzero rationals.  Encoding works purely in exact
arithmetic: integer digits by alternating mixed-radix division, the
integer/fraction split by validating the two nearby integer candidates,
fractional digits by mixed-radix extraction from the top position down.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, floor
from typing import Sequence

from .ordinals import Ordinal
from .schreier import is_member
from .words import (
    ABS,
    VARIABLE,
    LocatedWord,
    concat,
    make_word,
    rel_r1,
    substitute,
)


class RationalCodecError(ValueError):
    pass


def _require_abs_profile(w: LocatedWord) -> None:
    if w.profile != ABS:
        raise RationalCodecError("codec words use the profile k_n = |n|")


def evaluate(w: LocatedWord) -> Fraction:
    """The exact rational value of a word; variables contribute digit 0."""
    _require_abs_profile(w)
    total = Fraction(0)
    for pos, letter in w.entries:
        digit = abs(letter)
        if pos > 0:
            total += digit * (-1) ** (pos + 1) * factorial(pos)
        else:
            s = -pos
            total += Fraction(digit * (-1) ** s, factorial(s + 1))
    return total


decode = evaluate


def integer_alt_factorial(value: int) -> tuple[int, ...]:
    """Digits (q_1, q_2, ...) with value = sum q_r * (-1)^(r+1) * r! and
    0 <= q_r <= r; the expansion is unique and the zero value is empty."""
    digits = []
    rest = value
    r = 1
    while rest != 0:
        sign = 1 if r % 2 else -1
        d = (rest * sign) % (r + 1)
        digits.append(d)
        rest = (rest - sign * d) // (r + 1)
        r += 1
        if r > 10 ** 6:
            raise RationalCodecError("integer digit extraction diverged")
    return tuple(digits)


def _fractional_digits(x: Fraction) -> tuple[int, ...] | None:
    """Digits (q_{-1}, q_{-2}, ...) with x = sum q_{-s} (-1)^s / (s+1)!,
    or None when x admits no in-bound expansion."""
    if x == 0:
        return ()
    if abs(x) >= 1:
        return None
    den = x.denominator
    top = 1
    fact = 2  # (top+1)!
    while fact % den:
        top += 1
        fact *= top + 1
        if top > 10 ** 4:
            raise RationalCodecError("denominator %d too large" % den)
    m = x.numerator * (fact // den)
    digits = [0] * top
    for s in range(top, 0, -1):
        sign = 1 if s % 2 == 0 else -1
        d = (m * sign) % (s + 1)
        digits[s - 1] = d
        m = (m - sign * d) // (s + 1)
    if m != 0:
        return None
    while digits and digits[-1] == 0:
        digits.pop()
    return tuple(digits)


def encode(q: Fraction | int) -> LocatedWord:
    """The unique word with evaluate(encode(q)) == q; zero digits are
    dropped from the domain, so q = 0 has no word."""
    q = Fraction(q)
    if q == 0:
        raise RationalCodecError("0 is outside the codec range")
    base = floor(q)
    solutions = []
    for whole in (base, base + 1):
        frac_digits = _fractional_digits(q - whole)
        if frac_digits is not None:
            solutions.append((whole, frac_digits))
    if len(solutions) != 1:
        raise RationalCodecError("expansion of %s is not unique" % q)
    whole, frac_digits = solutions[0]
    entries = []
    for s, d in enumerate(frac_digits, 1):
        if d:
            entries.append((-s, -d))
    for r, d in enumerate(integer_alt_factorial(whole), 1):
        if d:
            entries.append((r, d))
    return make_word(entries, ABS)


def rational_precedes(q1: Fraction | int, q2: Fraction | int) -> bool:
    """The order induced by the surrounding order on encodings; defined
    only for rationals whose words have both negative and positive
    digits."""
    w1, w2 = encode(q1), encode(q2)
    for q, w in ((q1, w1), (q2, w2)):
        if not (w.dom_neg and w.dom_pos):
            raise RationalCodecError("%s is outside the two-sided range" % q)
    return rel_r1(w1, w2)


def q_xi_member(qs: Sequence[Fraction | int], xi: Ordinal) -> bool:
    """Schreier test on the least positive digit positions of the
    encodings of an increasing rational tuple."""
    words = [encode(q) for q in qs]
    for w, q in zip(words, qs):
        if not w.dom_pos:
            raise RationalCodecError("%s has no positive digits" % q)
    for a, b in zip(words, words[1:]):
        if not (a.dom_neg and a.dom_pos and b.dom_neg and b.dom_pos):
            raise RationalCodecError("tuple members must be two-sided")
        if not rel_r1(a, b):
            raise RationalCodecError("tuple is not increasing")
    return is_member(tuple(w.min_dom_pos for w in words), xi)


def _check_no_clamp(w: LocatedWord, p: int, q: int) -> None:
    for pos, letter in w.entries:
        if letter != VARIABLE:
            continue
        k = w.profile.bound(pos)
        if pos > 0 and p > k:
            raise RationalCodecError("index %d clamps at position %d" % (p, pos))
        if pos < 0 and q > k:
            raise RationalCodecError("index %d clamps at position %d" % (q, pos))


def rational_pattern(ws: Sequence[LocatedWord], n: int, i: int, j: int) -> Fraction:
    """The n-th pattern value: the middle word of the n-th triple takes
    the substitution (j, i), the closing word (1, 1), the leading word
    keeps its variables as zero digits.  Affine in (i, j)."""
    if n < 1 or len(ws) < 3 * n:
        raise RationalCodecError("need at least %d words" % (3 * n))
    if (i, j) != (0, 0) and not (1 <= i <= n and 1 <= j <= n):
        raise RationalCodecError("indices must be (0,0) or within 1..%d" % n)
    for a, b in zip(ws, ws[1:]):
        if not rel_r1(a, b):
            raise RationalCodecError("word list is not increasing")
    lead, mid, last = ws[3 * n - 3], ws[3 * n - 2], ws[3 * n - 1]
    if (i, j) != (0, 0):
        _check_no_clamp(mid, j, i)
    return evaluate(concat(concat(lead, substitute(mid, j, i)), substitute(last, 1, 1)))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise RationalCodecError("bad rational %r: %s" % (text, exc)) from None


def format_rational(q: Fraction) -> str:
    return str(q)
