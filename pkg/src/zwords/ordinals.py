"""Cantor normal form ordinal arithmetic below epsilon_0.

Ordinals are represented as sums w^a1*c1 + ... + w^am*cm with strictly
decreasing exponents (themselves ordinals) and positive integer
coefficients.  Besides comparison and classification, the module fixes the
fundamental sequences for limit ordinals and the predecessor sequences that
drive the Schreier recursion.
"""

from __future__ import annotations

from dataclasses import dataclass


class OrdinalError(ValueError):
    pass


@dataclass(frozen=True)
class Ordinal:
    """An ordinal below epsilon_0 in Cantor normal form.

    ``terms`` is a tuple of (exponent, coefficient) pairs with exponents
    strictly decreasing and coefficients >= 1.  Zero is the empty tuple.
    """

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self) -> None:
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal) or not isinstance(coeff, int):
                raise OrdinalError("malformed term %r" % ((exp, coeff),))
            if coeff < 1:
                raise OrdinalError("coefficient must be >= 1")
        for (e1, _), (e2, _) in zip(self.terms, self.terms[1:]):
            if compare(e1, e2) <= 0:
                raise OrdinalError("exponents must be strictly decreasing")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def as_int(self) -> int:
        if not self.is_finite:
            raise OrdinalError("%s is not finite" % self)
        return self.terms[0][1] if self.terms else 0

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Ordinal") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Ordinal") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Ordinal") -> bool:
        return compare(self, other) >= 0

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return "Ordinal(%r)" % format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("ordinals are non-negative")
    return Ordinal(((ZERO, n),)) if n else ZERO


def omega_power(exp: Ordinal, coeff: int = 1) -> Ordinal:
    return Ordinal(((exp, coeff),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total CNF order: -1, 0 or 1 as a <, =, > b."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def classify(a: Ordinal) -> str:
    """Return 'zero', 'successor' or 'limit'."""
    if a.is_zero:
        return "zero"
    return "successor" if a.is_successor else "limit"


def successor(a: Ordinal) -> Ordinal:
    if a.is_successor:
        head, (exp, coeff) = a.terms[:-1], a.terms[-1]
        return Ordinal(head + ((exp, coeff + 1),))
    return Ordinal(a.terms + ((ZERO, 1),))


def successor_pred(a: Ordinal) -> Ordinal:
    """The predecessor of a successor ordinal."""
    if not a.is_successor:
        raise OrdinalError("%s is not a successor" % a)
    head, (exp, coeff) = a.terms[:-1], a.terms[-1]
    return Ordinal(head + ((exp, coeff - 1),)) if coeff > 1 else Ordinal(head)


def _drop_last_unit(a: Ordinal) -> tuple[Ordinal, Ordinal]:
    """Split a into (rest, w^e) where w^e is one copy of the last CNF term."""
    head, (exp, coeff) = a.terms[:-1], a.terms[-1]
    rest = Ordinal(head + ((exp, coeff - 1),)) if coeff > 1 else Ordinal(head)
    return rest, exp


def _append(prefix: Ordinal, tail: Ordinal) -> Ordinal:
    """Concatenate CNF term lists; every exponent of tail must be below
    the last exponent of prefix."""
    if prefix.is_zero:
        return tail
    return Ordinal(prefix.terms + tail.terms)


def fundamental_sequence(lam: Ordinal, n: int) -> Ordinal:
    """The fixed n-th member of the fundamental sequence of the limit lam.

    Wainer-style assignment with the result bumped by one whenever it is
    not already a successor, so every member is a successor ordinal, the
    sequence is strictly increasing and its supremum is lam.
    """
    if n < 1:
        raise OrdinalError("index must be >= 1")
    if not lam.is_limit:
        raise OrdinalError("fundamental sequence undefined for %s" % lam)
    prefix, exp = _drop_last_unit(lam)
    if exp.is_successor:
        tail = omega_power(successor_pred(exp), n)
    else:
        tail = omega_power(fundamental_sequence(exp, n))
    raw = _append(prefix, tail)
    return raw if raw.is_successor else successor(raw)


def predecessor_sequence(xi: Ordinal, n: int) -> Ordinal:
    """The concrete xi_n with A_xi(n) = A_{xi_n} restricted above n.

    Constant (= xi - 1) for successors; strictly increasing with
    supremum xi for limits, mirroring the case split of the Schreier
    recursion.
    """
    if n < 1:
        raise OrdinalError("index must be >= 1")
    if xi.is_zero:
        raise OrdinalError("predecessor sequence undefined for 0")
    if xi.is_successor:
        return successor_pred(xi)
    prefix, exp = _drop_last_unit(xi)
    if prefix.is_zero:
        # xi = w^exp
        if exp.is_successor:
            beta = successor_pred(exp)
            tail = predecessor_sequence(omega_power(beta), n)
            if n == 1:
                return tail
            return _append(omega_power(beta, n - 1), tail)
        return predecessor_sequence(omega_power(fundamental_sequence(exp, n)), n)
    return _append(prefix, predecessor_sequence(omega_power(exp), n))


# --- text grammar (shared with the CLI) ---------------------------------
#
# ordinal := term ('+' term)*
# term    := nat | 'w' ['^' exponent] ['*' nat]
# exponent:= nat | 'w' ['^' exponent] | '(' ordinal ')'
#
# Compound exponents (sums or coefficients) must be parenthesized.


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero:
            parts.append(str(coeff))
            continue
        if compare(exp, ONE) == 0:
            base = "w"
        else:
            base = "w^" + _format_exponent(exp)
        parts.append(base if coeff == 1 else "%s*%d" % (base, coeff))
    return "+".join(parts)


def _format_exponent(e: Ordinal) -> str:
    if e.is_finite:
        return str(e.as_int())
    if len(e.terms) == 1 and e.terms[0][1] == 1:
        inner = e.terms[0][0]
        if compare(inner, ONE) == 0:
            return "w"
        return "w^" + _format_exponent(inner)
    return "(" + format_ordinal(e) + ")"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise OrdinalError("expected %r at %d in %r" % (ch, self.pos, self.text))
        self.pos += 1

    def nat(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise OrdinalError("expected number at %d in %r" % (self.pos, self.text))
        return int(self.text[start:self.pos])

    def ordinal(self) -> Ordinal:
        terms = [self.term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.term())
        flat: list[tuple[Ordinal, int]] = []
        for t in terms:
            if t.is_zero:
                raise OrdinalError("zero term in sum: %r" % self.text)
            flat.extend(t.terms)
        try:
            return Ordinal(tuple(flat))
        except OrdinalError as exc:
            raise OrdinalError("%s in %r" % (exc, self.text)) from None

    def term(self) -> Ordinal:
        if self.peek().isdigit():
            return from_int(self.nat())
        self.take("w")
        exp = ONE
        if self.peek() == "^":
            self.take("^")
            exp = self.exponent()
        coeff = 1
        if self.peek() == "*":
            self.take("*")
            coeff = self.nat()
        if coeff < 1:
            raise OrdinalError("zero coefficient in %r" % self.text)
        return omega_power(exp, coeff)

    def exponent(self) -> Ordinal:
        if self.peek() == "(":
            self.take("(")
            inner = self.ordinal()
            self.take(")")
            return inner
        if self.peek().isdigit():
            return from_int(self.nat())
        self.take("w")
        if self.peek() == "^":
            self.take("^")
            return omega_power(self.exponent())
        return OMEGA


def parse_ordinal(text: str) -> Ordinal:
    text = text.strip()
    if text == "0":
        return ZERO
    p = _Parser(text)
    result = p.ordinal()
    if p.pos != len(text):
        raise OrdinalError("trailing input at %d in %r" % (p.pos, text))
    return result
