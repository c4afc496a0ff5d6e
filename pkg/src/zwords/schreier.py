"""The Schreier system A_xi over finite subsets of the positive integers.

Membership follows the five-case recursion on Cantor normal forms.  The
composite cases parse a candidate set into constituent blocks left to
right; thinness of the families makes at most one prefix of any set a
member, so the parse never needs to backtrack.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .ordinals import (
    ZERO,
    Ordinal,
    fundamental_sequence,
    omega_power,
    predecessor_sequence,
    successor_pred,
)

FiniteSet = tuple[int, ...]

DEFAULT_CAP = 20


class SchreierError(ValueError):
    pass


def as_finite_set(elements: Iterable[int]) -> FiniteSet:
    s = tuple(elements)
    if any(not isinstance(x, int) or x < 1 for x in s):
        raise SchreierError("elements must be positive integers: %r" % (s,))
    if any(a >= b for a, b in zip(s, s[1:])):
        raise SchreierError("elements must be strictly increasing: %r" % (s,))
    return s


def _block_plan(xi: Ordinal) -> tuple[tuple[Ordinal, int], ...]:
    """Constituent (family, count) segments of case (3iii), smallest
    exponent first, so members parse left to right."""
    return tuple((omega_power(exp), coeff) for exp, coeff in reversed(xi.terms))


@lru_cache(maxsize=None)
def _member(s: FiniteSet, xi: Ordinal) -> bool:
    if not s:
        return xi.is_zero
    if xi.is_zero:
        return False
    if xi.is_successor:
        return _member(s[1:], successor_pred(xi))
    if len(xi.terms) == 1 and xi.terms[0][1] == 1:
        exp = xi.terms[0][0]
        if exp.is_successor:
            family = omega_power(successor_pred(exp))
            return _consume_blocks(s, ((family, s[0]),)) == ()
        return _member(s, omega_power(fundamental_sequence(exp, s[0])))
    return _consume_blocks(s, _block_plan(xi)) == ()


def _unique_prefix(s: FiniteSet, xi: Ordinal) -> int | None:
    """Length of the unique prefix of s in A_xi, or None.  Thinness of
    A_xi guarantees at most one prefix is a member."""
    for j in range(1, len(s) + 1):
        if _member(s[:j], xi):
            return j
    return None


def _consume_blocks(s: FiniteSet, plan: tuple[tuple[Ordinal, int], ...]) -> FiniteSet | None:
    """Peel the planned blocks off s; return the unparsed rest, or None
    if some block is missing."""
    rest = s
    for family, count in plan:
        for _ in range(count):
            if not rest:
                return None
            j = _unique_prefix(rest, family)
            if j is None:
                return None
            rest = rest[j:]
    return rest


@lru_cache(maxsize=None)
def _is_initial(s: FiniteSet, xi: Ordinal) -> bool:
    """True iff s is an initial segment (possibly improper or empty) of
    some member of A_xi."""
    if not s:
        return True
    if xi.is_zero:
        return False
    if xi.is_successor:
        return _is_initial(s[1:], successor_pred(xi))
    if len(xi.terms) == 1 and xi.terms[0][1] == 1:
        exp = xi.terms[0][0]
        if exp.is_successor:
            family = omega_power(successor_pred(exp))
            return _initial_blocks(s, ((family, s[0]),))
        return _is_initial(s, omega_power(fundamental_sequence(exp, s[0])))
    return _initial_blocks(s, _block_plan(xi))


def _initial_blocks(s: FiniteSet, plan: tuple[tuple[Ordinal, int], ...]) -> bool:
    rest = s
    for family, count in plan:
        for _ in range(count):
            if not rest:
                return True
            j = _unique_prefix(rest, family)
            if j is None:
                return _is_initial(rest, family)
            rest = rest[j:]
    return not rest


def is_member(s: Iterable[int], xi: Ordinal) -> bool:
    """Decide s in A_xi."""
    return _member(as_finite_set(s), xi)


def is_proper_initial(s: Iterable[int], xi: Ordinal) -> bool:
    """Decide s in A_xi* \\ A_xi (a proper initial segment of a member)."""
    t = as_finite_set(s)
    return _is_initial(t, xi) and not _member(t, xi)


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Maximal run of consecutive A_xi blocks plus an optional remainder
    in A_xi* \\ A_xi."""

    blocks: tuple[FiniteSet, ...]
    remainder: FiniteSet | None

    def rejoin(self) -> FiniteSet:
        flat: tuple[int, ...] = ()
        for b in self.blocks:
            flat += b
        if self.remainder:
            flat += self.remainder
        return flat

    def __str__(self) -> str:
        text = "".join("[%s]" % ",".join(map(str, b)) for b in self.blocks)
        if self.remainder:
            text += "|" + ",".join(map(str, self.remainder))
        return text


def canonical_decompose(s: Iterable[int], xi: Ordinal) -> CanonicalDecomposition:
    """The unique decomposition of s into A_xi blocks plus remainder."""
    seq = as_finite_set(s)
    if not seq:
        raise SchreierError("cannot decompose the empty set")
    if xi.is_zero:
        raise SchreierError("decomposition needs xi >= 1")
    blocks = []
    rest = seq
    while rest:
        j = _unique_prefix(rest, xi)
        if j is None:
            break
        blocks.append(rest[:j])
        rest = rest[j:]
    if rest and not _is_initial(rest, xi):
        raise SchreierError(
            "remainder %r is not extendable to an A_%s member" % (rest, xi))
    return CanonicalDecomposition(tuple(blocks), rest or None)


def _with_min(xi: Ordinal, n: int, n_max: int) -> Iterator[FiniteSet]:
    """All members of A_xi with minimum exactly n inside {1..n_max}."""
    if xi.is_zero or n > n_max:
        return
    if xi.is_successor:
        zeta = successor_pred(xi)
        if zeta.is_zero:
            yield (n,)
            return
        for m in range(n + 1, n_max + 1):
            for t in _with_min(zeta, m, n_max):
                yield (n,) + t
        return
    if len(xi.terms) == 1 and xi.terms[0][1] == 1:
        exp = xi.terms[0][0]
        if exp.is_successor:
            family = omega_power(successor_pred(exp))
            plan = [family] * n
        else:
            yield from _with_min(omega_power(fundamental_sequence(exp, n)), n, n_max)
            return
    else:
        plan = []
        for family, count in _block_plan(xi):
            plan.extend([family] * count)
    for first in _with_min(plan[0], n, n_max):
        for rest in _chain_rest(tuple(plan[1:]), first[-1] + 1, n_max):
            yield first + rest


def _chain_rest(plan: tuple[Ordinal, ...], lo: int, n_max: int) -> Iterator[FiniteSet]:
    if not plan:
        yield ()
        return
    for m in range(lo, n_max + 1):
        for b in _with_min(plan[0], m, n_max):
            for rest in _chain_rest(plan[1:], b[-1] + 1, n_max):
                yield b + rest


def enumerate_members(xi: Ordinal, n_max: int, cap: int | None = None) -> list[FiniteSet]:
    """All members of A_xi contained in {1..n_max}, lexicographic."""
    cap = DEFAULT_CAP if cap is None else cap
    if n_max > cap:
        raise SchreierError("ground set {1..%d} exceeds cap %d" % (n_max, cap))
    if xi.is_zero:
        return [()]
    out: list[FiniteSet] = []
    for n in range(1, n_max + 1):
        out.extend(_with_min(xi, n, n_max))
    return sorted(out)


def restriction_check(xi: Ordinal, n: int, n_max: int, cap: int | None = None) -> bool:
    """Exhaustively verify A_xi(n) = A_{xi_n} on subsets of {n+1..n_max}."""
    cap = DEFAULT_CAP if cap is None else cap
    if not 1 <= n < n_max:
        raise SchreierError("need 1 <= n < N")
    if n_max > cap:
        raise SchreierError("ground set {1..%d} exceeds cap %d" % (n_max, cap))
    xi_n = predecessor_sequence(xi, n)
    universe = range(n + 1, n_max + 1)
    for size in range(0, n_max - n + 1):
        for s in combinations(universe, size):
            if _member((n,) + s, xi) != _member(s, xi_n):
                return False
    return True


def parse_set(text: str) -> FiniteSet:
    text = text.strip()
    if not text:
        return ()
    try:
        return as_finite_set(int(part) for part in text.split(","))
    except ValueError as exc:
        raise SchreierError("bad set %r: %s" % (text, exc)) from None


def format_set(s: FiniteSet) -> str:
    return ",".join(map(str, s))
