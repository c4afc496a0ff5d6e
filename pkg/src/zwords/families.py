"""Families of orderly word tuples: Schreier-indexed slices, tree and
hereditary closures, and strong Cantor-Bendixson indices at finite scale.

A family is stored as a trie over canonically serialized tuples, which
makes initial-segment queries and thinness checks direct.  "Contains an
infinite orderly sequence" is approximated by a chain-length threshold
tau; all derivative results are relative to a finite pool of variable
words (typically the extracted-variable set of a base tuple).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .ordinals import Ordinal
from .schreier import is_member
from .words import (
    EMPTY_TUPLE,
    LocatedWord,
    OrderlyTuple,
    WordError,
    extracted_sets,
    format_word,
    make_tuple,
    parse_word,
    rel_r1,
    word_sort_key,
)


class FamilyError(ValueError):
    pass


def serialize_tuple(bw: OrderlyTuple) -> str:
    return ";".join(format_word(w) for w in bw)


def parse_tuple(text: str, profile=None) -> OrderlyTuple:
    from .words import ABS
    profile = ABS if profile is None else profile
    text = text.strip()
    if not text:
        return EMPTY_TUPLE
    return make_tuple(parse_word(part, profile) for part in text.split(";"))


def tuple_sort_key(bw: OrderlyTuple) -> tuple:
    return (len(bw), tuple(word_sort_key(w) for w in bw))


class _TrieNode:
    __slots__ = ("children", "member")

    def __init__(self) -> None:
        self.children: dict[str, _TrieNode] = {}
        self.member = False


class WordFamily:
    """An immutable family of orderly tuples of variable words."""

    def __init__(self, members: Iterable[OrderlyTuple]):
        self._members = frozenset(members)
        for bw in self._members:
            if not isinstance(bw, OrderlyTuple) or bw.mode != "zstar":
                raise FamilyError("family members must be two-sided orderly tuples")
        self._root = _TrieNode()
        for bw in self._members:
            node = self._root
            for w in bw:
                key = format_word(w)
                node = node.children.setdefault(key, _TrieNode())
            node.member = True

    @property
    def members(self) -> frozenset[OrderlyTuple]:
        return self._members

    def __contains__(self, bw: OrderlyTuple) -> bool:
        return bw in self._members

    def __iter__(self) -> Iterator[OrderlyTuple]:
        return iter(self.sorted_members())

    def __len__(self) -> int:
        return len(self._members)

    def __eq__(self, other) -> bool:
        return isinstance(other, WordFamily) and self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def sorted_members(self) -> list[OrderlyTuple]:
        return sorted(self._members, key=tuple_sort_key)

    def _node(self, bw: OrderlyTuple) -> _TrieNode | None:
        node = self._root
        for w in bw:
            node = node.children.get(format_word(w))
            if node is None:
                return None
        return node

    def has_member_extending(self, bw: OrderlyTuple) -> bool:
        """True iff some member has bw as an initial segment."""
        node = self._node(bw)
        if node is None:
            return False
        stack = [node]
        while stack:
            n = stack.pop()
            if n.member:
                return True
            stack.extend(n.children.values())
        return False

    def has_proper_extension(self, bw: OrderlyTuple) -> bool:
        node = self._node(bw)
        if node is None:
            return False
        stack = list(node.children.values())
        while stack:
            n = stack.pop()
            if n.member:
                return True
            stack.extend(n.children.values())
        return False

    @property
    def is_thin(self) -> bool:
        return not any(self.has_proper_extension(bw) for bw in self._members)

    @property
    def is_tree(self) -> bool:
        return self._members == tree_closure(self)._members

    def is_hereditary(self, pool: Iterable[LocatedWord]) -> bool:
        return self._members == hereditary_closure(self, pool)._members


def family_of(tuples: Iterable[OrderlyTuple]) -> WordFamily:
    return WordFamily(tuples)


def l_xi_member(bw: OrderlyTuple, xi: Ordinal, side: str = "positive") -> bool:
    """Schreier test on the per-word anchor positions: least positive
    position, or the negative-side variant via |max dom^-|."""
    if len(bw) == 0:
        raise FamilyError("the empty tuple has no anchor set")
    if side == "positive":
        anchors = tuple(w.min_dom_pos for w in bw)
    elif side == "negative":
        anchors = tuple(-w.max_dom_neg for w in bw)
    else:
        raise FamilyError("side must be positive or negative")
    if any(a >= b for a, b in zip(anchors, anchors[1:])):
        raise FamilyError("anchor projection %r is not strictly increasing" % (anchors,))
    return is_member(anchors, xi)


def tree_closure(family: WordFamily) -> WordFamily:
    """Close under initial segments (the empty tuple included)."""
    closed = {EMPTY_TUPLE}
    for bw in family.members:
        for cut in range(1, len(bw) + 1):
            closed.add(make_tuple(bw.words[:cut]))
    return WordFamily(closed)


def _extraction_tuples(bw: OrderlyTuple, pool: frozenset[LocatedWord]) -> set[OrderlyTuple]:
    """All orderly tuples over the pool-restricted extracted-variable
    words of bw, the empty tuple included."""
    if len(bw) == 0:
        return {EMPTY_TUPLE}
    ev = sorted(extracted_sets(bw).variables & pool, key=word_sort_key)
    out = {EMPTY_TUPLE}

    def grow(last: LocatedWord, prefix: tuple[LocatedWord, ...]) -> None:
        for w in ev:
            if rel_r1(last, w):
                ext = prefix + (w,)
                out.add(OrderlyTuple(ext))
                grow(w, ext)

    for w in ev:
        out.add(OrderlyTuple((w,)))
        grow(w, (w,))
    return out


def _as_pool(pool: Iterable[LocatedWord]) -> frozenset[LocatedWord]:
    pool = frozenset(pool)
    for w in pool:
        if not (w.is_variable_word and w.is_core):
            raise FamilyError("pool word %s is not a two-sided variable word"
                              % format_word(w))
    return pool


def _check_pool(family: WordFamily, pool: frozenset[LocatedWord]) -> None:
    for bw in family.members:
        for w in bw:
            if w not in pool:
                raise FamilyError("pool is missing the word %s" % format_word(w))


def hereditary_closure(family: WordFamily, pool: Iterable[LocatedWord]) -> WordFamily:
    """Close under pool-relative extraction tuples of members."""
    pool = _as_pool(pool)
    _check_pool(family, pool)
    closed: set[OrderlyTuple] = {EMPTY_TUPLE}
    for bw in family.members:
        closed |= _extraction_tuples(bw, pool)
    return WordFamily(closed)


def largest_hereditary(family: WordFamily, pool: Iterable[LocatedWord]) -> WordFamily:
    """The largest hereditary subfamily of family plus the empty tuple."""
    pool = _as_pool(pool)
    _check_pool(family, pool)
    kept = {EMPTY_TUPLE}
    for bw in family.members:
        if _extraction_tuples(bw, pool) <= family.members:
            kept.add(bw)
    return WordFamily(kept)


def family_at(family: WordFamily, t: LocatedWord) -> WordFamily:
    """F(t): tails of members starting with t; the empty tuple stands in
    for the member (t) itself."""
    out = set()
    for bw in family.members:
        if len(bw) >= 1 and bw[0] == t:
            out.add(make_tuple(bw.words[1:]))
    return WordFamily(out)


def family_minus(family: WordFamily, t: LocatedWord) -> WordFamily:
    """F - t: members beginning strictly beyond t, the empty tuple kept."""
    out = set()
    for bw in family.members:
        if len(bw) == 0 or rel_r1(t, bw[0]):
            out.add(bw)
    return WordFamily(out)


def _longest_chain(ws: list[LocatedWord]) -> int:
    """Length of the longest rel_r1-increasing chain among ws."""
    order = sorted(ws, key=word_sort_key)
    best: dict[int, int] = {}

    def depth(i: int) -> int:
        if i in best:
            return best[i]
        d = 1 + max((depth(j) for j in range(len(order))
                     if rel_r1(order[i], order[j])), default=0)
        best[i] = d
        return d

    return max((depth(i) for i in range(len(order))), default=0)


def cb_derivative(family: WordFamily, pool: Iterable[LocatedWord], tau: int,
                  _trusted: bool = False) -> WordFamily:
    """Drop every tuple whose non-extending pool words contain a
    rel_r1-chain of length >= tau."""
    if tau < 1:
        raise FamilyError("tau must be >= 1")
    pool = _as_pool(pool)
    if not _trusted:
        _check_pool(family, pool)
        if not family.is_hereditary(pool):
            raise FamilyError("derivative needs a hereditary family")
    pool_sorted = sorted(pool, key=word_sort_key)
    kept = set()
    for bw in family.members:
        blocked = []
        for t in pool_sorted:
            if len(bw) and not rel_r1(bw[-1], t):
                blocked.append(t)
            elif make_tuple(bw.words + (t,)) not in family.members:
                blocked.append(t)
        if _longest_chain(blocked) < tau:
            kept.add(bw)
    return WordFamily(kept)


def cb_index(family: WordFamily, pool: Iterable[LocatedWord], tau: int) -> int:
    """Number of derivative iterations until the family is empty."""
    pool = _as_pool(pool)
    _check_pool(family, pool)
    if family.members and not family.is_hereditary(pool):
        raise FamilyError("index needs a hereditary family")
    steps = 0
    while family.members:
        derived = cb_derivative(family, pool, tau, _trusted=True)
        if derived.members == family.members:
            raise FamilyError("derivative reached a fixed point; the pool has "
                              "no chain of length %d" % tau)
        family = derived
        steps += 1
    return steps


def set_family_cb_index(m: int, n_max: int, tau: int) -> int:
    """Cantor-Bendixson index of the downward closure of the m-element
    subsets of {1..n_max}; 'large' means >= tau failing extensions."""
    if m < 0 or tau < 1:
        raise FamilyError("need m >= 0 and tau >= 1")
    if n_max < m + tau:
        raise FamilyError("ground set {1..%d} is too small to certify m=%d, tau=%d"
                          % (n_max, m, tau))
    ground = range(1, n_max + 1)
    fam = {frozenset(c) for size in range(m + 1) for c in combinations(ground, size)}
    steps = 0
    while fam:
        kept = set()
        for s in fam:
            blocked = sum(1 for x in ground if x not in s and (s | {x}) not in fam)
            if blocked < tau:
                kept.add(s)
        if kept == fam:
            raise FamilyError("derivative reached a fixed point; tau too large")
        fam = kept
        steps += 1
    return steps


# --- family file format --------------------------------------------------
#
# One serialized tuple per line; '#' starts a comment; an empty line is
# the empty tuple.


def parse_family(text: str, profile=None) -> WordFamily:
    members = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            continue
        members.append(parse_tuple(line, profile))
    if not members:
        return WordFamily(())
    return WordFamily(members)


def format_family(family: WordFamily) -> str:
    return "\n".join(serialize_tuple(bw) for bw in family.sorted_members())


def parse_pool(text: str, profile=None) -> frozenset[LocatedWord]:
    from .words import ABS
    profile = ABS if profile is None else profile
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(parse_word(line, profile))
    return frozenset(words)
