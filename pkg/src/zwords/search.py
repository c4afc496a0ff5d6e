"""Desk-scale witness search for the finitistic partition statements,
plus the semigroup application layer (psi, finite-sum sets, pattern
builders).

Searches are window-relative: positions live in [-P..P] without 0, and a
result only ever means "witness found / not found within this window".
Candidates are visited in a canonical order (total domain size, outermost
position, serialization), so results are reproducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

from .ordinals import Ordinal
from .schreier import is_member
from .words import (
    ABS,
    VARIABLE,
    DominationProfile,
    LocatedWord,
    WordError,
    concat_all,
    format_word,
    make_word,
    rel_r1,
    substitute,
    word_sort_key,
)

X = TypeVar("X")


class SearchError(ValueError):
    pass


class SearchCapExceeded(RuntimeError):
    """Raised when a search space outgrows the window's cap; carries the
    frontier statistics seen so far."""

    def __init__(self, message: str, candidates: int):
        super().__init__(message)
        self.candidates = candidates


@dataclass(frozen=True)
class SearchWindow:
    """Finite truncation of the position axis to [-radius..radius]."""

    radius: int
    profile: DominationProfile = ABS
    max_candidates: int = 200000

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise SearchError("window radius must be >= 1")

    def positions(self) -> list[int]:
        return [p for p in range(-self.radius, self.radius + 1) if p]


def _mix64(seed: int, data: bytes) -> int:
    """Deterministic 64-bit mix: FNV-1a over the bytes, seed folded in,
    then a splitmix64 finalizer."""
    h = (0xCBF29CE484222325 ^ (seed & 0xFFFFFFFFFFFFFFFF)) & 0xFFFFFFFFFFFFFFFF
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    h = (h + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    h = ((h ^ (h >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    h = ((h ^ (h >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return h ^ (h >> 31)


@dataclass
class Coloring:
    """A total, deterministic coloring of serialized words (or tuples).

    An explicit table wins over the seeded hash whenever it has the key;
    with no table a seed is required.
    """

    arity: int
    table: dict[str, int] | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise SearchError("arity must be >= 1")
        if self.table is None and self.seed is None:
            raise SearchError("coloring needs a table or a seed")
        if self.table is not None:
            for key, color in self.table.items():
                if not 0 <= color < self.arity:
                    raise SearchError("color %d out of range for %r" % (color, key))

    def color_key(self, key: str) -> int:
        if self.table is not None and key in self.table:
            return self.table[key]
        if self.seed is None:
            raise SearchError("coloring is not total: no entry for %r" % key)
        return _mix64(self.seed, key.encode("utf-8")) % self.arity

    def color_word(self, w: LocatedWord) -> int:
        return self.color_key(format_word(w))

    def color_tuple(self, ws: Sequence[LocatedWord]) -> int:
        return self.color_key(";".join(format_word(w) for w in ws))

    @classmethod
    def from_text(cls, text: str, arity: int | None = None) -> "Coloring":
        """Parse a coloring file: either a single `seed:<u64>:<r>` line or
        tab-separated `serialized-word<TAB>color` lines."""
        stripped = text.strip()
        if stripped.startswith("seed:"):
            _, seed_text, arity_text = stripped.split(":")
            return cls(arity=int(arity_text), seed=int(seed_text))
        table = {}
        for line in text.splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            key, _, color = line.rpartition("\t")
            table[key] = int(color)
        if arity is None:
            arity = max(table.values(), default=0) + 1
        return cls(arity=arity, table=table)


def word_length(w: LocatedWord) -> int:
    return len(w.entries)


def _letter_options(pos: int, profile: DominationProfile, with_variable: bool) -> list[int]:
    k = profile.bound(pos)
    letters = list(range(1, k + 1)) if pos > 0 else list(range(-k, 0))
    if with_variable:
        letters = [VARIABLE] + letters
    return letters


def length_slice(n: int, window: SearchWindow, variable: bool = False) -> list[LocatedWord]:
    """All constant (or variable, by flag) words of domain size n inside
    the window, canonically ordered."""
    if n < 1:
        raise SearchError("length must be >= 1")
    positions = window.positions()
    out = []
    for dom in combinations(positions, n):
        options = [_letter_options(p, window.profile, variable) for p in dom]
        for letters in product(*options):
            if variable and all(l != VARIABLE for l in letters):
                continue
            out.append(make_word(tuple(zip(dom, letters)), window.profile))
            if len(out) > window.max_candidates:
                raise SearchCapExceeded(
                    "length slice exceeds cap after %d words" % len(out), len(out))
    return sorted(out, key=word_sort_key)


def _substitution_grid(bounds: Sequence[int], profile: DominationProfile) -> list[tuple[tuple[int, int], ...]]:
    """The full grid of substitution pairs for the given sequence
    indices: 1 <= p_i <= k_{n_i}, 1 <= q_i <= k_{-n_i}."""
    per_slot = []
    for idx in bounds:
        kp, kq = profile.bound(idx), profile.bound(-idx)
        per_slot.append([(p, q) for p in range(1, kp + 1) for q in range(1, kq + 1)])
    return list(product(*per_slot))


def _annuli(dom: Sequence[int], m: int) -> Iterator[list[tuple[int, ...]]]:
    """Partitions of a sorted position set into m nested annuli, listed
    innermost first; every annulus keeps at least one negative and one
    positive position."""
    if m == 1:
        if dom and dom[0] < 0 < dom[-1]:
            yield [tuple(dom)]
        return
    # peel the outermost annulus: a >= 1 from the left, b >= 1 from the right
    for a in range(1, len(dom) - 1):
        if dom[a - 1] > 0:
            break
        for b in range(1, len(dom) - a):
            if dom[len(dom) - b] < 0:
                break
            outer = tuple(dom[:a]) + tuple(dom[len(dom) - b:])
            if not (outer[0] < 0 < outer[-1]):
                continue
            inner = dom[a:len(dom) - b]
            if not inner:
                continue
            for rest in _annuli(inner, m - 1):
                yield rest + [outer]


def _core_variable_words(dom: Sequence[int], profile: DominationProfile) -> Iterator[LocatedWord]:
    """All two-sided variable words on the given domain: the variable
    occurs on both sides, other letters range over their bounds."""
    options = [_letter_options(p, profile, True) for p in dom]
    for letters in product(*options):
        if not any(l == VARIABLE for p, l in zip(dom, letters) if p < 0):
            continue
        if not any(l == VARIABLE for p, l in zip(dom, letters) if p > 0):
            continue
        yield make_word(tuple(zip(dom, letters)), profile)


def _witness_candidates(m: int, total: int, window: SearchWindow) -> list[tuple[LocatedWord, ...]]:
    """All <R1-increasing m-tuples of two-sided variable words with total
    domain size `total` inside the window, canonically ordered."""
    out = []
    for dom in combinations(window.positions(), total):
        if not (dom[0] < 0 < dom[-1]):
            continue
        for layers in _annuli(dom, m):
            pools = [list(_core_variable_words(layer, window.profile)) for layer in layers]
            for ws in product(*pools):
                out.append(ws)
                if len(out) > window.max_candidates:
                    raise SearchCapExceeded(
                        "witness candidates exceed cap after %d tuples" % len(out),
                        len(out))
    key = lambda ws: (max(abs(p) for w in ws for p in w.dom),
                      ";".join(format_word(w) for w in ws))
    return sorted(out, key=key)


@dataclass
class SearchReport:
    witness: tuple[LocatedWord, ...] | None
    color: int | None
    grid_size: int
    nodes_expanded: int
    candidates: int
    elapsed_ms: float = 0.0
    vacuous: bool = False

    @property
    def found(self) -> bool:
        return self.witness is not None


def hj_witness_search(coloring: Coloring, m: int, bounds: Sequence[int], n: int,
                      window: SearchWindow) -> SearchReport:
    """Search for m variable words, increasing and of total length n,
    all of whose substitution instances over the bounds' grids share one
    color.  Exhaustive within the window."""
    if len(bounds) != m:
        raise SearchError("need one grid index per tuple slot")
    start = time.perf_counter()
    candidates = _witness_candidates(m, n, window)
    grid = _substitution_grid(bounds, window.profile)
    nodes = 0
    for ws in candidates:
        nodes += 1
        seen = set()
        for pairs in grid:
            instance = concat_all([substitute(w, *pq) for w, pq in zip(ws, pairs)])
            seen.add(coloring.color_word(instance))
            if len(seen) > 1:
                break
        if len(seen) == 1:
            return SearchReport(ws, seen.pop(), len(grid), nodes, len(candidates),
                                (time.perf_counter() - start) * 1000.0,
                                vacuous=not grid)
    return SearchReport(None, None, len(grid), nodes, len(candidates),
                        (time.perf_counter() - start) * 1000.0)


@dataclass
class VerifyReport:
    monochromatic: bool
    instances: int
    color: int | None

    @property
    def vacuous(self) -> bool:
        return self.instances == 0

    def __bool__(self) -> bool:
        return self.monochromatic


def verify_witness(witness: Sequence[LocatedWord], coloring: Coloring,
                   bounds: Sequence[int]) -> VerifyReport:
    """Independently re-enumerate the substitution grid of a witness and
    check monochromaticity."""
    if len(bounds) != len(witness):
        raise SearchError("need one grid index per tuple slot")
    if not witness:
        return VerifyReport(True, 0, None)
    profile = witness[0].profile
    colors = set()
    instances = 0
    for pairs in _substitution_grid(bounds, profile):
        instance = concat_all([substitute(w, *pq) for w, pq in zip(witness, pairs)])
        colors.add(coloring.color_word(instance))
        instances += 1
    if not instances:
        return VerifyReport(True, 0, None)
    return VerifyReport(len(colors) == 1, instances, colors.pop() if len(colors) == 1 else None)


def _xi_slices(ws: Sequence[LocatedWord], xi: Ordinal, total: int,
               profile: DominationProfile) -> list[tuple[LocatedWord, ...]]:
    """All increasing tuples of extracted constants of ws whose anchor
    set lies in A_xi and whose domain sizes sum to `total`."""
    from .words import extracted_sets, make_tuple

    constants = sorted(extracted_sets(make_tuple(ws)).constants, key=word_sort_key)
    out = []

    def grow(prefix: tuple[LocatedWord, ...], size: int) -> None:
        if prefix and size == total:
            anchors = tuple(w.min_dom_pos for w in prefix)
            if is_member(anchors, xi):
                out.append(prefix)
        for w in constants:
            extra = len(w.entries)
            if size + extra > total:
                continue
            if prefix and not rel_r1(prefix[-1], w):
                continue
            grow(prefix + (w,), size + extra)

    grow((), 0)
    return out


def xi_witness_search(coloring: Coloring, xi: Ordinal, l: int, n0: int,
                      window: SearchWindow, allow_vacuous: bool = False) -> SearchReport:
    """Search for an l-tuple of variable words whose extracted-constant
    tuples of total length n0 inside the xi-indexed family are
    monochromatic under a tuple coloring."""
    start = time.perf_counter()
    candidates: list[tuple[LocatedWord, ...]] = []
    for total in range(2 * l, 2 * window.radius + 1):
        candidates.extend(_witness_candidates(l, total, window))
    nodes = 0
    best_vacuous = None
    for ws in candidates:
        nodes += 1
        slices = _xi_slices(ws, xi, n0, window.profile)
        if not slices:
            if best_vacuous is None:
                best_vacuous = SearchReport(ws, None, 0, nodes, len(candidates), 0.0,
                                            vacuous=True)
            continue
        colors = {coloring.color_tuple(s) for s in slices}
        if len(colors) == 1:
            return SearchReport(ws, colors.pop(), len(slices), nodes, len(candidates),
                                (time.perf_counter() - start) * 1000.0)
    if allow_vacuous and best_vacuous is not None:
        best_vacuous.elapsed_ms = (time.perf_counter() - start) * 1000.0
        return best_vacuous
    return SearchReport(None, None, 0, nodes, len(candidates),
                        (time.perf_counter() - start) * 1000.0)


def verify_xi_witness(witness: Sequence[LocatedWord], coloring: Coloring, xi: Ordinal,
                      n0: int) -> VerifyReport:
    """Re-enumerate the xi-indexed extracted tuples of a witness and
    check monochromaticity."""
    slices = _xi_slices(witness, xi, n0, witness[0].profile)
    if not slices:
        return VerifyReport(True, 0, None)
    colors = {coloring.color_tuple(s) for s in slices}
    return VerifyReport(len(colors) == 1, len(slices),
                        colors.pop() if len(colors) == 1 else None)


# --- semigroup layer ------------------------------------------------------


@dataclass
class SemigroupSpec:
    """An opaque semigroup with indexed generators y(letter, position)."""

    op: Callable[[X, X], X]
    y: Callable[[int, int], X]
    commutative: bool = False

    def fold(self, elements: Sequence[X]) -> X:
        if not elements:
            raise SearchError("empty semigroup product")
        acc = elements[0]
        for e in elements[1:]:
            acc = self.op(acc, e)
        return acc

    def spot_check(self, sample: Sequence[X], rng, rounds: int = 200) -> None:
        """Sampled associativity (and commutativity, if flagged)."""
        if len(sample) < 2:
            return
        for _ in range(rounds):
            a, b, c = (sample[rng.randrange(len(sample))] for _ in range(3))
            if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)):
                raise SearchError("operation is not associative")
            if self.commutative and self.op(a, b) != self.op(b, a):
                raise SearchError("operation is not commutative")


INT_LINEAR = SemigroupSpec(op=lambda a, b: a + b, y=lambda l, n: l * n, commutative=True)
STRING_CONCAT = SemigroupSpec(op=lambda a, b: a + b,
                              y=lambda l, n: "y(%d,%d)" % (l, n), commutative=False)


def psi_map(w: LocatedWord, spec: SemigroupSpec):
    """Fold the generators over the word's entries in position order;
    the variable contributes generator index 0."""
    return spec.fold([spec.y(letter, pos) for pos, letter in w.entries])


def fs_enumerate(xs: Sequence[X], spec: SemigroupSpec) -> set[X]:
    """All finite sums of subsequences, indices ascending."""
    out = set()
    for size in range(1, len(xs) + 1):
        for idxs in combinations(range(len(xs)), size):
            out.add(spec.fold([xs[i] for i in idxs]))
    return out


def fs_two_sided(xs: Sequence[X], zs: Sequence[X], spec: SemigroupSpec) -> set[X]:
    """All sums x_{n_l} + ... + x_{n_1} + z_{n_1} + ... + z_{n_l}."""
    if len(xs) != len(zs):
        raise SearchError("sequences must have equal length")
    out = set()
    for size in range(1, len(xs) + 1):
        for idxs in combinations(range(len(xs)), size):
            parts = [xs[i] for i in reversed(idxs)] + [zs[i] for i in idxs]
            out.add(spec.fold(parts))
    return out


@dataclass
class PatternResult:
    """A semigroup pattern value with the fixed / j-driven / i-driven
    position sets of its building word."""

    value: object
    fixed_positions: tuple[int, ...]
    j_positions: tuple[int, ...]
    i_positions: tuple[int, ...]


def _check_no_clamp(w: LocatedWord, p: int, q: int) -> None:
    for pos, letter in w.entries:
        if letter != VARIABLE:
            continue
        k = w.profile.bound(pos)
        if pos > 0 and p > k:
            raise SearchError("index %d clamps at position %d" % (p, pos))
        if pos < 0 and q > k:
            raise SearchError("index %d clamps at position %d" % (q, pos))


def semigroup_pattern(ws: Sequence[LocatedWord], spec: SemigroupSpec, n: int,
                      i: int, j: int) -> PatternResult:
    """The n-th pattern element over the n-th quadruple of ws: first and
    last words substituted by (1,1), the second by (i,j), the third kept
    variable (index 0)."""
    if n < 1 or len(ws) < 4 * n:
        raise SearchError("need at least %d words" % (4 * n))
    profile = ws[0].profile
    if (i, j) != (0, 0):
        if not (1 <= i <= profile.bound(n) and 1 <= j <= profile.bound(-n)):
            raise SearchError("indices out of the bound grid at %d" % n)
    for a, b in zip(ws, ws[1:]):
        if not rel_r1(a, b):
            raise SearchError("word list is not increasing")
    first, second, third, fourth = ws[4 * n - 4:4 * n]
    if (i, j) != (0, 0):
        _check_no_clamp(second, i, j)
    built = concat_all([substitute(first, 1, 1), substitute(second, i, j),
                        third, substitute(fourth, 1, 1)])
    j_positions = tuple(p for p, l in second.entries if l == VARIABLE and p < 0)
    i_positions = tuple(p for p, l in second.entries if l == VARIABLE and p > 0)
    moving = set(j_positions) | set(i_positions)
    fixed = tuple(p for p in built.dom if p not in moving)
    return PatternResult(psi_map(built, spec), fixed, j_positions, i_positions)


def z_fin_set_less(f: Iterable[int], g: Iterable[int]) -> bool:
    """The order on finite nonempty integer sets: wholly positive and
    below, wholly negative and above, or surrounded by a split of g."""
    fs, gs = sorted(set(f)), sorted(set(g))
    if not fs or not gs:
        raise SearchError("sets must be nonempty")
    if all(x > 0 for x in fs) and fs[-1] < gs[0]:
        return True
    if all(x < 0 for x in fs) and fs[0] > gs[-1]:
        return True
    below = [x for x in gs if x < fs[0]]
    above = [x for x in gs if x > fs[-1]]
    return bool(below) and bool(above) and len(below) + len(above) == len(gs)
