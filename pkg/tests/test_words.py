import random
from itertools import combinations, product

import pytest

from zwords.words import (
    ABS,
    VARIABLE,
    DominationProfile,
    WordError,
    bound_pair_index,
    concat,
    extracted_sets,
    format_profile,
    format_word,
    h_map,
    is_extraction,
    make_tuple,
    make_word,
    merge,
    pair_enumeration,
    parse_profile,
    parse_word,
    project_positive,
    rel_r1,
    rel_r2,
    substitute,
    substitute_nat,
)

CONST2 = DominationProfile("const", 2)


def random_word(rng, span=5, profile=ABS, force_variable=False, constant=False):
    pool = [p for p in range(-span, span + 1) if p]
    dom = sorted(rng.sample(pool, rng.randint(1, 4)))
    entries = {}
    for p in dom:
        k = profile.bound(p)
        if constant:
            entries[p] = rng.randint(1, k) if p > 0 else -rng.randint(1, k)
        else:
            letter = rng.randint(0, k)
            entries[p] = letter if p > 0 else -letter
    if force_variable and all(v != VARIABLE for v in entries.values()):
        entries[dom[0]] = VARIABLE
    return make_word(entries, profile)


def surrounding_word(rng, inner, span=9, constant=False):
    """A word whose domain splits strictly around the span of `inner`."""
    lo, hi = inner.dom[0], inner.dom[-1]
    profile = inner.profile
    left_pool = [p for p in range(-span, lo) if p]
    right_pool = [p for p in range(hi + 1, span + 1) if p]
    dom = sorted(rng.sample(left_pool, rng.randint(1, 2))
                 + rng.sample(right_pool, rng.randint(1, 2)))
    entries = {}
    for p in dom:
        k = profile.bound(p)
        if constant:
            entries[p] = rng.randint(1, k) if p > 0 else -rng.randint(1, k)
        else:
            letter = rng.randint(0, k)
            entries[p] = letter if p > 0 else -letter
    return make_word(entries, profile)


def test_make_word_classification():
    w = make_word({-1: VARIABLE, 1: VARIABLE})
    assert w.is_variable_word and w.is_core
    c = make_word({-2: -2, 3: 1})
    assert not c.is_variable_word and c.is_core
    assert not make_word({1: 1}).is_core
    assert not make_word({-1: VARIABLE, 1: 1}).is_core  # variable on one side only


def test_make_word_errors():
    with pytest.raises(WordError):
        make_word({})
    with pytest.raises(WordError):
        make_word({0: 1})
    with pytest.raises(WordError):
        make_word({1: 2})  # bound k_1 = 1
    with pytest.raises(WordError):
        make_word({1: -1})  # sign mismatch
    with pytest.raises(WordError):
        make_word({-2: 1})


def test_concat():
    assert concat(make_word({1: 1}), make_word({2: VARIABLE})) == make_word({1: 1, 2: VARIABLE})
    assert concat(make_word({-1: -1}), make_word({1: 1})) == make_word({-1: -1, 1: 1})
    with pytest.raises(WordError):
        concat(make_word({1: 1}), make_word({1: VARIABLE}))


def test_rel_r1():
    w = make_word({-1: VARIABLE, 1: VARIABLE})
    u = make_word({-3: VARIABLE, 3: VARIABLE})
    assert rel_r1(w, u)
    assert not rel_r1(u, w)
    assert not rel_r1(w, make_word({5: 1}))  # no two-part split


def test_rel_r2():
    assert rel_r2(make_word({1: 1, 3: VARIABLE}), make_word({5: 1}))
    assert not rel_r2(make_word({1: 1, 5: VARIABLE}), make_word({3: 1}))
    assert not rel_r2(make_word({2: 1}), make_word({2: 2, 3: 1}))
    with pytest.raises(WordError):
        rel_r2(make_word({-1: -1, 1: 1}), make_word({2: 1}))


def test_merge_rules():
    assert merge(make_word({1: 1}, CONST2), make_word({1: 2}, CONST2)) == make_word({1: 2}, CONST2)
    assert merge(make_word({-1: -1}, CONST2), make_word({-1: -2}, CONST2)) \
        == make_word({-1: -2}, CONST2)
    w = make_word({-1: VARIABLE, 1: 1}, CONST2)
    assert merge(w, w) == w
    assert merge(make_word({1: 1}, CONST2), make_word({1: VARIABLE}, CONST2)) \
        == make_word({1: VARIABLE}, CONST2)


def test_merge_random_properties():
    rng = random.Random(99)
    for _ in range(500):
        a = random_word(rng)
        b = random_word(rng)
        c = random_word(rng)
        assert merge(a, a) == a
        assert merge(merge(a, b), c) == merge(a, merge(b, c))
    for _ in range(500):
        inner = random_word(rng, span=3)
        outer = surrounding_word(rng, inner)
        assert rel_r1(inner, outer)
        assert merge(inner, outer) == concat(inner, outer)


def test_substitute():
    assert substitute(make_word({-2: VARIABLE, 1: VARIABLE}), 1, 2) == make_word({-2: -2, 1: 1})
    w = make_word({-1: VARIABLE, 1: VARIABLE})
    assert substitute(w, 0, 0) is w
    assert substitute(make_word({2: VARIABLE}), 5, 1) == make_word({2: 2})
    with pytest.raises(WordError):
        substitute(w, 1, 0)
    with pytest.raises(WordError):
        substitute(w, 0, 3)


def test_substitute_nat():
    assert substitute_nat(make_word({3: VARIABLE}), 2) == make_word({3: 2})
    w = make_word({1: VARIABLE, 4: 2})
    assert substitute_nat(w, 0) is w
    assert substitute_nat(make_word({1: VARIABLE}), 4) == make_word({1: 1})
    with pytest.raises(WordError):
        substitute_nat(make_word({-1: VARIABLE}), 1)


def test_substitution_preserves_domain_and_constants():
    rng = random.Random(4242)
    for _ in range(1000):
        w = random_word(rng)
        p, q = rng.randint(1, 6), rng.randint(1, 6)
        image = substitute(w, p, q)
        assert image.dom == w.dom
        assert not image.is_variable_word
        if not w.is_variable_word:
            assert image == w


def test_substitute_distributes_over_concat():
    rng = random.Random(31337)
    for _ in range(500):
        inner = random_word(rng, span=3)
        outer = surrounding_word(rng, inner)
        p, q = rng.randint(1, 5), rng.randint(1, 5)
        lhs = substitute(concat(inner, outer), p, q)
        rhs = concat(substitute(inner, p, q), substitute(outer, p, q))
        assert lhs == rhs


def _ltilde0_domains(span):
    """All domains over [-span..span] with both sides nonempty, as
    (bitmask, min, max) triples."""
    positions = [p for p in range(-span, span + 1) if p]
    bit = {p: 1 << i for i, p in enumerate(positions)}
    out = []
    negs = [p for p in positions if p < 0]
    poss = [p for p in positions if p > 0]
    for nn in range(1, len(negs) + 1):
        for neg in combinations(negs, nn):
            for pn in range(1, len(poss) + 1):
                for pos in combinations(poss, pn):
                    dom = neg + pos
                    mask = 0
                    for p in dom:
                        mask |= bit[p]
                    out.append((mask, dom[0], dom[-1], dom))
    return positions, bit, out


def test_chain_property_exhaustive_window_4():
    # if w <R1 y and (w+y) <R1 z then w <R1 (y+z), on all domain triples
    positions, bit, domains = _ltilde0_domains(4)

    def span_mask(lo, hi):
        m = 0
        for p in positions:
            if lo <= p <= hi:
                m |= bit[p]
        return m

    def rel(a, b):
        return (b[0] & span_mask(a[1], a[2])) == 0 and b[1] < a[1] and b[2] > a[2]

    # cross-check the mask relation against rel_r1 on actual words
    rng = random.Random(5)
    sample = rng.sample(domains, 30)
    for a in sample:
        for b in sample:
            wa = make_word({p: VARIABLE for p in a[3]})
            wb = make_word({p: VARIABLE for p in b[3]})
            assert rel(a, b) == rel_r1(wa, wb)

    checked = 0
    for w in domains:
        for y in domains:
            if not rel(w, y):
                continue
            m = (w[0] | y[0], min(w[1], y[1]), max(w[2], y[2]))
            for z in domains:
                if rel(m, z):
                    yz = (y[0] | z[0], min(y[1], z[1]), max(y[2], z[2]))
                    assert rel(w, yz)
                    checked += 1
    assert checked > 0


def test_extracted_sets_empty_tuple():
    es = extracted_sets(make_tuple([]))
    assert es.constants == frozenset() and es.variables == frozenset()


def test_extracted_sets_single_word():
    w = make_word({-1: VARIABLE, 1: VARIABLE})
    es = extracted_sets(make_tuple([w]))
    assert es.constants == frozenset({make_word({-1: -1, 1: 1})})
    assert es.variables == frozenset({w})


def test_extracted_sets_grid_sizes():
    # a single word at tuple position n has k_n * k_-n constant images
    for n in (1, 2, 3):
        w = make_word({-6: VARIABLE, 6: VARIABLE})
        es = extracted_sets(make_tuple([w]), indices=[n])
        assert len(es.constants) == n * n


def test_extracted_sets_contains_members_and_is_finite():
    w1 = make_word({-1: VARIABLE, 1: VARIABLE})
    w2 = make_word({-3: VARIABLE, -2: -1, 2: 1, 3: VARIABLE})
    bw = make_tuple([w1, w2])
    es = extracted_sets(bw)
    assert w1 in es.variables and w2 in es.variables
    assert all(not v.is_variable_word for v in es.constants)
    assert all(v.is_variable_word for v in es.variables)
    with pytest.raises(WordError):
        extracted_sets(make_tuple([make_word({-1: -1, 1: 1})]))


def test_is_extraction():
    w1 = make_word({-1: VARIABLE, 1: VARIABLE})
    w2 = make_word({-3: VARIABLE, 3: VARIABLE})
    w3 = make_word({-5: VARIABLE, 5: VARIABLE})
    bw = make_tuple([w1, w2, w3])
    assert is_extraction(bw, bw)
    merged = concat(w1, w2)
    assert is_extraction(make_tuple([merged, w3]), bw)
    foreign = make_word({-9: VARIABLE, 9: VARIABLE})
    assert not is_extraction(make_tuple([foreign]), bw)


def test_ev_monotone_under_extraction():
    w1 = make_word({-1: VARIABLE, 1: VARIABLE})
    w2 = make_word({-3: VARIABLE, 3: VARIABLE})
    bw = make_tuple([w1, w2])
    big = extracted_sets(bw).variables
    for u_words in [(w1,), (w2,), (concat(w1, w2),), (w1, w2)]:
        u = make_tuple(u_words)
        assert is_extraction(u, bw)
        assert extracted_sets(u).variables <= big


def test_project_positive():
    assert project_positive(make_word({-2: -1, 1: 1, 3: VARIABLE})) \
        == make_word({1: 1, 3: VARIABLE})
    w = make_word({1: 1, 3: VARIABLE})
    assert project_positive(w) == w
    with pytest.raises(WordError):
        project_positive(make_word({-1: VARIABLE}))


def test_commuting_square_with_projection():
    # one-sided substitution after projection equals projection of the
    # symmetric two-sided substitution
    rng = random.Random(2718)
    for _ in range(500):
        w = random_word(rng)
        p = rng.randint(0, 5)
        lhs = substitute_nat(project_positive(w), p) if w.dom_pos else None
        if lhs is None:
            continue
        rhs = project_positive(substitute(w, p, p) if p else w)
        assert lhs == rhs


def test_pair_enumeration():
    pairs = pair_enumeration(ABS, 100)
    assert pairs[0] == (1, 1)
    assert len(set(pairs)) == 100
    ranks = [bound_pair_index(ABS, n) for n in range(1, 9)]
    assert ranks == sorted(ranks) and len(set(ranks)) == len(ranks)
    with pytest.raises(WordError):
        pair_enumeration(DominationProfile("const", 3), 5)


def test_h_map_identity_and_substitution():
    w1 = make_word({-1: VARIABLE, 1: VARIABLE})
    w2 = make_word({-3: VARIABLE, 3: VARIABLE})
    ws = [w1, w2]
    assert h_map(make_word({1: VARIABLE}), ws) == w1
    assert h_map(make_word({1: 1}), ws) == substitute(w1, 1, 1)
    with pytest.raises(WordError):
        h_map(make_word({3: VARIABLE}), ws)


def test_h_map_injective_on_small_window():
    w1 = make_word({-2: VARIABLE, -1: -1, 1: 1, 2: VARIABLE})
    w2 = make_word({-3: VARIABLE, 3: VARIABLE})
    ws = [w1, w2]
    ranks = [bound_pair_index(ABS, n) for n in (1, 2)]
    lvec = DominationProfile("table", 0, ((1, ranks[0]), (2, ranks[1])))
    images = {}
    for dom in [(1,), (2,), (1, 2)]:
        for letters in product(*[range(0, ranks[p - 1] + 1) for p in dom]):
            t = make_word(dict(zip(dom, letters)), lvec)
            image = h_map(t, ws)
            assert image not in images.values(), (t, image)
            images[t] = image
    assert len(images) == (ranks[0] + 1) + (ranks[1] + 1) + (ranks[0] + 1) * (ranks[1] + 1)


def test_orderly_tuple_validation():
    w1 = make_word({-1: VARIABLE, 1: VARIABLE})
    w2 = make_word({-3: VARIABLE, 3: VARIABLE})
    make_tuple([w1, w2])
    with pytest.raises(WordError):
        make_tuple([w2, w1])
    with pytest.raises(WordError):
        make_tuple([make_word({1: VARIABLE})])  # outside the core class
    assert len(make_tuple([])) == 0


def test_profile_text_round_trip():
    for text in ["abs", "abs+2", "const:3", "table:-2=2,-1=1,1=1,2=2"]:
        assert format_profile(parse_profile(text)) == text
    assert parse_profile("table:-1=5,1=1").sided_monotone
    assert not parse_profile("table:-2=1,-1=5,1=1,2=2").sided_monotone


def test_word_text_round_trip_random():
    rng = random.Random(11)
    for _ in range(1000):
        w = random_word(rng)
        assert parse_word(format_word(w)) == w
