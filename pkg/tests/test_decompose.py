import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_decompositions, brute_language, power_rules
from randsub.core import RandomSubstitution, power
from randsub.decompose import (
    InflationDecomposition,
    decompositions,
    exact_preimages,
    find_recognisable_word,
    fib_recognisable_word,
    induced,
    is_legal_word,
    is_recognisable,
    lift_recognisable_word,
    local_recognisability,
    position_labels,
    recognisability_radius,
    recognisable_ladder,
)
from randsub.language import legal_words
from randsub.errors import IndexOutOfRange, NotLegal, TableTooSmall


@pytest.fixture(scope="module")
def oracle_cache():
    return {}


def _oracle(cache, sub, n, L=8):
    key = (sub, n)
    if key not in cache:
        lang = cache.setdefault((sub, "lang"), brute_language(sub.rules, L))
        cache[key] = brute_decompositions(sub.rules, n, lang, L)
    return cache[key]


@pytest.mark.parametrize("name,levels", [("fib", (1, 2, 3)), ("pd", (1, 2)), ("ex52", (1,))])
def test_decompositions_match_oracle(fx, oracle_cache, name, levels):
    sub, table = fx[name], fx.table(name)
    for n in levels:
        oracle = _oracle(oracle_cache, sub, n)
        for w in [w for k in range(1, 7) for w in table.words(k)]:
            assert decompositions(sub, n, w, table).pairs() == oracle[w], (n, w)


def test_exactness_flags(fib, fx):
    ds = decompositions(fib, 1, "aab", fx.table("fib"))
    by_str = {str(d): d for d in ds}
    assert set(by_str) == {"([a,ab],ba)", "([a,a,b],aba)", "([a,ab],aa)", "([a,a,b],bba)"}
    assert by_str["([a,a,b],aba)"].first_partial and by_str["([a,a,b],aba)"].last_partial
    assert by_str["([a,ab],aa)"].first_partial and not by_str["([a,ab],aa)"].last_partial
    assert by_str["([a,ab],ba)"].is_exact
    assert exact_preimages(fib, 1, "abba", fx.table("fib")) == ("aa",)
    assert exact_preimages(fib, 1, "aab", fx.table("fib")) == ("ba",)


def test_decomposition_errors(fib, fx):
    t = fx.table("fib")
    with pytest.raises(NotLegal):
        decompositions(fib, 1, "bbb", t)
    with pytest.raises(NotLegal):
        decompositions(fib, 1, "", t)
    with pytest.raises(ValueError):
        decompositions(fib, 0, "ab", t)


def test_induced_decomposition():
    d = InflationDecomposition(("b", "ba", "ba"), "aaa", 1, True, False)
    assert str(induced(d, 2, 4)) == "([ba,b],aa)"
    assert induced(d, 1, 5) == d
    assert induced(d, 2, 4).last_partial
    with pytest.raises(IndexOutOfRange):
        induced(d, 0, 2)
    with pytest.raises(IndexOutOfRange):
        induced(d, 3, 6)


@given(st.sampled_from(["fib", "pd", "ex52"]), st.integers(1, 2), st.data())
def test_induced_decompositions_are_decompositions(fx, name, n, data):
    sub, table = fx[name], fx.table(name)
    w = data.draw(st.sampled_from(table.words(data.draw(st.integers(2, 9)))))
    d = data.draw(st.sampled_from(decompositions(sub, n, w, table).items))
    i = data.draw(st.integers(1, len(w)))
    j = data.draw(st.integers(i, len(w)))
    sub_d = induced(d, i, j)
    assert sub_d.word == w[i - 1 : j]
    assert sub_d in decompositions(sub, n, sub_d.word, table)


@given(st.sampled_from(["fib", "pd", "ex52"]), st.data())
def test_every_decomposition_reassembles(fx, name, data):
    sub, table = fx[name], fx.table(name)
    n = data.draw(st.integers(1, 2))
    pn = power(sub, n)
    w = data.draw(st.sampled_from(table.words(data.draw(st.integers(1, 10)))))
    for d in decompositions(sub, n, w, table):
        assert d.word == w and len(d.root) == len(d.pieces) and d.root in table
        for k, (piece, letter) in enumerate(zip(d.pieces, d.root)):
            images = pn[letter]
            if 0 < k < len(d.pieces) - 1:
                assert piece in images
            elif len(d.pieces) == 1:
                assert any(piece in x for x in images)
            elif k == 0:
                assert any(x.endswith(piece) for x in images)
            else:
                assert any(x.startswith(piece) for x in images)


def test_recognisability(fib, fx):
    t = fx.table("fib")
    v = is_recognisable(fib, 1, "abba", 0, t)
    assert v.recognisable and str(v.decomposition) == "([ab,ba],aa)"
    amb = is_recognisable(fib, 1, "aab", 0, t)
    assert amb.status == "ambiguous" and len(amb.witness.induced) == 4
    with pytest.raises(TableTooSmall):
        is_recognisable(fib, 1, "ab", 8, t)
    r = recognisability_radius(fib, 1, "ab", 7, t)
    assert r.status == "ambiguous" and r.max_radius_tested == 7
    assert recognisability_radius(fib, 1, "ab", 8, t).status == "inconclusive"


def test_recognisable_at_radius_is_monotone(pd, fx):
    t = fx.table("pd")
    for w in t.words(5):
        first = recognisability_radius(pd, 1, w, 3, t)
        if first.recognisable:
            for N in range(first.radius, 4):
                assert is_recognisable(pd, 1, w, N, t).recognisable


def test_random_fibonacci_words(fib, fx):
    t = fx.table("fib")
    assert fib_recognisable_word(1) == "abba"
    for n in range(1, 4):
        w = fib_recognisable_word(n)
        assert is_legal_word(fib, t, w)
        assert exact_preimages(fib, n, w, t) == ("aa",)
        assert is_recognisable(fib, n, w, 0, t).recognisable


def test_local_recognisability_certified(ex52, fx):
    lr = local_recognisability(ex52, 1, 20, fx.table("ex52"))
    assert lr.certified and lr.radius == 17
    assert set(lr.per_letter) == {"a", "b"}


def test_local_recognisability_refuted(fib, fx):
    lr = local_recognisability(fib, 1, 6, fx.table("fib"))
    assert lr.status == "refuted"
    for letter, (window, labels) in lr.witnesses.items():
        assert len(labels) > 1
        assert position_labels(fib, 1, window, lr.radius, fx.table("fib")) == set(labels)


def test_position_labels_on_long_words(fib, fx):
    t = fx.table("fib")
    w = fib_recognisable_word(2)
    labels = position_labels(fib, 1, w, 0, t)
    assert labels and all(letter in "ab" for letter, _ in labels)


def test_recognisable_word_search_and_ladder(fib, fx):
    t = fx.table("fib")
    found = find_recognisable_word(fib, 1, t)
    assert found.word == "abba" and found.root == "aa"
    lifted = lift_recognisable_word(fib, found, t)
    assert lifted.level == 2 and is_recognisable(fib, 2, lifted.word, 0, t).recognisable
    ladder = recognisable_ladder(fib, 3, t)
    assert [r.level for r in ladder] == [1, 2, 3]
    for r in ladder:
        assert len(decompositions(fib, r.level, r.word, t)) == 1
        assert r.root in t
    assert find_recognisable_word(fib, 1, t, budget=1) is None


def test_no_recognisable_word_for_full_shift_substitution():
    sub = RandomSubstitution.from_rules({"a": ["ab", "ba"], "b": ["ab", "ba"]})
    t = legal_words(sub, 8)
    assert find_recognisable_word(sub, 1, t, max_root_length=2) is None


def test_power_oracle_agrees(fib):
    assert {a: set(ws) for a, ws in zip(fib.alphabet, power(fib, 3).images)} == power_rules(fib.rules, 3)


def test_one_letter_doubling_has_no_recognisable_word():
    sub = RandomSubstitution.from_rules({"a": ["aa"]})
    assert find_recognisable_word(sub, 1, legal_words(sub, 12), max_radius=2) is None
