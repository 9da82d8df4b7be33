import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_language
from randsub.core import RandomSubstitution
from randsub.decompose import is_legal_word
from randsub.errors import LengthExceedsTable, NotLegal, UnknownSymbol
from randsub.language import cached_legal_words, complexity, is_legal, legal_words, marginal_containing


@pytest.mark.parametrize("name,L", [("fib", 8), ("pd", 8), ("ex52", 8), ("ex51", 6)])
def test_table_matches_super_word_factors(fx, name, L):
    sub = fx[name]
    assert set(legal_words(sub, L)) == brute_language(sub.rules, L)


def test_three_letter_table_matches_oracle():
    sub = RandomSubstitution.from_rules({"a": ["abc", "cba"], "b": ["a"], "c": ["b", "b"]})
    assert set(legal_words(sub, 7)) == brute_language(sub.rules, 7)


def test_complexity_and_rounds(fib):
    t = legal_words(fib, 10)
    assert [complexity(t, n) for n in range(1, 4)] == [2, 4, 7]
    assert t.rounds >= 1 and t.first_round["a"] == 0
    assert t.words(0) == ("",)


def test_is_legal_errors(fib):
    t = cached_legal_words(fib, 8)
    assert is_legal(t, "")
    with pytest.raises(LengthExceedsTable):
        is_legal(t, "a" * 9)
    with pytest.raises(UnknownSymbol):
        is_legal(t, "abc")


def test_long_word_legality_agrees_with_bigger_table(fib, ex52):
    rng = random.Random(7)
    for sub in (fib, ex52):
        small = legal_words(sub, 9)
        big = cached_legal_words(sub, 14)
        for n in range(10, 15):
            for w in big.words(n)[::7]:
                assert is_legal_word(sub, small, w)
            for _ in range(40):
                w = "".join(rng.choice(sub.alphabet) for _ in range(n))
                assert is_legal_word(sub, small, w) == (w in big)


def test_marginal_containing(fib):
    theta, k = marginal_containing(fib, "bb")
    word = "a"
    for _ in range(k + 3):
        word = theta.apply(word)
    assert "bb" in word
    with pytest.raises(NotLegal):
        marginal_containing(fib, "bbb", cached_legal_words(fib, 8))


def test_non_primitive_warns():
    sub = RandomSubstitution.from_rules({"a": ["ab"], "b": ["b"]})
    with pytest.warns(UserWarning):
        t = legal_words(sub, 4)
    assert "ab" in t and "ba" not in t


@given(st.sampled_from(["fib", "pd", "ex51", "ex52"]), st.data())
def test_language_is_factorial_and_extendable(fx, name, data):
    t = cached_legal_words(fx[name], 16)
    n = data.draw(st.integers(2, 15))
    w = data.draw(st.sampled_from(t.words(n)))
    assert all(w[i:j] in t for i in range(n) for j in range(i + 1, n + 1))
    assert any(w + c in t for c in fx[name].alphabet)
    assert any(c + w in t for c in fx[name].alphabet)
