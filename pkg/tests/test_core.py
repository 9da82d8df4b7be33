import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from randsub.core import (
    DeterministicSubstitution,
    IntMatrix,
    RandomSubstitution,
    abelianise,
    apply,
    default_budget,
    dump_substitution,
    is_compatible,
    is_constant_length,
    is_primitive,
    is_primitive_substitution,
    load_substitution,
    marginals,
    power,
    substitution_matrix,
    validate_substitution,
)
from randsub.errors import (
    BudgetExceeded,
    DuplicateSymbol,
    EmptyAlphabet,
    EmptyRuleSet,
    EmptyRuleWord,
    InvalidDefinition,
    NotCompatible,
    UnknownSymbol,
)


def test_rejects_malformed_definitions():
    with pytest.raises(EmptyAlphabet):
        RandomSubstitution.from_rules({}, [])
    with pytest.raises(DuplicateSymbol):
        RandomSubstitution.from_rules({"a": ["a"]}, ["a", "a"])
    with pytest.raises(UnknownSymbol):
        RandomSubstitution.from_rules({"a": ["ac"]}, ["a"])
    with pytest.raises(EmptyRuleSet):
        RandomSubstitution.from_rules({"a": []})
    with pytest.raises(EmptyRuleSet):
        RandomSubstitution.from_rules({"a": ["a"]}, ["a", "b"])
    with pytest.raises(EmptyRuleWord):
        RandomSubstitution.from_rules({"a": ["", "a"]})
    with pytest.raises(InvalidDefinition):
        validate_substitution({"alphabet": ["a"]})


def test_realisations_are_deduplicated_and_sorted(fib):
    sub = RandomSubstitution.from_rules({"a": ["ba", "ab", "ab"], "b": ["a"]})
    assert sub["a"] == ("ab", "ba")
    assert sub == fib


def test_json_round_trip(tmp_path, ex51):
    path = tmp_path / "s.json"
    dump_substitution(ex51, path)
    assert load_substitution(path) == ex51
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidDefinition):
        load_substitution(bad)
    single = validate_substitution(json.loads('{"alphabet": "ab", "rules": {"a": "ab", "b": ["a"]}}'))
    assert single["a"] == ("ab",)


def test_compatibility_and_matrix(fib, ex52):
    assert is_compatible(fib)
    assert substitution_matrix(fib).rows == ((1, 1), (1, 0))
    assert substitution_matrix(ex52).rows == ((0, 4), (2, 2))
    bad = RandomSubstitution.from_rules({"a": ["ab", "aa"], "b": ["a"]})
    assert not is_compatible(bad)
    with pytest.raises(NotCompatible):
        substitution_matrix(bad)


def test_primitivity_examples(fib):
    assert is_primitive(IntMatrix.from_rows([[1, 1], [1, 0]]))
    assert not is_primitive(IntMatrix.from_rows([[1, 1], [0, 1]]))
    assert not is_primitive(IntMatrix.from_rows([[0, 1], [1, 0]]))
    assert is_primitive_substitution(fib)
    assert not is_primitive_substitution(RandomSubstitution.from_rules({"a": ["ab"], "b": ["b"]}))


def _brute_primitive(M):
    d = M.size
    P = IntMatrix.identity(d)
    for _ in range(d * d + 1):
        P = P @ M
        if P.is_positive():
            return True
    return False


@given(st.integers(1, 4).flatmap(lambda d: st.lists(st.lists(st.integers(0, 1), min_size=d, max_size=d), min_size=d, max_size=d)))
def test_primitivity_matches_power_search(rows):
    M = IntMatrix.from_rows(rows)
    assert is_primitive(M) == _brute_primitive(M)


def test_constant_length(fib, pd):
    assert is_constant_length(pd) == 2
    assert is_constant_length(fib) is None


def test_apply_power_and_marginals(fib):
    assert apply(fib, "ab") == ("aba", "baa")
    assert power(fib, 2)["a"] == ("aab", "aba", "baa")
    assert power(fib, 2)["b"] == ("ab", "ba")
    ms = marginals(fib)
    assert [m.rules for m in ms] == [{"a": "ab", "b": "a"}, {"a": "ba", "b": "a"}]
    assert ms[0].apply("ab") == "aba"
    with pytest.raises(ValueError):
        power(fib, 0)
    with pytest.raises(ValueError):
        apply(fib, "")


def test_budget_from_environment(monkeypatch, fib):
    monkeypatch.setenv("RANDSUB_BUDGET", "3")
    assert default_budget() == 3
    with pytest.raises(BudgetExceeded):
        apply(fib, "aaa")
    monkeypatch.setenv("RANDSUB_BUDGET", "many")
    with pytest.raises(InvalidDefinition):
        default_budget()


def test_deterministic_substitution():
    theta = DeterministicSubstitution.from_rules({"a": "ab", "b": "a"})
    assert theta.apply("aab") == "ababa"
    assert theta.as_random()["a"] == ("ab",)


compatible_subs = st.sampled_from(
    [
        {"a": ["ab", "ba"], "b": ["a"]},
        {"a": ["ab", "ba"], "b": ["aa"]},
        {"a": ["abababa", "bbbaaaa"], "b": ["babb", "bbab"]},
        {"a": ["bb"], "b": ["abaaba", "ababaa"]},
        {"a": ["abc", "cba"], "b": ["a"], "c": ["b", "b"]},
    ]
)


@given(compatible_subs, st.text(alphabet="abc", min_size=1, max_size=6), st.data())
def test_abelianisation_commutes_with_substitution(rules, word, data):
    sub = RandomSubstitution.from_rules(rules)
    word = "".join(c for c in word if c in sub.alphabet) or sub.alphabet[0]
    M = substitution_matrix(sub)
    image = "".join(data.draw(st.sampled_from(sub[c])) for c in word)
    assert abelianise(image, sub.alphabet) == M @ abelianise(word, sub.alphabet)


@given(compatible_subs, st.integers(1, 2))
def test_power_matrix_is_matrix_power(rules, n):
    sub = RandomSubstitution.from_rules(rules)
    assert substitution_matrix(power(sub, n)) == substitution_matrix(sub) ** n


def test_marginal_count(ex51):
    assert len(marginals(ex51)) == 4
    assert len({m.images for m in marginals(ex51)}) == 4
    assert all(m.images in set(itertools.product(*ex51.images)) for m in marginals(ex51))
