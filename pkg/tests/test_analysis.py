import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from randsub.analysis import (
    CERTIFIED,
    HOLDS,
    INCONCLUSIVE,
    MIXING,
    NOT_MIXING,
    LengthSpectrum,
    MixConfig,
    balance_report,
    congruence_obstruction,
    inflation_length_density,
    mixing_verdict,
    return_length_spectrum,
)
from randsub.core import RandomSubstitution
from randsub.decompose import is_legal_word
from randsub.errors import EmptySpectrum, LengthExceedsTable, NotCompatible, NotLegal
from randsub.quadratic import QuadNumber

ROOT5 = QuadNumber(0, 1, 5)


def test_fibonacci_balance_constants(fib, fx):
    r = balance_report(fib, fx.table("fib", 12))
    assert r.D == (ROOT5 - 1) / 2
    assert r.B == ROOT5 + 1 and r.C == 7
    assert r.c1 == (ROOT5 - 1) / 2 and r.c2 == ROOT5 - 1
    assert r.threshold == 6
    assert r.max_discrepancy == 13 - 5 * ROOT5
    assert r.count_spread == {"a": 3, "b": 3}
    w = r.witness["a"]
    f = r.frequencies[0]
    assert abs(fib.abelianise(w)[0] - f * len(w)) == r.discrepancy["a"]


def test_balance_constants_need_pisot(ex51, fx):
    r = balance_report(ex51, fx.table("ex51", 8))
    assert r.reason == "|λ₂| > 1" and r.B is None
    assert json.loads(json.dumps(r.to_json()))["reason"] == "|λ₂| > 1"


def test_return_length_spectra(ex52, fx):
    t = fx.table("ex52")
    s = return_length_spectrum(ex52, "abb", "abb", 16, t)
    assert s.values == (8, 10, 12) and s.congruence.modulus == 2
    s = return_length_spectrum(ex52, "bb", "bb", 16, t)
    assert s.values[:3] == (2, 3, 4) and s.congruence.modulus is None
    for x, w in s.witnesses.items():
        assert w in t and w.startswith("bb") and w.endswith("bb") and len(w) - 2 == x
    with pytest.raises(NotLegal):
        return_length_spectrum(ex52, "aaaa", "bb", 16, t)
    with pytest.raises(LengthExceedsTable):
        return_length_spectrum(ex52, "bb", "bb", 17, t)


def test_congruence_obstruction():
    assert congruence_obstruction(LengthSpectrum("a", "a", 9, (5, 6, 9), {})).modulus is None
    assert congruence_obstruction(LengthSpectrum("a", "a", 9, (3, 9, 15), {})).modulus == 6
    single = congruence_obstruction(LengthSpectrum("a", "a", 9, (4,), {}))
    assert single.insufficient and single.modulus is None
    with pytest.raises(EmptySpectrum):
        congruence_obstruction(LengthSpectrum("a", "a", 9, (), {}))


def test_inflation_length_density(fib, pd, fx):
    d = inflation_length_density(fib, 3, 60, fx.table("fib"))
    assert d.density == Fraction(4, 5) and d.density <= d.bound
    d = inflation_length_density(pd, 1, 40, fx.table("pd"))
    assert d.density == Fraction(1, 2) and all(x % 2 == 0 for x in d.lengths)


@given(st.sampled_from(["fib", "pd", "ex52"]), st.integers(0, 3), st.integers(4, 48))
def test_inflation_lengths_match_table_roots(fx, name, n, L):
    sub, table = fx[name], fx.table(name)
    row = [1, 1]
    for _ in range(n):
        row = [sum(row[sub.alphabet.index(c)] for c in sub[a][0]) for a in sub.alphabet]
    if L // min(row) > table.max_length:
        return
    d = inflation_length_density(sub, n, L, table)
    expected = {sum(k * r for k, r in zip(sub.abelianise(v), row)) for v in table if v}
    assert set(d.lengths) == {x for x in expected if x <= L}
    if d.bound is not None:
        assert d.density <= d.bound + Fraction(1, L)


def test_fixture_verdicts(fib, pd, ex51, ex52):
    v = mixing_verdict(ex51)
    assert v.status == MIXING and v.rule == "gcd-iff-theorem" and v.conditional
    assert any(h.state == CERTIFIED for h in v.checklist)
    v = mixing_verdict(ex52)
    assert v.status == NOT_MIXING and v.rule == "gcd-necessity-theorem"
    v = mixing_verdict(pd)
    assert v.status == NOT_MIXING and v.rule == "recognisable-word-spacing" and not v.conditional
    assert v.evidence["spacing_word"].word == "abba"
    v = mixing_verdict(fib)
    assert v.status == NOT_MIXING and v.rule == "recognisable-word-theorem" and not v.conditional


def test_decided_verdicts_list_only_held_hypotheses(fx):
    for name in ("fib", "pd", "ex51", "ex52"):
        v = mixing_verdict(fx[name])
        assert {h.state for h in v.checklist} <= {HOLDS, CERTIFIED}
        assert v.conditional == any(h.state == CERTIFIED for h in v.checklist)
        assert json.loads(json.dumps(v.to_json()))["status"] == v.status


def test_proof_strength_drops_the_condition(ex51):
    v = mixing_verdict(ex51, MixConfig(proof_strength=True))
    assert v.status == MIXING and not v.conditional


def test_inconclusive_outside_every_rule():
    sub = RandomSubstitution.from_rules({"a": ["aab", "aba", "baa"], "b": ["a"]})
    v = mixing_verdict(sub)
    assert v.status == INCONCLUSIVE and v.rule is None
    assert any("ladder stops" in t for t in v.trace)


def test_verdict_input_errors():
    with pytest.raises(NotCompatible):
        mixing_verdict(RandomSubstitution.from_rules({"a": ["ab", "aa"], "b": ["a"]}))
    v = mixing_verdict(RandomSubstitution.from_rules({"a": ["ab"], "b": ["b"]}))
    assert v.status == INCONCLUSIVE and v.checklist[-1].name == "primitive"
    with pytest.raises(ValueError):
        MixConfig(table_length=0)


def test_spectrum_witnesses_reverify(ex52, fx):
    t = fx.table("ex52")
    s = return_length_spectrum(ex52, "abb", "abb", 16, t)
    for x, w in s.witnesses.items():
        assert is_legal_word(ex52, t, w) and w[:3] == "abb" and w[x:] == "abb"
