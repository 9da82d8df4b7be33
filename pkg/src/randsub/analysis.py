"""Mixing verdicts, balancedness bounds, return-length spectra and length densities."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Optional

import mpmath

from .core import (
    RandomSubstitution,
    default_budget,
    is_compatible,
    is_constant_length,
    is_primitive_substitution,
    power,
    substitution_matrix,
)
from .decompose import (
    LocalRecognisability,
    find_recognisable_word,
    is_legal_word,
    local_recognisability,
    recognisable_ladder,
)
from .errors import BudgetExceeded, EmptySpectrum, LengthExceedsTable, NotCompatible, NotLegal
from .language import LanguageTable, cached_legal_words, legal_words
from .quadratic import QuadNumber
from .spectral import SpectralData, gcd_report, spectral_data

MIXING = "Mixing"
NOT_MIXING = "NotMixing"
INCONCLUSIVE = "Inconclusive"

HOLDS = "Holds"
FAILS = "FailsWith"
CERTIFIED = "CertifiedUpToTable"
UNKNOWN = "Unknown"

# rule tags, named by the result they apply
RULE_CONSTANT_LENGTH = "constant-length-corollary"
RULE_GCD_SUFFICIENCY = "gcd-iff-theorem"
RULE_GCD_NECESSITY = "gcd-necessity-theorem"
RULE_INTEGER_EIGENVALUE = "integer-eigenvalue-proposition"
RULE_RECOGNISABLE_WORD = "recognisable-word-theorem"
RULE_RECOGNISABLE_SPACING = "recognisable-word-spacing"

CHECK_LEVELS = 12


def _json(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(x, 20)
    return x


# --------------------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Hypothesis:
    """One hypothesis of a rule with its state and, for failures, a witness."""

    name: str
    state: str
    witness: object = None

    def to_json(self) -> dict:
        out = {"hypothesis": self.name, "state": self.state}
        if self.witness is not None:
            out["witness"] = _json(self.witness)
        return out


@dataclass(frozen=True)
class AnalysisVerdict:
    """Outcome of the rule tree.

    ``conditional`` is set when some hypothesis of the applied rule is only
    :data:`CERTIFIED` rather than :data:`HOLDS`.  ``trace`` records why each
    earlier rule did not apply.
    """

    status: str
    rule: Optional[str]
    conditional: bool
    checklist: tuple[Hypothesis, ...]
    evidence: dict = field(default_factory=dict)
    trace: tuple[str, ...] = ()

    def __post_init__(self):
        if self.status != INCONCLUSIVE:
            states = {h.state for h in self.checklist}
            assert states <= {HOLDS, CERTIFIED}, "a decided verdict needs every hypothesis settled"
            assert self.conditional == (CERTIFIED in states)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "rule": self.rule,
            "conditional": self.conditional,
            "checklist": [h.to_json() for h in self.checklist],
            "evidence": {k: _json(v) for k, v in self.evidence.items()},
            "trace": list(self.trace),
        }


@dataclass(frozen=True)
class MixConfig:
    """Search limits for :func:`mixing_verdict`.

    ``proof_strength`` lets two-letter inputs with ``|λ₂| > 1`` and all gcds
    equal to 1 be declared mixing without a recognisability certificate.
    """

    table_length: int = 16
    proof_strength: bool = False
    radius_max: int = 40
    max_states: int = 100_000
    gcd_levels: int = 10
    ladder_budget: int = 20_000
    spectrum_length: int = 12
    budget: Optional[int] = None

    def __post_init__(self):
        for name in ("table_length", "radius_max", "max_states", "gcd_levels", "ladder_budget", "spectrum_length"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def _decide(status, rule, checklist, evidence, trace) -> AnalysisVerdict:
    conditional = any(h.state == CERTIFIED for h in checklist)
    return AnalysisVerdict(status, rule, conditional, tuple(checklist), evidence, tuple(trace))


def _recognisability_hypothesis(lr: LocalRecognisability) -> Hypothesis:
    name = "locally recognisable"
    if lr.certified:
        return Hypothesis(name, CERTIFIED, {"radius": lr.radius, "table_length": lr.table_length})
    if lr.status == "refuted":
        a = sorted(lr.witnesses)[0]
        window, labels = lr.witnesses[a]
        return Hypothesis(name, FAILS, {"radius": lr.radius, "window": window, "labels": [list(x) for x in labels]})
    return Hypothesis(name, UNKNOWN, {"radius_searched": lr.radius})


def mixing_verdict(sub: RandomSubstitution, config: MixConfig | None = None) -> AnalysisVerdict:
    """Decide topological mixing of the subshift by the first rule that applies.

    Rules, in order: constant length with local recognisability; two letters
    with ``|λ₂| > 1`` and all gcds 1; a gcd above 1 with local
    recognisability; two letters with an integer ``λ₁``; irreducible Pisot
    with a recognisable word at the balancedness threshold level; a gcd
    above 1 together with any uniquely decomposable word at that level.
    Otherwise the verdict is inconclusive and carries spectra as evidence.
    """
    return _mixing_verdict(sub, config or MixConfig())


@lru_cache(maxsize=64)
def _mixing_verdict(sub: RandomSubstitution, config: MixConfig) -> AnalysisVerdict:
    if not is_compatible(sub):
        raise NotCompatible()
    trace: list[str] = []
    compatible = Hypothesis("compatible", HOLDS)
    if not is_primitive_substitution(sub):
        M = substitution_matrix(sub)
        return _decide(
            INCONCLUSIVE, None, [compatible, Hypothesis("primitive", FAILS, M.tolist())], {}, ["not primitive"]
        )
    primitive = Hypothesis("primitive", HOLDS)
    budget = config.budget
    if budget is None:
        table = cached_legal_words(sub, config.table_length)
    else:
        table = legal_words(sub, config.table_length, budget)
    spec = spectral_data(sub)
    gcd = gcd_report(sub, config.gcd_levels)
    evidence: dict = {"spectral": spec, "gcd": gcd}
    base = [compatible, primitive]

    lr_cache: list[LocalRecognisability] = []

    def recognisability() -> LocalRecognisability:
        if not lr_cache:
            lr_cache.append(local_recognisability(sub, 1, config.radius_max, table, budget, config.max_states))
            evidence["local_recognisability"] = lr_cache[0]
        return lr_cache[0]

    two = spec.d == 2
    gcd_hyp = (
        Hypothesis("gcd of super-word lengths is 1 at every level", HOLDS, gcd.values)
        if gcd.all_one
        else Hypothesis("some level has gcd above 1", HOLDS, {"level": gcd.at[0], "gcd": gcd.at[1]})
    )

    # constant length
    ell = is_constant_length(sub)
    if ell and ell > 1:
        rec = _recognisability_hypothesis(recognisability())
        checks = base + [Hypothesis("constant length above 1", HOLDS, ell), rec]
        if rec.state == CERTIFIED:
            return _decide(NOT_MIXING, RULE_CONSTANT_LENGTH, checks, evidence, trace)
        trace.append(f"{RULE_CONSTANT_LENGTH}: recognisability {rec.state}")
    else:
        trace.append(f"{RULE_CONSTANT_LENGTH}: not of constant length above 1")

    # two letters, |λ₂| > 1
    if two and spec.lambda2_class == "gt1" and gcd.all_one:
        lam2 = Hypothesis("|λ₂| > 1", HOLDS, str(spec.lambda2))
        checks = base + [Hypothesis("two letters", HOLDS), lam2, gcd_hyp]
        if config.proof_strength:
            return _decide(MIXING, RULE_GCD_SUFFICIENCY, checks, evidence, trace)
        rec = _recognisability_hypothesis(recognisability())
        if rec.state == CERTIFIED:
            return _decide(MIXING, RULE_GCD_SUFFICIENCY, checks + [rec], evidence, trace)
        trace.append(f"{RULE_GCD_SUFFICIENCY}: recognisability {rec.state}")
    else:
        trace.append(f"{RULE_GCD_SUFFICIENCY}: needs two letters, |λ₂| > 1 and all gcds 1")

    # gcd above 1
    if not gcd.all_one:
        rec = _recognisability_hypothesis(recognisability())
        if rec.state == CERTIFIED:
            return _decide(NOT_MIXING, RULE_GCD_NECESSITY, base + [gcd_hyp, rec], evidence, trace)
        trace.append(f"{RULE_GCD_NECESSITY}: recognisability {rec.state}")
    else:
        trace.append(f"{RULE_GCD_NECESSITY}: every gcd is 1")

    # integer λ₁
    if two and spec.lambda1_is_integer and spec.lambda2_class == "gt1":
        rec = _recognisability_hypothesis(recognisability())
        checks = base + [
            Hypothesis("two letters", HOLDS),
            Hypothesis("λ₁ is an integer", HOLDS, str(spec.lambda1)),
            Hypothesis("|λ₂| > 1", HOLDS, str(spec.lambda2)),
            rec,
        ]
        if rec.state == CERTIFIED:
            return _decide(NOT_MIXING, RULE_INTEGER_EIGENVALUE, checks, evidence, trace)
        trace.append(f"{RULE_INTEGER_EIGENVALUE}: recognisability {rec.state}")
    else:
        trace.append(f"{RULE_INTEGER_EIGENVALUE}: needs two letters, integer λ₁ and |λ₂| > 1")

    # irreducible Pisot
    if spec.is_irreducible_pisot:
        balance = balance_report(sub, table)
        evidence["balance"] = balance
        if balance.threshold is None:
            trace.append(f"{RULE_RECOGNISABLE_WORD}: no threshold level ({balance.reason})")
        else:
            N = balance.threshold
            ladder = recognisable_ladder(sub, N, table, config.ladder_budget)
            evidence["ladder"] = ladder
            if len(ladder) >= N:
                checks = base + [
                    Hypothesis("irreducible Pisot", HOLDS, str(spec.lambda1)),
                    Hypothesis("threshold level", HOLDS, N),
                    Hypothesis("recognisable word at the threshold level", HOLDS, ladder[N - 1].word),
                ]
                return _decide(NOT_MIXING, RULE_RECOGNISABLE_WORD, checks, evidence, trace)
            trace.append(f"{RULE_RECOGNISABLE_WORD}: ladder stops at level {len(ladder)} below {N}")
    else:
        trace.append(f"{RULE_RECOGNISABLE_WORD}: not irreducible Pisot")

    # a uniquely decomposable word at a level with gcd above 1
    if not gcd.all_one:
        n, g = gcd.at
        try:
            word = find_recognisable_word(sub, n, table, config.ladder_budget)
        except BudgetExceeded:
            word = None
        if word is not None:
            evidence["spacing_word"] = word
            checks = base + [
                gcd_hyp,
                Hypothesis(f"a word with a single level-{n} decomposition", HOLDS, word.word),
            ]
            return _decide(NOT_MIXING, RULE_RECOGNISABLE_SPACING, checks, evidence, trace)
        trace.append(f"{RULE_RECOGNISABLE_SPACING}: no uniquely decomposable level-{n} word found")

    # evidence only
    spectra = []
    for a in sub.alphabet:
        s = return_length_spectrum(sub, a, a, min(config.spectrum_length, table.max_length), table)
        spectra.append(s)
    evidence["spectra"] = spectra
    lr = lr_cache[0] if lr_cache else None
    checks = base + [gcd_hyp]
    if lr is not None:
        checks.append(_recognisability_hypothesis(lr))
    return _decide(INCONCLUSIVE, None, checks, evidence, trace)


# --------------------------------------------------------------------------- balancedness


@dataclass(frozen=True)
class BalanceReport:
    """Letter-count discrepancies and the constants of the balancedness bound.

    ``discrepancy[a]`` is the largest ``| |w|_a − f_a|w| |`` over legal words
    of length at most ``max_length``, attained by ``witness[a]``.
    ``count_spread[a]`` is the largest difference of ``|w|_a`` between two
    legal words of equal length.  The theoretical fields (``D``, ``B``,
    ``C``, ``c1``, ``c2``, ``threshold``) are exact, or ``None`` with
    ``reason`` when the input is not a diagonalisable two-letter
    irreducible Pisot substitution.
    """

    alphabet: tuple[str, ...]
    max_length: int
    frequencies: tuple
    discrepancy: dict
    witness: dict
    count_spread: dict
    k: int
    D: Optional[QuadNumber] = None
    B: Optional[QuadNumber] = None
    C: Optional[int] = None
    c1: Optional[QuadNumber] = None
    c2: Optional[QuadNumber] = None
    threshold: Optional[int] = None
    reason: Optional[str] = None

    @property
    def max_discrepancy(self):
        return max(self.discrepancy.values())

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "max_length": self.max_length,
            "frequencies": _json(self.frequencies),
            "discrepancy": _json(self.discrepancy),
            "witness": dict(self.witness),
            "count_spread": dict(self.count_spread),
            "k": self.k,
            "D": _json(self.D),
            "B": _json(self.B),
            "C": self.C,
            "c1": _json(self.c1),
            "c2": _json(self.c2),
            "threshold": self.threshold,
            "reason": self.reason,
        }


def _normalised_lengths(sub: RandomSubstitution, spec: SpectralData, levels: int):
    """``|ϑⁿ(a)| / λ₁ⁿ`` for ``n = 1..levels``, exactly."""
    M = spec.matrix
    d = M.size
    row = tuple(1 for _ in range(d))
    out = []
    for n in range(1, levels + 1):
        row = tuple(sum(row[i] * M[i, j] for i in range(d)) for j in range(d))
        scale = spec.lambda1**n
        out.append(tuple(QuadNumber(x) / scale for x in row))
    return out


def _theory(sub: RandomSubstitution, spec: SpectralData) -> dict:
    if spec.d != 2:
        return {"reason": "bounds are computed for two letters only"}
    if not spec.is_irreducible_pisot:
        if spec.lambda2_class == "gt1":
            return {"reason": "|λ₂| > 1"}
        return {"reason": "not irreducible Pisot"}
    f = spec.frequencies
    ell = spec.natural_lengths
    lam1, lam2 = spec.lambda1, spec.lambda2
    # the discrepancy vector of any realisation of ϑⁿ(b) is λ₂ⁿ(e_b − f)
    D = max(abs((1 if a == b else 0) - f[a]) for a in range(2) for b in range(2))
    k = sub.max_length
    B = 2 * (k - 1) * D / (1 - abs(lam2))
    C = (2 * B).ceil()
    # |ϑⁿ(a)| / λ₁ⁿ = α_a + β_a (λ₂/λ₁)ⁿ
    dot = ell[0] * f[0] + ell[1] * f[1]
    alpha = [ell[a] / dot for a in range(2)]
    beta = [1 - x for x in alpha]
    ratio = abs(lam2 / lam1)
    direct = _normalised_lengths(sub, spec, CHECK_LEVELS)
    c1 = min(min(alpha[a] - abs(beta[a]) * ratio for a in range(2)), min(min(r) for r in direct))
    c2 = max(max(alpha[a] + abs(beta[a]) * ratio for a in range(2)), max(max(r) for r in direct))
    assert c1 > 0
    target = QuadNumber(C + 1) ** (spec.d - 1) / c1
    N = 1
    while lam1**N <= target:
        N += 1
    return {"D": D, "B": B, "C": C, "c1": c1, "c2": c2, "threshold": N}


def balance_report(sub: RandomSubstitution, table: LanguageTable) -> BalanceReport:
    """Empirical discrepancies over ``table`` and the exact balancedness constants."""
    if not is_compatible(sub):
        raise NotCompatible()
    spec = spectral_data(sub)
    f = spec.frequencies
    letters = sub.alphabet
    disc = {a: QuadNumber(0) if spec.exact else mpmath.mpf(0) for a in letters}
    witness = {a: "" for a in letters}
    spread = {a: 0 for a in letters}
    for n in range(1, table.max_length + 1):
        lo = {a: n for a in letters}
        hi = {a: 0 for a in letters}
        for w in table.words(n):
            counts = sub.abelianise(w)
            for i, a in enumerate(letters):
                c = counts[i]
                lo[a] = min(lo[a], c)
                hi[a] = max(hi[a], c)
        for i, a in enumerate(letters):
            spread[a] = max(spread[a], hi[a] - lo[a])
            # the discrepancy is extremal at an extremal count
            for c in (lo[a], hi[a]):
                x = abs(c - f[i] * n)
                if x > disc[a]:
                    disc[a] = x
                    witness[a] = next(w for w in table.words(n) if sub.abelianise(w)[i] == c)
    theory = _theory(sub, spec)
    return BalanceReport(
        alphabet=letters,
        max_length=table.max_length,
        frequencies=tuple(f),
        discrepancy=disc,
        witness=witness,
        count_spread=spread,
        k=sub.max_length,
        **theory,
    )


# --------------------------------------------------------------------------- return lengths


@dataclass(frozen=True)
class CongruenceReport:
    """``modulus`` is the largest ``m > 1`` dividing every difference of values, if any."""

    modulus: Optional[int]
    insufficient: bool = False

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "insufficient": self.insufficient}


@dataclass(frozen=True)
class LengthSpectrum:
    """All ``|uw|`` with ``uwv`` legal and ``|uwv| ≤ max_length``.

    ``witnesses[x]`` is the first legal ``uwv`` (canonical order) with
    ``|uw| = x``.  The empty ``w`` is allowed.
    """

    u: str
    v: str
    max_length: int
    values: tuple[int, ...]
    witnesses: dict[int, str]

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    @property
    def max_gap(self) -> Optional[int]:
        return max(self.gaps) if self.gaps else None

    @property
    def congruence(self) -> Optional[CongruenceReport]:
        return congruence_obstruction(self) if self.values else None

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "v": self.v,
            "max_length": self.max_length,
            "values": list(self.values),
            "witnesses": {str(k): w for k, w in self.witnesses.items()},
            "max_gap": self.max_gap,
            "congruence": _json(self.congruence),
        }


def return_length_spectrum(
    sub: RandomSubstitution, u: str, v: str, L: int, table: LanguageTable
) -> LengthSpectrum:
    """Return lengths from ``u`` to ``v`` within legal words of length at most ``L``."""
    for x in (u, v):
        sub.check_word(x)
        if not x or not is_legal_word(sub, table, x):
            raise NotLegal(x)
    if L > table.max_length:
        raise LengthExceedsTable(L, table.max_length)
    witnesses: dict[int, str] = {}
    for n in range(len(u) + len(v), L + 1):
        for w in table.words(n):
            if w.startswith(u) and w.endswith(v):
                witnesses[n - len(v)] = w
                break
    return LengthSpectrum(u, v, L, tuple(sorted(witnesses)), witnesses)


def congruence_obstruction(s: LengthSpectrum) -> CongruenceReport:
    """The common modulus of all differences of spectrum values."""
    if not s.values:
        raise EmptySpectrum()
    if len(s.values) < 2:
        return CongruenceReport(None, insufficient=True)
    g = math.gcd(*(x - s.values[0] for x in s.values[1:]))
    return CongruenceReport(g if g > 1 else None)


# --------------------------------------------------------------------------- inflation lengths


@dataclass(frozen=True)
class LengthDensity:
    """Lengths ``≤ max_length`` of exact level-``level`` inflation words.

    ``bound`` is the theoretical density bound when the balancedness
    constants exist, else ``None``.
    """

    level: int
    max_length: int
    lengths: tuple[int, ...]
    bound: Optional[QuadNumber] = None

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.lengths), self.max_length)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "max_length": self.max_length,
            "lengths": list(self.lengths),
            "density": str(self.density),
            "bound": _json(self.bound),
        }


def _count_range(sub: RandomSubstitution, table: LanguageTable, m: int) -> tuple[int, int]:
    """Least and largest count of the first letter among legal words of length ``m``.

    Beyond the table a legal word is a window of some realisation of ϑᵏ(v),
    starting inside the image of ``v[0]`` and ending inside that of
    ``v[-1]``, for a legal ``v`` short enough to be in the table.  Extreme
    counts add up over the suffix, the whole middle images and the prefix.
    """
    if m <= table.max_length:
        counts = [sub.abelianise(w)[0] for w in table.words(m)]
        return min(counts), max(counts)
    k = 1
    while True:
        pk = power(sub, k, default_budget())
        if (m - 2) // pk.min_length + 2 <= table.max_length:
            break
        k += 1
    letters = sub.alphabet
    size = {c: len(pk[c][0]) for c in letters}
    full = {c: sub.abelianise(pk[c][0])[0] for c in letters}
    suf = {c: {} for c in letters}
    pre = {c: {} for c in letters}
    for c in letters:
        for r in pk[c]:
            for s in range(1, len(r) + 1):
                for table_, piece in ((suf, r[-s:]), (pre, r[:s])):
                    x = piece.count(letters[0])
                    lo, hi = table_[c].get(s, (x, x))
                    table_[c][s] = (min(lo, x), max(hi, x))
    lo, hi = m, 0
    for size_v in range(2, table.max_length + 1):
        for v in table.words(size_v):
            mid = v[1:-1]
            mid_len = sum(size[c] for c in mid)
            if mid_len > m - 2:
                continue
            mid_count = sum(full[c] for c in mid)
            for s in range(1, size[v[0]] + 1):
                p = m - s - mid_len
                if 1 <= p <= size[v[-1]]:
                    a_lo, a_hi = suf[v[0]][s]
                    b_lo, b_hi = pre[v[-1]][p]
                    lo = min(lo, a_lo + mid_count + b_lo)
                    hi = max(hi, a_hi + mid_count + b_hi)
    return lo, hi


def inflation_length_density(
    sub: RandomSubstitution, n: int, L: int, table: LanguageTable
) -> LengthDensity:
    """The set of lengths ``|ϑⁿ(v)|`` up to ``L`` over legal roots ``v`` and its density in ``[1, L]``.

    For two letters the first-letter counts of legal words of a fixed
    length form an interval (slide a window across a legal word containing
    two given ones), so only the extreme counts are needed.  Larger
    alphabets use the roots in ``table`` and need them to cover ``L``.
    """
    if not is_compatible(sub):
        raise NotCompatible()
    if n < 0 or L < 1:
        raise ValueError("level must be non-negative and L positive")
    M = substitution_matrix(sub)
    d = M.size
    row = tuple(1 for _ in range(d))
    for _ in range(n):
        row = tuple(sum(row[i] * M[i, j] for i in range(d)) for j in range(d))
    lengths: set[int] = set()
    top = L // min(row)
    if d == 2:
        for m in range(1, top + 1):
            lo, hi = _count_range(sub, table, m)
            for c in range(lo, hi + 1):
                x = c * row[0] + (m - c) * row[1]
                if x <= L:
                    lengths.add(x)
    else:
        if top > table.max_length:
            raise LengthExceedsTable(top, table.max_length)
        for v in table:
            x = sum(a * b for a, b in zip(sub.abelianise(v), row))
            if x <= L:
                lengths.add(x)
    bound = None
    spec = spectral_data(sub)
    theory = _theory(sub, spec)
    if "c1" in theory:
        bound = QuadNumber(theory["C"] + 1) ** (d - 1) / (theory["c1"] * spec.lambda1**n)
    return LengthDensity(n, L, tuple(sorted(lengths)), bound)
