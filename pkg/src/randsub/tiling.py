"""Tile lengths, geometric return-length spectra and the tiling-space mixing verdict."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .analysis import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    MIXING,
    NOT_MIXING,
    UNKNOWN,
    Hypothesis,
    _json,
)
from .core import IntMatrix, RandomSubstitution, is_compatible, is_primitive_substitution, substitution_matrix
from .decompose import is_legal_word
from .errors import LengthExceedsTable, MixedLengthFields, NotCompatible, NotLegal, WindowExceedsBound
from .language import LanguageTable
from .quadratic import QuadNumber
from .spectral import spectral_data

RULE_RATIONAL_LENGTHS = "rational-length-necessity"
RULE_BALANCED_TILING = "balanced-tiling-theorem"
RULE_IRRATIONAL_LENGTHS = "irrational-length-theorem"


@dataclass(frozen=True)
class TileLengths:
    """Positive tile length per letter.

    Exact lengths are :class:`QuadNumber` values in one quadratic field (or
    all rational).  ``exact`` is false only for numeric natural lengths of
    larger alphabets.
    """

    alphabet: tuple[str, ...]
    lengths: tuple
    exact: bool = True

    def __post_init__(self):
        if len(self.lengths) != len(self.alphabet):
            raise ValueError("one length per letter is required")
        if self.exact:
            object.__setattr__(self, "lengths", tuple(QuadNumber.coerce(x) for x in self.lengths))
            fields = {x.radicand for x in self.lengths if x.radicand}
            if len(fields) > 1:
                raise MixedLengthFields(f"lengths lie in several quadratic fields: {sorted(fields)}")
        if any(x <= 0 for x in self.lengths):
            raise ValueError("tile lengths must be positive")

    @classmethod
    def unit(cls, alphabet: Sequence[str]) -> TileLengths:
        return cls(tuple(alphabet), tuple(QuadNumber(1) for _ in alphabet))

    @classmethod
    def parse(cls, alphabet: Sequence[str], text: str) -> TileLengths:
        """Comma-separated rationals such as ``"3/2,2"``."""
        parts = [p.strip() for p in text.split(",")]
        try:
            values = tuple(QuadNumber(Fraction(p)) for p in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot read tile lengths {text!r}") from exc
        return cls(tuple(alphabet), values)

    def __getitem__(self, letter: str):
        return self.lengths[self.alphabet.index(letter)]

    def length(self, word: str):
        total = QuadNumber(0) if self.exact else 0
        for c in word:
            total = total + self[c]
        return total

    @property
    def minimum(self):
        return min(self.lengths)

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet), "lengths": _json(self.lengths), "exact": self.exact}


def natural_lengths(M: IntMatrix | RandomSubstitution, alphabet: Sequence[str] | None = None) -> TileLengths:
    """Left Perron–Frobenius eigenvector scaled to minimum entry 1."""
    if isinstance(M, RandomSubstitution):
        alphabet = M.alphabet if alphabet is None else alphabet
        M = substitution_matrix(M)
    spec = spectral_data(M)
    alphabet = tuple(alphabet) if alphabet is not None else tuple(f"a{i}" for i in range(M.size))
    return TileLengths(alphabet, tuple(spec.natural_lengths), exact=spec.exact)


@dataclass(frozen=True)
class RatioClass:
    """``kind`` is ``"AllRational"``, ``"IrrationalPairFound"`` (with ``pair``) or ``"Unknown"``."""

    kind: str
    pair: Optional[tuple[str, str]] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "pair": list(self.pair) if self.pair else None}


def ratio_class(ell: TileLengths) -> RatioClass:
    """Whether every ratio of two tile lengths is rational."""
    if not ell.exact:
        return RatioClass("Unknown")
    n = len(ell.alphabet)
    for i in range(n):
        for j in range(i + 1, n):
            if not (ell.lengths[i] / ell.lengths[j]).is_rational:
                return RatioClass("IrrationalPairFound", (ell.alphabet[i], ell.alphabet[j]))
    return RatioClass("AllRational")


# --------------------------------------------------------------------------- spectra


@dataclass(frozen=True)
class GeometricSpectrum:
    """Exact lengths of the patches ``uw`` with ``uwv`` legal.

    The list is complete below ``bound``: any longer word ``uwv`` than the
    enumeration limit has a patch at least that long.
    """

    u: str
    v: str
    max_length: int
    bound: object
    values: tuple
    witnesses: dict

    @property
    def gaps(self) -> tuple:
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "v": self.v,
            "max_length": self.max_length,
            "bound": _json(self.bound),
            "values": [_json(x) for x in self.values],
            "witnesses": [{"value": _json(x), "word": self.witnesses[x]} for x in self.values],
        }


def geometric_spectrum(
    sub: RandomSubstitution, ell: TileLengths, u: str, v: str, L: int, table: LanguageTable
) -> GeometricSpectrum:
    """Patch lengths of ``uw`` over legal ``uwv`` with ``|uwv| ≤ L``."""
    for x in (u, v):
        sub.check_word(x)
        if not x or not is_legal_word(sub, table, x):
            raise NotLegal(x)
    if L > table.max_length:
        raise LengthExceedsTable(L, table.max_length)
    if not ell.exact:
        raise ValueError("geometric spectra need exact tile lengths")
    bound = ell.minimum * (L - len(v) + 1)
    witnesses: dict = {}
    for n in range(len(u) + len(v), L + 1):
        for w in table.words(n):
            if w.startswith(u) and w.endswith(v):
                x = ell.length(w[: n - len(v)])
                if x < bound and x not in witnesses:
                    witnesses[x] = w
    return GeometricSpectrum(u, v, L, bound, tuple(sorted(witnesses)), witnesses)


@dataclass(frozen=True)
class GapReport:
    """Maximal open subintervals of the window farther than ``eps`` from every value."""

    window: tuple
    eps: object
    gaps: tuple

    def to_json(self) -> dict:
        return {
            "window": _json(self.window),
            "eps": _json(self.eps),
            "gaps": [[_json(a), _json(b)] for a, b in self.gaps],
        }


def epsilon_density_check(s: GeometricSpectrum, eps, window: tuple) -> GapReport:
    """Uncovered parts of ``[R0, R1]`` for the ``eps``-neighbourhood of the spectrum.

    Evidence over a finite window only.
    """
    eps = QuadNumber.coerce(eps)
    R0, R1 = (QuadNumber.coerce(x) for x in window)
    if eps <= 0 or R0 > R1:
        raise ValueError("need eps > 0 and R0 ≤ R1")
    if R1 > s.bound:
        raise WindowExceedsBound(R1, s.bound)
    gaps = []
    cursor = R0
    for x in s.values:
        lo, hi = x - eps, x + eps
        if hi < cursor:
            continue
        if lo > R1:
            break
        if lo > cursor:
            gaps.append((cursor, lo))
        cursor = max(cursor, hi)
    if cursor < R1:
        gaps.append((cursor, R1))
    return GapReport((R0, R1), eps, tuple(gaps))


# --------------------------------------------------------------------------- verdict


@dataclass(frozen=True)
class TilingVerdict:
    status: str
    rule: Optional[str]
    ratio_class: RatioClass
    checklist: tuple
    evidence: dict

    def __post_init__(self):
        if self.status != INCONCLUSIVE:
            assert {h.state for h in self.checklist} <= {HOLDS}

    @property
    def conditional(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "rule": self.rule,
            "conditional": self.conditional,
            "ratio_class": self.ratio_class.to_json(),
            "checklist": [h.to_json() for h in self.checklist],
            "evidence": {k: _json(v) for k, v in self.evidence.items()},
        }


def tiling_mixing_verdict(sub: RandomSubstitution, ell: TileLengths) -> TilingVerdict:
    """Mixing of the tiling space with tile lengths ``ell``.

    Rational length ratios force non-mixing; so does ``|λ₂| < 1`` with two
    letters, or irreducible Pisot in general.  Two letters with ``|λ₂| > 1``
    and an irrational ratio give mixing.  Everything else is inconclusive.
    """
    if not is_compatible(sub):
        raise NotCompatible()
    if tuple(ell.alphabet) != sub.alphabet:
        raise ValueError("tile lengths must be indexed by the substitution alphabet")
    base = [Hypothesis("compatible", HOLDS)]
    rc = ratio_class(ell)
    if not is_primitive_substitution(sub):
        checks = base + [Hypothesis("primitive", FAILS, substitution_matrix(sub).tolist())]
        return TilingVerdict(INCONCLUSIVE, None, rc, tuple(checks), {"lengths": ell})
    base.append(Hypothesis("primitive", HOLDS))
    spec = spectral_data(sub)
    evidence = {"lengths": ell, "spectral": spec}
    if rc.kind == "AllRational":
        checks = base + [Hypothesis("all length ratios rational", HOLDS, [str(x) for x in ell.lengths])]
        return TilingVerdict(NOT_MIXING, RULE_RATIONAL_LENGTHS, rc, tuple(checks), evidence)
    if spec.lambda2_class == "lt1" and (spec.d == 2 or spec.is_irreducible_pisot):
        hyp = "two letters" if spec.d == 2 else "irreducible Pisot"
        checks = base + [Hypothesis(hyp, HOLDS), Hypothesis("|λ₂| < 1", HOLDS, str(spec.lambda2))]
        return TilingVerdict(NOT_MIXING, RULE_BALANCED_TILING, rc, tuple(checks), evidence)
    if spec.d == 2 and spec.lambda2_class == "gt1" and rc.kind == "IrrationalPairFound":
        checks = base + [
            Hypothesis("two letters", HOLDS),
            Hypothesis("|λ₂| > 1", HOLDS, str(spec.lambda2)),
            Hypothesis("irrational length ratio", HOLDS, list(rc.pair)),
        ]
        return TilingVerdict(MIXING, RULE_IRRATIONAL_LENGTHS, rc, tuple(checks), evidence)
    state = UNKNOWN if rc.kind == "Unknown" or spec.lambda2_class in ("eq1", "unknown") else FAILS
    checks = base + [Hypothesis("|λ₂| compared with 1", state, spec.lambda2_class)]
    return TilingVerdict(INCONCLUSIVE, None, rc, tuple(checks), evidence)
