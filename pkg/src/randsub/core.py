"""Alphabets, words, random substitutions and their substitution matrices.

Words are plain ``str`` objects whose characters are letters of the alphabet.
Every enumeration produced here is returned in a canonical order
(lexicographic in alphabet order) so downstream results are reproducible.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    BudgetExceeded,
    DuplicateSymbol,
    EmptyAlphabet,
    EmptyRuleSet,
    EmptyRuleWord,
    InvalidDefinition,
    NotCompatible,
    NotDeterministic,
    UnknownSymbol,
)

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    """Enumeration budget, overridable through ``RANDSUB_BUDGET``."""
    raw = os.environ.get("RANDSUB_BUDGET")
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InvalidDefinition(f"RANDSUB_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InvalidDefinition("RANDSUB_BUDGET must be positive")
    return value


# --------------------------------------------------------------------------- matrices


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix with exact (big-integer) arithmetic."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.rows)
        if any(len(r) != d for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, d: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[j] for r in self.rows) for j in range(self.size))

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            cols = list(zip(*other.rows))
            return IntMatrix(
                tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
            )
        vec = tuple(other)
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def __pow__(self, n: int) -> IntMatrix:
        if n < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.size)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_positive(self) -> bool:
        return all(x > 0 for r in self.rows for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join("(" + " ".join(str(x).rjust(width) for x in r) + ")" for r in self.rows)


def is_primitive(M: IntMatrix) -> bool:
    """True iff some power of ``M`` is entrywise positive.

    Only the Wielandt exponent ``(d-1)**2 + 1`` is checked: a non-negative
    matrix is primitive exactly when that power is positive.
    """
    d = M.size
    if any(x < 0 for r in M.rows for x in r):
        raise ValueError("primitivity is defined for non-negative matrices")
    pattern = IntMatrix(tuple(tuple(int(x > 0) for x in r) for r in M.rows))
    p = d * d - 2 * d + 2
    # keep the 0/1 pattern bounded while powering
    result = IntMatrix.identity(d)
    base = pattern
    while p:
        if p & 1:
            result = _clip(result @ base)
        base = _clip(base @ base)
        p >>= 1
    return result.is_positive()


def _clip(M: IntMatrix) -> IntMatrix:
    return IntMatrix(tuple(tuple(int(x > 0) for x in r) for r in M.rows))


# --------------------------------------------------------------------------- substitutions


def _check_alphabet(alphabet: Sequence[str]) -> tuple[str, ...]:
    letters = tuple(alphabet)
    if not letters:
        raise EmptyAlphabet()
    seen = set()
    for a in letters:
        if not isinstance(a, str) or len(a) != 1:
            raise InvalidDefinition(f"letters must be single characters, got {a!r}")
        if a in seen:
            raise DuplicateSymbol(a)
        seen.add(a)
    return letters


@dataclass(frozen=True)
class RandomSubstitution:
    """A map from letters to non-empty finite sets of non-empty words.

    ``images[i]`` holds the realisations of ``alphabet[i]``, deduplicated and
    sorted canonically.  Build instances with :meth:`from_rules` or
    :func:`validate_substitution` rather than the raw constructor.
    """

    alphabet: tuple[str, ...]
    images: tuple[tuple[str, ...], ...]

    @classmethod
    def from_rules(
        cls, rules: Mapping[str, Iterable[str]], alphabet: Sequence[str] | None = None
    ) -> RandomSubstitution:
        if alphabet is None:
            alphabet = list(rules)
        letters = _check_alphabet(alphabet)
        index = {a: i for i, a in enumerate(letters)}
        for key in rules:
            if key not in index:
                raise UnknownSymbol(key)
        images = []
        for a in letters:
            if a not in rules:
                raise EmptyRuleSet(a)
            words = list(rules[a])
            if not words:
                raise EmptyRuleSet(a)
            for w in words:
                if not isinstance(w, str):
                    raise InvalidDefinition(f"realisations must be strings, got {w!r}")
                if not w:
                    raise EmptyRuleWord(a)
                for c in w:
                    if c not in index:
                        raise UnknownSymbol(c)
            images.append(tuple(sorted(set(words), key=lambda w: tuple(index[c] for c in w))))
        return cls(letters, tuple(images))

    # -- basic accessors

    @property
    def d(self) -> int:
        return len(self.alphabet)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise UnknownSymbol(letter) from None

    def __getitem__(self, letter: str) -> tuple[str, ...]:
        return self.images[self.index(letter)]

    @property
    def rules(self) -> dict[str, tuple[str, ...]]:
        return dict(zip(self.alphabet, self.images))

    def key(self, word: str) -> tuple[int, ...]:
        """Canonical sort key: lexicographic in alphabet order."""
        idx = self._index
        return tuple(idx[c] for c in word)

    def sorted(self, words: Iterable[str]) -> list[str]:
        return sorted(words, key=self.key)

    def check_word(self, word: str) -> str:
        for c in word:
            if c not in self._index:
                raise UnknownSymbol(c)
        return word

    @cached_property
    def max_length(self) -> int:
        """|ϑ|: the length of the longest realisation."""
        return max(len(w) for ws in self.images for w in ws)

    @cached_property
    def min_length(self) -> int:
        return min(len(w) for ws in self.images for w in ws)

    @property
    def is_deterministic(self) -> bool:
        return all(len(ws) == 1 for ws in self.images)

    def abelianise(self, word: str) -> tuple[int, ...]:
        return abelianise(word, self.alphabet)

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet), "rules": {a: list(ws) for a, ws in self.rules.items()}}

    def __str__(self):
        return ", ".join(f"{a}↦{{{', '.join(ws)}}}" for a, ws in self.rules.items())


@dataclass(frozen=True)
class DeterministicSubstitution:
    alphabet: tuple[str, ...]
    images: tuple[str, ...]

    @classmethod
    def from_rules(
        cls, rules: Mapping[str, str], alphabet: Sequence[str] | None = None
    ) -> DeterministicSubstitution:
        rs = RandomSubstitution.from_rules({a: [w] for a, w in rules.items()}, alphabet)
        return cls(rs.alphabet, tuple(ws[0] for ws in rs.images))

    @classmethod
    def from_random(cls, sub: RandomSubstitution) -> DeterministicSubstitution:
        for a, ws in sub.rules.items():
            if len(ws) != 1:
                raise NotDeterministic(a)
        return cls(sub.alphabet, tuple(ws[0] for ws in sub.images))

    def __getitem__(self, letter: str) -> str:
        return self.images[self.alphabet.index(letter)]

    @property
    def rules(self) -> dict[str, str]:
        return dict(zip(self.alphabet, self.images))

    def as_random(self) -> RandomSubstitution:
        return RandomSubstitution(self.alphabet, tuple((w,) for w in self.images))

    def apply(self, word: str) -> str:
        table = self.rules
        return "".join(table[c] for c in word)

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet), "rules": {a: [w] for a, w in self.rules.items()}}

    def __str__(self):
        return ", ".join(f"{a}↦{w}" for a, w in self.rules.items())


# --------------------------------------------------------------------------- external format


def validate_substitution(raw: Mapping) -> RandomSubstitution:
    """Turn a parsed JSON definition into a canonical :class:`RandomSubstitution`."""
    if not isinstance(raw, Mapping) or "rules" not in raw:
        raise InvalidDefinition('definition must be an object with a "rules" field')
    rules = raw["rules"]
    if not isinstance(rules, Mapping):
        raise InvalidDefinition('"rules" must map letters to lists of words')
    alphabet = raw.get("alphabet")
    if alphabet is None:
        alphabet = list(rules)
    if isinstance(alphabet, str):
        alphabet = list(alphabet)
    normalised = {}
    for a, ws in rules.items():
        if isinstance(ws, str):
            ws = [ws]
        normalised[a] = list(ws)
    return RandomSubstitution.from_rules(normalised, alphabet)


def load_substitution(path: str | os.PathLike) -> RandomSubstitution:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidDefinition(f"{path}: invalid JSON ({exc})") from None
    return validate_substitution(raw)


def dump_substitution(sub: RandomSubstitution | DeterministicSubstitution, path: str | Path) -> None:
    Path(path).write_text(json.dumps(sub.to_json(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


# --------------------------------------------------------------------------- operations


def abelianise(word: str, alphabet: Sequence[str]) -> tuple[int, ...]:
    """Letter counts of ``word`` in alphabet order."""
    index = {a: i for i, a in enumerate(alphabet)}
    counts = [0] * len(index)
    for c in word:
        try:
            counts[index[c]] += 1
        except KeyError:
            raise UnknownSymbol(c) from None
    return tuple(counts)


def is_compatible(sub: RandomSubstitution) -> bool:
    return _incompatible_letter(sub) is None


def _incompatible_letter(sub: RandomSubstitution):
    for a, ws in sub.rules.items():
        if len({sub.abelianise(w) for w in ws}) > 1:
            return a
    return None


def substitution_matrix(sub: RandomSubstitution) -> IntMatrix:
    """M with ``M[i][j] = |ϑ(a_j)|_{a_i}``: column j is the abelianisation of ϑ(a_j)."""
    bad = _incompatible_letter(sub)
    if bad is not None:
        raise NotCompatible(bad)
    cols = [sub.abelianise(ws[0]) for ws in sub.images]
    return IntMatrix(tuple(zip(*cols)))


@lru_cache(maxsize=256)
def is_primitive_substitution(sub: RandomSubstitution) -> bool:
    return is_compatible(sub) and is_primitive(substitution_matrix(sub))


def is_constant_length(sub: RandomSubstitution) -> int | None:
    lengths = {len(w) for ws in sub.images for w in ws}
    return lengths.pop() if len(lengths) == 1 else None


def _concat_sets(parts: Sequence[Iterable[str]], budget: int, what: str) -> set[str]:
    acc = {""}
    for part in parts:
        part = tuple(part)
        if len(acc) * len(part) <= budget:
            acc = {x + y for x in acc for y in part}
            continue
        # dedup can only shrink the product; stop as soon as the real size passes the budget
        grown: set[str] = set()
        for x in acc:
            grown.update(x + y for y in part)
            if len(grown) > budget:
                raise BudgetExceeded(budget, what)
        acc = grown
    return acc


def apply(sub: RandomSubstitution, word: str, budget: int | None = None) -> tuple[str, ...]:
    """All realisations of ϑ on ``word``, deduplicated, canonically ordered."""
    if not word:
        raise ValueError("apply needs a non-empty word")
    budget = default_budget() if budget is None else budget
    parts = [sub[c] for c in word]
    return tuple(sub.sorted(_concat_sets(parts, budget, "apply")))


def power(sub: RandomSubstitution, n: int, budget: int | None = None) -> RandomSubstitution:
    """ϑⁿ as an explicit random substitution."""
    if n < 1:
        raise ValueError("power needs n >= 1")
    budget = default_budget() if budget is None else budget
    return _power(sub, n, budget)


@lru_cache(maxsize=256)
def _power(sub: RandomSubstitution, n: int, budget: int) -> RandomSubstitution:
    if n == 1:
        return sub
    prev = _power(sub, n - 1, budget)
    images = []
    for a in sub.alphabet:
        words: set[str] = set()
        for u in sub[a]:
            # ϑⁿ(a) = ∪_{u ∈ ϑ(a)} ϑⁿ⁻¹(u_1)⋯ϑⁿ⁻¹(u_k)
            words |= _concat_sets([prev[c] for c in u], budget, f"power {n}")
            if len(words) > budget:
                raise BudgetExceeded(budget, f"power {n}")
        images.append(tuple(sub.sorted(words)))
    return RandomSubstitution(sub.alphabet, tuple(images))


def marginals(sub: RandomSubstitution, budget: int | None = None) -> list[DeterministicSubstitution]:
    """All choice functions θ with θ(a) ∈ ϑ(a), in canonical (product) order."""
    budget = default_budget() if budget is None else budget
    count = prod(len(ws) for ws in sub.images)
    if count > budget:
        raise BudgetExceeded(budget, "marginals")
    return [DeterministicSubstitution(sub.alphabet, choice) for choice in itertools.product(*sub.images)]
