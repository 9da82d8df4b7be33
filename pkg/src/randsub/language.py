"""Bounded legal languages of random substitutions."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .core import (
    DeterministicSubstitution,
    RandomSubstitution,
    default_budget,
    is_compatible,
    is_primitive_substitution,
    power,
)
from .errors import BudgetExceeded, LengthExceedsTable, NotLegal

DEFAULT_TABLE_LENGTH = 16


@dataclass(frozen=True, eq=False)
class LanguageTable:
    """All legal words of length at most ``max_length``.

    ``first_round[w]`` is the saturation round in which ``w`` was first
    harvested (letters are round 0) and ``rounds`` is the number of rounds run,
    the last of which produced nothing new.
    """

    substitution: RandomSubstitution
    max_length: int
    words_by_length: tuple[tuple[str, ...], ...]
    first_round: dict[str, int] = field(repr=False)
    rounds: int = 0

    def __contains__(self, word: str) -> bool:
        return word in self.first_round

    def words(self, n: int) -> tuple[str, ...]:
        if n < 0:
            raise ValueError("length must be non-negative")
        if n > self.max_length:
            raise LengthExceedsTable(n, self.max_length)
        if n == 0:
            return ("",)
        return self.words_by_length[n - 1]

    def __iter__(self) -> Iterator[str]:
        for ws in self.words_by_length:
            yield from ws

    def __len__(self) -> int:
        return len(self.first_round)

    def counts(self) -> list[int]:
        return [len(ws) for ws in self.words_by_length]


def _saturation_round(sub: RandomSubstitution, known: dict[str, int], L: int, K: int) -> set[str]:
    """Legal words not yet in ``known`` found by substituting known words of length ≤ K.

    Walks the prefix tree of the known words.  A node ``w`` carries the set of
    windows that start inside the image of ``w[0]`` and run through the images
    of the later letters, cut at length ``L``; children extend that set by one
    more image, so common prefixes share the work.
    """
    fresh: set[str] = set()

    def record(s: str) -> None:
        # ``known`` and ``fresh`` are prefix-closed, so stop at the first hit
        while s and s not in known and s not in fresh:
            fresh.add(s)
            s = s[:-1]

    stack = []
    for a in sub.alphabet:
        if a in known:
            windows = {r[o:][:L] for r in sub[a] for o in range(len(r))}
            stack.append((a, windows))
    while stack:
        w, windows = stack.pop()
        for s in windows:
            record(s)
        if len(w) >= K:
            continue
        open_windows = [s for s in windows if len(s) < L]
        if not open_windows:
            continue
        for c in sub.alphabet:
            child = w + c
            if child in known:
                stack.append((child, {(s + r)[:L] for s in open_windows for r in sub[c]}))
    return fresh


def legal_words(
    sub: RandomSubstitution, max_length: int = DEFAULT_TABLE_LENGTH, budget: int | None = None
) -> LanguageTable:
    """Saturate the set of legal words of length ≤ ``max_length``.

    Starting from the single letters, every stored word of length at most the
    cover length ``K`` is substituted and all windows of its realisations are
    added.  A legal word of length ``n`` always lies in the image of a legal
    word of length at most ``(n - 2) // min_length + 2``, so the first round
    that adds nothing certifies the exact language.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    budget = default_budget() if budget is None else budget
    if not is_compatible(sub):
        warnings.warn("substitution is not compatible; saturation still exact", stacklevel=2)
    elif not is_primitive_substitution(sub):
        warnings.warn("substitution is not primitive; saturation still exact", stacklevel=2)

    L = max_length
    K = min(L, (L - 2) // sub.min_length + 2) if L >= 2 else 1
    first_round: dict[str, int] = {a: 0 for a in sub.alphabet}
    rounds = 0
    while True:
        rounds += 1
        fresh = _saturation_round(sub, first_round, L, K)
        if not fresh:
            break
        for w in fresh:
            first_round[w] = rounds
        if len(first_round) > budget:
            raise BudgetExceeded(budget, "legal_words")

    by_len: list[list[str]] = [[] for _ in range(L)]
    for w in first_round:
        by_len[len(w) - 1].append(w)
    return LanguageTable(
        substitution=sub,
        max_length=L,
        words_by_length=tuple(tuple(sub.sorted(ws)) for ws in by_len),
        first_round=first_round,
        rounds=rounds,
    )


@lru_cache(maxsize=32)
def cached_legal_words(sub: RandomSubstitution, max_length: int = DEFAULT_TABLE_LENGTH) -> LanguageTable:
    """:func:`legal_words` with the default budget, memoised per substitution and length."""
    return legal_words(sub, max_length)


def is_legal(table: LanguageTable, word: str) -> bool:
    table.substitution.check_word(word)
    if len(word) > table.max_length:
        raise LengthExceedsTable(len(word), table.max_length)
    if not word:
        return True
    return word in table


def complexity(table: LanguageTable, n: int) -> int:
    """Number of legal words of length ``n``."""
    return len(table.words(n))


def marginal_containing(
    sub: RandomSubstitution,
    word: str,
    table: LanguageTable | None = None,
    max_level: int = 12,
    budget: int | None = None,
) -> tuple[DeterministicSubstitution, int]:
    """A marginal of some ϑᵏ whose language contains ``word``, with ``k`` minimal.

    The letter whose realisation contains ``word`` uses the first such
    realisation in canonical order; every other letter uses its first
    realisation.
    """
    sub.check_word(word)
    if table is not None and len(word) <= table.max_length and not is_legal(table, word):
        raise NotLegal(word)
    for k in range(1, max_level + 1):
        try:
            pk = power(sub, k, budget)
        except BudgetExceeded:
            break
        for i, a in enumerate(sub.alphabet):
            for r in pk.images[i]:
                if word in r:
                    chosen = [ws[0] for ws in pk.images]
                    chosen[i] = r
                    return DeterministicSubstitution(sub.alphabet, tuple(chosen)), k
    raise NotLegal(word)
