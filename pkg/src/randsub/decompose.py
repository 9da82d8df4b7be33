"""Inflation word decompositions, induced decompositions and recognisability."""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .core import RandomSubstitution, default_budget, is_primitive_substitution, power
from .errors import BudgetExceeded, IndexOutOfRange, LengthExceedsTable, NotLegal, TableTooSmall
from .language import LanguageTable


@dataclass(frozen=True)
class InflationDecomposition:
    """A cutting ``[u_1, ..., u_l]`` of a word together with its root ``v``.

    ``first_partial`` is set when ``u_1`` is a proper suffix of its super-word,
    ``last_partial`` when ``u_l`` is a proper prefix of its super-word.  For a
    single piece both flags describe the two ends of the same super-word.  The
    flags are derived data and do not take part in equality.
    """

    pieces: tuple[str, ...]
    root: str
    level: int
    first_partial: bool = field(default=False, compare=False)
    last_partial: bool = field(default=False, compare=False)

    @property
    def word(self) -> str:
        return "".join(self.pieces)

    @property
    def is_exact(self) -> bool:
        return not (self.first_partial or self.last_partial)

    def __str__(self):
        return f"([{','.join(self.pieces)}],{self.root})"

    def to_json(self) -> dict:
        return {
            "pieces": list(self.pieces),
            "root": self.root,
            "level": self.level,
            "first_partial": self.first_partial,
            "last_partial": self.last_partial,
        }


@dataclass(frozen=True)
class DecompositionSet:
    word: str
    level: int
    items: tuple[InflationDecomposition, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, item) -> bool:
        return item in self.items

    @property
    def roots(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(d.root for d in self.items))

    def pairs(self) -> set[tuple[tuple[str, ...], str]]:
        return {(d.pieces, d.root) for d in self.items}

    def to_json(self) -> dict:
        return {"word": self.word, "level": self.level, "items": [d.to_json() for d in self.items]}


# --------------------------------------------------------------------------- piece tables


@dataclass(frozen=True)
class _Pieces:
    """Lookup tables for the level-n super-words of a substitution.

    Each map sends a string to the letters (in alphabet order) having a
    super-word equal to, ending with, or starting with it.
    """

    full: dict[str, tuple[str, ...]]
    suffix: dict[str, tuple[str, ...]]
    prefix: dict[str, tuple[str, ...]]
    lengths: dict[str, int]
    piece_lengths: tuple[int, ...]
    images: dict[str, tuple[str, ...]]

    @property
    def longest(self) -> int:
        return self.piece_lengths[-1]

    def factor_letters(self, word: str) -> list[str]:
        """Letters with a super-word containing ``word``."""
        out = []
        for a, ws in self.images.items():
            if len(word) == self.lengths[a]:
                if a in self.full.get(word, ()):
                    out.append(a)
            elif len(word) < self.lengths[a] and any(word in w for w in ws):
                out.append(a)
        return out


@lru_cache(maxsize=64)
def _pieces(sub: RandomSubstitution, n: int, budget: int) -> _Pieces:
    pn = power(sub, n, budget)
    full, suffix, prefix = (defaultdict(list) for _ in range(3))
    lengths = {}
    for a, ws in pn.rules.items():
        lengths[a] = max(len(w) for w in ws)
        for w in ws:
            full[w].append(a)
            for k in range(1, len(w) + 1):
                suffix[w[-k:]].append(a)
                prefix[w[:k]].append(a)

    def freeze(m):
        # letters were appended in alphabet order
        return {k: tuple(dict.fromkeys(v)) for k, v in m.items()}

    piece_lengths = tuple(sorted({len(w) for ws in pn.images for w in ws}))
    return _Pieces(freeze(full), freeze(suffix), freeze(prefix), lengths, piece_lengths, pn.rules)


# --------------------------------------------------------------------------- legality beyond the table


def _root_level(sub: RandomSubstitution) -> int:
    """Smallest level whose super-words all have length at least 2."""
    n = 1
    while min(len(ws[0]) for ws in power(sub, n).images) < 2:
        n += 1
    return n


def is_legal_word(sub: RandomSubstitution, table: LanguageTable, word: str) -> bool:
    """Legality of words of any length.

    Words that fit in the table are looked up.  A longer word is legal exactly
    when it has a decomposition with a legal root at a level whose super-words
    all have length at least 2; the roots are shorter than the word, so the
    recursion ends in the table.  Needs a primitive substitution.
    """
    if len(word) <= table.max_length:
        return not word or word in table
    if not is_primitive_substitution(sub):
        raise LengthExceedsTable(len(word), table.max_length)
    return _long_word_legal(table, word)


@lru_cache(maxsize=4096)
def _long_word_legal(table: LanguageTable, word: str) -> bool:
    sub = table.substitution
    n = _root_level(sub)
    return bool(_decompose(sub, n, word, table, default_budget(), limit=1))


# --------------------------------------------------------------------------- decompositions


def _decompose(
    sub: RandomSubstitution,
    n: int,
    u: str,
    table: LanguageTable,
    budget: int,
    limit: int | None = None,
) -> list[InflationDecomposition]:
    """Decompositions of ``u`` without a legality check on ``u`` itself.

    With ``limit`` set the search stops once that many have been found.
    """
    P = _pieces(sub, n, budget)
    L = table.max_length
    found: list[InflationDecomposition] = []

    def root_ok(v: str) -> bool:
        return is_legal_word(sub, table, v)

    # a single piece: any factor of one super-word
    for a in P.factor_letters(u):
        if root_ok(a):
            whole = u in P.full and a in P.full[u]
            found.append(
                InflationDecomposition(
                    (u,),
                    a,
                    n,
                    first_partial=not whole,
                    last_partial=not whole,
                )
            )
            if limit and len(found) >= limit:
                return found

    m = len(u)
    full, prefix = P.full, P.prefix
    # (position, last L-1 root letters) from which no completion passes the
    # window checks; those checks only see that state, so it stays dead
    dead: set[tuple[int, str]] = set()

    def extend(pos: int, pieces: list[str], root: str) -> tuple[bool, bool]:
        """Returns (stop, reached) where reached means some completion passed the window checks."""
        # interior pieces are whole super-words; the last one may be a prefix
        rest = m - pos
        options = [k for k in P.piece_lengths if k < rest]
        if rest <= P.longest:
            options.append(rest)
        reached = False
        for k in options:
            piece = u[pos : pos + k]
            last = k == rest
            for a in (prefix if last else full).get(piece, ()):
                v = root + a
                # every window of a legal root is legal
                if v[-L:] not in table:
                    continue
                if last:
                    reached = True
                    if len(v) > L and not root_ok(v):
                        continue
                    first = pieces[0]
                    found.append(
                        InflationDecomposition(
                            tuple(pieces + [piece]),
                            v,
                            n,
                            first_partial=v[0] not in full.get(first, ()),
                            last_partial=a not in full.get(piece, ()),
                        )
                    )
                    if limit and len(found) >= limit:
                        return True, True
                else:
                    state = (pos + k, v[-(L - 1):] if L > 1 else "")
                    if state in dead:
                        continue
                    stop, ok = extend(pos + k, pieces + [piece], v)
                    if stop:
                        return True, True
                    if ok:
                        reached = True
                    else:
                        dead.add(state)
        return False, reached

    for cut in range(1, min(m, P.longest + 1)):
        first = u[:cut]
        for a in P.suffix.get(first, ()):
            if extend(cut, [first], a)[0]:
                return found
    return found


def _sort_items(sub: RandomSubstitution, items: Iterable[InflationDecomposition]):
    return tuple(sorted(items, key=lambda d: (tuple(sub.key(p) for p in d.pieces), sub.key(d.root))))


def decompositions(
    sub: RandomSubstitution, n: int, word: str, table: LanguageTable, budget: int | None = None
) -> DecompositionSet:
    """All level-``n`` inflation word decompositions of a legal word."""
    if n < 1:
        raise ValueError("level must be at least 1")
    sub.check_word(word)
    if not word:
        raise NotLegal(word)
    budget = default_budget() if budget is None else budget
    if len(word) <= table.max_length and word not in table:
        raise NotLegal(word)
    items = _decompose(sub, n, word, table, budget)
    if not items:
        raise NotLegal(word)
    return DecompositionSet(word, n, _sort_items(sub, items))


def _piece_bounds(d: InflationDecomposition) -> list[tuple[int, int]]:
    bounds, pos = [], 0
    for p in d.pieces:
        bounds.append((pos, pos + len(p)))
        pos += len(p)
    return bounds


def induced(d: InflationDecomposition, i: int, j: int) -> InflationDecomposition:
    """The decomposition that ``d`` induces on positions ``i..j`` (1-based, inclusive).

    The pieces containing positions ``i`` and ``j`` are cut down to the part
    inside the window; the root keeps the letters of every piece touched.
    """
    word = d.word
    if not (1 <= i <= j <= len(word)):
        raise IndexOutOfRange(f"window [{i},{j}] outside 1..{len(word)}")
    bounds = _piece_bounds(d)
    lo, hi = i - 1, j  # half-open character range
    ki = next(k for k, (s, e) in enumerate(bounds) if s <= lo < e)
    kj = next(k for k, (s, e) in enumerate(bounds) if s < hi <= e)
    pieces = []
    for k in range(ki, kj + 1):
        s, e = bounds[k]
        pieces.append(word[max(s, lo) : min(e, hi)])
    last = len(d.pieces) - 1
    first_partial = lo > bounds[ki][0] or (ki == 0 and d.first_partial)
    last_partial = hi < bounds[kj][1] or (kj == last and d.last_partial)
    return InflationDecomposition(
        tuple(pieces), d.root[ki : kj + 1], d.level, first_partial, last_partial
    )


def exact_preimages(
    sub: RandomSubstitution, n: int, word: str, table: LanguageTable, budget: int | None = None
) -> tuple[str, ...]:
    """All legal roots ``v`` with ``word`` a realisation of ϑⁿ(v)."""
    ds = decompositions(sub, n, word, table, budget)
    return tuple(sub.sorted({d.root for d in ds if d.is_exact}))


# --------------------------------------------------------------------------- recognisability


@dataclass(frozen=True)
class Ambiguity:
    """An extension of a word whose decompositions induce different decompositions of it."""

    extension: str
    offset: int
    induced: tuple[InflationDecomposition, ...]

    def to_json(self) -> dict:
        return {"extension": self.extension, "offset": self.offset, "induced": [str(d) for d in self.induced]}


@dataclass(frozen=True)
class RecognisabilityVerdict:
    """Outcome of a recognisability test.

    ``status`` is ``"recognisable"`` (every extension of radius ``radius``
    induces a single decomposition), ``"ambiguous"`` (``witness`` is an
    extension inducing at least two) or ``"inconclusive"`` (the table ran out
    before a decision).  ``induced`` lists the distinct decompositions induced
    across all extensions; ``agrees_across_extensions`` says whether that list
    has a single member.
    """

    word: str
    level: int
    status: str
    radius: Optional[int]
    induced: tuple[InflationDecomposition, ...] = ()
    extensions: int = 0
    witness: Optional[Ambiguity] = None
    max_radius_tested: Optional[int] = None

    @property
    def recognisable(self) -> bool:
        return self.status == "recognisable"

    @property
    def agrees_across_extensions(self) -> bool:
        return self.recognisable and len(self.induced) == 1

    @property
    def decomposition(self) -> Optional[InflationDecomposition]:
        return self.induced[0] if self.agrees_across_extensions else None

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "level": self.level,
            "status": self.status,
            "radius": self.radius,
            "extensions": self.extensions,
            "agrees_across_extensions": self.agrees_across_extensions,
            "induced": [str(d) for d in self.induced],
            "witness": self.witness.to_json() if self.witness else None,
            "max_radius_tested": self.max_radius_tested,
        }


def _extensions(table: LanguageTable, word: str, N: int) -> list[str]:
    if N == 0:
        return [word]
    total = len(word) + 2 * N
    if total > table.max_length:
        raise TableTooSmall(total, table.max_length)
    return [w for w in table.words(total) if w[N : N + len(word)] == word]


def is_recognisable(
    sub: RandomSubstitution,
    n: int,
    word: str,
    N: int,
    table: LanguageTable,
    budget: int | None = None,
) -> RecognisabilityVerdict:
    """Test whether every legal extension by ``N`` letters on each side pins down
    the decomposition of ``word``.
    """
    if N < 0:
        raise ValueError("radius must be non-negative")
    budget = default_budget() if budget is None else budget
    sub.check_word(word)
    if len(word) <= table.max_length and word not in table:
        raise NotLegal(word)
    extensions = _extensions(table, word, N)
    seen: dict[InflationDecomposition, None] = {}
    witness: Optional[Ambiguity] = None
    for ext in extensions:
        items = _decompose(sub, n, ext, table, budget)
        if not items:
            raise NotLegal(ext)
        here = _sort_items(sub, {induced(d, N + 1, N + len(word)) for d in items})
        for d in here:
            seen.setdefault(d, None)
        if len(here) > 1 and (witness is None or len(here) > len(witness.induced)):
            witness = Ambiguity(ext, N, here)
    status = "ambiguous" if witness else "recognisable"
    return RecognisabilityVerdict(
        word=word,
        level=n,
        status=status,
        radius=N if status == "recognisable" else None,
        induced=_sort_items(sub, seen),
        extensions=len(extensions),
        witness=witness,
        max_radius_tested=N,
    )


def recognisability_radius(
    sub: RandomSubstitution,
    n: int,
    word: str,
    N_max: int,
    table: LanguageTable,
    budget: int | None = None,
) -> RecognisabilityVerdict:
    """Least radius ``N ≤ N_max`` at which ``word`` is level-``n`` recognisable.

    Recognisability at radius ``N`` implies it at every larger radius, so the
    search stops at the first success.  If the table cannot hold the
    extensions for some ``N ≤ N_max`` the verdict is ``"inconclusive"`` and
    carries the last ambiguity found.
    """
    last: Optional[RecognisabilityVerdict] = None
    for N in range(N_max + 1):
        if N and len(word) + 2 * N > table.max_length:
            return RecognisabilityVerdict(
                word, n, "inconclusive", None,
                induced=last.induced if last else (),
                extensions=last.extensions if last else 0,
                witness=last.witness if last else None,
                max_radius_tested=N - 1,
            )
        verdict = is_recognisable(sub, n, word, N, table, budget)
        if verdict.recognisable:
            return verdict
        last = verdict
    return last


# --------------------------------------------------------------------------- local recognisability


@dataclass(frozen=True)
class LocalRecognisability:
    """Local recognisability verdict.

    ``status`` is ``"certified"`` (every letter occurrence has its root letter
    and position within its super-word fixed by ``radius`` letters on each
    side), ``"refuted"`` (ambiguous windows persist at ``radius``, the largest
    radius searched; ``witnesses`` holds an exactly re-verified one per
    ambiguous letter) or ``"inconclusive"`` (no radius could be searched, or
    a candidate ambiguity could not be confirmed exactly).  ``table_length`` is the root-window
    length used to prune the search.
    """

    level: int
    status: str
    radius: Optional[int]
    per_letter: dict[str, Optional[int]]
    witnesses: dict[str, tuple[str, tuple]] = field(default_factory=dict)
    table_length: int = 0

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "status": self.status,
            "radius": self.radius,
            "per_letter": self.per_letter,
            "witnesses": {
                a: {"window": w, "labels": [list(x) for x in labels]} for a, (w, labels) in self.witnesses.items()
            },
            "table_length": self.table_length,
        }


def position_labels(
    sub: RandomSubstitution, n: int, word: str, pos: int, table: LanguageTable, budget: int | None = None
) -> set[tuple[str, int]]:
    """(root letter, offset in its super-word) of position ``pos`` (0-based) over all decompositions.

    A single-piece decomposition does not say where the window sits inside its
    super-word, so every occurrence of the window in a realisation counts.
    """
    budget = default_budget() if budget is None else budget
    P = _pieces(sub, n, budget)
    labels = set()
    for d in _decompose(sub, n, word, table, budget):
        if len(d.pieces) == 1:
            for r in P.images[d.root]:
                i = r.find(word)
                while i >= 0:
                    labels.add((d.root, i + pos))
                    i = r.find(word, i + 1)
            continue
        start = 0
        for k, p in enumerate(d.pieces):
            if start <= pos < start + len(p):
                offset = pos - start
                if k == 0:
                    offset += P.lengths[d.root[0]] - len(p)
                labels.add((d.root[k], offset))
                break
            start += len(p)
    return labels


class _StateCap(Exception):
    pass


def _ambiguous_windows(
    sub: RandomSubstitution, n: int, N: int, table: LanguageTable, budget: int, max_states: int
) -> dict[str, list[str]]:
    """Windows of length ``2N+1`` admitting two decompositions that label the centre differently.

    Runs over pairs of decompositions letter by letter.  A side is a
    realisation, the offset of the next letter in it, and the last
    ``table.max_length`` root letters; both sides must emit the same letter.
    Roots are only checked window by window, so the search over-approximates
    the true pairs: an empty result is a proof, a non-empty one is a list of
    candidates (per centre letter) to be confirmed exactly.
    """
    P = _pieces(sub, n, budget)
    K = table.max_length
    options = [(a, r) for a in sub.alphabet for r in P.images[a]]

    def advance(side):
        r, o, root = side
        if o + 1 < len(r):
            return [(r, o + 1, root)]
        out = []
        for a, r2 in options:
            v = (root + a)[-K:]
            if v in table:
                out.append((r2, 0, v))
        return out

    def pair(x, y):
        return (x, y) if x <= y else (y, x)

    starts = [(r, o, a) for a, r in options for o in range(len(r))]
    layer: dict = {}
    for x in starts:
        for y in starts:
            if x[0][x[1]] == y[0][y[1]]:
                layer.setdefault((pair(x, y), None), None)
    # layers[t] maps each state before letter t to its predecessor
    layers = [layer]
    width = 2 * N + 1
    count = len(layer)
    for t in range(width):
        if t == N:
            layer = {
                (xy, xy[0][0][xy[0][1]]): parent
                for (xy, _), parent in layer.items()
                if (xy[0][2][-1], xy[0][1]) != (xy[1][2][-1], xy[1][1])
            }
            layers[t] = layer
        if t == width - 1:
            break
        nxt: dict = {}
        for key in layer:
            (x, y), c = key
            for x2 in advance(x):
                ch = x2[0][x2[1]]
                for y2 in advance(y):
                    if y2[0][y2[1]] == ch:
                        nxt.setdefault((pair(x2, y2), c), key)
        count += len(nxt)
        if count > max_states:
            raise _StateCap
        layers.append(nxt)
        layer = nxt

    found: dict[str, list[str]] = defaultdict(list)
    for key in layer:
        letters = []
        k = key
        for t in range(width - 1, -1, -1):
            x = k[0][0]
            letters.append(x[0][x[1]])
            k = layers[t][k]
        found[key[1]].append("".join(reversed(letters)))
    return found


def local_recognisability(
    sub: RandomSubstitution,
    n: int,
    N_max: int,
    table: LanguageTable,
    budget: int | None = None,
    max_states: int = 200_000,
    max_checks: int = 16,
) -> LocalRecognisability:
    """Least radius fixing the decomposition at every letter occurrence.

    For each radius the pair search is run afresh; ambiguity at radius
    ``N + 1`` implies ambiguity at ``N``, so per-letter radii are the first
    radius at which a letter stops being ambiguous.  At the last radius
    tried, candidate windows are replayed with the exact decomposer before
    anything is reported as refuted.  ``max_states`` caps the pair states of
    one radius.
    """
    budget = default_budget() if budget is None else budget
    per_letter: dict[str, Optional[int]] = {a: None for a in sub.alphabet}
    pending = set(sub.alphabet)
    found: dict[str, list[str]] = {}
    last = -1
    for N in range(N_max + 1):
        try:
            found = _ambiguous_windows(sub, n, N, table, budget, max_states)
        except _StateCap:
            break
        last = N
        for a in list(pending):
            if a not in found:
                per_letter[a] = N
                pending.discard(a)
        if not pending:
            return LocalRecognisability(n, "certified", N, per_letter, {}, table.max_length)

    witnesses: dict[str, tuple[str, tuple]] = {}
    for a in sub.sorted(found):
        for w in sorted(found[a])[:max_checks]:
            labels = position_labels(sub, n, w, last, table, budget)
            if len(labels) > 1:
                witnesses[a] = (w, tuple(sorted(labels)))
                break
    confirmed = bool(found) and set(witnesses) == set(found)
    status = "refuted" if confirmed else "inconclusive"
    return LocalRecognisability(n, status, last if last >= 0 else None, per_letter, witnesses, table.max_length)


# --------------------------------------------------------------------------- recognisable words


@dataclass(frozen=True)
class RecognisableWord:
    word: str
    level: int
    radius: int
    root: str
    decomposition: Optional[InflationDecomposition]
    candidates_checked: int

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "level": self.level,
            "radius": self.radius,
            "root": self.root,
            "decomposition": str(self.decomposition) if self.decomposition else None,
            "candidates_checked": self.candidates_checked,
        }


def find_recognisable_word(
    sub: RandomSubstitution,
    n: int,
    table: LanguageTable,
    budget: int | None = None,
    max_radius: int = 0,
    max_root_length: int | None = None,
) -> Optional[RecognisableWord]:
    """First exact level-``n`` inflation word that is recognisable with radius ≤ ``max_radius``.

    Roots are tried by length then lexicographically, realisations in
    canonical order.  ``budget`` caps the number of candidates checked; the
    search gives up (returns ``None``) when it is spent.
    """
    budget = default_budget() if budget is None else budget
    checked = 0
    pn = power(sub, n, default_budget())
    max_root_length = table.max_length if max_root_length is None else max_root_length
    for size in range(1, max_root_length + 1):
        for root in table.words(size):
            for parts in itertools.product(*(pn[c] for c in root)):
                checked += 1
                if checked > budget:
                    return None
                w = "".join(parts)
                if max_radius == 0:
                    # radius 0 means a single decomposition; stop looking at two
                    if len(_decompose(sub, n, w, table, default_budget(), limit=2)) != 1:
                        continue
                for N in range(max_radius + 1):
                    if N and len(w) + 2 * N > table.max_length:
                        break
                    verdict = is_recognisable(sub, n, w, N, table)
                    if verdict.recognisable:
                        return RecognisableWord(w, n, N, root, verdict.decomposition, checked)
    return None


def lift_recognisable_word(
    sub: RandomSubstitution,
    previous: RecognisableWord,
    table: LanguageTable,
    budget: int | None = None,
) -> Optional[RecognisableWord]:
    """A level-``n+1`` word with a single decomposition, searched inside ϑ(``previous.word``).

    Every realisation of ϑ(``previous.word``) is an exact level-``n+1``
    inflation word over ``previous.root``; they are tried in canonical order
    until one has no other level-``n+1`` decomposition.  ``budget`` caps the
    number of candidates.
    """
    if previous.radius != 0:
        raise ValueError("only radius-0 words can be lifted")
    budget = default_budget() if budget is None else budget
    n = previous.level + 1
    _pieces(sub, n, default_budget())
    checked = 0
    for parts in itertools.product(*(sub[c] for c in previous.word)):
        checked += 1
        if checked > budget:
            return None
        w = "".join(parts)
        items = _decompose(sub, n, w, table, default_budget(), limit=2)
        if len(items) == 1:
            assert items[0].root == previous.root and items[0].is_exact
            return RecognisableWord(w, n, 0, items[0].root, items[0], checked)
    return None


def recognisable_ladder(
    sub: RandomSubstitution,
    top: int,
    table: LanguageTable,
    budget: int | None = None,
) -> list[RecognisableWord]:
    """Radius-0 recognisable words at levels ``1, 2, ...`` up to ``top``.

    Level 1 uses :func:`find_recognisable_word`; each later level first tries
    to lift the previous word and falls back to the direct search.  The list
    stops at the first level where both fail within ``budget`` candidates.
    """
    budget = default_budget() if budget is None else budget
    ladder: list[RecognisableWord] = []
    for n in range(1, top + 1):
        try:
            found = lift_recognisable_word(sub, ladder[-1], table, budget) if ladder else None
        except BudgetExceeded:
            found = None
        try:
            if found is None:
                found = find_recognisable_word(sub, n, table, budget)
        except BudgetExceeded:
            found = None
        if found is None:
            break
        ladder.append(found)
    return ladder


def _phi(word: str) -> str:
    """One step of the letter-by-letter lift used for the random Fibonacci words.

    ``b`` becomes ``a``; each run of ``a`` becomes alternating ``ab``/``ba``
    blocks, starting with ``ab`` after a ``b`` and ending with ``ba`` before a
    ``b``.
    """
    out = []
    i = 0
    while i < len(word):
        if word[i] == "b":
            out.append("a")
            i += 1
            continue
        j = i
        while j < len(word) and word[j] == "a":
            j += 1
        run = j - i
        after_b = i > 0
        before_b = j < len(word)
        if after_b:
            first = "ab"
        elif before_b:
            # the last block must be ba, alternate backwards
            first = "ba" if run % 2 == 1 else "ab"
        else:
            raise ValueError(f"cannot lift {word!r}: a run of a's touches neither b")
        blocks = [first if k % 2 == 0 else ("ba" if first == "ab" else "ab") for k in range(run)]
        if before_b and blocks[-1] != "ba":
            raise ValueError(f"cannot lift {word!r}: inconsistent run of {run} a's")
        out.extend(blocks)
        i = j
    return "".join(out)


def fib_recognisable_split(n: int) -> tuple[str, str]:
    """The word ``F_n`` split into its two level-``n`` super-words."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return "a", "a"
    word = "abba"
    for _ in range(n - 1):
        word = _phi(word)
    half = len(word) // 2
    return word[:half], word[half:]


def fib_recognisable_word(n: int) -> str:
    """The level-``n`` recognisable random Fibonacci word ``F_n`` (root ``aa``)."""
    left, right = fib_recognisable_split(n)
    return left + right
