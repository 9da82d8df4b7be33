"""Golden-fixture runner for the worked examples."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

from .analysis import mixing_verdict, return_length_spectrum
from .core import RandomSubstitution, load_substitution
from .decompose import decompositions, fib_recognisable_split, induced, is_recognisable
from .errors import FixtureMissing
from .language import LanguageTable, cached_legal_words
from .spectral import gcd_report, spectral_data
from .tiling import natural_lengths, tiling_mixing_verdict

FIXTURES = ("fib", "pd", "ex51", "ex52")
TABLE_LENGTH = 16


def fixture_dir() -> Path:
    return Path(str(resources.files("randsub") / "fixtures"))


class Fixtures:
    """Loads the bundled substitutions and caches their language tables."""

    def __init__(self, directory: Path | None = None):
        self.directory = Path(directory) if directory else fixture_dir()
        self._subs: dict[str, RandomSubstitution] = {}

    def __getitem__(self, name: str) -> RandomSubstitution:
        if name not in self._subs:
            path = self.directory / f"{name}.json"
            if not path.exists():
                raise FixtureMissing(name)
            self._subs[name] = load_substitution(path)
        return self._subs[name]

    def table(self, name: str, L: int = TABLE_LENGTH) -> LanguageTable:
        return cached_legal_words(self[name], L)


def _pairs(ds) -> list[str]:
    return sorted(str(d) for d in ds)


# each case maps the fixtures to a JSON value


def _decompose_aab(fx):
    return _pairs(decompositions(fx["fib"], 1, "aab", fx.table("fib")))


def _decompose_bb_level2(fx):
    return sorted({d.root for d in decompositions(fx["fib"], 2, "bb", fx.table("fib"))})


def _decompose_bab_pd(fx):
    return _pairs(decompositions(fx["pd"], 1, "bab", fx.table("pd")))


def _decompose_ababa(fx):
    ds = decompositions(fx["fib"], 1, "ababa", fx.table("fib"))
    return {"all": _pairs(ds), "induced_2_4": sorted({str(induced(d, 2, 4)) for d in ds})}


def _decompose_bbaba(fx):
    ds = decompositions(fx["fib"], 1, "bbaba", fx.table("fib"))
    return {"all": _pairs(ds), "induced_2_4": sorted({str(induced(d, 2, 4)) for d in ds})}


def _decompose_levels(fx):
    w = "abbaaaabbaaaabba"
    return {str(n): _pairs(decompositions(fx["fib"], n, w, fx.table("fib"))) for n in range(1, 5)}


def _legal_facts(fx):
    t = fx.table("fib")
    return {w: w in t for w in ("aa", "bb", "bbb", "aaaaa")}


def _recognisable_table(fx):
    rows = {}
    for n in range(1, 6):
        left, right = fib_recognisable_split(n)
        ds = decompositions(fx["fib"], n, left + right, fx.table("fib"))
        rows[str(n)] = {"word": f"{left}|{right}", "decompositions": _pairs(ds)}
    return rows


def _recognisable_radius0(fx):
    out = {}
    for n in range(1, 5):
        left, right = fib_recognisable_split(n)
        out[str(n)] = is_recognisable(fx["fib"], n, left + right, 0, fx.table("fib")).recognisable
    return out


def _spectral(name):
    def run(fx):
        s = spectral_data(fx[name])
        return {"lambda1": str(s.lambda1), "lambda2": str(s.lambda2), "lambda2_class": s.lambda2_class}

    return run


def _gcd(name):
    def run(fx):
        r = gcd_report(fx[name], 10)
        return {"values": list(r.values), "verdict": r.verdict}

    return run


def _mix(name):
    def run(fx):
        return mixing_verdict(fx[name]).status

    return run


def _tiling(name):
    def run(fx):
        sub = fx[name]
        return tiling_mixing_verdict(sub, natural_lengths(sub)).status

    return run


def _spacing_ex52(fx):
    s = return_length_spectrum(fx["ex52"], "abb", "abb", TABLE_LENGTH, fx.table("ex52"))
    return {"values": list(s.values), "modulus": s.congruence.modulus}


CASES: dict[str, tuple[str, Callable]] = {
    "decompose/fib-aab": ("decompose", _decompose_aab),
    "decompose/fib-bb-level2-roots": ("decompose", _decompose_bb_level2),
    "decompose/pd-bab": ("decompose", _decompose_bab_pd),
    "decompose/fib-ababa": ("decompose", _decompose_ababa),
    "decompose/fib-bbaba": ("decompose", _decompose_bbaba),
    "decompose/fib-levels-1-4": ("decompose", _decompose_levels),
    "legal/fib": ("legal", _legal_facts),
    "recognisable/fib-table": ("recognisable", _recognisable_table),
    "recognisable/fib-radius0": ("recognisable", _recognisable_radius0),
    "spectral/fib": ("spectral", _spectral("fib")),
    "spectral/ex51": ("spectral", _spectral("ex51")),
    "spectral/ex52": ("spectral", _spectral("ex52")),
    "gcd/ex51": ("gcd", _gcd("ex51")),
    "gcd/ex52": ("gcd", _gcd("ex52")),
    "gcd/pd": ("gcd", _gcd("pd")),
    "mix/ex51": ("mix", _mix("ex51")),
    "mix/ex52": ("mix", _mix("ex52")),
    "mix/pd": ("mix", _mix("pd")),
    "mix/fib": ("mix", _mix("fib")),
    "tiling/fib": ("tiling", _tiling("fib")),
    "tiling/ex51": ("tiling", _tiling("ex51")),
    "spectrum/ex52-abb": ("spectrum", _spacing_ex52),
}

GROUPS = tuple(sorted({g for g, _ in CASES.values()}))


@dataclass(frozen=True)
class CaseResult:
    case: str
    group: str
    passed: bool
    expected: object
    actual: object

    def to_json(self) -> dict:
        out = {"case": self.case, "group": self.group, "passed": self.passed}
        if not self.passed:
            out["expected"] = self.expected
            out["actual"] = self.actual
        return out


@dataclass(frozen=True)
class ReproduceReport:
    results: tuple[CaseResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CaseResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed, "results": [r.to_json() for r in self.results]}


def load_golden(path: Path | None = None) -> dict:
    path = Path(path) if path else fixture_dir() / "golden.json"
    if not path.exists():
        raise FixtureMissing(path.name)
    return json.loads(path.read_text(encoding="utf-8"))


def compute(case: str, fx: Fixtures):
    # a JSON round trip makes tuples and lists compare alike
    return json.loads(json.dumps(CASES[case][1](fx)))


def reproduce_paper(
    only: Optional[str] = None, fixtures: Path | None = None, golden: Path | None = None
) -> ReproduceReport:
    """Recompute every pinned example and compare with the golden values.

    ``only`` restricts the run to one group (e.g. ``"decompose"``).
    """
    fx = Fixtures(fixtures)
    expected = load_golden(golden)
    for name in FIXTURES:
        fx[name]
    results = []
    for case, (group, _) in CASES.items():
        if only and group != only:
            continue
        if case not in expected:
            raise FixtureMissing(f"golden value for {case}")
        actual = compute(case, fx)
        results.append(CaseResult(case, group, actual == expected[case], expected[case], actual))
    return ReproduceReport(tuple(results))
