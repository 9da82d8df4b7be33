"""Command-line interface: one subcommand per operation.

Exit codes: 0 success (and Mixing for ``mix``/``tiling``), 1 NotMixing, 2
Inconclusive, 3 usage error, 4 invalid input, 5 a computation limit was hit.
``reproduce-paper`` exits 1 on any mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import analysis, decompose, language, reproduce, spectral, tiling
from .core import DeterministicSubstitution, load_substitution
from .errors import BudgetExceeded, LengthExceedsTable, RandsubError, TableTooSmall

EXIT_USAGE = 3
EXIT_INPUT = 4
EXIT_LIMIT = 5
VERDICT_CODES = {analysis.MIXING: 0, analysis.NOT_MIXING: 1, analysis.INCONCLUSIVE: 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def _window(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("window must look like R0:R1")
    lo, hi = (_rational(p) for p in parts)
    if lo > hi:
        raise argparse.ArgumentTypeError("window needs R0 ≤ R1")
    return lo, hi


def _interval(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("interval must look like I:J")
    return _positive(parts[0]), _positive(parts[1])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="randsub", description="Random substitutions: languages, decompositions and mixing.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text, spec=True, table=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if spec:
            p.add_argument("--spec", required=True, help="substitution definition (JSON)")
        if table:
            p.add_argument("--table-len", type=_positive, default=language.DEFAULT_TABLE_LENGTH,
                           help="length of the legal-word table")
        p.add_argument("--budget", type=_positive, help="enumeration budget (overrides RANDSUB_BUDGET)")
        p.add_argument("--json", action="store_true", help="print a JSON report")
        return p

    p = command("legal", "Legal words: test one word or list/count by length.")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--word", help="test this word")
    g.add_argument("--length", type=_positive, help="list the legal words of this length")

    p = command("decompose", "Inflation word decompositions of a legal word.")
    p.add_argument("--level", type=_positive, default=1)
    p.add_argument("--word", required=True)
    p.add_argument("--induce", type=_interval, metavar="I:J", help="also print decompositions induced on [I,J]")

    p = command("recognisable", "Recognisability radius of a word, or search for a recognisable word.")
    p.add_argument("--level", type=_positive, default=1)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word")
    g.add_argument("--find", action="store_true", help="search for a radius-0 recognisable word")
    p.add_argument("--radius-max", type=_non_negative, default=3)

    p = command("local-recognisability", "Least radius fixing every decomposition locally.")
    p.add_argument("--level", type=_positive, default=1)
    p.add_argument("--radius-max", type=_non_negative, default=40)
    p.add_argument("--max-states", type=_positive, default=200_000)

    command("spectral", "Eigenvalues, frequencies and Pisot/irreducibility data.", table=False)

    p = command("gcd", "gcd of super-word lengths per level.", table=False)
    p.add_argument("--levels", type=_positive, default=10)

    command("periodicity", "Periodicity of a deterministic two-letter substitution.", table=False)

    p = command("mix", "Topological mixing verdict for the subshift.")
    p.add_argument("--proof-strength", action="store_true",
                   help="allow mixing from gcd and |λ₂| > 1 without recognisability")
    p.add_argument("--radius-max", type=_positive, default=analysis.MixConfig.radius_max)
    p.add_argument("--max-states", type=_positive, default=analysis.MixConfig.max_states)

    command("balance", "Letter-count discrepancies and balancedness constants.")

    p = command("spectrum", "Return lengths from u to v.")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--max-len", type=_positive, required=True)

    p = command("tiling", "Mixing verdict for the tiling space.", table=False)
    p.add_argument("--lengths", default="natural", help='"natural", "unit" or rationals such as "3/2,2"')

    p = command("tiling-spectrum", "Patch-length spectrum and ε-density gaps.")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--max-len", type=_positive, required=True)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--window", type=_window, required=True, metavar="R0:R1")
    p.add_argument("--lengths", default="natural")
    p.add_argument("--csv", metavar="PATH", help="write the spectrum values as CSV to PATH")

    p = sub.add_parser("reproduce-paper", help="Recompute the worked examples against pinned values.")
    p.add_argument("--only", choices=reproduce.GROUPS)
    p.add_argument("--fixtures", help="directory holding the fixture substitutions")
    p.add_argument("--golden", help="golden values file")
    p.add_argument("--json", action="store_true")
    return parser


# --------------------------------------------------------------------------- helpers


def _emit(args, report: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(report, ensure_ascii=False, indent=2))
    else:
        for line in lines:
            print(line)


def _table(args, sub):
    if args.budget:
        return language.legal_words(sub, args.table_len, args.budget)
    return language.cached_legal_words(sub, args.table_len)


def _lengths(args, sub) -> tiling.TileLengths:
    if args.lengths == "natural":
        return tiling.natural_lengths(sub)
    if args.lengths == "unit":
        return tiling.TileLengths.unit(sub.alphabet)
    ell = tiling.TileLengths.parse(sub.alphabet, args.lengths)
    return ell


def _checklist_lines(checklist) -> list[str]:
    out = []
    for h in checklist:
        line = f"  - {h.name}: {h.state}"
        if h.witness is not None:
            line += f" ({h.witness})"
        out.append(line)
    return out


# --------------------------------------------------------------------------- commands


def _cmd_legal(args, sub):
    table = _table(args, sub)
    if args.word is not None:
        ok = decompose.is_legal_word(sub, table, sub.check_word(args.word))
        return _emit(args, {"word": args.word, "legal": ok}, [f"{args.word}: {'legal' if ok else 'illegal'}"])
    if args.length is not None:
        words = list(table.words(args.length))
        return _emit(args, {"length": args.length, "count": len(words), "words": words},
                     [f"{len(words)} legal words of length {args.length}", *words])
    counts = table.counts()
    report = {"max_length": table.max_length, "complexity": counts}
    return _emit(args, report, [f"n={n}: {c}" for n, c in enumerate(counts, 1)])


def _cmd_decompose(args, sub):
    table = _table(args, sub)
    ds = decompose.decompositions(sub, args.level, args.word, table, args.budget)
    report = ds.to_json()
    lines = [f"{len(ds.items)} level-{args.level} decompositions of {args.word}:"]
    lines += [f"  {d}" for d in ds.items]
    if args.induce:
        i, j = args.induce
        induced = sorted({str(decompose.induced(d, i, j)) for d in ds.items})
        report["induced"] = {"interval": [i, j], "items": induced}
        lines.append(f"{len(induced)} distinct decompositions induced on [{i},{j}]:")
        lines += [f"  {d}" for d in induced]
    _emit(args, report, lines)


def _cmd_recognisable(args, sub):
    table = _table(args, sub)
    if args.find:
        w = decompose.find_recognisable_word(sub, args.level, table, args.budget)
        if w is None:
            return _emit(args, {"found": None}, [f"no level-{args.level} recognisable word within the budget"])
        return _emit(args, {"found": w.to_json()},
                     [f"level {w.level}, radius {w.radius}: {w.word}", f"  root {w.root}", f"  {w.decomposition}"])
    v = decompose.recognisability_radius(sub, args.level, args.word, args.radius_max, table, args.budget)
    lines = [f"{args.word} at level {args.level}: {v.status}"]
    if v.radius is not None:
        lines.append(f"  radius {v.radius}")
    lines += [f"  induced {d}" for d in v.induced]
    if v.witness is not None:
        lines.append(f"  ambiguous extension {v.witness.extension}")
    _emit(args, v.to_json(), lines)


def _cmd_local(args, sub):
    table = _table(args, sub)
    r = decompose.local_recognisability(sub, args.level, args.radius_max, table, args.budget, args.max_states)
    lines = [f"level {r.level}: {r.status}" + (f" at radius {r.radius}" if r.radius is not None else "")]
    lines += [f"  {a}: radius {n}" for a, n in r.per_letter.items()]
    for a, (w, labels) in r.witnesses.items():
        lines.append(f"  ambiguous window for {a}: {w} with labels {sorted(labels)}")
    _emit(args, r.to_json(), lines)


def _show(x) -> str:
    return str(x) if not hasattr(x, "imag") or x.imag == 0 else f"{x}"


def _cmd_spectral(args, sub):
    s = spectral.spectral_data(sub)
    lines = [
        f"charpoly: {list(s.charpoly)}",
        f"λ₁={_show(s.lambda1)}",
    ]
    if s.lambda2 is not None:
        lines.append(f"λ₂={_show(s.lambda2)}  (|λ₂| vs 1: {s.lambda2_class})")
    lines += [
        "frequencies: " + ", ".join(f"{a}={_show(x)}" for a, x in zip(sub.alphabet, s.frequencies)),
        "natural lengths: " + ", ".join(f"{a}={_show(x)}" for a, x in zip(sub.alphabet, s.natural_lengths)),
        f"Pisot: {s.is_pisot}  irreducible: {s.is_irreducible}  exact: {s.exact}",
        *s.notes,
    ]
    _emit(args, s.to_json(), lines)


def _cmd_gcd(args, sub):
    r = spectral.gcd_report(sub, args.levels)
    lines = [f"gcd_n for n=1..{r.n_max}: {list(r.values)}", f"verdict: {r.verdict}" + (f" {r.at}" if r.at else "")]
    _emit(args, r.to_json(), lines)


def _cmd_periodicity(args, sub):
    theta = DeterministicSubstitution.from_random(sub)
    v = spectral.classify_periodicity(theta)
    lines = [f"{v.status} ({v.form})", *(f"  {k}: {x}" for k, x in v.params.items())]
    _emit(args, v.to_json(), lines)


def _cmd_mix(args, sub):
    config = analysis.MixConfig(
        table_length=args.table_len,
        proof_strength=args.proof_strength,
        radius_max=args.radius_max,
        max_states=args.max_states,
        budget=args.budget,
    )
    v = analysis.mixing_verdict(sub, config)
    lines = [f"status: {v.status}", f"rule: {v.rule or 'none'}", f"conditional: {v.conditional}"]
    if v.conditional:
        held = [h.name for h in v.checklist if h.state == analysis.CERTIFIED]
        lines.append(f"condition: {', '.join(held)} certified by the bounded search only")
    lines.append("checklist:")
    lines += _checklist_lines(v.checklist)
    if v.trace:
        lines.append("rules skipped:")
        lines += [f"  - {t}" for t in v.trace]
    _emit(args, v.to_json(), lines)
    return VERDICT_CODES[v.status]


def _cmd_balance(args, sub):
    r = analysis.balance_report(sub, _table(args, sub))
    lines = [f"words up to length {r.max_length}"]
    for a in r.alphabet:
        lines.append(f"  {a}: discrepancy {r.discrepancy[a]} (≈{float(r.discrepancy[a]):.6f}) "
                     f"at {r.witness[a]}, count spread {r.count_spread[a]}")
    if r.reason:
        lines.append(f"bounds not computed: {r.reason}")
    else:
        lines += [
            f"D={r.D}  B={r.B} (≈{float(r.B):.6f})  C={r.C}",
            f"c₁={r.c1}  c₂={r.c2}  threshold N={r.threshold}",
        ]
    _emit(args, r.to_json(), lines)


def _cmd_spectrum(args, sub):
    s = analysis.return_length_spectrum(sub, args.u, args.v, args.max_len, _table(args, sub))
    cong = s.congruence
    lines = [f"values: {list(s.values)}", f"max gap: {s.max_gap}"]
    if cong is not None:
        lines.append("congruence: " + ("insufficient data" if cong.insufficient else
                                       f"modulus {cong.modulus}" if cong.modulus else "none"))
    _emit(args, s.to_json(), lines)


def _cmd_tiling(args, sub):
    ell = _lengths(args, sub)
    v = tiling.tiling_mixing_verdict(sub, ell)
    lines = [
        "lengths: " + ", ".join(f"{a}={x}" for a, x in zip(ell.alphabet, ell.lengths)),
        f"ratio class: {v.ratio_class.kind}" + (f" {v.ratio_class.pair}" if v.ratio_class.pair else ""),
        f"status: {v.status}",
        f"rule: {v.rule or 'none'}",
        "checklist:",
        *_checklist_lines(v.checklist),
    ]
    _emit(args, v.to_json(), lines)
    return VERDICT_CODES[v.status]


def _cmd_tiling_spectrum(args, sub):
    ell = _lengths(args, sub)
    s = tiling.geometric_spectrum(sub, ell, args.u, args.v, args.max_len, _table(args, sub))
    gaps = tiling.epsilon_density_check(s, args.eps, args.window)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["value", "exact", "word"])
    for x in s.values:
        writer.writerow([x.decimal(12), str(x), s.witnesses[x]])
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    report = {"spectrum": s.to_json(), "gaps": gaps.to_json()}
    lines = [f"{len(s.values)} values below {s.bound}", f"gaps farther than {args.eps} in {args.window[0]}:{args.window[1]}:"]
    lines += [f"  ({a.decimal(12)}, {b.decimal(12)})" for a, b in gaps.gaps] or ["  none"]
    if not args.csv:
        lines += ["", buf.getvalue().rstrip("\n")]
    _emit(args, report, lines)


def _cmd_reproduce(args):
    r = reproduce.reproduce_paper(args.only, args.fixtures, args.golden)
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.case}" for c in r.results]
    for c in r.failures:
        lines.append(f"--- {c.case}\n  expected: {json.dumps(c.expected, ensure_ascii=False)}"
                     f"\n  actual:   {json.dumps(c.actual, ensure_ascii=False)}")
    lines.append(f"{len(r.results) - len(r.failures)}/{len(r.results)} examples reproduced")
    _emit(args, r.to_json(), lines)
    return 0 if r.passed else 1


COMMANDS = {
    "legal": _cmd_legal,
    "decompose": _cmd_decompose,
    "recognisable": _cmd_recognisable,
    "local-recognisability": _cmd_local,
    "spectral": _cmd_spectral,
    "gcd": _cmd_gcd,
    "periodicity": _cmd_periodicity,
    "mix": _cmd_mix,
    "balance": _cmd_balance,
    "spectrum": _cmd_spectrum,
    "tiling": _cmd_tiling,
    "tiling-spectrum": _cmd_tiling_spectrum,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "reproduce-paper":
            return _cmd_reproduce(args)
        sub = load_substitution(args.spec)
        code = COMMANDS[args.command](args, sub)
        return code or 0
    except (BudgetExceeded, LengthExceedsTable, TableTooSmall) as exc:
        print(f"randsub: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (RandsubError, ValueError, OSError) as exc:
        print(f"randsub: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
