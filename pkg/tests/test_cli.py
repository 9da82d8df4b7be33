import csv
import json
import shutil
import subprocess
import sys

import pytest

from randsub.cli import main
from randsub.reproduce import fixture_dir


def spec(name):
    return str(fixture_dir() / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_decompose_lists_the_cuttings(capsys):
    code, out, _ = run(capsys, "decompose", "--spec", spec("fib"), "--word", "aab")
    assert code == 0
    assert out.splitlines()[0] == "4 level-1 decompositions of aab:"
    assert {"([a,a,b],aba)", "([a,a,b],bba)", "([a,ab],aa)", "([a,ab],ba)"} == {l.strip() for l in out.splitlines()[1:]}


def test_decompose_induced(capsys):
    code, data = run_json(capsys, "decompose", "--spec", spec("fib"), "--word", "ababa", "--induce", "2:4")
    assert code == 0 and len(data["induced"]["items"]) == 3


def test_spectral_output(capsys):
    code, out, _ = run(capsys, "spectral", "--spec", spec("ex51"))
    assert code == 0 and "λ₁=(7+√13)/2" in out and "gt1" in out


@pytest.mark.parametrize("name,code", [("ex51", 0), ("ex52", 1)])
def test_mix_exit_codes(capsys, name, code):
    got, out, _ = run(capsys, "mix", "--spec", spec(name))
    assert got == code
    assert ("condition:" in out) == (name in ("ex51", "ex52"))


def test_mix_human_and_json_agree(capsys):
    _, out, _ = run(capsys, "mix", "--spec", spec("pd"))
    code, data = run_json(capsys, "mix", "--spec", spec("pd"))
    assert code == 1 and f"status: {data['status']}" in out and f"rule: {data['rule']}" in out
    assert data["conditional"] is False


def test_inconclusive_exit_code(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"alphabet": ["a", "b"], "rules": {"a": ["ab"], "b": ["b"]}}))
    code, out, _ = run(capsys, "mix", "--spec", str(path))
    assert code == 2 and "Inconclusive" in out


def test_tiling_exit_codes(capsys):
    assert run(capsys, "tiling", "--spec", spec("fib"))[0] == 1
    assert run(capsys, "tiling", "--spec", spec("ex51"))[0] == 0
    assert run(capsys, "tiling", "--spec", spec("ex51"), "--lengths", "unit")[0] == 1
    assert run(capsys, "tiling", "--spec", spec("ex51"), "--lengths", "3/2,2")[0] == 1


def test_json_reports_round_trip(capsys):
    for argv in (
        ("legal", "--spec", spec("fib"), "--word", "bb"),
        ("legal", "--spec", spec("fib"), "--length", "3"),
        ("gcd", "--spec", spec("ex52")),
        ("balance", "--spec", spec("fib"), "--table-len", "12"),
        ("spectrum", "--spec", spec("ex52"), "--u", "abb", "--v", "abb", "--max-len", "16"),
        ("recognisable", "--spec", spec("fib"), "--word", "abba"),
        ("recognisable", "--spec", spec("fib"), "--find"),
        ("local-recognisability", "--spec", spec("ex52"), "--radius-max", "20"),
    ):
        code, data = run_json(capsys, *argv)
        assert code == 0, argv
        assert json.loads(json.dumps(data)) == data
    assert run_json(capsys, "legal", "--spec", spec("fib"), "--word", "bbb")[1]["legal"] is False
    assert run_json(capsys, "spectrum", "--spec", spec("ex52"), "--u", "abb", "--v", "abb", "--max-len", "16")[1][
        "congruence"
    ] == {"modulus": 2, "insufficient": False}


def test_periodicity(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"alphabet": ["a", "b"], "rules": {"a": "aba", "b": "bab"}}))
    code, out, _ = run(capsys, "periodicity", "--spec", str(path))
    assert code == 0 and out.startswith("periodic (AlternatingAB)")
    code, _, err = run(capsys, "periodicity", "--spec", spec("fib"))
    assert code == 4 and err


def test_usage_and_input_errors(capsys, tmp_path):
    assert run(capsys)[0] == 3
    assert run(capsys, "mix")[0] == 3
    assert run(capsys, "legal", "--spec", spec("fib"), "--word", "a", "--length", "2")[0] == 3
    assert run(capsys, "legal", "--spec", spec("fib"), "--length", "0")[0] == 3
    assert run(capsys, "decompose", "--spec", spec("fib"), "--word", "ab", "--induce", "x")[0] == 3
    code, _, err = run(capsys, "mix", "--spec", str(tmp_path / "missing.json"))
    assert code == 4 and err.startswith("randsub:")
    assert run(capsys, "decompose", "--spec", spec("fib"), "--word", "bbb")[0] == 4
    assert run(capsys, "legal", "--spec", spec("fib"), "--word", "abc")[0] == 4
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"alphabet": ["a", "b"], "rules": {"a": ["ab", "aa"], "b": ["a"]}}))
    assert run(capsys, "mix", "--spec", str(bad))[0] == 4


def test_limit_errors(capsys):
    assert run(capsys, "spectrum", "--spec", spec("fib"), "--u", "a", "--v", "a", "--max-len", "20")[0] == 5
    assert run(capsys, "decompose", "--spec", spec("fib"), "--word", "abab", "--level", "3", "--budget", "2")[0] == 5


def test_tiling_spectrum_csv(capsys, tmp_path):
    out_csv = tmp_path / "s.csv"
    code, out, _ = run(
        capsys, "tiling-spectrum", "--spec", spec("fib"), "--u", "a", "--v", "a", "--max-len", "12",
        "--eps", "1/10", "--window", "1:4", "--csv", str(out_csv),
    )
    assert code == 0 and "gaps farther than 1/10" in out
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["value", "exact", "word"] and len(rows) > 2
    assert all(r[2].startswith("a") and r[2].endswith("a") for r in rows[1:])
    assert run(capsys, "tiling-spectrum", "--spec", spec("fib"), "--u", "a", "--v", "a", "--max-len", "12",
               "--eps", "1/10", "--window", "1:400")[0] == 4


def test_reproduce_paper(capsys):
    code, out, _ = run(capsys, "reproduce-paper", "--only", "decompose")
    assert code == 0 and out.strip().endswith("6/6 examples reproduced")


def test_reproduce_detects_a_tampered_fixture(capsys, tmp_path):
    for f in fixture_dir().glob("*.json"):
        shutil.copy(f, tmp_path / f.name)
    (tmp_path / "fib.json").write_text(json.dumps({"alphabet": ["a", "b"], "rules": {"a": ["ab"], "b": ["a"]}}))
    code, data = run_json(capsys, "reproduce-paper", "--only", "legal", "--fixtures", str(tmp_path))
    assert code == 1 and not data["passed"]
    assert data["results"][0]["expected"]["bb"] is True and data["results"][0]["actual"]["bb"] is False
    (tmp_path / "pd.json").unlink()
    assert run(capsys, "reproduce-paper", "--only", "legal", "--fixtures", str(tmp_path))[0] == 4


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "randsub", "gcd", "--spec", spec("pd"), "--levels", "3"],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 0 and "[2, 4, 8]" in done.stdout
