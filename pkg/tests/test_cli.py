"""End-to-end command line behaviour, driven in process through main()."""

import json

import pytest

from helpers import bar, lts, rec
from tsr.cli import main
from tsr.congruence import parity_bars
from tsr.records import Record
from tsr.serialize import dumps_canonical, machine_to_json

A = rec(A="0")
TAU = Record.of({})


def write_machine(tmp_path, name, m):
    path = tmp_path / name
    path.write_text(dumps_canonical(machine_to_json(m)), encoding="utf-8")
    return str(path)


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture
def parity_files(tmp_path):
    left, right = parity_bars()
    return (
        write_machine(tmp_path, "left.json", left),
        write_machine(tmp_path, "right.json", right),
    )


def test_validate_ok(tmp_path, capsys):
    left, _ = parity_bars()
    path = write_machine(tmp_path, "m.json", left)
    assert main(["validate", path]) == 0
    out = capsys.readouterr().out
    assert "valid" in out and "Bar" in out and "trapless" in out


def test_validate_violations(tmp_path, capsys):
    broken = bar(["s0"], ["A"], ["0"], [], ["s0"], [])
    path = write_machine(tmp_path, "broken.json", broken)
    assert main(["validate", path]) == 2
    assert "violation" in capsys.readouterr().out


def test_validate_unparseable(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("not json", encoding="utf-8")
    assert main(["validate", str(path)]) == 2
    assert "invalid" in capsys.readouterr().err


def test_join_bars_and_flatten(parity_files, tmp_path, capsys):
    left, right = parity_files
    assert main(["join", left, right]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert "final_family" in obj

    out_path = str(tmp_path / "flat.json")
    assert main(["join", "--flatten", left, right, "-o", out_path]) == 0
    flat = json.loads(open(out_path, encoding="utf-8").read())
    assert "final" in flat and "final_family" not in flat


def test_join_lts(tmp_path, capsys):
    m = lts(["s0"], ["A"], ["0"], [("s0", A, "s0")], ["s0"])
    path = write_machine(tmp_path, "m.json", m)
    assert main(["join", path, path]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert "final" not in obj and "final_family" not in obj


def test_join_mixed_kinds_is_an_error(tmp_path, capsys):
    m = lts(["s0"], ["A"], ["0"], [("s0", A, "s0")], ["s0"])
    b, _ = parity_bars()
    lp = write_machine(tmp_path, "l.json", m)
    bp = write_machine(tmp_path, "b.json", b)
    assert main(["join", lp, bp]) == 2
    assert "error" in capsys.readouterr().err


def test_equiv_exit_codes(parity_files, capsys):
    left, right = parity_files
    assert main(["equiv", "--relation", "b", left, right]) == 0
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["equal"] is True

    assert main(["equiv", "--relation", "f", left, right]) == 1
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["equal"] is False
    assert verdict["witness_kind"] == "finite"


def test_equiv_it_warns_about_traps(tmp_path, capsys):
    trap = lts(["s0", "s1"], ["A"], ["0"], [("s0", A, "s1")], ["s0"])
    path = write_machine(tmp_path, "trap.json", trap)
    code = main(["equiv", "--relation", "it", path, path])
    captured = capsys.readouterr()
    assert code == 0
    assert "trap" in captured.err


def test_equiv_b_requires_acceptance(tmp_path, capsys):
    m = lts(["s0"], ["A"], ["0"], [("s0", A, "s0")], ["s0"])
    path = write_machine(tmp_path, "m.json", m)
    assert main(["equiv", "--relation", "b", path, path]) == 2


def test_member_word(parity_files, tmp_path, capsys):
    left, _ = parity_files
    odd = write_json(tmp_path, "odd.json", [{"A": "0"}])
    even = write_json(tmp_path, "even.json", [{"A": "0"}, {"A": "0"}])
    assert main(["member", "--word", odd, left]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["member", "--word", even, left]) == 1
    assert capsys.readouterr().out.strip() == "false"


def test_member_lasso(parity_files, tmp_path, capsys):
    left, _ = parity_files
    good = write_json(tmp_path, "l.json", {"prefix": [], "period": [{"A": "0"}]})
    assert main(["member", "--lasso", good, left]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_member_out_of_alphabet(parity_files, tmp_path, capsys):
    left, _ = parity_files
    alien = write_json(tmp_path, "w.json", [{"Z": "9"}])
    assert main(["member", "--word", alien, left]) == 2
    assert "error" in capsys.readouterr().err


def test_fuzz_clean_run(capsys):
    assert main(["fuzz", "--relation", "ft", "--trials", "5"]) == 0
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["failed"] == 0
    assert "5 passed" in captured.err or "passed" in captured.err


def test_fuzz_expect_violations(capsys):
    code = main(["fuzz", "--relation", "ft", "--trials", "5", "--expect-violations"])
    capsys.readouterr()
    assert code == 1
    assert main(["fuzz", "--relation", "b", "--trials", "1", "--expect-violations"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["failed"] == 1


def test_fuzz_b_exits_zero_despite_failures(capsys):
    assert main(["fuzz", "--relation", "b", "--trials", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["failed"] == 1


def test_counterexample_command(capsys):
    assert main(["counterexample"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["relation"] == "b"
    assert payload["premise_holds"] is True
    assert payload["conclusion_holds"] is False
    assert len(payload["checks"]) == 5


def test_distinguish(parity_files, capsys):
    left, right = parity_files
    assert main(["distinguish", left, right]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["distinguishable"] is True
    assert payload["context"] is not None

    assert main(["distinguish", left, left]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["distinguishable"] is False


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["equiv", "--relation", "zz", "x", "y"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["member", "machine.json"])
    assert info.value.code == 2


def test_missing_file_is_reported(capsys):
    assert main(["validate", "/no/such/file.json"]) == 2
    assert capsys.readouterr().err != ""
