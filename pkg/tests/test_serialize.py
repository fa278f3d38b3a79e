"""JSON round-trips and format errors."""

import pytest

from helpers import bar, gba, lts, rec
from tsr.automata import Verdict
from tsr.congruence import GenParams, fuzz_congruence, random_machine
from tsr.errors import MachineFormatError
from tsr.records import FiniteWord, Lasso, Record
from tsr.serialize import (
    dumps_canonical,
    lasso_from_json,
    lasso_to_json,
    load_json,
    load_machine,
    machine_from_json,
    machine_to_json,
    record_from_json,
    record_to_json,
    report_to_json,
    verdict_to_json,
    word_from_json,
    word_to_json,
)

A = rec(A="0")
TAU = Record.of({})


def test_record_round_trip():
    for r in (TAU, A, rec(A="0", B="1")):
        assert record_from_json(record_to_json(r)) == r
    assert record_to_json(rec(B="1", A="0")) == {"A": "0", "B": "1"}
    with pytest.raises(MachineFormatError):
        record_from_json(["A", "0"])
    with pytest.raises(MachineFormatError):
        record_from_json({"A": 0})


def test_word_round_trip():
    w = FiniteWord((A, TAU, A), frozenset({"A"}))
    assert word_from_json(word_to_json(w), {"A"}) == w
    with pytest.raises(MachineFormatError):
        word_from_json({"not": "a list"}, {"A"})


def test_lasso_round_trip():
    l = Lasso((TAU,), (A,), frozenset({"A"}))
    assert lasso_from_json(lasso_to_json(l), {"A"}) == l
    with pytest.raises(MachineFormatError):
        lasso_from_json({"prefix": []}, {"A"})
    with pytest.raises(MachineFormatError):
        lasso_from_json({"prefix": {}, "period": []}, {"A"})


def test_machine_round_trip_all_kinds():
    transitions = [("s0", A, "s1"), ("s1", TAU, "s0")]
    machines = [
        lts(["s0", "s1"], ["A"], ["0"], transitions, ["s0"]),
        bar(["s0", "s1"], ["A"], ["0"], transitions, ["s0"], ["s1"]),
        gba(["s0", "s1"], ["A"], ["0"], transitions, ["s0"], [["s0"], ["s1"]]),
    ]
    for m in machines:
        obj = machine_to_json(m)
        assert machine_from_json(obj) == m
        assert dumps_canonical(obj) == dumps_canonical(machine_to_json(m))


def test_machine_json_is_sorted():
    m = bar(["b", "a"], ["B", "A"], ["1", "0"], [("b", TAU, "a")], ["b"], ["a"])
    obj = machine_to_json(m)
    assert obj["states"] == ["a", "b"]
    assert obj["names"] == ["A", "B"]
    assert obj["data"] == ["0", "1"]
    assert obj["final"] == ["a"]


def test_machine_from_json_errors():
    good = machine_to_json(lts(["s0"], ["A"], ["0"], [("s0", A, "s0")], ["s0"]))
    with pytest.raises(MachineFormatError):
        machine_from_json([good])
    for key in ("states", "names", "data", "initial", "transitions"):
        broken = dict(good)
        del broken[key]
        with pytest.raises(MachineFormatError):
            machine_from_json(broken)
    both = dict(good)
    both["final"] = ["s0"]
    both["final_family"] = [["s0"]]
    with pytest.raises(MachineFormatError):
        machine_from_json(both)
    bad_states = dict(good)
    bad_states["states"] = ["s0", 1]
    with pytest.raises(MachineFormatError):
        machine_from_json(bad_states)
    bad_edge = dict(good)
    bad_edge["transitions"] = [{"from": "s0", "to": "s0"}]
    with pytest.raises(MachineFormatError):
        machine_from_json(bad_edge)
    bad_family = dict(good)
    bad_family["final_family"] = [["s0"], "s0"]
    with pytest.raises(MachineFormatError):
        machine_from_json(bad_family)


def test_verdict_json_shape():
    w = FiniteWord((A,), frozenset({"A"}))
    assert verdict_to_json(Verdict(True)) == {
        "equal": True,
        "witness": None,
        "witness_kind": None,
    }
    obj = verdict_to_json(Verdict(False, w))
    assert obj == {"equal": False, "witness": [{"A": "0"}], "witness_kind": "finite"}
    lasso_obj = verdict_to_json(Verdict(False, Lasso((), (A,), frozenset({"A"}))))
    assert lasso_obj["witness_kind"] == "lasso"
    assert lasso_obj["witness"] == {"prefix": [], "period": [{"A": "0"}]}


def test_report_json_shape():
    report = fuzz_congruence("ft", GenParams(seed=1), 3)
    obj = report_to_json(report)
    assert set(obj) == {
        "relation",
        "trials",
        "passed",
        "vacuous",
        "failed",
        "failures",
        "join_traps_observed",
    }
    assert obj["trials"] == 3


def test_load_json_and_load_machine(tmp_path):
    path = tmp_path / "m.json"
    m = random_machine(GenParams(seed=2), "bar")
    path.write_text(dumps_canonical(machine_to_json(m)), encoding="utf-8")
    assert load_machine(str(path)) == m

    bad = tmp_path / "bad.json"
    bad.write_text("{ oops", encoding="utf-8")
    with pytest.raises(MachineFormatError) as info:
        load_json(str(bad))
    assert "line 1" in str(info.value)


def test_dumps_canonical_is_stable():
    text = dumps_canonical({"b": 1, "a": [2, 3]})
    assert text == '{\n  "a": [\n    2,\n    3\n  ],\n  "b": 1\n}\n'
