"""The join composition: rules, structure, and known compositions."""

from dataclasses import replace

import pytest

from helpers import bar, lts, naive_join_edges, rec, rename_machine
from tsr.automata import Gba, base_of, gba_accepts_lasso, validate
from tsr.congruence import GenParams, random_machine
from tsr.errors import DataSetMismatchError, TsrError
from tsr.join import (
    distinguishing_context,
    fresh_name,
    join,
    join_bar_flat,
    join_lts,
    product_state,
)
from tsr.records import TAU, Lasso, Record

A = rec(A="0")
F = rec(zz0="0")
AF = rec(A="0", zz0="0")


def two_state_cycle(final):
    return bar(
        ["q0", "q1"], ["A"], ["0"],
        [("q0", A, "q1"), ("q1", A, "q0")],
        ["q0"], final,
    )


def firing_context():
    return bar(["c0"], ["zz0"], ["0"], [("c0", F, "c0")], ["c0"], ["c0"])


def test_join_of_cycle_and_firing_context_exactly():
    g = join(two_state_cycle(["q1"]), firing_context())
    p, q = product_state("q0", "c0"), product_state("q1", "c0")
    assert g.states == {p, q}
    assert g.initial == {p}
    assert g.names == {"A", "zz0"}
    assert g.transitions == {
        (p, A, q), (q, A, p),          # the cycle moves alone
        (p, F, p), (q, F, q),          # the context fires alone
        (p, AF, q), (q, AF, p),        # both move on the merged record
    }
    assert g.final_family == (
        frozenset({p, q}),             # any cycle state with the final context
        frozenset({q}),                # the final cycle state with any context
    )
    assert validate(g) == []


def test_join_shape_and_type():
    g = join(two_state_cycle(["q1"]), two_state_cycle(["q0"]))
    assert isinstance(g, Gba)
    assert len(g.states) == 4
    assert g.names == {"A"}
    base = join_lts(two_state_cycle(["q1"]).base, two_state_cycle(["q0"]).base)
    assert base.states == g.states
    with pytest.raises(TsrError):
        join(two_state_cycle(["q1"]).base, two_state_cycle(["q0"]))


def test_join_requires_shared_data():
    other = bar(["c0"], ["B"], ["1"], [("c0", rec(B="1"), "c0")], ["c0"], ["c0"])
    with pytest.raises(DataSetMismatchError):
        join(two_state_cycle(["q1"]), other)


def test_join_is_commutative_up_to_state_swap():
    pairs = [
        (two_state_cycle(["q1"]), firing_context()),
        (two_state_cycle(["q1"]), two_state_cycle(["q0"])),
    ]
    for m1, m2 in pairs:
        left = join(m1, m2)
        right = join(m2, m1)
        mapping = {
            product_state(b, a): product_state(a, b)
            for a in base_of(m1).states
            for b in base_of(m2).states
        }
        assert rename_machine(right, mapping) == left


def test_join_same_name_set_synchronizes_on_identical_letters():
    m1 = two_state_cycle(["q1"]).base
    m2 = lts(
        ["s0"], ["A"], ["0"],
        [("s0", A, "s0"), ("s0", TAU, "s0")],
        ["s0"],
    )
    j = join_lts(m1, m2)
    # Visible moves must match exactly; the invisible self-loop interleaves.
    assert j.transitions == {
        (product_state("q0", "s0"), A, product_state("q1", "s0")),
        (product_state("q1", "s0"), A, product_state("q0", "s0")),
        (product_state("q0", "s0"), TAU, product_state("q0", "s0")),
        (product_state("q1", "s0"), TAU, product_state("q1", "s0")),
    }


def test_join_edges_match_naive_rules_on_random_machines():
    for seed in range(12):
        m1 = random_machine(
            GenParams(name_pool=frozenset({"A", "B"}), seed=seed), "lts"
        )
        m2 = random_machine(
            GenParams(name_pool=frozenset({"B", "C"}), seed=seed + 100), "lts"
        )
        j = join_lts(m1, m2)
        assert j.transitions == naive_join_edges(base_of(m1), base_of(m2))
        assert len(j.states) == len(m1.states) * len(m2.states)
        assert j.names == m1.names | m2.names


def test_join_with_inert_context_is_a_tagged_copy():
    m = two_state_cycle(["q1"]).base
    inert = lts(["c0"], ["Z"], ["0"], [], ["c0"])
    j = join_lts(m, inert)
    assert j.transitions == {
        (product_state(s, "c0"), r, product_state(d, "c0"))
        for s, r, d in m.transitions
    }


def test_join_bar_flat_is_a_buchi_automaton_with_the_same_lasso_language():
    from tsr.automata import Bar, accepts_lasso

    g = join(two_state_cycle(["q1"]), firing_context())
    flat = join_bar_flat(two_state_cycle(["q1"]), firing_context())
    assert isinstance(flat, Bar)
    for lasso in [
        Lasso.of([], [A], names=g.names),
        Lasso.of([A], [F], names=g.names),
        Lasso.of([], [F], names=g.names),
        Lasso.of([], [AF], names=g.names),
        Lasso.of([F], [A, F], names=g.names),
    ]:
        assert accepts_lasso(flat, lasso) == gba_accepts_lasso(g, lasso)


def test_fresh_name():
    assert fresh_name(set()) == "zz0"
    assert fresh_name({"zz0", "zz1"}) == "zz2"
    assert fresh_name({"A"}, stem="A") == "A0"


def test_distinguishing_context():
    c = distinguishing_context({"A"}, {"A", "B"}, {"0", "1"})
    assert c.states == {"c0"}
    assert c.initial == c.final == {"c0"}
    assert len(c.names) == 1
    (port,) = c.names
    assert port not in {"A", "B"}
    assert c.transitions == {("c0", Record.of({port: "0"}), "c0")}
    with pytest.raises(TsrError):
        distinguishing_context({"A"}, {"A"}, set())
