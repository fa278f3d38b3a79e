"""Join composition of machines over record alphabets.

Two machines over possibly different name sets synchronize on shared ports
and interleave otherwise.  A transition of the joined machine arises in one
of three ways:

1. both components move, on records that are compatible with respect to the
   two name sets; the label is the union of the component labels;
2. the left component moves alone, on a record whose domain the right
   machine's name set cannot see; the right component is frozen;
3. symmetrically, the right component moves alone.

The rules are read relationally: every instantiation contributes an edge,
and a record to which several rules apply (the invisible record, for one)
contributes the union of the produced edges.  For a union-labelled edge the
decomposition is unique (compatibility forces the left part to be the
restriction of the label to the left name set, and symmetrically), so rule 1
amounts to pairing component edges with compatible labels.
"""

from __future__ import annotations

from .automata import Bar, Gba, Ltsr, Machine, _canonical_family, base_of, degeneralize
from .errors import DataSetMismatchError, TsrError
from .records import Record, comp, union


def product_state(left: str, right: str) -> str:
    """Deterministic token for a pair of component states."""
    return f"({left},{right})"


def _joined_base(base1: Ltsr, base2: Ltsr) -> Ltsr:
    if base1.data != base2.data:
        raise DataSetMismatchError(
            f"join requires one shared data set, got {sorted(base1.data)} and {sorted(base2.data)}"
        )
    n1, n2 = base1.names, base2.names
    transitions = set()
    for (p1, r1, q1) in base1.transitions:
        if not r1.domain & n2:
            for s2 in base2.states:
                transitions.add((product_state(p1, s2), r1, product_state(q1, s2)))
    for (p2, r2, q2) in base2.transitions:
        if not r2.domain & n1:
            for s1 in base1.states:
                transitions.add((product_state(s1, p2), r2, product_state(s1, q2)))
    for (p1, r1, q1) in base1.transitions:
        for (p2, r2, q2) in base2.transitions:
            if comp(r1, n1, r2, n2):
                transitions.add((product_state(p1, p2), union(r1, r2), product_state(q1, q2)))
    states = frozenset(product_state(s1, s2) for s1 in base1.states for s2 in base2.states)
    initial = frozenset(product_state(s1, s2) for s1 in base1.initial for s2 in base2.initial)
    return Ltsr(states, n1 | n2, base1.data, frozenset(transitions), initial)


def join(b1: Bar, b2: Bar) -> Gba:
    """Join two Buchi automata into a generalized Buchi automaton.

    The state space is the full Cartesian product (reachability is not
    pruned), and the final family has one member per component: pairs whose
    left state is left-final, and pairs whose right state is right-final.
    An accepting run must revisit both components' final states forever.
    """
    if not isinstance(b1, Bar) or not isinstance(b2, Bar):
        raise TsrError("join is defined on two Buchi automata; see join_lts for plain systems")
    base = _joined_base(b1.base, b2.base)
    left_final = frozenset(
        product_state(f1, s2) for f1 in b1.final for s2 in b2.states
    )
    right_final = frozenset(
        product_state(s1, f2) for s1 in b1.states for f2 in b2.final
    )
    return Gba(base, _canonical_family((left_final, right_final)))


def join_lts(m1: Machine, m2: Machine) -> Ltsr:
    """Join two transition systems, ignoring any acceptance structure."""
    return _joined_base(base_of(m1), base_of(m2))


def join_bar_flat(b1: Bar, b2: Bar) -> Bar:
    """Join two Buchi automata and collapse the result to a plain one.

    The collapse preserves the lasso language exactly; finite acceptance may
    gain prefixes of accepted infinite words (see degeneralize).
    """
    return degeneralize(join(b1, b2))


def fresh_name(taken, stem: str = "zz") -> str:
    """The first token stem0, stem1, ... not in ``taken``."""
    n = 0
    while f"{stem}{n}" in taken:
        n += 1
    return f"{stem}{n}"


def distinguishing_context(names1, names2, data) -> Bar:
    """One-state machine with a single self-loop on a fresh-port record.

    Joined with any machine over ``names1`` or ``names2``, it can always fire
    its own letter without constraining the other side, and its letter can
    never synchronize away: composing with it embeds the other machine's
    behaviour unchanged while adding an always-available private action.
    Machines that differ in finite or lasso language yield joins that differ
    on some lasso built from such a witness plus the private letter.
    """
    data = frozenset(data)
    if not data:
        raise TsrError("a distinguishing context needs a non-empty data set")
    port = fresh_name(frozenset(names1) | frozenset(names2))
    letter = Record.of({port: min(data)})
    return Bar.make(
        states=("c0",),
        names=(port,),
        data=data,
        transitions=(("c0", letter, "c0"),),
        initial=("c0",),
        final=("c0",),
    )
