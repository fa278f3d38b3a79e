"""Labelled transition systems and Buchi automata over record alphabets.

Three machine kinds share one transition structure:

* ``Ltsr``    - plain transition system; its finite language is the set of
                traceable words and its infinite language the set of words
                with an infinite run.
* ``Bar``     - Buchi automaton: one final set, used both for finite
                acceptance (reach a final state) and infinite acceptance
                (visit the final set infinitely often).
* ``Gba``     - generalized Buchi automaton: a family of final sets; an
                infinite run accepts when it visits every member infinitely
                often, and a finite word is accepted when it can reach the
                intersection of the family.  Join composition produces these.

The invisible record is an ordinary letter here: no transition relation in
this module ever skips or inserts steps on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import InvalidRecordError
from .records import FiniteWord, Lasso, Record, check_token

Transition = tuple  # (state, Record, state)


@dataclass(frozen=True)
class Ltsr:
    """A labelled transition system over a record alphabet.

    ``names`` and ``data`` fix the alphabet; ``transitions`` is an explicit
    edge set, which keeps sparse machines small and makes no reachability or
    totality assumptions.
    """

    states: frozenset
    names: frozenset
    data: frozenset
    transitions: frozenset
    initial: frozenset

    @classmethod
    def make(cls, states, names, data, transitions, initial) -> "Ltsr":
        return cls(
            frozenset(states),
            frozenset(names),
            frozenset(data),
            frozenset(tuple(t) for t in transitions),
            frozenset(initial),
        )


@dataclass(frozen=True)
class Bar:
    """A Buchi automaton: a transition system plus one final set."""

    base: Ltsr
    final: frozenset

    @classmethod
    def make(cls, states, names, data, transitions, initial, final) -> "Bar":
        return cls(Ltsr.make(states, names, data, transitions, initial), frozenset(final))

    states = property(lambda self: self.base.states)
    names = property(lambda self: self.base.names)
    data = property(lambda self: self.base.data)
    transitions = property(lambda self: self.base.transitions)
    initial = property(lambda self: self.base.initial)


def _canonical_family(family) -> tuple:
    sets = {frozenset(f) for f in family}
    return tuple(sorted(sets, key=lambda f: tuple(sorted(f))))


@dataclass(frozen=True)
class Gba:
    """A generalized Buchi automaton with a (possibly empty) family of final sets.

    The family is stored deduplicated and sorted by member contents so equal
    automata always compare and serialize identically.  An empty family means
    every infinite run accepts; joins of machines with all-final components
    produce such families indirectly, so the case is allowed rather than
    rejected.
    """

    base: Ltsr
    final_family: tuple

    @classmethod
    def make(cls, states, names, data, transitions, initial, final_family) -> "Gba":
        return cls(
            Ltsr.make(states, names, data, transitions, initial),
            _canonical_family(final_family),
        )

    states = property(lambda self: self.base.states)
    names = property(lambda self: self.base.names)
    data = property(lambda self: self.base.data)
    transitions = property(lambda self: self.base.transitions)
    initial = property(lambda self: self.base.initial)


Machine = Union[Ltsr, Bar, Gba]


def base_of(m: Machine) -> Ltsr:
    return m if isinstance(m, Ltsr) else m.base


@dataclass(frozen=True)
class Verdict:
    """Result of an equivalence check.

    ``witness`` is None when the machines are equal, otherwise a finite word
    or lasso accepted by exactly one of the two machines compared.
    """

    equal: bool
    witness: Optional[Union[FiniteWord, Lasso]] = None

    @property
    def witness_kind(self) -> Optional[str]:
        if self.witness is None:
            return None
        return "finite" if isinstance(self.witness, FiniteWord) else "lasso"


def validate(m: Machine) -> list:
    """All invariant violations of a machine, as human-readable strings.

    An empty list means the machine is well formed.  Validation is separate
    from construction so that malformed inputs can be loaded, inspected, and
    reported on instead of dying half-parsed.
    """
    out = []
    base = base_of(m)

    def tokens_ok(items, what):
        for it in sorted(items):
            try:
                check_token(it, what)
            except InvalidRecordError as e:
                out.append(str(e))

    tokens_ok(base.states, "state id")
    tokens_ok(base.names, "port name")
    tokens_ok(base.data, "data value")
    if not base.states:
        out.append("machine must have at least one state")
    if not base.names:
        out.append("machine must declare a non-empty name set")
    if not base.initial:
        out.append("machine must have at least one initial state")
    if not base.initial <= base.states:
        out.append("initial states must be states of the machine")
    for (src, label, dst) in sorted(base.transitions, key=lambda t: (t[0], t[1], t[2])):
        if src not in base.states or dst not in base.states:
            out.append(f"transition {src} -{label}-> {dst} uses undeclared states")
        if not isinstance(label, Record):
            out.append(f"transition label {label!r} is not a record")
            continue
        if not label.domain <= base.names:
            out.append(f"transition label {label} uses ports outside the name set")
        for _, value in label.entries:
            if value not in base.data:
                out.append(f"transition label {label} uses data outside the data set")
    if isinstance(m, Bar):
        if not m.final:
            out.append("final set must be non-empty")
        if not m.final <= base.states:
            out.append("final states must be states of the machine")
    if isinstance(m, Gba):
        for member in m.final_family:
            if not member <= base.states:
                out.append("every final-family member must be a set of states")
    return out


@lru_cache(maxsize=512)
def _adjacency(base: Ltsr) -> dict:
    adj: dict = {}
    for src, label, dst in base.transitions:
        adj.setdefault((src, label), set()).add(dst)
    return {k: frozenset(v) for k, v in adj.items()}


def step(m: Machine, current: Iterable[str], r: Record) -> frozenset:
    """One strict transition step; the record must lie in the machine's alphabet."""
    base = base_of(m)
    if not r.domain <= base.names:
        raise InvalidRecordError(f"record {r} is outside the machine's name set")
    adj = _adjacency(base)
    out = set()
    for q in current:
        out |= adj.get((q, r), frozenset())
    return frozenset(out)


def _step_any(base: Ltsr, current: frozenset, r: Record) -> frozenset:
    # Lenient stepping: a record outside the alphabet simply matches no edge.
    adj = _adjacency(base)
    out = set()
    for q in current:
        out |= adj.get((q, r), frozenset())
    return frozenset(out)


def reach(m: Machine, from_states: Iterable[str], w: FiniteWord) -> frozenset:
    """States reachable from ``from_states`` by reading ``w`` symbol by symbol.

    A symbol outside the machine's alphabet matches no transition, so words
    over a larger name set are handled uniformly: they simply die here.  That
    convention is what lets machines with different name sets be compared over
    their union alphabet.
    """
    base = base_of(m)
    current = frozenset(from_states)
    for r in w.symbols:
        if not current:
            return current
        current = _step_any(base, current, r)
    return current


def traceable(m: Machine, w: FiniteWord) -> bool:
    base = base_of(m)
    return bool(reach(m, base.initial, w))


def finite_targets(m: Machine) -> frozenset:
    """The state set whose reachability defines finite acceptance.

    Ltsr: every state (finite acceptance is traceability).  Bar: the final
    set.  Gba: the intersection of the family (all states when the family is
    empty, matching the convention that an empty family constrains nothing).
    """
    if isinstance(m, Bar):
        return m.final
    if isinstance(m, Gba):
        targets = base_of(m).states
        for member in m.final_family:
            targets = targets & member
        return frozenset(targets)
    return m.states


def accepts_finite(m: Machine, w: FiniteWord) -> bool:
    base = base_of(m)
    return bool(reach(m, base.initial, w) & finite_targets(m))


def trap_states(m: Machine) -> frozenset:
    """States with no outgoing transition at all; runs entering them die."""
    base = base_of(m)
    alive = {src for src, _, _ in base.transitions}
    return frozenset(base.states - alive)


def lts_to_bar(m: Ltsr) -> Bar:
    """View a transition system as a Buchi automaton with every state final.

    Finite acceptance then coincides with traceability and infinite acceptance
    with the existence of an infinite run.
    """
    return Bar(m, m.states)


def strongly_connected_components(nodes, succ) -> list:
    """Iterative Tarjan SCC over an explicit node list and successor function."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if child not in index:
                    index[child] = low[child] = counter[0]
                    counter[0] += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(succ(child))))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                scc = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    scc.append(member)
                    if member == node:
                        break
                sccs.append(scc)
    return sccs


def _lasso_cycles(m: Machine, l: Lasso):
    """Strongly connected node sets of the machine x lasso-position product.

    Positions walk the prefix once and then loop through the period, so every
    cycle of the product corresponds to an infinite run over the lasso and
    vice versa.  Yields the machine-state set of every reachable non-trivial
    SCC (a single node counts only with a self-loop).
    """
    base = base_of(m)
    adj = _adjacency(base)
    syms = l.prefix + l.period
    total = len(syms)
    loop_start = len(l.prefix)

    def successors(node):
        q, i = node
        nxt = i + 1 if i + 1 < total else loop_start
        for target in adj.get((q, syms[i]), frozenset()):
            yield (target, nxt)

    start = [(q, 0) for q in sorted(base.initial)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        node = frontier.pop()
        for child in successors(node):
            if child not in seen:
                seen.add(child)
                frontier.append(child)

    ordered = sorted(seen)
    for scc in strongly_connected_components(ordered, lambda n: (c for c in successors(n) if c in seen)):
        members = set(scc)
        if len(scc) > 1 or any(c in members for c in successors(scc[0])):
            yield frozenset(q for q, _ in scc)


def accepts_lasso(b: Bar, l: Lasso) -> bool:
    """Buchi acceptance of an ultimately periodic word.

    Decided on the finite product graph rather than by following runs, because
    with nondeterminism an accepting run may have to make different choices on
    different passes through the period.
    """
    return any(states & b.final for states in _lasso_cycles(b, l))


def gba_accepts_lasso(g: Gba, l: Lasso) -> bool:
    for states in _lasso_cycles(g, l):
        if all(states & member for member in g.final_family):
            return True
    return False


def _fresh_state(taken, stem: str) -> str:
    candidate = stem
    n = 0
    while candidate in taken:
        candidate = f"{stem}{n}"
        n += 1
    return candidate


def degeneralize(g: Gba) -> Bar:
    """Counter construction collapsing a final-set family into one final set.

    One copy of the state space per family member; the counter advances past
    copy ``i`` whenever the source state lies in member ``i``, so a run that
    cycles through all copies forever meets every member infinitely often.
    The family is ordered by sorted member contents to keep output canonical.

    Final marking: states whose underlying state lies in the intersection of
    the family are final in every copy, which preserves finite acceptance of
    the family intersection exactly.  Additionally the first member's states
    are final in copy one, restricted to states lying on a reachable cycle;
    that restriction keeps lasso acceptance exact while adding no finite
    acceptances beyond prefixes of accepted infinite words.  (No single final
    set can preserve both languages in general: an automaton whose final set
    is seen infinitely often also accepts, finitely, infinitely many prefixes
    of every accepted infinite word.)
    """
    base = g.base
    family = list(g.final_family) if g.final_family else [frozenset(base.states)]
    k = len(family)

    def cname(q: str, i: int) -> str:
        return f"({q},{i})"

    states = frozenset(cname(q, i) for q in base.states for i in range(1, k + 1))
    transitions = set()
    for src, label, dst in base.transitions:
        for i in range(1, k + 1):
            j = (i % k) + 1 if src in family[i - 1] else i
            transitions.add((cname(src, i), label, cname(dst, j)))
    initial = frozenset(cname(q, 1) for q in base.initial)

    core = frozenset(base.states)
    for member in family:
        core = core & member
    final = {cname(q, i) for q in core for i in range(1, k + 1)}

    adj: dict = {}
    for src, label, dst in transitions:
        adj.setdefault(src, set()).add(dst)
    seen = set(initial)
    frontier = list(initial)
    while frontier:
        node = frontier.pop()
        for child in adj.get(node, ()):  # noqa: B905
            if child not in seen:
                seen.add(child)
                frontier.append(child)
    reachable = sorted(seen)
    for scc in strongly_connected_components(
        reachable, lambda n: (c for c in adj.get(n, ()) if c in seen)
    ):
        members = set(scc)
        cyclic = len(scc) > 1 or any(c in members for c in adj.get(scc[0], ()))
        if not cyclic:
            continue
        for q in family[0]:
            if cname(q, 1) in members:
                final.add(cname(q, 1))

    if not final:
        # Nothing accepts, but a Buchi automaton needs a non-empty final set;
        # an unreachable padding state changes neither language.
        pad = _fresh_state(states, "(pad,0)")
        states = states | {pad}
        final = {pad}

    return Bar(
        Ltsr(frozenset(states), base.names, base.data, frozenset(transitions), initial),
        frozenset(final),
    )


def without_invisible_edges(m: Machine) -> Machine:
    """Drop every transition labelled with the invisible record."""
    base = base_of(m)
    kept = frozenset(t for t in base.transitions if not t[1].is_invisible)
    new_base = Ltsr(base.states, base.names, base.data, kept, base.initial)
    if isinstance(m, Bar):
        return Bar(new_base, m.final)
    if isinstance(m, Gba):
        return Gba(new_base, m.final_family)
    return new_base


def with_idle_loops(m: Machine) -> Machine:
    """Give every state an invisible self-loop (and drop other invisible edges).

    Machines of this shape can always let time pass without observable effect.
    The class is closed under join, and on it the reach set of a join
    factorizes exactly into the component reach sets on restricted visible
    words, which is what the componentwise language formulas assume.
    """
    base = base_of(m)
    from .records import TAU

    kept = {t for t in base.transitions if not t[1].is_invisible}
    kept |= {(q, TAU, q) for q in base.states}
    new_base = Ltsr(base.states, base.names, base.data, frozenset(kept), base.initial)
    if isinstance(m, Bar):
        return Bar(new_base, m.final)
    if isinstance(m, Gba):
        return Gba(new_base, m.final_family)
    return new_base
