"""Language-level decision procedures for machines over record alphabets.

Finite-word languages are compared by a synchronized subset search, which is
the product of the two determinizations explored lazily and breadth-first,
so a reported witness is always a shortest distinguishing word.

Lasso (omega) languages are compared through transition profiles: the profile
of a finite word records, for every state pair (p, q), whether the word can
drive p to q, and whether it can do so through a final state.  Profiles form
a finite monoid under relational composition, two ultimately periodic words
with the same prefix and period profiles are indistinguishable to a machine,
and every omega-regular inequality is exposed by a pair (prefix profile,
idempotent period profile).  That gives an exact equivalence check and a
complementation construction that never ranks runs: the complement guesses a
split of the input into a prefix and an infinite sequence of blocks whose
profiles multiply out to a non-accepting idempotent pair.

Machines with different name sets are compared over the union alphabet.  A
record outside one machine's name set matches no transition of that machine,
so words using foreign ports are simply absent from its languages; no
special error is raised.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from .automata import (
    Bar,
    Ltsr,
    Machine,
    Verdict,
    _adjacency,
    _step_any,
    accepts_finite,
    accepts_lasso,
    base_of,
    finite_targets,
    lts_to_bar,
    strongly_connected_components,
    traceable,
)
from .errors import (
    AlphabetMismatchError,
    DataSetMismatchError,
    SizeBoundError,
    TsrError,
)
from .records import (
    FiniteWord,
    Lasso,
    Record,
    enumerate_alphabet,
    restrict_lasso,
    restrict_word,
    vis,
    vis_lasso,
)

DEFAULT_COMPLEMENT_STATE_LIMIT = 8
DEFAULT_MONOID_LIMIT = 20000
PAIR_SEARCH_LIMIT = 500000


@dataclass(frozen=True)
class LassoWitness:
    """A lasso together with which machine of an analysis accepts it."""

    lasso: Lasso
    accepted_by: str


# ---------------------------------------------------------------------------
# Finite-word languages


@dataclass
class Dfa:
    """Deterministic view of a machine's finite-word language.

    States are canonical tokens for subsets of the source machine's states;
    the transition map is total over the declared alphabet (the empty subset
    acts as the explicit dead state).
    """

    states: frozenset
    alphabet: tuple
    transitions: dict
    initial: str
    accepting: frozenset


def _subset_token(states: Iterable[str]) -> str:
    return "{" + ",".join(sorted(states)) + "}"


def determinize(b: Machine) -> Dfa:
    base = base_of(b)
    letters = tuple(sorted(enumerate_alphabet(base.names, base.data)))
    targets = finite_targets(b)
    start = frozenset(base.initial)
    subsets = {start}
    transitions = {}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for r in letters:
            nxt = _step_any(base, current, r)
            transitions[(_subset_token(current), r)] = _subset_token(nxt)
            if nxt not in subsets:
                subsets.add(nxt)
                queue.append(nxt)
    return Dfa(
        states=frozenset(_subset_token(s) for s in subsets),
        alphabet=letters,
        transitions=transitions,
        initial=_subset_token(start),
        accepting=frozenset(_subset_token(s) for s in subsets if s & targets),
    )


def dfa_accepts(d: Dfa, w: FiniteWord) -> bool:
    state = d.initial
    for r in w.symbols:
        key = (state, r)
        if key not in d.transitions:
            return False
        state = d.transitions[key]
    return state in d.accepting


def _union_letters(x1: Machine, x2: Machine) -> Tuple[frozenset, List[Record]]:
    base1, base2 = base_of(x1), base_of(x2)
    if base1.data != base2.data:
        raise DataSetMismatchError(
            "finite/omega language comparison requires one shared data set, "
            f"got {sorted(base1.data)} and {sorted(base2.data)}"
        )
    names = base1.names | base2.names
    return names, sorted(enumerate_alphabet(names, base1.data))


def _pair_search(x1: Machine, x2: Machine, stop) -> Optional[FiniteWord]:
    """Breadth-first search over the product of subset constructions.

    ``stop`` maps a pair of acceptance flags to True when the current word
    should be reported.  Pairs are explored over the union alphabet, shortest
    words first, letters in canonical order, so the first hit is a shortest
    witness and is deterministic.
    """
    base1, base2 = base_of(x1), base_of(x2)
    names, letters = _union_letters(x1, x2)
    t1, t2 = finite_targets(x1), finite_targets(x2)
    start = (frozenset(base1.initial), frozenset(base2.initial))
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (s1, s2), word = queue.popleft()
        if stop(bool(s1 & t1), bool(s2 & t2)):
            return FiniteWord(tuple(word), names)
        if not s1 and not s2:
            continue
        for r in letters:
            pair = (_step_any(base1, s1, r), _step_any(base2, s2, r))
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (r,)))
    return None


def finite_equiv(x1: Machine, x2: Machine) -> Verdict:
    """Decide equality of finite-word languages.

    For plain transition systems the finite-word language is the traceable
    words, so this doubles as the finite-trace equivalence on those.  The
    witness, when present, is a shortest word in exactly one language.
    """
    witness = _pair_search(x1, x2, lambda a1, a2: a1 != a2)
    if witness is None:
        return Verdict(True)
    return Verdict(False, witness)


def shortest_accept_difference(x1: Machine, x2: Machine) -> Optional[FiniteWord]:
    """Shortest finite word accepted by x1 but not x2, if any."""
    return _pair_search(x1, x2, lambda a1, a2: a1 and not a2)


def _reachable_bar(b: Bar) -> Bar:
    """Restrict a Buchi automaton to states reachable from its initial set.

    Language-preserving, and essential before profile construction: joins
    carry every state pair and degeneralization copies whole state spaces, so
    distinct behaviour on dead states would otherwise multiply the monoid.
    """
    base = base_of(b)
    adj: dict = {}
    for src, _, dst in base.transitions:
        adj.setdefault(src, set()).add(dst)
    seen = set(base.initial)
    frontier = list(base.initial)
    while frontier:
        node = frontier.pop()
        for child in adj.get(node, ()):
            if child not in seen:
                seen.add(child)
                frontier.append(child)
    if len(seen) == len(base.states):
        return b
    states = frozenset(seen)
    kept = frozenset(t for t in base.transitions if t[0] in seen)
    return Bar(
        Ltsr(states, base.names, base.data, kept, base.initial),
        b.final & states,
    )


# ---------------------------------------------------------------------------
# Transition profiles

# A profile is a pair (reach_rows, final_rows) of bitmask tuples indexed by
# source state: bit q of reach_rows[p] says some path drives p to q over the
# word, and bit q of final_rows[p] says some such path also visits a final
# state (endpoints included).  final_rows[p] is always a submask of
# reach_rows[p].  Composition is relational join with best-flag semantics.

Profile = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _profile_mult(a: Profile, b: Profile) -> Profile:
    ar, af = a
    br, bf = b
    rr = []
    rf = []
    for p in range(len(ar)):
        r = 0
        f = 0
        m = ar[p]
        while m:
            low = m & -m
            i = low.bit_length() - 1
            r |= br[i]
            f |= bf[i]
            m ^= low
        m = af[p]
        while m:
            low = m & -m
            i = low.bit_length() - 1
            f |= br[i]
            m ^= low
        rr.append(r)
        rf.append(f)
    return (tuple(rr), tuple(rf))


@dataclass
class _ProfileSpace:
    order: tuple
    index: dict
    unit: Profile
    letters: dict          # Record -> Profile
    initial_mask: int
    final_diag_cache: dict = field(default_factory=dict)

    def accepting_pair(self, sigma: Profile, rho: Profile) -> bool:
        # Some initial state reaches, via sigma, a state q that rho can loop
        # on while visiting a final state.
        rho_f = rho[1]
        diag = self.final_diag_cache.get(rho_f)
        if diag is None:
            diag = 0
            for q in range(len(rho_f)):
                if (rho_f[q] >> q) & 1:
                    diag |= 1 << q
            self.final_diag_cache[rho_f] = diag
        targets = 0
        m = self.initial_mask
        sigma_r = sigma[0]
        while m:
            low = m & -m
            targets |= sigma_r[low.bit_length() - 1]
            m ^= low
        return bool(targets & diag)


def _profile_space(b: Bar, letters: Iterable[Record]) -> _ProfileSpace:
    base = base_of(b)
    order = tuple(sorted(base.states))
    index = {q: i for i, q in enumerate(order)}
    final = b.final if isinstance(b, Bar) else frozenset(base.states)
    fmask_states = frozenset(final)
    n = len(order)
    adj = _adjacency(base)
    unit_r = tuple(1 << p for p in range(n))
    unit_f = tuple((1 << p) if order[p] in fmask_states else 0 for p in range(n))
    fmask = 0
    for p in range(n):
        if order[p] in fmask_states:
            fmask |= 1 << p
    letter_profiles = {}
    for r in letters:
        rows = []
        frows = []
        for p in range(n):
            mask = 0
            for dst in adj.get((order[p], r), frozenset()):
                mask |= 1 << index[dst]
            rows.append(mask)
            frows.append(mask if (1 << p) & fmask else mask & fmask)
        letter_profiles[r] = (tuple(rows), tuple(frows))
    initial_mask = 0
    for q in base.initial:
        initial_mask |= 1 << index[q]
    return _ProfileSpace(order, index, (unit_r, unit_f), letter_profiles, initial_mask)


def _joint_closure(spaces, letters, limit):
    """BFS closure of the joint profile monoid, shortest words first.

    Returns (elements, nonempty): element -> shortest realizing word, and the
    same restricted to non-empty words (the unit may only be realized by the
    empty word; period profiles must come from the non-empty table).
    """
    unit = tuple(s.unit for s in spaces)
    letter_elems = {
        r: tuple(s.letters[r] for s in spaces) for r in letters
    }
    elements = {unit: ()}
    nonempty = {}
    queue = deque([unit])
    while queue:
        elem = queue.popleft()
        word = elements[elem]
        for r in letters:
            le = letter_elems[r]
            nxt = tuple(_profile_mult(elem[i], le[i]) for i in range(len(spaces)))
            if nxt not in nonempty:
                nonempty[nxt] = word + (r,)
            if nxt not in elements:
                if len(elements) >= limit:
                    raise SizeBoundError(
                        f"profile monoid exceeded {limit} elements; "
                        "reduce machine size or raise the bound"
                    )
                elements[nxt] = word + (r,)
                queue.append(nxt)
    return elements, nonempty


def _joint_mult(a, b):
    return tuple(_profile_mult(a[i], b[i]) for i in range(len(a)))


def _word_sort_key(word):
    return (len(word), word)


def _apply_rows(rows: Tuple[int, ...], mask: int) -> int:
    """Union of the given rows over the set bits of ``mask``."""
    out = 0
    m = mask
    while m:
        low = m & -m
        out |= rows[low.bit_length() - 1]
        m ^= low
    return out


def _loop_diag(frows: Tuple[int, ...]) -> int:
    """States that can return to themselves through a final visit."""
    diag = 0
    for q in range(len(frows)):
        if (frows[q] >> q) & 1:
            diag |= 1 << q
    return diag


def _reach_pairs(spaces, letters):
    """All joint subset-construction states, with a shortest word for each."""
    start = tuple(s.initial_mask for s in spaces)
    pairs = {start: ()}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        word = pairs[current]
        for r in letters:
            nxt = tuple(
                _apply_rows(s.letters[r][0], current[i])
                for i, s in enumerate(spaces)
            )
            if nxt not in pairs:
                pairs[nxt] = word + (r,)
                queue.append(nxt)
    return pairs


def buchi_equiv(b1: Bar, b2: Bar, monoid_limit: int = DEFAULT_MONOID_LIMIT) -> Verdict:
    """Decide equality of lasso (omega) languages of two Buchi automata.

    Every ultimately periodic word is classified by a linked profile pair
    (prefix profile sigma, idempotent period profile rho with sigma*rho =
    sigma), and two machines agree on all infinite words exactly when every
    linked pair of the joint monoid is accepting for both or neither.  Every
    linked pair has the shape (m*rho, rho), and whether (m*rho, rho) accepts
    depends on m only through the states reachable from the initial sets
    under a word realizing m, so the scan pairs period idempotents with joint
    subset-construction states instead of whole monoid elements.  On
    inequality the witness lasso is rebuilt from shortest realizing words and
    is accepted by exactly one machine.
    """
    if not isinstance(b1, Bar) or not isinstance(b2, Bar):
        raise TsrError("buchi_equiv compares two Buchi automata")
    b1 = _reachable_bar(b1)
    b2 = _reachable_bar(b2)
    names, letters = _union_letters(b1, b2)
    spaces = (_profile_space(b1, letters), _profile_space(b2, letters))
    elements, nonempty = _joint_closure(spaces, letters, monoid_limit)

    # One representative per class of idempotents agreeing on reach rows and
    # final-loop diagonals; nothing else about the period can matter.
    idempotents = {}
    for e in sorted(
        (e for e in nonempty if _joint_mult(e, e) == e),
        key=lambda e: _word_sort_key(nonempty[e]),
    ):
        key = tuple((e[i][0], _loop_diag(e[i][1])) for i in range(len(spaces)))
        idempotents.setdefault(key, e)

    pairs = sorted(
        _reach_pairs(spaces, letters).items(),
        key=lambda item: _word_sort_key(item[1]),
    )
    for key, rho in idempotents.items():
        (rows1, diag1), (rows2, diag2) = key
        for masks, word in pairs:
            acc1 = bool(_apply_rows(rows1, masks[0]) & diag1)
            acc2 = bool(_apply_rows(rows2, masks[1]) & diag2)
            if acc1 != acc2:
                witness = Lasso(tuple(word), tuple(nonempty[rho]), names)
                return Verdict(False, witness)
    return Verdict(True)


def buchi_complement(
    b: Bar,
    max_states: int = DEFAULT_COMPLEMENT_STATE_LIMIT,
    monoid_limit: int = 4000,
) -> Bar:
    """Complement a Buchi automaton over its own alphabet.

    The complement accepts an infinite word exactly when the input does not.
    Construction: a deterministic reader tracks the profile of the consumed
    prefix; at any point the run may commit to a linked, non-accepting pair
    (sigma, rho), sigma being the profile read so far, and from then on
    must cut the rest of the input into blocks whose profiles are each
    exactly rho, visiting a final cut marker at every block boundary.  Words
    in the input's language admit no such split; words outside it admit one
    by Ramsey-style factorization, which is what makes the result complete.
    """
    if not isinstance(b, Bar):
        raise TsrError("buchi_complement takes a Buchi automaton")
    b = _reachable_bar(b)
    base = base_of(b)
    if len(base.states) > max_states:
        raise SizeBoundError(
            f"complementation is limited to {max_states} states, got {len(base.states)}"
        )
    letters = sorted(enumerate_alphabet(base.names, base.data))
    space = _profile_space(b, letters)
    elements, nonempty = _joint_closure((space,), letters, monoid_limit)

    ids = {}
    for elem in elements:
        ids[elem] = len(ids)

    idempotents = [e for e in nonempty if _profile_mult(e[0], e[0]) == e[0]]
    pairs = []
    for rho in idempotents:
        for sigma in elements:
            if _joint_mult(sigma, rho) != sigma:
                continue
            if not space.accepting_pair(sigma[0], rho[0]):
                pairs.append((sigma, rho))
    used_rhos = sorted({ids[rho] for _, rho in pairs})

    def reader(elem):
        return f"r{ids[elem]}"

    def block(rho_id, elem):
        return f"b{rho_id}_{ids[elem]}"

    def cut(rho_id):
        return f"c{rho_id}"

    transitions = set()
    for elem in elements:
        word = elements[elem]
        for r in letters:
            nxt = _joint_mult(elem, (space.letters[r],))
            transitions.add((reader(elem), r, reader(nxt)))
    entry_sigmas = {}
    for sigma, rho in pairs:
        entry_sigmas.setdefault(ids[rho], set()).add(sigma)
    letter_elem = {r: (space.letters[r],) for r in letters}
    for rho_id in used_rhos:
        rho = None
        for e in elements:
            if ids[e] == rho_id:
                rho = e
                break
        for sigma in entry_sigmas[rho_id]:
            for r in letters:
                first = letter_elem[r]
                transitions.add((reader(sigma), r, block(rho_id, first)))
                if first == rho:
                    transitions.add((reader(sigma), r, cut(rho_id)))
        for elem in elements:
            for r in letters:
                nxt = _joint_mult(elem, letter_elem[r])
                transitions.add((block(rho_id, elem), r, block(rho_id, nxt)))
                if nxt == rho:
                    transitions.add((block(rho_id, elem), r, cut(rho_id)))
        for r in letters:
            first = letter_elem[r]
            transitions.add((cut(rho_id), r, block(rho_id, first)))
            if first == rho:
                transitions.add((cut(rho_id), r, cut(rho_id)))

    initial = frozenset({reader(next(e for e in elements if elements[e] == ()))})
    # Restrict to the part reachable from the initial reader state.
    adj = {}
    for src, r, dst in transitions:
        adj.setdefault(src, set()).add(dst)
    seen = set(initial)
    frontier = list(initial)
    while frontier:
        node = frontier.pop()
        for child in adj.get(node, ()):
            if child not in seen:
                seen.add(child)
                frontier.append(child)
    transitions = frozenset(t for t in transitions if t[0] in seen and t[2] in seen)
    states = frozenset(seen)
    final = frozenset(s for s in states if s.startswith("c"))
    if not final:
        states = states | {"never"}
        final = frozenset({"never"})
    return Bar(Ltsr(states, base.names, base.data, transitions, initial), final)


def buchi_intersect(b1: Bar, b2: Bar) -> Bar:
    """Standard two-copy intersection of Buchi automata over one alphabet."""
    base1, base2 = base_of(b1), base_of(b2)
    if base1.names != base2.names or base1.data != base2.data:
        raise AlphabetMismatchError(
            "intersection requires identical alphabets (same names and data)"
        )

    def name(q1, q2, copy):
        return f"({q1},{q2},{copy})"

    by_label = {}
    for (p2, r2, q2) in base2.transitions:
        by_label.setdefault(r2, []).append((p2, q2))
    transitions = set()
    for (p1, r1, q1) in base1.transitions:
        for (p2, q2) in by_label.get(r1, ()):  # synchronize on equal labels
            for copy in (1, 2):
                if copy == 1 and p1 in b1.final:
                    nxt = 2
                elif copy == 2 and p2 in b2.final:
                    nxt = 1
                else:
                    nxt = copy
                transitions.add((name(p1, p2, copy), r1, name(q1, q2, nxt)))
    states = frozenset(
        name(q1, q2, copy)
        for q1 in base1.states
        for q2 in base2.states
        for copy in (1, 2)
    )
    initial = frozenset(name(q1, q2, 1) for q1 in base1.initial for q2 in base2.initial)
    final = frozenset(name(f1, q2, 1) for f1 in b1.final for q2 in base2.states)
    return Bar(Ltsr(states, base1.names, base1.data, frozenset(transitions), initial), final)


def buchi_empty(b: Bar) -> Optional[LassoWitness]:
    """None when the lasso language is empty, else a witness lasso.

    A witness exists exactly when some final state is reachable and lies on a
    cycle; the returned lasso follows a shortest path to such a state and a
    shortest cycle back to it.
    """
    base = base_of(b)
    out = {}
    for (src, r, dst) in base.transitions:
        out.setdefault(src, []).append((r, dst))
    for src in out:
        out[src].sort()

    parents = {}
    order = []
    seen = set(base.initial)
    queue = deque(sorted(base.initial))
    while queue:
        q = queue.popleft()
        order.append(q)
        for (r, dst) in out.get(q, ()):
            if dst not in seen:
                seen.add(dst)
                parents[dst] = (q, r)
                queue.append(dst)

    sccs = strongly_connected_components(
        order, lambda q: (d for _, d in out.get(q, ()) if d in seen)
    )
    cyclic = set()
    for scc in sccs:
        members = set(scc)
        if len(scc) > 1 or any(d in members for _, d in out.get(scc[0], ())):
            cyclic |= members
    scc_of = {}
    for scc in sccs:
        for q in scc:
            scc_of[q] = id(scc)

    for f in sorted(b.final):
        if f not in seen or f not in cyclic:
            continue
        prefix = []
        node = f
        while node in parents:
            prev, r = parents[node]
            prefix.append(r)
            node = prev
        prefix.reverse()
        # Shortest cycle through f inside its own strongly connected component.
        period = None
        back = {f: None}
        bfs = deque([f])
        while bfs and period is None:
            q = bfs.popleft()
            for (r, dst) in out.get(q, ()):
                if dst not in seen or scc_of.get(dst) != scc_of[f]:
                    continue
                if dst == f:
                    labels = [r]
                    node = q
                    while back[node] is not None:
                        prev, rr = back[node]
                        labels.append(rr)
                        node = prev
                    labels.reverse()
                    period = labels
                    break
                if dst not in back:
                    back[dst] = (q, r)
                    bfs.append(dst)
        if period is None:
            continue
        lasso = Lasso(tuple(prefix), tuple(period), base.names)
        return LassoWitness(lasso, "machine")
    return None


def accepting_loop_states(b: Bar, period: Tuple[Record, ...]) -> frozenset:
    """States from which reading the period forever can accept.

    A lasso (u, v) is accepted exactly when some state reached on u lies in
    accepting_loop_states(b, v); batching many prefixes against one period
    this way avoids rebuilding the same product graph per lasso.
    """
    if not period:
        raise TsrError("period must be non-empty")
    base = base_of(b)
    adj = _adjacency(base)
    k = len(period)
    nodes = [(q, i) for q in sorted(base.states) for i in range(k)]

    def successors(node):
        q, i = node
        nxt = (i + 1) % k
        for dst in adj.get((q, period[i]), frozenset()):
            yield (dst, nxt)

    good_cores = set()
    for scc in strongly_connected_components(nodes, successors):
        members = set(scc)
        nontrivial = len(scc) > 1 or any(c in members for c in successors(scc[0]))
        if nontrivial and any(q in b.final for q, _ in scc):
            good_cores |= members
    # Backward closure: any node that can reach a good core is good.
    preds = {}
    for node in nodes:
        for child in successors(node):
            preds.setdefault(child, []).append(node)
    good = set(good_cores)
    frontier = list(good_cores)
    while frontier:
        node = frontier.pop()
        for p in preds.get(node, ()):
            if p not in good:
                good.add(p)
                frontier.append(p)
    return frozenset(q for (q, i) in good if i == 0)


# ---------------------------------------------------------------------------
# Infinite traceability

def _productive_parts(base: Ltsr):
    """Productive states (those starting some infinite run) and their edges."""
    adj = _adjacency(base)
    out = {}
    for (src, r, dst) in base.transitions:
        out.setdefault(src, []).append((r, dst))
    nodes = sorted(base.states)
    cyclic = set()
    for scc in strongly_connected_components(
        nodes, lambda q: (d for _, d in out.get(q, ()))
    ):
        members = set(scc)
        if len(scc) > 1 or any(d in members for _, d in out.get(scc[0], ())):
            cyclic |= members
    preds = {}
    for (src, r, dst) in base.transitions:
        preds.setdefault(dst, []).append(src)
    productive = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        node = frontier.pop()
        for p in preds.get(node, ()):
            if p not in productive:
                productive.add(p)
                frontier.append(p)
    pruned = {}
    for (src, r, dst) in base.transitions:
        if src in productive and dst in productive:
            pruned.setdefault((src, r), set()).add(dst)
    pruned = {k: frozenset(v) for k, v in pruned.items()}
    outgoing = {}
    for (src, r), dsts in pruned.items():
        for dst in sorted(dsts):
            outgoing.setdefault(src, []).append((r, dst))
    for src in outgoing:
        outgoing[src].sort()
    return frozenset(productive), pruned, outgoing


def _pruned_step(pruned, current, r):
    nxt = set()
    for q in current:
        nxt |= pruned.get((q, r), frozenset())
    return frozenset(nxt)


def _extend_to_lasso(prefix_word, states, outgoing, names) -> Lasso:
    """Continue from a productive state until a state repeats; peel the cycle."""
    q = min(states)
    visited = {q: 0}
    path = [q]
    labels = []
    while True:
        r, dst = outgoing[q][0]
        labels.append(r)
        if dst in visited:
            i = visited[dst]
            return Lasso(tuple(prefix_word) + tuple(labels[:i]), tuple(labels[i:]), names)
        visited[dst] = len(path)
        path.append(dst)
        q = dst


def infinite_traceable_equiv(m1: Machine, m2: Machine) -> Verdict:
    """Decide equality of the infinite-trace languages of two systems.

    An infinite word is traceable exactly when all its finite prefixes keep a
    run alive among productive states (states with some infinite run ahead);
    the finitely-branching run tree then contains an infinite branch.  So the
    two languages differ exactly when the synchronized subset search over the
    pruned machines reaches a pair where one side is dead and the other
    alive, and any infinite continuation of the live side is a witness.
    """
    base1, base2 = base_of(m1), base_of(m2)
    names, letters = _union_letters(m1, m2)
    p1, pruned1, out1 = _productive_parts(base1)
    p2, pruned2, out2 = _productive_parts(base2)
    start = (frozenset(base1.initial) & p1, frozenset(base2.initial) & p2)
    if bool(start[0]) != bool(start[1]):
        alive = (start[0], out1) if start[0] else (start[1], out2)
        return Verdict(False, _extend_to_lasso((), alive[0], alive[1], names))
    if not start[0]:
        return Verdict(True)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (s1, s2), word = queue.popleft()
        for r in letters:
            n1 = _pruned_step(pruned1, s1, r)
            n2 = _pruned_step(pruned2, s2, r)
            if bool(n1) != bool(n2):
                alive = (n1, out1) if n1 else (n2, out2)
                return Verdict(False, _extend_to_lasso(word + (r,), alive[0], alive[1], names))
            if not n1:
                continue
            pair = (n1, n2)
            if pair not in seen:
                if len(seen) >= PAIR_SEARCH_LIMIT:
                    raise SizeBoundError(
                        "infinite-trace comparison exceeded the pair search limit"
                    )
                seen.add(pair)
                queue.append((pair, word + (r,)))
    return Verdict(True)


# ---------------------------------------------------------------------------
# Componentwise membership formulas for joins

def componentwise_traceable(w: FiniteWord, m1: Machine, m2: Machine) -> bool:
    """Membership formula for finite traces of a join of two systems.

    A word over the union alphabet is traceable in the join exactly when each
    component can trace the visible part of the word restricted to its own
    ports.  Exact for machines that can always idle invisibly in place.
    """
    base1, base2 = base_of(m1), base_of(m2)
    return traceable(m1, vis(restrict_word(w, base1.names))) and traceable(
        m2, vis(restrict_word(w, base2.names))
    )


def componentwise_lasso_traceable(l: Lasso, m1: Machine, m2: Machine) -> bool:
    """Membership formula for infinite traces of a join of two systems.

    Restricting a lasso to one component's ports and dropping invisible
    records leaves either a finite word (the component eventually only
    idles: membership is finite traceability) or a lasso (membership is
    infinite traceability).  Exact for trapless idle-capable machines.
    """
    for m in (m1, m2):
        base = base_of(m)
        part = vis_lasso(restrict_lasso(l, base.names))
        if isinstance(part, FiniteWord):
            ok = traceable(m, part)
        else:
            ok = accepts_lasso(lts_to_bar(base), part)
        if not ok:
            return False
    return True


def componentwise_accepts_finite(w: FiniteWord, b1: Bar, b2: Bar) -> bool:
    """Membership formula for the finite-word language of a join of Bars."""
    return accepts_finite(b1, vis(restrict_word(w, base_of(b1).names))) and accepts_finite(
        b2, vis(restrict_word(w, base_of(b2).names))
    )
