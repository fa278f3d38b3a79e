"""Test-side builders and independent oracles.

Everything here is deliberately naive: oracles re-derive expected results
straight from the definitions, by exhaustive enumeration where possible, so
they share no shortcuts with the library code they check.
"""

from itertools import product

from tsr.automata import Bar, Gba, Ltsr, base_of
from tsr.join import product_state
from tsr.records import TAU, FiniteWord, Record, restrict


def rec(assignments=None, **kw):
    return Record.of(assignments, **kw)


def lts(states, names, data, transitions, initial):
    return Ltsr.make(states, names, data, transitions, initial)


def bar(states, names, data, transitions, initial, final):
    return Bar.make(states, names, data, transitions, initial, final)


def gba(states, names, data, transitions, initial, family):
    return Gba.make(states, names, data, transitions, initial, family)


def words_up_to(letters, max_len):
    """Every finite word over ``letters`` of length at most ``max_len``."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (r,) for w in layer for r in letters]
        out.extend(layer)
    return out


def lassos_up_to(letters, max_prefix, max_period):
    out = []
    for pre in words_up_to(letters, max_prefix):
        for per in words_up_to(letters, max_period):
            if per:
                out.append((pre, per))
    return out


def naive_reach(m, start, symbols):
    """Reach set by direct transition-table scanning, one letter at a time."""
    base = base_of(m)
    current = set(start)
    for r in symbols:
        current = {
            dst for src, label, dst in base.transitions if src in current and label == r
        }
    return frozenset(current)


def naive_join_edges(base1, base2):
    """The three composition rules, written out as plain triple loops."""
    n1, n2 = base1.names, base2.names
    edges = set()
    for (l, a, l2), (r, b, r2) in product(base1.transitions, base2.transitions):
        if a.domain & n2 == b.domain & n1 and all(
            a.get(p) == b.get(p) for p in a.domain & b.domain
        ):
            merged = dict(a.entries)
            merged.update(dict(b.entries))
            edges.add((product_state(l, r), Record.of(merged), product_state(l2, r2)))
    for (l, a, l2) in base1.transitions:
        if not (a.domain & n2):
            for r in base2.states:
                edges.add((product_state(l, r), a, product_state(l2, r)))
    for (r, b, r2) in base2.transitions:
        if not (b.domain & n1):
            for l in base1.states:
                edges.add((product_state(l, r), b, product_state(l, r2)))
    return edges


def restricted_visible(symbols, names):
    """vis(w restricted to names), computed directly."""
    out = []
    for r in symbols:
        kept = restrict(r, names)
        if not kept.is_invisible:
            out.append(kept)
    return tuple(out)


def rename_machine(m, mapping):
    """Apply a state bijection, preserving the machine's kind."""
    base = base_of(m)
    new_base = Ltsr(
        frozenset(mapping[q] for q in base.states),
        base.names,
        base.data,
        frozenset((mapping[s], r, mapping[d]) for s, r, d in base.transitions),
        frozenset(mapping[q] for q in base.initial),
    )
    if isinstance(m, Bar):
        return Bar(new_base, frozenset(mapping[q] for q in m.final))
    if isinstance(m, Gba):
        family = tuple(frozenset(mapping[q] for q in member) for member in m.final_family)
        return Gba(new_base, family)
    return new_base


def walk_words(letters, max_len, root, extend):
    """Depth-first tree walk over all words up to ``max_len``.

    ``extend(node_state, letter) -> child_state`` carries whatever
    incremental state the caller needs and performs the caller's checks;
    the root's own check is the caller's job.  Returns the node count,
    root included.
    """
    count = 0
    stack = [(root, 0)]
    while stack:
        state, depth = stack.pop()
        count += 1
        if depth == max_len:
            continue
        for r in letters:
            stack.append((extend(state, r), depth + 1))
    return count


A0 = rec(A="0")
B0 = rec(B="0")
TAU_ = TAU
