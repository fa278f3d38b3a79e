"""Transition systems and Buchi automata over record alphabets.

Records are partial maps from port names to data values; machines declare a
name set and a data set and carry explicit transition relations labelled by
records.  The package provides the join composition operator, decision
procedures for finite-trace, infinite-trace, finite-language, and lasso
(omega) language equivalence, and a congruence-checking harness with a
built-in counterexample showing that lasso equivalence is not preserved by
join.
"""

from .automata import (
    Bar,
    Gba,
    Ltsr,
    Machine,
    Verdict,
    accepts_finite,
    accepts_lasso,
    base_of,
    degeneralize,
    finite_targets,
    gba_accepts_lasso,
    lts_to_bar,
    reach,
    step,
    traceable,
    trap_states,
    validate,
    with_idle_loops,
    without_invisible_edges,
)
from .congruence import (
    RELATIONS,
    CongruenceInstance,
    FuzzReport,
    GenParams,
    buchi_counterexample,
    check_instance,
    distinguish_by_context,
    fuzz_congruence,
    language_preserving_mutate,
    parity_bars,
    random_machine,
)
from .errors import (
    AlphabetLimitError,
    AlphabetMismatchError,
    DataSetMismatchError,
    IncompatibleRecordsError,
    InvalidRecordError,
    MachineFormatError,
    SizeBoundError,
    TrapStateError,
    TsrError,
)
from .join import (
    distinguishing_context,
    fresh_name,
    join,
    join_bar_flat,
    join_lts,
    product_state,
)
from .languages import (
    Dfa,
    LassoWitness,
    accepting_loop_states,
    buchi_complement,
    buchi_empty,
    buchi_equiv,
    buchi_intersect,
    componentwise_accepts_finite,
    componentwise_lasso_traceable,
    componentwise_traceable,
    determinize,
    dfa_accepts,
    finite_equiv,
    infinite_traceable_equiv,
    shortest_accept_difference,
)
from .records import (
    TAU,
    FiniteWord,
    Lasso,
    Record,
    comp,
    enumerate_alphabet,
    restrict,
    restrict_lasso,
    restrict_word,
    union,
    vis,
    vis_lasso,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetLimitError",
    "AlphabetMismatchError",
    "Bar",
    "CongruenceInstance",
    "DataSetMismatchError",
    "Dfa",
    "FiniteWord",
    "FuzzReport",
    "Gba",
    "GenParams",
    "IncompatibleRecordsError",
    "InvalidRecordError",
    "Lasso",
    "LassoWitness",
    "Ltsr",
    "Machine",
    "MachineFormatError",
    "RELATIONS",
    "Record",
    "SizeBoundError",
    "TAU",
    "TrapStateError",
    "TsrError",
    "Verdict",
    "accepting_loop_states",
    "accepts_finite",
    "accepts_lasso",
    "base_of",
    "buchi_complement",
    "buchi_counterexample",
    "buchi_empty",
    "buchi_equiv",
    "buchi_intersect",
    "check_instance",
    "comp",
    "componentwise_accepts_finite",
    "componentwise_lasso_traceable",
    "componentwise_traceable",
    "degeneralize",
    "determinize",
    "dfa_accepts",
    "distinguish_by_context",
    "distinguishing_context",
    "enumerate_alphabet",
    "finite_equiv",
    "finite_targets",
    "fresh_name",
    "fuzz_congruence",
    "gba_accepts_lasso",
    "infinite_traceable_equiv",
    "join",
    "join_bar_flat",
    "join_lts",
    "language_preserving_mutate",
    "lts_to_bar",
    "parity_bars",
    "product_state",
    "random_machine",
    "reach",
    "restrict",
    "restrict_lasso",
    "restrict_word",
    "shortest_accept_difference",
    "step",
    "traceable",
    "trap_states",
    "union",
    "validate",
    "vis",
    "vis_lasso",
    "with_idle_loops",
    "without_invisible_edges",
]
