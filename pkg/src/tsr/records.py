"""Records and the words built from them.

A record is a partial function from port names to data values.  It carries
positive information (the ports it assigns) and, relative to a declared name
set, negative information (the ports it leaves blocked).  The record with
empty domain is the invisible record ``TAU``: a step labelled with it is not
observable on any port.

Words and lassos carry the name set they are read over, because two equal
symbol sequences over different name sets block different ports and must not
compare equal.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import AlphabetLimitError, IncompatibleRecordsError, InvalidRecordError

NameSet = frozenset
# Port names and data values are plain string tokens: non-empty, no whitespace.

DEFAULT_ALPHABET_LIMIT = 64
ALPHABET_LIMIT_ENV = "TSR_ALPHABET_LIMIT"


def check_token(token: str, what: str = "token") -> str:
    if not isinstance(token, str) or not token or any(c.isspace() for c in token):
        raise InvalidRecordError(
            f"{what} must be a non-empty string without whitespace, got {token!r}"
        )
    return token


@dataclass(frozen=True, order=True)
class Record:
    """An immutable record, stored as entries sorted by port name.

    The sorted-tuple representation makes equality, hashing, ordering, and
    serialization canonical: there is exactly one object shape per record.
    """

    entries: tuple = ()

    def __post_init__(self) -> None:
        seen = None
        for entry in self.entries:
            if not (isinstance(entry, tuple) and len(entry) == 2):
                raise InvalidRecordError(f"record entry must be a (port, value) pair: {entry!r}")
            port, value = entry
            check_token(port, "port name")
            check_token(value, "data value")
            if seen is not None and port <= seen:
                raise InvalidRecordError("record entries must be strictly sorted by port name")
            seen = port

    @classmethod
    def of(cls, assignments: Optional[Mapping[str, str]] = None, **kw: str) -> "Record":
        merged = dict(assignments or {})
        merged.update(kw)
        return cls(tuple(sorted(merged.items())))

    @property
    def domain(self) -> frozenset:
        return frozenset(port for port, _ in self.entries)

    def get(self, port: str) -> Optional[str]:
        for name, value in self.entries:
            if name == port:
                return value
        return None

    @property
    def is_invisible(self) -> bool:
        return not self.entries

    def __str__(self) -> str:
        if not self.entries:
            return "tau"
        return "{" + ",".join(f"{p}={v}" for p, v in self.entries) + "}"


TAU = Record()


def restrict(r: Record, names: Iterable[str]) -> Record:
    """Keep only the assignments whose port lies in ``names``."""
    keep = frozenset(names)
    return Record(tuple(e for e in r.entries if e[0] in keep))


def comp(r1: Record, names1: Iterable[str], r2: Record, names2: Iterable[str]) -> bool:
    """Compatibility of two records relative to their declared name sets.

    True iff each record exposes exactly the same ports into the other's name
    set (so neither blocks a port the other fires) and they agree on every
    shared port.  The name sets matter: compatibility is not a property of the
    two domains alone.
    """
    n1 = frozenset(names1)
    n2 = frozenset(names2)
    d1 = r1.domain
    d2 = r2.domain
    if not d1 <= n1:
        raise InvalidRecordError(f"record {r1} is not a record over its declared name set")
    if not d2 <= n2:
        raise InvalidRecordError(f"record {r2} is not a record over its declared name set")
    if (d1 & n2) != (d2 & n1):
        return False
    return all(r1.get(port) == r2.get(port) for port in d1 & d2)


def union(r1: Record, r2: Record) -> Record:
    """Union of two records that agree on shared ports.

    Callers are responsible for the name-set half of compatibility (see
    ``comp``); this function checks the part that is visible from the records
    alone and raises if a shared port carries two different values.
    """
    merged = dict(r1.entries)
    for port, value in r2.entries:
        if port in merged and merged[port] != value:
            raise IncompatibleRecordsError(
                f"records disagree on port {port}: {merged[port]!r} vs {value!r}"
            )
        merged[port] = value
    return Record(tuple(sorted(merged.items())))


def alphabet_limit() -> int:
    raw = os.environ.get(ALPHABET_LIMIT_ENV)
    if raw is None:
        return DEFAULT_ALPHABET_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise AlphabetLimitError(f"{ALPHABET_LIMIT_ENV} must be an integer, got {raw!r}")


def enumerate_alphabet(names: Iterable[str], data: Iterable[str], limit: Optional[int] = None):
    """All records over ``names`` and ``data``, sorted canonically.

    The alphabet has (|data|+1) ** |names| letters; enumeration refuses above
    the configured limit because every guarded algorithm downstream would blow
    up with it.
    """
    ns = sorted(frozenset(names))
    ds = sorted(frozenset(data))
    if not ds:
        return [TAU]
    cap = alphabet_limit() if limit is None else limit
    count = (len(ds) + 1) ** len(ns)
    if count > cap:
        raise AlphabetLimitError(
            f"alphabet has {count} letters which exceeds the limit of {cap}"
        )
    letters = []
    for choice in product([None] + ds, repeat=len(ns)):
        entries = tuple((n, v) for n, v in zip(ns, choice) if v is not None)
        letters.append(Record(entries))
    letters.sort()
    return letters


def _check_symbols(symbols: tuple, names: frozenset) -> None:
    for r in symbols:
        if not isinstance(r, Record):
            raise InvalidRecordError(f"word symbol is not a Record: {r!r}")
        if not r.domain <= names:
            raise InvalidRecordError(
                f"symbol {r} uses ports outside the declared name set {sorted(names)}"
            )


@dataclass(frozen=True)
class FiniteWord:
    """A finite sequence of records over a declared name set."""

    symbols: tuple = ()
    names: frozenset = frozenset()

    def __post_init__(self) -> None:
        _check_symbols(self.symbols, self.names)

    @classmethod
    def of(cls, symbols: Iterable[Record], names: Optional[Iterable[str]] = None) -> "FiniteWord":
        syms = tuple(symbols)
        if names is None:
            inferred = frozenset()
            for r in syms:
                inferred |= r.domain
            names = inferred
        return cls(syms, frozenset(names))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Record]:
        return iter(self.symbols)


@dataclass(frozen=True)
class Lasso:
    """An ultimately periodic infinite word: ``prefix`` then ``period`` forever.

    The period must be non-empty.  Lassos are the finite representations on
    which all omega-language questions in this package are decided; two
    omega-regular languages are equal exactly when they agree on every lasso.
    """

    prefix: tuple = ()
    period: tuple = ()
    names: frozenset = frozenset()

    def __post_init__(self) -> None:
        if not self.period:
            raise InvalidRecordError("lasso period must be non-empty")
        _check_symbols(self.prefix + self.period, self.names)

    @classmethod
    def of(
        cls,
        prefix: Iterable[Record],
        period: Iterable[Record],
        names: Optional[Iterable[str]] = None,
    ) -> "Lasso":
        pre = tuple(prefix)
        per = tuple(period)
        if names is None:
            inferred = frozenset()
            for r in pre + per:
                inferred |= r.domain
            names = inferred
        return cls(pre, per, frozenset(names))


Word = Union[FiniteWord, Lasso]


def restrict_word(w: FiniteWord, names: Iterable[str]) -> FiniteWord:
    """Pointwise restriction; same length, the declared name set becomes ``names``."""
    keep = frozenset(names)
    return FiniteWord(tuple(restrict(r, keep) for r in w.symbols), keep)


def restrict_lasso(l: Lasso, names: Iterable[str]) -> Lasso:
    keep = frozenset(names)
    return Lasso(
        tuple(restrict(r, keep) for r in l.prefix),
        tuple(restrict(r, keep) for r in l.period),
        keep,
    )


def vis(w: FiniteWord) -> FiniteWord:
    """Drop every invisible symbol; what remains is the observable content."""
    return FiniteWord(tuple(r for r in w.symbols if not r.is_invisible), w.names)


def vis_lasso(l: Lasso) -> Word:
    """Observable content of a lasso.

    If the period still contains a visible record the result is again a lasso;
    if the period is entirely invisible the stream goes quiet after the prefix
    and the result collapses to the finite word vis(prefix).
    """
    pre = tuple(r for r in l.prefix if not r.is_invisible)
    per = tuple(r for r in l.period if not r.is_invisible)
    if per:
        return Lasso(pre, per, l.names)
    return FiniteWord(pre, l.names)
