"""Exception hierarchy for the tsr package.

Every error raised by library code derives from TsrError so callers (in
particular the CLI) can map any domain failure to a single exit path.
"""


class TsrError(Exception):
    """Base class for all tsr domain errors."""


class InvalidRecordError(TsrError):
    """A record, token, or record/alphabet combination violates a precondition."""


class IncompatibleRecordsError(TsrError):
    """Union was requested for records that disagree on a shared port."""


class AlphabetLimitError(TsrError):
    """Enumerating the record alphabet would exceed the configured letter limit."""


class DataSetMismatchError(TsrError):
    """An operation requires its operands to share one data-value set."""


class AlphabetMismatchError(TsrError):
    """An operation requires its operands to share one full alphabet (names and data)."""


class TrapStateError(TsrError):
    """A machine has trap states where an operation's precondition forbids them."""


class SizeBoundError(TsrError):
    """An analysis refused to run because an input or intermediate object is too large."""


class MachineFormatError(TsrError):
    """A JSON document does not have the shape of a machine, word, or lasso."""
