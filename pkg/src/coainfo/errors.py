"""Exception hierarchy.

Errors raised while reading user input derive from ``InputError``; errors
that signal an internal computation defect derive from ``InternalCheckError``.
The CLI maps the former to exit status 1 and the latter to exit status 2.
"""


class CoaInfoError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CoaInfoError):
    """A problem with user-supplied data or parameters."""


class InternalCheckError(CoaInfoError):
    """An internal consistency check failed; indicates a computation bug."""


class MalformedCode(InputError):
    """An account code does not conform to its schema."""


class LevelOutOfRange(InputError):
    """Requested aggregation level is outside 1..segment count."""


class CsvParseError(InputError):
    """A CSV input could not be parsed; message locates the row/column."""


class DuplicateEventConflict(InputError):
    """One event id appears with two different debit/credit code pairs."""


class DuplicateAccountError(InputError):
    """A transaction debits and credits the same account."""


class EmptyLedger(InputError):
    """An operation requiring transactions was given none."""


class DimensionMismatch(InputError):
    """Matrix or vector shapes are inconsistent."""


class RowNotStochastic(InputError):
    """A probability row has negative entries or does not sum to one."""


class ZeroOutputProbability(InputError):
    """A classification column has zero probability mass."""


class SchemaMismatch(InputError):
    """Reports built under different code schemas cannot be combined."""


class TooFewAccounts(InputError):
    """Classification requires at least two accounts."""


class CrossCheckFailure(InternalCheckError):
    """Two independent computation routes disagree beyond tolerance."""


class NegativeBeyondTolerance(InternalCheckError):
    """A quantity that must be nonnegative came out negative beyond rounding."""
