"""Transaction ledger ingestion and event frequency tallies.

Input is a ';'-separated CSV with header
``event_id;description;debit_code;credit_code;period;count``; the ``count``
column is optional for one-row-per-transaction ledgers. A pre-tallied
frequency table uses the same columns with ``count`` mandatory.
"""

import csv
import io
from dataclasses import dataclass
from typing import BinaryIO, Iterable, TextIO

from .codes import AccountCode, CodeSchema, parse_account_code
from .errors import (
    CsvParseError,
    DuplicateAccountError,
    DuplicateEventConflict,
    EmptyLedger,
    MalformedCode,
)

_COLUMNS = ("event_id", "description", "debit_code", "credit_code", "period")
_COUNT_COLUMN = "count"


@dataclass(frozen=True)
class TransactionRecord:
    """One classified economic event occurrence (or a batch of ``count`` of them)."""

    event_id: str
    description: str
    debit_code: AccountCode
    credit_code: AccountCode
    period_tag: str
    count: int = 1

    def __post_init__(self):
        if self.debit_code == self.credit_code:
            raise DuplicateAccountError(
                f"event {self.event_id!r}: debit and credit are the same account "
                f"({self.debit_code})"
            )
        if self.count < 1:
            raise ValueError(f"event {self.event_id!r}: count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class Ledger:
    """An ordered list of transaction records coded under one schema."""

    records: tuple[TransactionRecord, ...]
    schema: CodeSchema

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        for rec in self.records:
            for role, code in (("debit", rec.debit_code), ("credit", rec.credit_code)):
                if code.level != self.schema.levels:
                    raise MalformedCode(
                        f"event {rec.event_id!r}: {role} code {code} has {code.level} "
                        f"segments, schema requires {self.schema.levels}"
                    )

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class EventRow:
    """A distinct economic event with its classification codes and tally."""

    event_id: str
    description: str
    debit_code: AccountCode
    credit_code: AccountCode
    count: int


@dataclass(frozen=True)
class EventFrequencyTable:
    """Distinct events with occurrence counts; the input side of a channel.

    ``n_total`` is the number of transactions, so ``count / n_total`` is the
    relative frequency of each event. ``r`` is the number of distinct events.
    """

    rows: tuple[EventRow, ...]
    n_total: int
    schema: CodeSchema

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if sum(row.count for row in self.rows) != self.n_total:
            raise ValueError("row counts do not sum to n_total")
        ids = [row.event_id for row in self.rows]
        if len(set(ids)) != len(ids):
            raise DuplicateEventConflict("event ids are not unique across rows")

    @property
    def r(self) -> int:
        return len(self.rows)


def _text_stream(source: BinaryIO | TextIO | Iterable[str]) -> TextIO | Iterable[str]:
    if hasattr(source, "read") and isinstance(source.read(0), bytes):
        return io.TextIOWrapper(source, encoding="utf-8", newline="")
    return source


def _parse_rows(
    source, schema: CodeSchema, require_count: bool
) -> list[TransactionRecord]:
    reader = csv.reader(_text_stream(source), delimiter=";")
    try:
        header = next(reader)
    except StopIteration:
        raise CsvParseError("input is empty; a header row is required") from None

    header = [h.strip() for h in header]
    if tuple(header[: len(_COLUMNS)]) != _COLUMNS or len(header) > len(_COLUMNS) + 1:
        raise CsvParseError(
            f"header must be {';'.join(_COLUMNS)}[;{_COUNT_COLUMN}], got {';'.join(header)!r}"
        )
    has_count = len(header) == len(_COLUMNS) + 1
    if has_count and header[-1] != _COUNT_COLUMN:
        raise CsvParseError(f"column 6 must be {_COUNT_COLUMN!r}, got {header[-1]!r}")
    if require_count and not has_count:
        raise CsvParseError(f"frequency-table input requires a {_COUNT_COLUMN!r} column")

    records = []
    seen_pairs: dict[str, tuple[AccountCode, AccountCode]] = {}
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise CsvParseError(f"row {rownum}: expected {len(header)} fields, got {len(row)}")
        event_id, description, debit_text, credit_text, period = (f.strip() for f in row[:5])
        if not event_id:
            raise CsvParseError(f"row {rownum}: empty event_id")
        try:
            debit = parse_account_code(debit_text, schema)
            credit = parse_account_code(credit_text, schema)
        except MalformedCode as exc:
            raise MalformedCode(f"row {rownum}: {exc}") from None

        count = 1
        if has_count:
            raw = row[5].strip()
            if require_count and not raw:
                raise CsvParseError(f"row {rownum}: {_COUNT_COLUMN} is mandatory")
            if raw:
                try:
                    count = int(raw)
                except ValueError:
                    raise CsvParseError(
                        f"row {rownum}: {_COUNT_COLUMN} must be an integer, got {raw!r}"
                    ) from None

        pair = (debit, credit)
        if event_id in seen_pairs and seen_pairs[event_id] != pair:
            raise DuplicateEventConflict(
                f"row {rownum}: event {event_id!r} already classified as "
                f"{seen_pairs[event_id][0]}/{seen_pairs[event_id][1]}, "
                f"now {debit}/{credit}"
            )
        seen_pairs[event_id] = pair

        try:
            records.append(
                TransactionRecord(event_id, description, debit, credit, period, count)
            )
        except (DuplicateAccountError, ValueError) as exc:
            raise type(exc)(f"row {rownum}: {exc}") from None
    return records


def load_ledger_csv(source, schema: CodeSchema) -> Ledger:
    """Read transaction rows, one record per data row, order preserved."""
    return Ledger(tuple(_parse_rows(source, schema, require_count=False)), schema)


def load_frequency_table_csv(source, schema: CodeSchema) -> Ledger:
    """Read a pre-tallied table (count mandatory) into a ledger of counted rows."""
    return Ledger(tuple(_parse_rows(source, schema, require_count=True)), schema)


def split_periods(ledger: Ledger) -> dict[str, Ledger]:
    """Partition records by period tag, keys in first-appearance order."""
    groups: dict[str, list[TransactionRecord]] = {}
    for rec in ledger.records:
        groups.setdefault(rec.period_tag, []).append(rec)
    return {tag: Ledger(tuple(recs), ledger.schema) for tag, recs in groups.items()}


def tally_events(ledger: Ledger) -> EventFrequencyTable:
    """Aggregate records by event id, summing counts.

    Rows keep the first-appearance order of event ids; the first description
    seen for an event wins (descriptions are display-only).
    """
    if not ledger.records:
        raise EmptyLedger("cannot tally an empty ledger")
    order: list[str] = []
    first: dict[str, TransactionRecord] = {}
    counts: dict[str, int] = {}
    for rec in ledger.records:
        if rec.event_id not in first:
            order.append(rec.event_id)
            first[rec.event_id] = rec
            counts[rec.event_id] = 0
        else:
            prev = first[rec.event_id]
            if (prev.debit_code, prev.credit_code) != (rec.debit_code, rec.credit_code):
                raise DuplicateEventConflict(
                    f"event {rec.event_id!r} appears with two different code pairs"
                )
        counts[rec.event_id] += rec.count
    rows = tuple(
        EventRow(
            event_id=eid,
            description=first[eid].description,
            debit_code=first[eid].debit_code,
            credit_code=first[eid].credit_code,
            count=counts[eid],
        )
        for eid in order
    )
    return EventFrequencyTable(rows, sum(counts.values()), ledger.schema)
