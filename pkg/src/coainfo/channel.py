"""Probability matrices of the classification channel.

A classification channel pairs the event distribution ``p_x`` (1 x R) with a
row-stochastic transition matrix ``p_y_given_x`` (R x S) whose columns are the
distinct (debit, credit) classification pairs at a chosen aggregation level.
From these the output distribution, the posterior matrix, the joint table and
the negative-log matrices are derived; the entropy computations in
``coainfo.measures`` consume them.
"""

import csv
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .codes import AccountCode, truncate_to_level
from .errors import (
    CsvParseError,
    DimensionMismatch,
    LevelOutOfRange,
    RowNotStochastic,
    TooFewAccounts,
    ZeroOutputProbability,
)
from .ledger import EventFrequencyTable

# Tolerance for algebraic identities on matrices we construct ourselves.
ALGEBRAIC_ATOL = 1e-12
# Tolerance when validating user-supplied stochastic rows.
STOCHASTIC_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class Distribution:
    """A finite probability distribution over opaque, unique labels."""

    labels: tuple[Hashable, ...]
    p: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        p = np.asarray(self.p, dtype=float).copy()
        p.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "p", p)
        if p.ndim != 1 or len(labels) != p.shape[0]:
            raise DimensionMismatch(
                f"{len(labels)} labels for a probability vector of shape {p.shape}"
            )
        if len(set(labels)) != len(labels):
            raise ValueError("distribution labels must be unique")
        if np.any(p < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > ALGEBRAIC_ATOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")

    def __len__(self) -> int:
        return self.p.shape[0]


@dataclass(frozen=True)
class ClassificationLabel:
    """A (debit prefix, credit prefix) pair at one aggregation level."""

    debit_prefix: AccountCode
    credit_prefix: AccountCode
    level: int

    def __post_init__(self):
        if self.debit_prefix.level != self.level or self.credit_prefix.level != self.level:
            raise DimensionMismatch(
                f"label prefixes {self.debit_prefix}/{self.credit_prefix} "
                f"are not both at level {self.level}"
            )

    @property
    def collapsed(self) -> bool:
        """True when truncation made debit and credit prefixes coincide."""
        return self.debit_prefix == self.credit_prefix

    def __str__(self) -> str:
        return f"{self.debit_prefix}->{self.credit_prefix}"


@dataclass(frozen=True, eq=False)
class ClassificationChannel:
    """Event distribution plus the row-stochastic event->classification matrix.

    ``n_accounts``, when known, is the number of distinct account prefixes at
    the channel's level; the theoretical classification maximum is
    ``n_accounts * (n_accounts - 1)`` ordered pairs.
    """

    input: Distribution
    transition: np.ndarray
    output_labels: tuple[Hashable, ...]
    deterministic: bool = field(init=False)
    n_accounts: int | None = None

    def __post_init__(self):
        t = np.asarray(self.transition, dtype=float).copy()
        t.setflags(write=False)
        labels = tuple(self.output_labels)
        object.__setattr__(self, "transition", t)
        object.__setattr__(self, "output_labels", labels)
        if t.ndim != 2:
            raise DimensionMismatch(f"transition must be 2-d, got shape {t.shape}")
        if t.shape[0] != len(self.input) or t.shape[1] != len(labels):
            raise DimensionMismatch(
                f"transition shape {t.shape} does not match {len(self.input)} events "
                f"and {len(labels)} classifications"
            )
        if len(set(labels)) != len(labels):
            raise ValueError("classification labels must be unique")
        if np.any(t < 0) or np.any(t > 1):
            raise RowNotStochastic("transition entries must lie in [0, 1]")
        rows = t.sum(axis=1)
        bad = np.nonzero(np.abs(rows - 1.0) > ALGEBRAIC_ATOL)[0]
        if bad.size:
            raise RowNotStochastic(
                f"transition row {bad[0]} sums to {rows[bad[0]]!r}, not 1"
            )
        one_hot = bool(np.all(np.isin(t, (0.0, 1.0))) and np.all(rows == 1.0))
        object.__setattr__(self, "deterministic", one_hot)

    @property
    def r(self) -> int:
        return len(self.input)

    @property
    def s(self) -> int:
        return len(self.output_labels)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """The R x S table of event/classification co-occurrence probabilities."""

    matrix: np.ndarray
    row_labels: tuple[Hashable, ...]
    col_labels: tuple[Hashable, ...]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        if m.ndim != 2 or m.shape != (len(self.row_labels), len(self.col_labels)):
            raise DimensionMismatch(
                f"joint shape {m.shape} does not match "
                f"{len(self.row_labels)} x {len(self.col_labels)} labels"
            )
        if np.any(m < 0):
            raise ValueError("joint probabilities must be nonnegative")
        if abs(m.sum() - 1.0) > ALGEBRAIC_ATOL:
            raise ValueError(f"joint probabilities sum to {m.sum()!r}, not 1")

    def p_x(self) -> np.ndarray:
        return self.matrix.sum(axis=1)

    def p_y(self) -> np.ndarray:
        return self.matrix.sum(axis=0)


def max_classifications(n_accounts: int) -> int:
    """Number of ordered (debit, credit) pairs over ``n_accounts`` distinct accounts."""
    if n_accounts < 2:
        raise TooFewAccounts(f"need at least 2 accounts, got {n_accounts}")
    return n_accounts * (n_accounts - 1)


def build_channel(table: EventFrequencyTable, level: int) -> ClassificationChannel:
    """Build the observed channel at one aggregation level.

    Event probabilities are relative frequencies ``count / n_total``. Columns
    are the distinct (debit prefix, credit prefix) pairs in first-appearance
    order over the event rows; each transition row is one-hot, so observed
    channels are always deterministic.
    """
    if not 1 <= level <= table.schema.levels:
        raise LevelOutOfRange(f"level {level} not in 1..{table.schema.levels}")
    counts = np.array([row.count for row in table.rows], dtype=float)
    p_x = Distribution(tuple(row.event_id for row in table.rows), counts / table.n_total)

    labels: list[ClassificationLabel] = []
    col_of: dict[ClassificationLabel, int] = {}
    accounts: set[AccountCode] = set()
    column = np.empty(table.r, dtype=int)
    for i, row in enumerate(table.rows):
        debit = truncate_to_level(row.debit_code, level)
        credit = truncate_to_level(row.credit_code, level)
        accounts.add(debit)
        accounts.add(credit)
        label = ClassificationLabel(debit, credit, level)
        if label not in col_of:
            col_of[label] = len(labels)
            labels.append(label)
        column[i] = col_of[label]

    transition = np.zeros((table.r, len(labels)))
    transition[np.arange(table.r), column] = 1.0
    return ClassificationChannel(p_x, transition, tuple(labels), n_accounts=len(accounts))


def make_theoretical_channel(
    p_x: Distribution | Sequence[float] | np.ndarray,
    transition: np.ndarray,
    input_labels: Sequence[Hashable] | None = None,
    output_labels: Sequence[Hashable] | None = None,
) -> ClassificationChannel:
    """Build a channel from user-supplied probabilities.

    Rows (including ``p_x`` itself) are validated to sum to 1 within 1e-9 and
    then renormalized exactly, so downstream algebraic identities hold to
    machine precision. The transition may be non-deterministic.
    """
    t = np.asarray(transition, dtype=float)
    if t.ndim != 2:
        raise DimensionMismatch(f"transition must be 2-d, got shape {t.shape}")
    r, s = t.shape

    if isinstance(p_x, Distribution):
        dist = p_x
    else:
        p = np.asarray(p_x, dtype=float).reshape(-1)
        if np.any(p < 0):
            raise RowNotStochastic("input probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > STOCHASTIC_ATOL:
            raise RowNotStochastic(f"input probabilities sum to {p.sum()!r}, not 1")
        names = tuple(input_labels) if input_labels is not None else tuple(
            f"x{i + 1}" for i in range(p.shape[0])
        )
        dist = Distribution(names, p / p.sum())
    if len(dist) != r:
        raise DimensionMismatch(f"{len(dist)} input probabilities for {r} transition rows")

    if np.any(t < 0) or np.any(t > 1):
        raise RowNotStochastic("transition entries must lie in [0, 1]")
    rows = t.sum(axis=1)
    bad = np.nonzero(np.abs(rows - 1.0) > STOCHASTIC_ATOL)[0]
    if bad.size:
        raise RowNotStochastic(f"transition row {bad[0]} sums to {rows[bad[0]]!r}, not 1")
    t = t / rows[:, np.newaxis]

    names = tuple(output_labels) if output_labels is not None else tuple(
        f"y{j + 1}" for j in range(s)
    )
    return ClassificationChannel(dist, t, names)


def load_channel_csv(source) -> ClassificationChannel:
    """Read a theoretical channel matrix.

    Format, ';'-separated: header ``event;p_x;<label>;...`` naming the
    classification columns; one row per event holding its label, its input
    probability and its transition row.
    """
    from .ledger import _text_stream  # shared stream handling

    reader = csv.reader(_text_stream(source), delimiter=";")
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise CsvParseError("channel input is empty; a header row is required") from None
    if len(header) < 3 or header[0] != "event" or header[1] != "p_x":
        raise CsvParseError(
            f"channel header must be event;p_x;<classification labels>, got {';'.join(header)!r}"
        )
    out_labels = tuple(header[2:])
    if len(set(out_labels)) != len(out_labels):
        raise CsvParseError("classification labels in the header must be unique")

    events: list[str] = []
    p_rows: list[float] = []
    t_rows: list[list[float]] = []
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise CsvParseError(f"row {rownum}: expected {len(header)} fields, got {len(row)}")
        events.append(row[0].strip())
        try:
            p_rows.append(float(row[1]))
            t_rows.append([float(v) for v in row[2:]])
        except ValueError:
            raise CsvParseError(f"row {rownum}: non-numeric probability entry") from None
    if not events:
        raise CsvParseError("channel input has no event rows")
    if len(set(events)) != len(events):
        raise CsvParseError("event labels must be unique")

    return make_theoretical_channel(
        p_rows, np.array(t_rows), input_labels=events, output_labels=out_labels
    )


def output_distribution(ch: ClassificationChannel) -> Distribution:
    """Classification probabilities: the input row vector times the transition."""
    return Distribution(ch.output_labels, ch.input.p @ ch.transition)


def posterior_matrix(ch: ClassificationChannel, p_y: Distribution) -> np.ndarray:
    """Event probabilities given each classification, as an R x S matrix.

    Entry (i, j) is ``p_x[i] * t[i, j] / p_y[j]``; each column sums to 1.
    The diagonal scalings are applied as elementwise row/column factors
    rather than materialized matrices.
    """
    if len(p_y) != ch.s:
        raise DimensionMismatch(f"{len(p_y)} output probabilities for {ch.s} columns")
    zero = np.nonzero(p_y.p == 0)[0]
    if zero.size:
        raise ZeroOutputProbability(
            f"classification {p_y.labels[zero[0]]!r} has zero probability; "
            "drop zero-mass columns before conditioning"
        )
    return ch.input.p[:, np.newaxis] * ch.transition / p_y.p[np.newaxis, :]


def log_vector(dist: Distribution) -> np.ndarray:
    """Per-label information content, -log2 p, with zero entries mapped to 0."""
    return _neg_log2(dist.p)


def log_matrix(posterior: np.ndarray) -> np.ndarray:
    """Transposed S x R matrix of -log2 posterior entries, zeros mapped to 0."""
    posterior = np.asarray(posterior, dtype=float)
    if np.any(posterior < 0) or np.any(posterior > 1):
        raise ValueError("posterior entries must lie in [0, 1]")
    return _neg_log2(posterior).T


def joint_distribution(ch: ClassificationChannel) -> JointDistribution:
    """Joint table with entries ``p_x[i] * t[i, j]``; marginals are p_x and p_y."""
    return JointDistribution(
        ch.input.p[:, np.newaxis] * ch.transition,
        ch.input.labels,
        ch.output_labels,
    )


def drop_zero_mass(ch: ClassificationChannel) -> ClassificationChannel:
    """Remove zero-probability events and the classifications nothing reaches.

    Zero-mass rows and columns occur only in theoretical channels; removing
    them leaves every derived probability and information measure unchanged.
    Rows go first so the remaining transition rows still sum to 1.
    """
    keep_rows = np.nonzero(ch.input.p > 0)[0]
    p = ch.input.p[keep_rows]
    t = ch.transition[keep_rows, :]
    mass = p @ t
    keep_cols = np.nonzero(mass > 0)[0]
    if keep_rows.size == ch.r and keep_cols.size == ch.s:
        return ch
    dist = Distribution(tuple(ch.input.labels[i] for i in keep_rows), p)
    labels = tuple(ch.output_labels[j] for j in keep_cols)
    return ClassificationChannel(dist, t[:, keep_cols], labels, n_accounts=ch.n_accounts)


def _neg_log2(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p, dtype=float)
    nz = p > 0
    out[nz] = -np.log2(p[nz])
    return out
