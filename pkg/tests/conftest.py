import io
from pathlib import Path

import numpy as np
import pytest

from coainfo import (
    CodeSchema,
    Ledger,
    TransactionRecord,
    load_ledger_csv,
    make_theoretical_channel,
    parse_account_code,
    tally_events,
)

DATA_DIR = Path(__file__).parent / "data"

GOLDEN_LEDGER = DATA_DIR / "golden_ledger.csv"
TWO_PERIOD_LEDGER = DATA_DIR / "two_period_ledger.csv"
YEAR2_TABLE = DATA_DIR / "year2_frequency_table.csv"
IDENTITY_CHANNEL = DATA_DIR / "identity_channel.csv"
BSC_CHANNEL = DATA_DIR / "bsc_channel.csv"


@pytest.fixture
def two_level_schema():
    return CodeSchema.from_string("2,2")


@pytest.fixture
def default_schema():
    return CodeSchema()


@pytest.fixture
def golden_table(two_level_schema):
    with open(GOLDEN_LEDGER, "rb") as f:
        return tally_events(load_ledger_csv(f, two_level_schema))


def random_channel(rng: np.random.Generator, max_r: int = 12, max_s: int = 12):
    """A random channel, deterministic or stochastic, possibly with zero cells."""
    r = int(rng.integers(1, max_r + 1))
    s = int(rng.integers(1, max_s + 1))
    p = rng.random(r)
    if r > 1 and rng.random() < 0.2:
        p[rng.integers(0, r)] = 0.0  # zero-probability event
    if p.sum() == 0:
        p[0] = 1.0
    p = p / p.sum()

    if rng.random() < 0.5:
        t = np.zeros((r, s))
        t[np.arange(r), rng.integers(0, s, size=r)] = 1.0
    else:
        t = rng.random((r, s))
        mask = rng.random((r, s)) < 0.3
        t[mask] = 0.0
        dead = t.sum(axis=1) == 0
        t[dead, 0] = 1.0
        t = t / t.sum(axis=1, keepdims=True)
    return make_theoretical_channel(p, t)


def random_ledger(
    rng: np.random.Generator, schema: CodeSchema, injective: bool = False
) -> Ledger:
    """A synthetic single-period ledger with merge-prone hierarchical codes."""
    pools = [
        [f"{d:0{width}d}" for d in range(1, rng.integers(2, 4) + 1)]
        for width in schema.segment_widths
    ]

    def draw_code() -> str:
        return schema.separator.join(
            pool[rng.integers(0, len(pool))] for pool in pools
        )

    n_events = int(rng.integers(2, 26))
    pairs: list[tuple[str, str]] = []
    seen = set()
    attempts = 0
    while len(pairs) < n_events:
        attempts += 1
        debit, credit = draw_code(), draw_code()
        if debit == credit:
            continue
        if injective and (debit, credit) in seen:
            if attempts > 5000:
                break  # pool exhausted; keep what we have
            continue
        seen.add((debit, credit))
        pairs.append((debit, credit))

    records = tuple(
        TransactionRecord(
            event_id=f"e{i + 1}",
            description=f"synthetic event {i + 1}",
            debit_code=parse_account_code(debit, schema),
            credit_code=parse_account_code(credit, schema),
            period_tag="P1",
            count=int(rng.integers(1, 31)),
        )
        for i, (debit, credit) in enumerate(pairs)
    )
    return Ledger(records, schema)


def ledger_from_text(text: str, schema: CodeSchema) -> Ledger:
    return load_ledger_csv(io.BytesIO(text.encode("utf-8")), schema)
