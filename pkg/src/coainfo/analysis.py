"""Per-level measure reports and period comparison.

``sweep_levels`` evaluates the classification channel of one period at every
aggregation level, finest first, producing a report whose rows must satisfy
the coarsening monotonicities: mutual information and symmetric uncertainty
never increase, and conditional entropy never decreases, as levels aggregate.
"""

import json
from dataclasses import dataclass

from .channel import build_channel, max_classifications
from .codes import CodeSchema
from .errors import CrossCheckFailure, InputError, SchemaMismatch
from .ledger import EventFrequencyTable
from .measures import collapsed_label_count, measure_channel

__all__ = [
    "LevelRow",
    "LevelReport",
    "ComparisonTable",
    "sweep_levels",
    "compare_periods",
    "max_classifications",
]

_MONOTONE_ATOL = 1e-12
_DECOMPOSITION_ATOL = 1e-9

# Measures plotted level by level when comparing periods.
COMPARED_MEASURES = ("i_xy", "u_xy")


@dataclass(frozen=True)
class LevelRow:
    """Channel measures at one aggregation level."""

    level: int
    s_observed: int
    s_max: int | None
    h_y: float
    h_x_given_y: float
    i_xy: float
    u_xy: float
    collapsed_labels: int
    degenerate_u: bool


@dataclass(frozen=True)
class Provenance:
    """Where a report came from; ``generated_at`` stays None for byte-stable output."""

    input_sha256: str | None = None
    generated_at: str | None = None


@dataclass(frozen=True)
class LevelReport:
    """Measures for one period at every level, finest first."""

    period_tag: str
    h_x: float
    r: int
    n_total: int
    rows: tuple[LevelRow, ...]
    schema: CodeSchema
    provenance: Provenance

    def to_dict(self) -> dict:
        return {
            "period": self.period_tag,
            "schema": {
                "segment_widths": list(self.schema.segment_widths),
                "separator": self.schema.separator,
            },
            "h_x": self.h_x,
            "r": self.r,
            "n_total": self.n_total,
            "levels": [
                {
                    "level": row.level,
                    "s_observed": row.s_observed,
                    "s_max": row.s_max,
                    "h_y": row.h_y,
                    "h_x_given_y": row.h_x_given_y,
                    "i_xy": row.i_xy,
                    "u_xy": row.u_xy,
                    "collapsed_labels": row.collapsed_labels,
                    "degenerate_u": row.degenerate_u,
                }
                for row in self.rows
            ],
            "provenance": {
                "input_sha256": self.provenance.input_sha256,
                "generated_at": self.provenance.generated_at,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class ComparisonTable:
    """Long-format (period, level, measure, value) rows plus per-level deltas.

    Deltas are value(period_k) - value(period_k+1) for consecutive report
    pairs, so reversing the report order only flips their signs.
    """

    rows: tuple[tuple[str, int, str, float], ...]
    deltas: tuple[tuple[str, str, int, str, float], ...]

    def to_plot_csv(self) -> str:
        lines = ["period;level;measure;value"]
        lines += [f"{p};{lvl};{m};{v!r}" for p, lvl, m, v in self.rows]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "rows": [
                {"period": p, "level": lvl, "measure": m, "value": v}
                for p, lvl, m, v in self.rows
            ],
            "deltas": [
                {"period_a": a, "period_b": b, "level": lvl, "measure": m, "delta": d}
                for a, b, lvl, m, d in self.deltas
            ],
        }


def sweep_levels(
    table: EventFrequencyTable,
    schema: CodeSchema,
    period: str,
    input_sha256: str | None = None,
    generated_at: str | None = None,
) -> LevelReport:
    """Measure the channel at every level, finest to 1, for one period.

    The tally is reused across levels; only the code truncation changes. The
    event entropy H(X) does not depend on the level and is computed once.
    """
    if schema != table.schema:
        raise SchemaMismatch("table was tallied under a different schema")
    rows = []
    h_x = None
    for level in range(schema.levels, 0, -1):
        ch = build_channel(table, level)
        ms = measure_channel(ch)
        if h_x is None:
            h_x = ms.h_x
        if abs((ms.h_x_given_y + ms.i_xy) - h_x) > _DECOMPOSITION_ATOL:
            raise CrossCheckFailure(
                f"level {level}: H(X/Y) + I(X,Y) = {ms.h_x_given_y + ms.i_xy!r} "
                f"differs from H(X) = {h_x!r}"
            )
        rows.append(
            LevelRow(
                level=level,
                s_observed=ms.s,
                s_max=ms.s_max,
                h_y=ms.h_y,
                h_x_given_y=ms.h_x_given_y,
                i_xy=ms.i_xy,
                u_xy=ms.u_xy,
                collapsed_labels=collapsed_label_count(ch),
                degenerate_u=ms.degenerate_u,
            )
        )
    report = LevelReport(
        period_tag=period,
        h_x=h_x,
        r=table.r,
        n_total=table.n_total,
        rows=tuple(rows),
        schema=schema,
        provenance=Provenance(input_sha256=input_sha256, generated_at=generated_at),
    )
    _check_monotonicity(report)
    return report


def _check_monotonicity(report: LevelReport) -> None:
    """Coarsening must not gain information; violated means a computation bug."""
    for finer, coarser in zip(report.rows, report.rows[1:]):
        if coarser.i_xy > finer.i_xy + _MONOTONE_ATOL:
            raise CrossCheckFailure(
                f"I(X,Y) increased from level {finer.level} to {coarser.level}"
            )
        if coarser.u_xy > finer.u_xy + _MONOTONE_ATOL:
            raise CrossCheckFailure(
                f"U(X,Y) increased from level {finer.level} to {coarser.level}"
            )
        if coarser.h_x_given_y < finer.h_x_given_y - _MONOTONE_ATOL:
            raise CrossCheckFailure(
                f"H(X/Y) decreased from level {finer.level} to {coarser.level}"
            )


def compare_periods(reports: list[LevelReport]) -> ComparisonTable:
    """Assemble plot-ready rows and consecutive-period deltas for >= 2 reports."""
    if len(reports) < 2:
        raise InputError("comparison needs at least two period reports")
    schema = reports[0].schema
    for report in reports[1:]:
        if report.schema != schema:
            raise SchemaMismatch(
                f"period {report.period_tag!r} uses a different code schema"
            )
    rows = []
    for report in reports:
        for level_row in report.rows:
            for measure in COMPARED_MEASURES:
                rows.append(
                    (report.period_tag, level_row.level, measure, getattr(level_row, measure))
                )
    deltas = []
    for a, b in zip(reports, reports[1:]):
        for row_a, row_b in zip(a.rows, b.rows):
            for measure in COMPARED_MEASURES:
                deltas.append(
                    (
                        a.period_tag,
                        b.period_tag,
                        row_a.level,
                        measure,
                        getattr(row_a, measure) - getattr(row_b, measure),
                    )
                )
    return ComparisonTable(tuple(rows), tuple(deltas))
