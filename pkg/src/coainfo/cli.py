"""Command-line front end.

Three subcommands: ``analyze`` sweeps every aggregation level per period,
``compare`` emits plot-ready period comparisons, ``channel`` measures a
user-supplied channel matrix. Exit status is 0 on success, 1 on input errors
and 2 when an internal cross-check fails.
"""

import hashlib
import io
import json
import sys
from pathlib import Path

import click

from .analysis import ComparisonTable, LevelReport, compare_periods, sweep_levels
from .channel import load_channel_csv
from .codes import CodeSchema
from .errors import CoaInfoError, EmptyLedger, InputError, InternalCheckError
from .ledger import load_frequency_table_csv, load_ledger_csv, split_periods, tally_events
from .measures import MeasureSet, measure_channel

LEDGER_KINDS = ("ledger", "frequency-table")


def _schema_from_options(widths: str, separator: str) -> CodeSchema:
    try:
        return CodeSchema.from_string(widths, separator)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _read_bytes(path: str) -> tuple[bytes, str]:
    data = Path(path).read_bytes()
    return data, hashlib.sha256(data).hexdigest()


def _load_reports(
    path: str, kind: str, schema: CodeSchema, periods: str | None
) -> list[LevelReport]:
    data, digest = _read_bytes(path)
    loader = load_ledger_csv if kind == "ledger" else load_frequency_table_csv
    ledger = loader(io.BytesIO(data), schema)
    by_period = split_periods(ledger)
    if not by_period:
        raise EmptyLedger(f"{path}: no transactions")

    if periods:
        wanted = [p.strip() for p in periods.split(",")]
        missing = [p for p in wanted if p not in by_period]
        if missing:
            raise InputError(
                f"period {missing[0]!r} not present in input "
                f"(found: {', '.join(by_period)})"
            )
        selected = wanted
    else:
        selected = list(by_period)

    return [
        sweep_levels(tally_events(by_period[tag]), schema, tag, input_sha256=digest)
        for tag in selected
    ]


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _render_figures(reports: list[LevelReport], directory: str) -> None:
    from .plots import render_level_measures  # deferred: pulls in matplotlib

    path = render_level_measures(reports, directory)
    click.echo(f"figure written to {path}", err=True)


def _fmt3(value: float) -> str:
    return f"{value:.3f}"


def _reports_table(reports: list[LevelReport]) -> str:
    lines = []
    for report in reports:
        lines.append(f"period: {report.period_tag}")
        lines.append(
            f"H(X) = {_fmt3(report.h_x)} bits  "
            f"(R = {report.r} distinct events, N = {report.n_total} transactions)"
        )
        lines.append("")
        lines.append(
            f"{'level':>5}  {'S':>5}  {'S_max':>5}  {'H(Y)':>6}  "
            f"{'H(X/Y)':>6}  {'I(X,Y)':>6}  {'U(X,Y)':>6}  flags"
        )
        for row in report.rows:
            flags = []
            if row.collapsed_labels:
                flags.append(f"collapsed={row.collapsed_labels}")
            if row.degenerate_u:
                flags.append("degenerate-U")
            s_max = str(row.s_max) if row.s_max is not None else "-"
            lines.append(
                f"{row.level:>5}  {row.s_observed:>5}  {s_max:>5}  "
                f"{_fmt3(row.h_y):>6}  {_fmt3(row.h_x_given_y):>6}  "
                f"{_fmt3(row.i_xy):>6}  {_fmt3(row.u_xy):>6}  {' '.join(flags)}".rstrip()
            )
        lines.append("")
    return "\n".join(lines)


def _reports_json(reports: list[LevelReport]) -> str:
    return json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2) + "\n"


def _reports_csv(reports: list[LevelReport]) -> str:
    lines = [
        "period;level;s_observed;s_max;h_x;h_y;h_x_given_y;i_xy;u_xy;"
        "collapsed_labels;degenerate_u"
    ]
    for report in reports:
        for row in report.rows:
            s_max = "" if row.s_max is None else str(row.s_max)
            lines.append(
                f"{report.period_tag};{row.level};{row.s_observed};{s_max};"
                f"{report.h_x!r};{row.h_y!r};{row.h_x_given_y!r};{row.i_xy!r};"
                f"{row.u_xy!r};{row.collapsed_labels};{str(row.degenerate_u).lower()}"
            )
    return "\n".join(lines) + "\n"


def _comparison_table_text(table: ComparisonTable) -> str:
    periods = list(dict.fromkeys(p for p, _, _, _ in table.rows))
    levels = sorted({lvl for _, lvl, _, _ in table.rows}, reverse=True)
    value = {(p, lvl, m): v for p, lvl, m, v in table.rows}
    delta = {(a, b, lvl, m): d for a, b, lvl, m, d in table.deltas}

    lines = []
    for measure, title in (("i_xy", "I(X,Y) [bits]"), ("u_xy", "U(X,Y)")):
        lines.append(title)
        header = "level  " + "  ".join(f"{p:>8}" for p in periods)
        for a, b in zip(periods, periods[1:]):
            header += f"  {'d(' + a + '-' + b + ')':>12}"
        lines.append(header)
        for lvl in levels:
            cells = "  ".join(f"{_fmt3(value[(p, lvl, measure)]):>8}" for p in periods)
            row = f"{lvl:>5}  {cells}"
            for a, b in zip(periods, periods[1:]):
                row += f"  {_fmt3(delta[(a, b, lvl, measure)]):>12}"
            lines.append(row)
        lines.append("")
    return "\n".join(lines)


def _measures_table(ms: MeasureSet) -> str:
    s_max = str(ms.s_max) if ms.s_max is not None else "-"
    lines = [
        f"R = {ms.r} events, S = {ms.s} classifications (max {s_max})",
        f"H(X)    = {_fmt3(ms.h_x)} bits",
        f"H(Y)    = {_fmt3(ms.h_y)} bits",
        f"H(X,Y)  = {_fmt3(ms.h_xy)} bits",
        f"H(X/Y)  = {_fmt3(ms.h_x_given_y)} bits",
        f"I(X,Y)  = {_fmt3(ms.i_xy)} bits",
        f"U(X,Y)  = {_fmt3(ms.u_xy)}" + ("  (degenerate)" if ms.degenerate_u else ""),
    ]
    return "\n".join(lines) + "\n"


def _measures_dict(ms: MeasureSet) -> dict:
    return {
        "h_x": ms.h_x,
        "h_y": ms.h_y,
        "h_xy": ms.h_xy,
        "h_x_given_y": ms.h_x_given_y,
        "i_xy": ms.i_xy,
        "u_xy": ms.u_xy,
        "r": ms.r,
        "s": ms.s,
        "s_max": ms.s_max,
        "degenerate_u": ms.degenerate_u,
    }


def _measures_csv(ms: MeasureSet) -> str:
    header = "h_x;h_y;h_xy;h_x_given_y;i_xy;u_xy;r;s;s_max;degenerate_u"
    s_max = "" if ms.s_max is None else str(ms.s_max)
    row = (
        f"{ms.h_x!r};{ms.h_y!r};{ms.h_xy!r};{ms.h_x_given_y!r};{ms.i_xy!r};"
        f"{ms.u_xy!r};{ms.r};{ms.s};{s_max};{str(ms.degenerate_u).lower()}"
    )
    return header + "\n" + row + "\n"


@click.group()
def cli():
    """Information measures of accounting classification, level by level."""


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True,
              dir_okay=False), help="Ledger or frequency-table CSV.")
@click.option("--kind", type=click.Choice(LEDGER_KINDS), default="ledger",
              show_default=True, help="Input shape.")
@click.option("--schema", "schema_widths", default="2,2,2,3,5", show_default=True,
              help="Comma-separated digit widths, one per level.")
@click.option("--separator", default=".", show_default=True,
              help="Separator between code segments.")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]),
              default="table", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Write to this file instead of standard output.")
@click.option("--periods", default=None,
              help="Comma-separated period tags to report (default: all).")
@click.option("--figures", type=click.Path(file_okay=False), default=None,
              help="Also render the level-sweep figure into this directory.")
def analyze(input_path, kind, schema_widths, separator, fmt, output, periods, figures):
    """Sweep all aggregation levels for each period of a ledger."""
    schema = _schema_from_options(schema_widths, separator)
    reports = _load_reports(input_path, kind, schema, periods)
    if fmt == "table":
        _emit(_reports_table(reports), output)
    elif fmt == "json":
        _emit(_reports_json(reports), output)
    else:
        _emit(_reports_csv(reports), output)
    if figures:
        _render_figures(reports, figures)


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True,
              dir_okay=False), help="Ledger or frequency-table CSV.")
@click.option("--kind", type=click.Choice(LEDGER_KINDS), default="ledger",
              show_default=True, help="Input shape.")
@click.option("--schema", "schema_widths", default="2,2,2,3,5", show_default=True,
              help="Comma-separated digit widths, one per level.")
@click.option("--separator", default=".", show_default=True,
              help="Separator between code segments.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "table"]),
              default="csv", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Write to this file instead of standard output.")
@click.option("--periods", default=None,
              help="Comma-separated period tags to compare (default: all, >= 2 required).")
@click.option("--figures", type=click.Path(file_okay=False), default=None,
              help="Also render the level-sweep figure into this directory.")
def compare(input_path, kind, schema_widths, separator, fmt, output, periods, figures):
    """Compare mutual information and symmetric uncertainty across periods."""
    schema = _schema_from_options(schema_widths, separator)
    reports = _load_reports(input_path, kind, schema, periods)
    table = compare_periods(reports)
    if fmt == "csv":
        _emit(table.to_plot_csv(), output)
    elif fmt == "json":
        _emit(json.dumps(table.to_dict(), indent=2) + "\n", output)
    else:
        _emit(_comparison_table_text(table), output)
    if figures:
        _render_figures(reports, figures)


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True,
              dir_okay=False), help="Channel matrix CSV (event;p_x;<labels...>).")
@click.option("--kind", type=click.Choice(["channel-matrix"]), default="channel-matrix",
              show_default=True, help="Input shape.")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]),
              default="table", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Write to this file instead of standard output.")
def channel(input_path, kind, fmt, output):
    """Measure a user-supplied channel: input probabilities plus transition rows."""
    data, _ = _read_bytes(input_path)
    ch = load_channel_csv(io.BytesIO(data))
    ms = measure_channel(ch)
    if fmt == "table":
        _emit(_measures_table(ms), output)
    elif fmt == "json":
        _emit(json.dumps(_measures_dict(ms), indent=2) + "\n", output)
    else:
        _emit(_measures_csv(ms), output)


def main(argv=None) -> int:
    """Entry point with the documented exit-status mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except InternalCheckError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return 2
    except CoaInfoError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
