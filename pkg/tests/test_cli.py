import json

import pytest
from click.testing import CliRunner

from coainfo.cli import cli, main
from conftest import (
    BSC_CHANNEL,
    GOLDEN_LEDGER,
    IDENTITY_CHANNEL,
    TWO_PERIOD_LEDGER,
    YEAR2_TABLE,
)


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(cli, args, standalone_mode=False)


class TestAnalyze:
    def test_table_output(self, runner):
        result = runner.invoke(
            cli, ["analyze", "--input", str(GOLDEN_LEDGER), "--schema", "2,2"]
        )
        assert result.exit_code == 0
        assert "period: Y1" in result.output
        assert "H(X) = 1.500 bits" in result.output
        assert "0.689" in result.output  # H(X/Y) at level 1
        assert "0.811" in result.output
        assert "0.702" in result.output

    def test_json_output(self, runner):
        result = runner.invoke(
            cli,
            ["analyze", "--input", str(GOLDEN_LEDGER), "--schema", "2,2",
             "--format", "json"],
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        report = data["reports"][0]
        assert report["period"] == "Y1"
        assert report["h_x"] == 1.5
        assert [lvl["level"] for lvl in report["levels"]] == [2, 1]
        assert report["provenance"]["input_sha256"]

    def test_csv_output(self, runner):
        result = runner.invoke(
            cli,
            ["analyze", "--input", str(GOLDEN_LEDGER), "--schema", "2,2",
             "--format", "csv"],
        )
        assert result.exit_code == 0
        lines = result.output.strip().split("\n")
        assert lines[0].startswith("period;level;s_observed")
        assert len(lines) == 3

    def test_output_file(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(
            cli,
            ["analyze", "--input", str(GOLDEN_LEDGER), "--schema", "2,2",
             "--format", "json", "--output", str(out)],
        )
        assert result.exit_code == 0
        assert json.loads(out.read_text())["reports"]

    def test_default_schema_on_five_level_table(self, runner):
        result = runner.invoke(
            cli,
            ["analyze", "--input", str(YEAR2_TABLE), "--kind", "frequency-table",
             "--format", "csv"],
        )
        assert result.exit_code == 0
        assert len(result.output.strip().split("\n")) == 1 + 5

    def test_periods_filter(self, runner):
        result = runner.invoke(
            cli,
            ["analyze", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2",
             "--periods", "Y2", "--format", "csv"],
        )
        assert result.exit_code == 0
        body = result.output.strip().split("\n")[1:]
        assert all(line.startswith("Y2;") for line in body)

    def test_missing_period_exits_1(self):
        code = main(
            ["analyze", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2",
             "--periods", "Y9"]
        )
        assert code == 1

    def test_empty_ledger_exits_1(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text("event_id;description;debit_code;credit_code;period\n")
        code = main(["analyze", "--input", str(path), "--schema", "2,2"])
        assert code == 1
        assert "EmptyLedger" in capsys.readouterr().err

    def test_malformed_code_names_row(self, tmp_path, capsys):
        rows = [f"e{i};ok;01.01;02.01;Y1" for i in range(1, 6)]
        rows.append("e9;bad;01;02.01;Y1")
        path = tmp_path / "bad.csv"
        path.write_text(
            "event_id;description;debit_code;credit_code;period\n" + "\n".join(rows) + "\n"
        )
        code = main(["analyze", "--input", str(path), "--schema", "2,2"])
        assert code == 1
        assert "row 7" in capsys.readouterr().err

    def test_figures_written(self, runner, tmp_path):
        figdir = tmp_path / "figs"
        result = runner.invoke(
            cli,
            ["analyze", "--input", str(GOLDEN_LEDGER), "--schema", "2,2",
             "--figures", str(figdir)],
        )
        assert result.exit_code == 0
        png = figdir / "level_measures.png"
        assert png.exists() and png.stat().st_size > 0


class TestCompare:
    def test_plot_csv_shape(self, runner):
        result = runner.invoke(
            cli,
            ["compare", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2"],
        )
        assert result.exit_code == 0
        lines = result.output.strip().split("\n")
        assert lines[0] == "period;level;measure;value"
        assert len(lines) == 1 + 2 * 2 * 2

    def test_json_includes_deltas(self, runner):
        result = runner.invoke(
            cli,
            ["compare", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2",
             "--format", "json"],
        )
        data = json.loads(result.output)
        assert data["rows"] and data["deltas"]

    def test_table_format(self, runner):
        result = runner.invoke(
            cli,
            ["compare", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2",
             "--format", "table"],
        )
        assert result.exit_code == 0
        assert "I(X,Y)" in result.output and "U(X,Y)" in result.output

    def test_single_period_exits_1(self):
        code = main(["compare", "--input", str(GOLDEN_LEDGER), "--schema", "2,2"])
        assert code == 1

    def test_absent_period_exits_1(self):
        code = main(
            ["compare", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2",
             "--periods", "Y1,Y7"]
        )
        assert code == 1

    def test_figures_written(self, runner, tmp_path):
        figdir = tmp_path / "figs"
        result = runner.invoke(
            cli,
            ["compare", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2",
             "--figures", str(figdir)],
        )
        assert result.exit_code == 0
        assert (figdir / "level_measures.png").exists()


class TestChannel:
    def test_identity_channel_table(self, runner):
        result = runner.invoke(cli, ["channel", "--input", str(IDENTITY_CHANNEL)])
        assert result.exit_code == 0
        assert "H(X)    = 1.000 bits" in result.output
        assert "I(X,Y)  = 1.000 bits" in result.output
        assert "U(X,Y)  = 1.000" in result.output

    def test_binary_symmetric_channel_json(self, runner):
        result = runner.invoke(
            cli, ["channel", "--input", str(BSC_CHANNEL), "--format", "json"]
        )
        data = json.loads(result.output)
        assert data["i_xy"] == pytest.approx(0.500084041835472, abs=1e-12)

    def test_csv_output(self, runner):
        result = runner.invoke(
            cli, ["channel", "--input", str(IDENTITY_CHANNEL), "--format", "csv"]
        )
        lines = result.output.strip().split("\n")
        assert lines[0].startswith("h_x;h_y;h_xy")
        assert len(lines) == 2

    def test_constant_row_channel_has_zero_information(self, runner, tmp_path):
        path = tmp_path / "const.csv"
        path.write_text("event;p_x;yA;yB\nx1;0.5;0.4;0.6\nx2;0.5;0.4;0.6\n")
        result = runner.invoke(
            cli, ["channel", "--input", str(path), "--format", "json"]
        )
        data = json.loads(result.output)
        assert data["i_xy"] == pytest.approx(0.0, abs=1e-12)

    def test_non_stochastic_row_exits_1(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("event;p_x;yA;yB\nx1;0.5;0.9;0.3\nx2;0.5;0.1;0.9\n")
        code = main(["channel", "--input", str(path)])
        assert code == 1
        assert "RowNotStochastic" in capsys.readouterr().err


class TestContract:
    def test_unknown_option_exits_1(self):
        assert main(["analyze", "--nonsense"]) == 1

    def test_internal_check_failure_exits_2(self, monkeypatch, capsys):
        from coainfo import cli as cli_module
        from coainfo.errors import CrossCheckFailure

        def broken(*args, **kwargs):
            raise CrossCheckFailure("routes disagree")

        monkeypatch.setattr(cli_module, "sweep_levels", broken)
        code = main(["analyze", "--input", str(GOLDEN_LEDGER), "--schema", "2,2"])
        assert code == 2
        assert "CrossCheckFailure" in capsys.readouterr().err

    def test_missing_file_exits_1(self):
        assert main(["analyze", "--input", "/nonexistent.csv"]) == 1

    def test_help_exits_0(self, capsys):
        assert main(["--help"]) == 0
        assert "analyze" in capsys.readouterr().out

    @pytest.mark.parametrize(
        "args",
        [
            ["analyze", "--input", str(GOLDEN_LEDGER), "--schema", "2,2",
             "--format", "json"],
            ["analyze", "--input", str(YEAR2_TABLE), "--kind", "frequency-table",
             "--format", "table"],
            ["compare", "--input", str(TWO_PERIOD_LEDGER), "--schema", "2,2"],
            ["channel", "--input", str(BSC_CHANNEL), "--format", "csv"],
        ],
    )
    def test_outputs_are_reproducible(self, runner, args):
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        assert first.exit_code == second.exit_code == 0
        assert first.output_bytes == second.output_bytes
