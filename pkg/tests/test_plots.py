from coainfo import CodeSchema, sweep_levels, tally_events
from coainfo.plots import render_level_measures
from conftest import ledger_from_text

HEADER = "event_id;description;debit_code;credit_code;period"


def _reports():
    schema = CodeSchema.from_string("2,2")
    text_y1 = (
        HEADER
        + "\ne1;w;01.01;02.01;Y1\ne1;w;01.01;02.01;Y1"
        + "\ne2;s;01.02;02.01;Y1\ne3;r;03.01;04.01;Y1\n"
    )
    text_y2 = (
        HEADER
        + "\ne1;w;01.01;02.01;Y2\ne2;s;01.02;02.01;Y2\ne3;r;03.01;04.01;Y2\n"
    )
    return [
        sweep_levels(tally_events(ledger_from_text(text, schema)), schema, tag)
        for text, tag in ((text_y1, "Y1"), (text_y2, "Y2"))
    ]


def test_figure_file_written(tmp_path):
    path = render_level_measures(_reports(), tmp_path / "figs")
    assert path.name == "level_measures.png"
    assert path.exists()
    assert path.stat().st_size > 1000


def test_directory_created_if_missing(tmp_path):
    nested = tmp_path / "a" / "b"
    path = render_level_measures(_reports(), nested)
    assert path.parent == nested
    assert path.exists()
