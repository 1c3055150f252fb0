import io
import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from rkhs_trend.cli import (
    OUTPUT_DIR_ENV,
    main,
    render,
)
from rkhs_trend.filters import musgrave
from rkhs_trend.series import ingest_csv

SIMULATE = ["simulate", "--seed", "5", "--n", "120", "--ic", "2.0"]


def _run(capsys, argv: list) -> str:
    assert main(argv) == 0
    return capsys.readouterr().out


def _csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text))


@pytest.fixture
def series_file(tmp_path: Path, capsys) -> Path:
    path = tmp_path / "series.csv"
    path.write_text(_run(capsys, SIMULATE))
    return path


def test_weights_bank(capsys):
    df = _csv(_run(capsys, ["weights", "--m", "6", "--criterion", "gain"]))
    assert list(df.columns) == ["q", "offset", "weight"]
    assert sorted(df["q"].unique()) == list(range(7))
    np.testing.assert_allclose(df.groupby("q")["weight"].sum(), 1.0, atol=1e-10)
    assert (df.groupby("q").size() == np.arange(7, 14)).all()


def test_weights_musgrave_single_q(capsys):
    argv = ["weights", "--m", "6", "--family", "musgrave", "--ic", "3.5", "--q", "0"]
    df = _csv(_run(capsys, argv))
    np.testing.assert_allclose(df["weight"], musgrave(6, 0, 3.5).weights, rtol=1e-10)


@pytest.mark.parametrize(
    "argv",
    [
        ["weights", "--m", "6"],
        ["weights", "--m", "6", "--criterion", "gain", "--q", "9"],
        ["spectrum", "--m", "6"],
        ["bandwidth", "--m", "5", "--criterion", "gain", "--use-builtin"],
    ],
)
def test_usage_errors(capsys, argv: list):
    assert main(argv) == 2
    err = capsys.readouterr().err
    assert err.startswith("rkhs-trend: error:")
    assert err.count("\n") == 1


def test_argparse_errors_exit_with_two(capsys):
    assert main(["no-such-command"]) == 2
    assert main(["weights", "--criterion", "gain"]) == 2
    assert main(["spectrum", "--m", "6", "--criterion", "gain", "--format", "xml"]) == 2


def test_bandwidth_builtin(capsys):
    argv = ["bandwidth", "--m", "6", "--criterion", "gain", "--use-builtin"]
    df = _csv(_run(capsys, argv))
    assert list(df.columns) == ["m", "criterion", "q", "bandwidth"]
    assert df["bandwidth"].iloc[0] == pytest.approx(11.78)
    assert len(df) == 6


def test_spectrum_json(capsys):
    argv = ["spectrum", "--m", "6", "--criterion", "gain", "--grid-size", "201"]
    records = json.loads(_run(capsys, [*argv, "--format", "json"]))
    assert len(records) == 201
    assert records[0]["omega"] == 0.0
    assert records[0]["gain"] == pytest.approx(1.0)
    assert records[0]["phase_radians"] == pytest.approx(0.0, abs=1e-12)


def test_simulate_is_deterministic_and_ingestible(capsys):
    first = _run(capsys, SIMULATE)
    assert _run(capsys, SIMULATE) == first
    y = ingest_csv(first)
    assert len(y) == 120
    assert y.dates[0] == "1990-01"


def test_smooth_csv_and_json_agree(capsys, series_file: Path):
    argv = ["smooth", str(series_file), "--m", "6", "--criterion", "gain"]
    csv = _csv(_run(capsys, argv))
    records = pd.DataFrame(json.loads(_run(capsys, [*argv, "--format", "json"])))
    assert list(csv.columns) == ["date", "value", "estimate", "provenance"]
    assert len(csv) == 120
    np.testing.assert_allclose(csv["estimate"], records["estimate"], rtol=1e-10)
    assert (csv["provenance"] == records["provenance"]).all()


def test_smooth_output_dir(capsys, series_file: Path, tmp_path: Path, monkeypatch):
    out_dir = tmp_path / "out"
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(out_dir))
    argv = ["smooth", str(series_file), "--family", "musgrave", "--output", "t.csv"]
    assert _run(capsys, argv) == ""
    df = pd.read_csv(out_dir / "t.csv")
    assert len(df) == 120


def test_smooth_rejects_bad_file(capsys, tmp_path: Path):
    path = tmp_path / "bad.csv"
    path.write_text("when,value\n1990-01,1.0\n")
    assert main(["smooth", str(path), "--criterion", "gain"]) == 2
    assert "row 1" in capsys.readouterr().err


def test_smooth_reports_file_line_of_bad_row(capsys, tmp_path: Path):
    path = tmp_path / "bad.csv"
    path.write_text("date,value\n1990-01,1.0\n1990-02,2.0,3.0\n")
    assert main(["smooth", str(path), "--criterion", "gain"]) == 2
    assert "row 3" in capsys.readouterr().err


def test_revisions_summary(capsys, series_file: Path):
    argv = ["revisions", str(series_file), "--criterion", "gain"]
    df = _csv(_run(capsys, argv))
    assert list(df.columns) == [
        "series",
        "config",
        "m",
        "n_dates",
        "mspe",
        "mspe_musgrave",
        "ratio",
    ]
    row = df.iloc[0]
    assert row["series"] == "series"
    assert row["config"] == "rkhs-gain"
    assert row["ratio"] == pytest.approx(row["mspe"] / row["mspe_musgrave"], rel=1e-6)


def test_revisions_corpus_detail(capsys, tmp_path: Path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for seed in (1, 2):
        text = _run(capsys, ["simulate", "--seed", str(seed), "--n", "80"])
        (corpus / f"s{seed}.csv").write_text(text)
    argv = ["revisions", "--input-dir", str(corpus), "--m", "6", "--criterion", "gain"]
    df = _csv(_run(capsys, [*argv, "--detail"]))
    assert list(df["series"].unique()) == ["s1", "s2"]
    assert "relative" in df.columns


def test_turning(capsys, series_file: Path):
    argv = ["turning", str(series_file), "--m", "6", "--criterion", "gain"]
    df = _csv(_run(capsys, argv))
    assert list(df.columns) == ["date", "index", "kind", "lag"]


def test_porcupine(capsys, series_file: Path):
    argv = [
        "porcupine",
        str(series_file),
        "--m",
        "6",
        "--criterion",
        "gain",
        "--target",
        "1995-01",
        "--horizon",
        "3",
    ]
    df = _csv(_run(capsys, argv))
    assert df["vintage"].nunique() == 4
    assert len(df) == 4 * 13


def test_render_json_nan_is_null():
    text = render(pd.DataFrame({"a": [1.0, np.nan]}), "json")
    assert json.loads(text) == [{"a": 1.0}, {"a": None}]
