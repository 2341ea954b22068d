from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from kb_cleanser.main import cli


SMALL = ["--concepts", "40", "--min-instances", "20", "--max-instances", "30", "--seed", "11"]


@pytest.fixture
def runner():
    return CliRunner()


def test_gen_clean_eval(runner, tmp_path):
    synth, out = tmp_path / "synth", tmp_path / "out"

    result = runner.invoke(cli, ["gen", "-o", str(synth), *SMALL])
    assert result.exit_code == 0, result.output
    assert {p.name for p in synth.iterdir()} == {"kb.tsv", "ground_truth.tsv", "homonym_truth.tsv"}

    result = runner.invoke(cli, ["clean", "-i", str(synth / "kb.tsv"), "-o", str(out), "-j", "1"])
    assert result.exit_code == 0, result.output
    assert (out / "errors.tsv").is_file()

    result = runner.invoke(cli, [
        "eval", "--ground-truth", str(synth / "ground_truth.tsv"),
        "--detected", str(out / "errors.tsv"), "--out", str(tmp_path / "eval.tsv"),
    ])
    assert result.exit_code == 0, result.output
    assert "precision:" in result.output
    assert (tmp_path / "eval.tsv").read_text(encoding="utf-8").startswith("# true_positives\tfalse_positives")


def test_invalid_thresholds_exit_with_one(runner, small_synthetic_dir, tmp_path):
    result = runner.invoke(cli, ["clean", "-i", str(small_synthetic_dir / "kb.tsv"), "-o", str(tmp_path), "-B", "3", "-L", "5"])
    assert result.exit_code == 1
    assert "INVALID" in result.output


def test_unknown_method_is_a_usage_error(runner, small_synthetic_dir, tmp_path):
    result = runner.invoke(cli, ["clean", "-i", str(small_synthetic_dir / "kb.tsv"), "-o", str(tmp_path), "-m", "cosine"])
    assert result.exit_code == 2


def test_options_from_the_environment(runner, small_synthetic_dir, tmp_path):
    result = runner.invoke(
        cli, ["clean", "-i", str(small_synthetic_dir / "kb.tsv"), "-o", str(tmp_path)],
        env={"KBCLEAN_CLEAN_BUCKET_COUNT": "64"},
    )
    assert result.exit_code == 0, result.output
    config = json.loads((tmp_path / "run_config.json").read_text(encoding="utf-8"))
    assert config["bucket_count"] == 64
    assert config["big"] == 100


def test_partial_sweep_exits_with_one(runner, small_synthetic_dir, tmp_path):
    result = runner.invoke(cli, [
        "sweep", "--axis", "bl", "--values", "100:5,3:5",
        "-i", str(small_synthetic_dir / "kb.tsv"), "-o", str(tmp_path),
    ])
    assert result.exit_code == 1
    assert "PARTIAL" in result.output
    rows = (tmp_path / "sweep.tsv").read_text(encoding="utf-8").splitlines()[1:]
    assert [row.split("\t")[:3] for row in rows] == [["bl", "100:5", "OK"], ["bl", "3:5", "INVALID"]]


def test_eval_of_a_missing_file(runner, tmp_path):
    result = runner.invoke(cli, ["eval", "--ground-truth", str(tmp_path / "none.tsv"), "--detected", str(tmp_path / "none.tsv")])
    assert result.exit_code == 1
    assert "ground_truth" in result.output
