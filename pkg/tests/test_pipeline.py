from __future__ import annotations

import os

import pytest
from botocore.exceptions import ClientError

from kb_cleanser.kb.oracle import evaluate_planted, frequency_baseline, read_triple_keys
from kb_cleanser.kb.pipeline import (
    CONFLICTS_FILE, DIFFERENTIAL_FILE, ERRORS_FILE, HISTOGRAM_FILE, HOMONYMS_FILE,
    METRICS_FILE, REPAIRED_FILE, SUSKB_FILE, TIMINGS_FILE, clean,
)
from kb_cleanser.kb.run_config import RUN_CONFIG_FILE, RunConfig
from kb_cleanser.kb.synthetic import GROUND_TRUTH_FILE, KB_FILE
from kb_cleanser.kb.sweep import SWEEP_FILE, parse_axis_values, sweep
from kb_cleanser.main import run_pipeline
from kb_cleanser.utils.status_exception import ContractViolation, StageError, StatusException


OUTPUTS = [
    CONFLICTS_FILE, ERRORS_FILE, HOMONYMS_FILE, SUSKB_FILE, REPAIRED_FILE,
    DIFFERENTIAL_FILE, HISTOGRAM_FILE, METRICS_FILE, RUN_CONFIG_FILE, TIMINGS_FILE,
]
# outputs that may legitimately differ between runs of different configurations
VOLATILE = {TIMINGS_FILE, RUN_CONFIG_FILE}


class FakeS3:

    def __init__(self):
        self.uploads = []

    def upload_file(self, Filename, Bucket, Key):
        self.uploads.append((os.path.basename(Filename), Bucket, Key))


class ForbiddenS3:

    def upload_file(self, Filename, Bucket, Key):
        raise ClientError({'Error': {'Code': '403', 'Message': 'Forbidden'}}, 'PutObject')


def _config(input_dir, output_dir, **changes):
    return RunConfig(input=str(input_dir / KB_FILE), output_dir=str(output_dir), **changes)


def _contents(folder, skip=VOLATILE):
    return {
        name: (folder / name).read_bytes()
        for name in OUTPUTS if name not in skip
    }


@pytest.fixture(scope="module")
def default_run(synthetic_dir, tmp_path_factory):
    output_dir = tmp_path_factory.mktemp("default_run")
    result = clean(_config(synthetic_dir, output_dir))
    return output_dir, result


def test_run_writes_every_report(default_run):
    output_dir, result = default_run
    assert result['status'] == StatusException.OK
    assert sorted(result['body']['files']) == sorted(OUTPUTS)
    for name in OUTPUTS:
        assert (output_dir / name).is_file()
    metrics = result['body']['metrics']
    assert metrics['triples_out'] == metrics['triples_in'] - metrics['triples_removed']
    assert metrics['conflicts'] <= metrics['conflicts_hamming'] + metrics['conflicts_jaccard']
    assert metrics['intersection_instances'] == sum(v for k, v in metrics.items() if k.startswith('verdict_'))


def test_repaired_kb_is_the_input_minus_the_errors(default_run, synthetic):
    output_dir, _ = default_run
    removed = read_triple_keys(str(output_dir / ERRORS_FILE))
    repaired = read_triple_keys(str(output_dir / REPAIRED_FILE))
    original = {key for key, _ in synthetic.kb.items()}
    assert removed <= original
    assert repaired == original - removed


def test_runs_are_byte_identical(default_run, synthetic_dir):
    output_dir, _ = default_run
    before = _contents(output_dir, skip={TIMINGS_FILE})
    clean(_config(synthetic_dir, output_dir))
    assert _contents(output_dir, skip={TIMINGS_FILE}) == before


def test_run_config_is_echoed(default_run):
    output_dir, _ = default_run
    text = (output_dir / RUN_CONFIG_FILE).read_text(encoding="utf-8")
    assert '"bucket_count": 128' in text
    assert text.index('"big"') < text.index('"bucket_count"') < text.index('"workers"')


def test_planted_errors_are_found(default_run, synthetic_dir, synthetic):
    output_dir, _ = default_run
    truth = read_triple_keys(str(synthetic_dir / GROUND_TRUTH_FILE))
    report = evaluate_planted(truth, read_triple_keys(str(output_dir / ERRORS_FILE)))
    assert report.precision is not None and report.precision >= 0.85
    assert report.recall >= 0.5

    baseline = evaluate_planted(truth, frequency_baseline(synthetic.kb))
    assert baseline.precision < 0.7
    assert baseline.precision < report.precision


def test_combined_is_the_union_of_both_methods(default_run, synthetic_dir, tmp_path):
    output_dir, _ = default_run
    keys = {}
    for method in ("hamming", "jaccard"):
        clean(_config(synthetic_dir, tmp_path / method, method=method))
        keys[method] = read_triple_keys(str(tmp_path / method / CONFLICTS_FILE))
    combined = read_triple_keys(str(output_dir / CONFLICTS_FILE))
    assert combined == keys["hamming"] | keys["jaccard"]
    assert len(combined) >= max(len(keys["hamming"]), len(keys["jaccard"]))


def test_bucket_count_keeps_the_overlapping_conflicts(synthetic_dir, tmp_path):
    table = sweep(_config(synthetic_dir, tmp_path, method="jaccard"), "bucket-count", "64,128,256")
    assert list(table["status"]) == ["OK"] * 3
    assert len(set(table["triples_removed"])) == 1

    conflicts = [read_triple_keys(str(tmp_path / f"bucket-count=={b}" / CONFLICTS_FILE)) for b in (64, 128, 256)]
    assert conflicts[0] == conflicts[1] == conflicts[2]
    assert (tmp_path / SWEEP_FILE).is_file()


def test_more_buckets_never_find_more(small_synthetic_dir, tmp_path):
    base = _config(small_synthetic_dir, tmp_path, method="jaccard", require_overlap=False)
    table = sweep(base, "bucket-count", "64,128,256")
    assert list(table["status"]) == ["OK"] * 3
    removed = list(table["triples_removed"])
    assert removed == sorted(removed, reverse=True)

    conflicts = [read_triple_keys(str(tmp_path / f"bucket-count=={b}" / CONFLICTS_FILE)) for b in (64, 128, 256)]
    assert conflicts[0] >= conflicts[1] >= conflicts[2]
    assert len(conflicts[0]) > len(conflicts[2])


def test_errors_plateau_over_jaccard_max(synthetic_dir, tmp_path):
    table = sweep(_config(synthetic_dir, tmp_path), "jaccard-max", [0.1, 0.2, 0.3, 0.4, 0.5])
    removed = list(table["triples_removed"])
    assert max(removed) > 0
    assert (max(removed) - min(removed)) / max(removed) < 0.1


def test_sweep_point_matches_a_single_run(default_run, synthetic_dir, tmp_path):
    _, result = default_run
    table = sweep(_config(synthetic_dir, tmp_path), "bucket-count", "128")
    row = table.iloc[0]
    metrics = result['body']['metrics']
    assert row["conflicts"] == metrics["conflicts"]
    assert row["triples_removed"] == metrics["triples_removed"]


def test_sweep_records_a_failing_point(small_synthetic_dir, tmp_path):
    table = sweep(_config(small_synthetic_dir, tmp_path), "bl", "100:5,3:5")
    assert list(table["status"]) == [StatusException.OK, StatusException.INVALID]
    assert "big" in table.iloc[1]["message"]
    assert len((tmp_path / SWEEP_FILE).read_text(encoding="utf-8").splitlines()) == 3


def test_sweep_rejects_unknown_axes_and_values():
    with pytest.raises(ContractViolation):
        parse_axis_values("seed", "1,2")
    with pytest.raises(ContractViolation):
        parse_axis_values("bucket-count", "many")
    with pytest.raises(ContractViolation):
        parse_axis_values("bucket-count", " , ")
    assert parse_axis_values("bl", "100:5") == [("100:5", {"big": 100, "low": 5})]


def test_missing_input_fails_in_ingest(tmp_path):
    config = RunConfig(input=str(tmp_path / "missing.tsv"), output_dir=str(tmp_path / "out"))
    with pytest.raises(StageError) as err:
        clean(config)
    assert err.value.stage == "ingest"
    assert str(err.value).startswith("[ingest]")

    result = run_pipeline(input=str(tmp_path / "missing.tsv"), output_dir=str(tmp_path / "out"))
    assert result['status'] == StatusException.ERROR
    assert "[ingest]" in result['body']['message']


def test_invalid_configuration_is_rejected_before_any_work(small_synthetic_dir, tmp_path):
    result = run_pipeline(input=str(small_synthetic_dir / KB_FILE), output_dir=str(tmp_path / "out"), big=3, low=5)
    assert result['status'] == StatusException.INVALID
    assert not (tmp_path / "out").exists()


def test_strict_mode_fails_on_a_bad_line(tmp_path):
    kb_file = tmp_path / "kb.tsv"
    kb_file.write_text("bird\tturkey\t211\nfish\tturkey\n", encoding="utf-8")
    result = run_pipeline(input=str(kb_file), output_dir=str(tmp_path / "out"), strict=True)
    assert result['status'] == StatusException.INVALID
    assert "line 2" in result['body']['message']


def test_reports_are_uploaded(small_synthetic_dir, tmp_path):
    client = FakeS3()
    result = clean(_config(small_synthetic_dir, tmp_path), bucket_destination="s3://reports/run-1", s3_client=client)
    assert sorted(name for name, _, _ in client.uploads) == sorted(OUTPUTS)
    assert {bucket for _, bucket, _ in client.uploads} == {"reports"}
    assert "s3://reports/run-1/errors.tsv" in result['body']['uris']


def test_failed_upload_is_an_error(small_synthetic_dir, tmp_path):
    with pytest.raises(StageError) as err:
        clean(_config(small_synthetic_dir, tmp_path), bucket_destination="s3://reports/run-1", s3_client=ForbiddenS3())
    assert err.value.stage == "upload"


def test_bucket_destination_must_be_s3(small_synthetic_dir, tmp_path):
    with pytest.raises(StatusException) as err:
        clean(_config(small_synthetic_dir, tmp_path), bucket_destination="/tmp/reports")
    assert err.value.status == StatusException.INVALID


def test_signature_cache_gives_the_same_reports(small_synthetic_dir, tmp_path):
    clean(_config(small_synthetic_dir, tmp_path / "plain"))
    for run in ("cold", "warm"):
        clean(_config(small_synthetic_dir, tmp_path / run, cache_dir=str(tmp_path / "cache")))
        assert _contents(tmp_path / run) == _contents(tmp_path / "plain")
    assert any((tmp_path / "cache").iterdir())


def test_workers_give_the_same_reports(small_synthetic_dir, tmp_path):
    clean(_config(small_synthetic_dir, tmp_path / "serial"))
    clean(_config(small_synthetic_dir, tmp_path / "parallel", workers=2))
    assert _contents(tmp_path / "parallel") == _contents(tmp_path / "serial")
