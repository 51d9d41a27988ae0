import filecmp
import subprocess
import sys

import pytest

import gaitbrac as gb
from gaitbrac.cli import main

FAST_FLAGS = ["--n-estimators", "10", "--max-depth", "2", "--learning-rate", "0.3"]


def _usage_exit(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    return exc.value.code


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """One simulated dataset + extracted matrix shared by the CLI tests."""
    root = tmp_path_factory.mktemp("cli")
    data = root / "data"
    matrix = root / "matrix.csv"
    assert main(["simulate", "-n", "8", "--seed", "5", "--out", str(data)]) == 0
    assert (
        main(
            [
                "extract",
                "--recordings",
                str(data),
                "--labels",
                str(data / "labels.csv"),
                "--out",
                str(matrix),
            ]
        )
        == 0
    )
    return root, data, matrix


def test_simulate_writes_parseable_files(workspace):
    _, data, _ = workspace
    files = sorted(data.glob("*.csv"))
    assert len(files) == 17  # 8 subjects x 2 sessions + labels
    rec = gb.parse_recording(data / "s01_before.csv")
    assert len(rec.streams) == 17


def test_simulate_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["simulate", "-n", "3", "--seed", "7", "--out", str(a)]) == 0
    assert main(["simulate", "-n", "3", "--seed", "7", "--out", str(b)]) == 0
    names = sorted(p.name for p in a.glob("*"))
    assert names == sorted(p.name for p in b.glob("*"))
    match, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    assert mismatch == [] and errors == []


def test_simulate_too_few_is_usage_error():
    assert _usage_exit(["simulate", "-n", "2", "--out", "/tmp/nope"]) == 2


def test_extract_reports_catalog_and_subjects(workspace, capsys):
    root, data, _ = workspace
    out = root / "matrix2.csv"
    assert (
        main(
            [
                "extract",
                "--recordings",
                str(data),
                "--labels",
                str(data / "labels.csv"),
                "--out",
                str(out),
                "--devices",
                "phone,watch",
            ]
        )
        == 0
    )
    captured = capsys.readouterr().out
    assert "catalog length: 2636" in captured  # 2 full devices
    assert "subjects: 8" in captured
    instances = gb.load_matrix(out)
    assert {gb.features.catalog_device(n) for n in instances[0].diff.catalog} == {
        "Watch",
        "Phone",
    }


def test_extract_empty_dir_missing_session(tmp_path, capsys):
    (tmp_path / "labels.csv").write_text("subject_id,brac\n")
    code = main(
        [
            "extract",
            "--recordings",
            str(tmp_path),
            "--labels",
            str(tmp_path / "labels.csv"),
            "--out",
            str(tmp_path / "m.csv"),
        ]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("ERROR MissingSession:")
    assert "empty manifest" in err


def test_extract_missing_session(tmp_path, capsys):
    pair = gb.generate_pair(gb.SubjectProfile("s01", 2.0, 2.0, 1.0, 0.0, 1))
    gb.write_recording(pair.before, tmp_path / "s01_before.csv")
    gb.write_labels({"s01": 0.0}, tmp_path / "labels.csv")
    code = main(
        [
            "extract",
            "--recordings",
            str(tmp_path),
            "--labels",
            str(tmp_path / "labels.csv"),
            "--out",
            str(tmp_path / "m.csv"),
        ]
    )
    assert code == 1
    assert "ERROR MissingSession" in capsys.readouterr().err


def test_extract_missing_label(tmp_path, capsys):
    pair = gb.generate_pair(gb.SubjectProfile("s01", 2.0, 2.0, 1.0, 0.0, 1))
    gb.write_recording(pair.before, tmp_path / "s01_before.csv")
    gb.write_recording(pair.after, tmp_path / "s01_after.csv")
    gb.write_labels({"s02": 0.0}, tmp_path / "labels.csv")
    code = main(
        [
            "extract",
            "--recordings",
            str(tmp_path),
            "--labels",
            str(tmp_path / "labels.csv"),
            "--out",
            str(tmp_path / "m.csv"),
        ]
    )
    assert code == 1
    assert "ERROR MissingLabel" in capsys.readouterr().err


def test_evaluate_classification_report_schema(workspace):
    root, _, matrix = workspace
    out = root / "eval_clf"
    code = main(
        ["evaluate", "--matrix", str(matrix), "--model", "gbc", "--threshold", "240",
         "--out", str(out), *FAST_FLAGS]
    )
    assert code == 0
    report = dict(
        line.split(",", 1) for line in (out / "report.csv").read_text().splitlines()[1:]
    )
    assert "auc" in report and "fpr_at_tpr1" in report
    assert {"tp", "fp", "fn", "tn"} <= report.keys()
    roc_lines = (out / "roc.csv").read_text().splitlines()
    assert roc_lines[0] == "fpr,tpr,threshold"
    preds = (out / "predictions.csv").read_text().splitlines()
    assert preds[0] == "subject,score,brac"
    assert len(preds) == 9


def test_evaluate_regression_report_schema(workspace):
    root, _, matrix = workspace
    out = root / "eval_reg"
    code = main(
        ["evaluate", "--matrix", str(matrix), "--model", "lasso", "--task", "regress",
         "--out", str(out), "--alpha", "5.0"]
    )
    assert code == 0
    lines = (out / "report.csv").read_text().splitlines()[1:]
    keys = {line.split(",", 1)[0] for line in lines}
    assert "mae" in keys and "rmse" in keys
    assert "auc" not in keys and "fpr_at_tpr1" not in keys
    assert not (out / "roc.csv").exists()


def test_evaluate_bad_threshold_usage_error(workspace):
    _, _, matrix = workspace
    code = _usage_exit(
        ["evaluate", "--matrix", str(matrix), "--model", "gbc", "--threshold", "300",
         "--out", "/tmp/x"]
    )
    assert code == 2


def test_evaluate_task_model_mismatch_usage_error(workspace):
    _, _, matrix = workspace
    code = _usage_exit(
        ["evaluate", "--matrix", str(matrix), "--model", "lasso", "--task", "classify",
         "--threshold", "240", "--out", "/tmp/x"]
    )
    assert code == 2


def test_ablate_features_four_rows(workspace):
    root, _, matrix = workspace
    out = root / "ablate_features.csv"
    code = main(
        ["ablate", "--matrix", str(matrix), "--kind", "features", "--model", "gbc",
         "--threshold", "240", "--out", str(out), *FAST_FLAGS]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "family,auc_only,auc_without"
    assert len(lines) == 5
    assert [l.split(",")[0] for l in lines[1:]] == [
        "Histogram", "KnownGait", "Frequency", "Statistics",
    ]


def test_ablate_devices_six_rows(workspace):
    root, _, matrix = workspace
    out = root / "ablate_devices.csv"
    code = main(
        ["ablate", "--matrix", str(matrix), "--kind", "devices", "--model", "gbc",
         "--threshold", "240", "--out", str(out), *FAST_FLAGS]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 7
    assert [l.split(",")[0] for l in lines[1:]] == [
        "all", "phone", "watch", "glass", "phone+watch", "phone+glass",
    ]


def test_ablate_unknown_kind_usage_error(workspace):
    _, _, matrix = workspace
    code = _usage_exit(
        ["ablate", "--matrix", str(matrix), "--kind", "sensors", "--model", "gbc",
         "--threshold", "240", "--out", "/tmp/x"]
    )
    assert code == 2


def test_train_predict_roundtrip(workspace, capsys):
    root, _, matrix = workspace
    model_path = root / "model.txt"
    code = main(
        ["train", "--matrix", str(matrix), "--model", "gbr", "--out", str(model_path),
         *FAST_FLAGS]
    )
    assert code == 0
    preds_path = root / "preds.csv"
    code = main(
        ["predict", "--matrix", str(matrix), "--model-file", str(model_path),
         "--out", str(preds_path)]
    )
    assert code == 0
    lines = preds_path.read_text().splitlines()
    assert lines[0] == "subject,score,brac"
    assert len(lines) == 9


def test_predict_fingerprint_mismatch(workspace, tmp_path, capsys):
    root, data, matrix = workspace
    band_matrix = tmp_path / "band.csv"
    assert (
        main(
            ["extract", "--recordings", str(data), "--labels", str(data / "labels.csv"),
             "--out", str(band_matrix), "--devices", "band"]
        )
        == 0
    )
    model_path = tmp_path / "band_model.txt"
    assert (
        main(["train", "--matrix", str(band_matrix), "--model", "rt", "--out", str(model_path)])
        == 0
    )
    capsys.readouterr()
    code = main(
        ["predict", "--matrix", str(matrix), "--model-file", str(model_path),
         "--out", str(tmp_path / "p.csv")]
    )
    assert code == 1
    assert "ERROR CatalogFingerprintMismatch" in capsys.readouterr().err


def test_console_script_help_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "gaitbrac.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    for sub in ("simulate", "extract", "train", "predict", "evaluate", "ablate"):
        assert sub in proc.stdout
