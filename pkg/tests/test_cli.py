"""Command-line interface: subcommands, output shapes, error surfacing."""

import json
import re

import numpy as np
import pytest

from udeed import EnsembleModel, save_model, two_gaussian_dataset
from udeed.cli import main
from udeed.diversity import MEASURES


@pytest.fixture
def csv_path(tmp_path):
    data = two_gaussian_dataset(24, 2, seed=3)
    lines = [
        f"{int(label):+d},{float(row[0])!r},{float(row[1])!r}"
        for row, label in zip(data.features, data.labels)
    ]
    path = tmp_path / "toy.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def sparse_path(tmp_path):
    path = tmp_path / "toy.txt"
    path.write_text("+1 1:2.0\n-1 1:-2.0\n+1 1:1.5\n-1 1:-1.5\n")
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTrain:
    def test_happy_path_writes_model(self, capsys, csv_path, tmp_path):
        out = tmp_path / "model.txt"
        code, stdout, stderr = run_cli(
            capsys, "train", "--data", str(csv_path), "--format", "csv",
            "--variant", "lcud", "--m", "2", "--steps", "3",
            "--out", str(out),
        )
        assert code == 0
        assert stderr == ""
        assert out.exists()
        assert "split of" in stdout
        assert "|L| = 3, |U| = 9, |T| = 12" in stdout
        assert stdout.count("stage [") == 2
        assert "labeled features" in stdout
        assert "unlabeled features" in stdout

    def test_lc_single_stage(self, capsys, csv_path):
        code, stdout, _ = run_cli(
            capsys, "train", "--data", str(csv_path), "--format", "csv",
            "--variant", "lc", "--m", "2",
        )
        assert code == 0
        assert stdout.count("stage [") == 1
        assert "no diversity set" in stdout

    def test_gamma_zero_stage_label(self, capsys, csv_path):
        code, stdout, _ = run_cli(
            capsys, "train", "--data", str(csv_path), "--format", "csv",
            "--variant", "lcud", "--m", "2", "--gamma", "0.0",
        )
        assert code == 0
        assert stdout.count("stage [") == 1
        assert "supervised (gamma = 0)" in stdout

    def test_lcud_with_full_labeled_fraction_fails(self, capsys, csv_path):
        code, _, stderr = run_cli(
            capsys, "train", "--data", str(csv_path), "--format", "csv",
            "--variant", "lcud", "--m", "2", "--labeled-frac", "1.0",
        )
        assert code == 1
        assert stderr.startswith("error:")
        assert "unlabeled" in stderr

    def test_m_below_two_fails(self, capsys, csv_path):
        code, _, stderr = run_cli(
            capsys, "train", "--data", str(csv_path), "--format", "csv",
            "--variant", "lc", "--m", "1",
        )
        assert code == 1
        assert "m must be at least 2" in stderr

    def test_missing_data_file(self, capsys, tmp_path):
        code, _, stderr = run_cli(
            capsys, "train", "--data", str(tmp_path / "nope.csv"),
            "--format", "csv", "--variant", "lc",
        )
        assert code == 1
        assert "cannot read dataset file" in stderr

    def test_unknown_format_rejected_by_parser(self, capsys, csv_path):
        with pytest.raises(SystemExit) as info:
            main(["train", "--data", str(csv_path), "--format", "arff",
                  "--variant", "lc"])
        assert info.value.code == 2


class TestPredict:
    def test_zero_model_all_positive(self, capsys, csv_path, tmp_path):
        model_path = tmp_path / "zero.txt"
        save_model(EnsembleModel(np.zeros((2, 3))), model_path)
        code, stdout, _ = run_cli(
            capsys, "predict", "--model", str(model_path),
            "--data", str(csv_path), "--format", "csv",
        )
        assert code == 0
        lines = stdout.splitlines()
        assert len(lines) == 24
        assert all(line == "+1 0.0" for line in lines)

    def test_line_format(self, capsys, sparse_path, tmp_path):
        model_path = tmp_path / "m.txt"
        save_model(EnsembleModel([[1.0, 0.0], [0.5, 0.0]]), model_path)
        code, stdout, _ = run_cli(
            capsys, "predict", "--model", str(model_path),
            "--data", str(sparse_path), "--format", "sparse",
        )
        assert code == 0
        lines = stdout.splitlines()
        assert len(lines) == 4
        for line in lines:
            assert re.fullmatch(r"[+-]1 -?\d+\.\d+(e-?\d+)?", line)
        assert lines[0].startswith("+1 ")
        assert lines[1].startswith("-1 ")

    def test_missing_model(self, capsys, csv_path, tmp_path):
        code, _, stderr = run_cli(
            capsys, "predict", "--model", str(tmp_path / "absent.txt"),
            "--data", str(csv_path), "--format", "csv",
        )
        assert code == 1
        assert "model file not found" in stderr

    def test_dimension_mismatch(self, capsys, csv_path, tmp_path):
        model_path = tmp_path / "wide.txt"
        save_model(EnsembleModel(np.zeros((2, 5))), model_path)
        code, _, stderr = run_cli(
            capsys, "predict", "--model", str(model_path),
            "--data", str(csv_path), "--format", "csv",
        )
        assert code == 1
        assert stderr.startswith("error:")


class TestEvaluate:
    def test_report_to_stdout(self, capsys, csv_path):
        code, stdout, _ = run_cli(
            capsys, "evaluate", "--data", str(csv_path), "--format", "csv",
            "--runs", "2", "--m", "2", "--methods", "lc,lcud",
        )
        assert code == 0
        assert "runs: 2" in stdout
        assert "LCUD" in stdout
        assert "LCUD vs method" in stdout

    def test_report_files_written(self, capsys, csv_path, tmp_path):
        report_path = tmp_path / "report.txt"
        code, stdout, _ = run_cli(
            capsys, "evaluate", "--data", str(csv_path), "--format", "csv",
            "--runs", "2", "--m", "2", "--methods", "lc",
            "--report", str(report_path),
        )
        assert code == 0
        assert report_path.exists()
        sidecar = tmp_path / "report.txt.jsonl"
        assert sidecar.exists()
        assert "report written to" in stdout
        records = [json.loads(line) for line in
                   sidecar.read_text().splitlines()]
        assert [r["run"] for r in records] == [1, 2]

    def test_repeat_invocations_byte_identical(self, capsys, csv_path,
                                               tmp_path):
        paths = [tmp_path / "r1.txt", tmp_path / "r2.txt"]
        for path in paths:
            code, _, _ = run_cli(
                capsys, "evaluate", "--data", str(csv_path), "--format",
                "csv", "--runs", "3", "--m", "2", "--methods", "lc,lcud",
                "--seed", "5", "--report", str(path),
            )
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()
        assert (tmp_path / "r1.txt.jsonl").read_bytes() == (
            tmp_path / "r2.txt.jsonl"
        ).read_bytes()

    def test_single_run_rejected(self, capsys, csv_path):
        code, _, stderr = run_cli(
            capsys, "evaluate", "--data", str(csv_path), "--format", "csv",
            "--runs", "1", "--methods", "lc", "--m", "2",
        )
        assert code == 1
        assert "runs must be >= 2" in stderr

    def test_unwritable_report_path(self, capsys, csv_path, tmp_path):
        code, _, stderr = run_cli(
            capsys, "evaluate", "--data", str(csv_path), "--format", "csv",
            "--runs", "2", "--m", "2", "--methods", "lc",
            "--report", str(tmp_path / "missing-dir" / "r.txt"),
        )
        assert code == 1
        assert "cannot write report" in stderr


class TestDiversity:
    def test_four_lines_in_order(self, capsys, csv_path, tmp_path):
        model_path = tmp_path / "m.txt"
        save_model(EnsembleModel([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]),
                   model_path)
        code, stdout, _ = run_cli(
            capsys, "diversity", "--model", str(model_path),
            "--data", str(csv_path), "--format", "csv",
        )
        assert code == 0
        lines = stdout.splitlines()
        assert len(lines) == 4
        names = [line.split()[0] for line in lines]
        assert tuple(names) == MEASURES
        for line in lines:
            value = float(line.split()[1])
            assert 0.0 <= value <= 1.0

    def test_perfect_model_zero_dis(self, capsys, tmp_path):
        data_path = tmp_path / "sep.csv"
        data_path.write_text("+1,2.0\n-1,-2.0\n+1,1.5\n-1,-1.5\n")
        model_path = tmp_path / "m.txt"
        save_model(EnsembleModel([[1.0, 0.0], [2.0, 0.0]]), model_path)
        code, stdout, _ = run_cli(
            capsys, "diversity", "--model", str(model_path),
            "--data", str(data_path), "--format", "csv",
        )
        assert code == 0
        assert stdout.splitlines()[0] == "DIS 0.0"
