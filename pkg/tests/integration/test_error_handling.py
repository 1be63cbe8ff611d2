"""Integration tests for error handling and exit codes."""

import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from rcbht.cli.main import main as cli
from rcbht.features.matrix import FeatureLayout, FeatureMatrix, Regime
from rcbht.models import exceptions
from rcbht.models.labels import AXES, Layer
from rcbht.models.thresholds import GradientThresholds, TaskThresholds

SIDECAR = {"rate_hz": 100.0, "transitions": [["approach", 0.0]]}


def _write_thresholds(path: Path) -> Path:
    gradients = GradientThresholds(0.1, 1.0, 5.0, 20.0)
    TaskThresholds(task="unit", axes={axis: gradients for axis in AXES}).save(path)
    return path


def _write_features(path: Path, labels: list[str]) -> Path:
    layout = FeatureLayout(
        regime=Regime.NOMINAL,
        arms=("right",),
        states=("*",),
        lengths={("right", "*", layer.value): 1 for layer in Layer},
    )
    values = np.ones((len(labels), layout.n_features), dtype=np.int64)
    FeatureMatrix(values=values, labels=labels, layout=layout).to_csv(path)
    return path


def _write_trial(directory: Path, name: str, body: str, sidecar: dict | None) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{name}.csv").write_text(body)
    if sidecar is not None:
        (directory / f"{name}.json").write_text(json.dumps(sidecar))


class TestErrorHandlingIntegration:
    """Test errors surface with their exit codes and suggestions."""

    def setup_method(self):
        """Set up test environment for each test."""
        self.runner = CliRunner()

    def _encode(self, tmp_path: Path, corpus: Path):
        thresholds = _write_thresholds(tmp_path / "thresholds.json")
        return self.runner.invoke(
            cli,
            [
                "--config", str(tmp_path / "config.json"), "encode", str(corpus),
                "--thresholds", str(thresholds), "-o", str(tmp_path / "f.csv"),
            ],
        )

    def test_missing_corpus_directory(self, tmp_path):
        """Test a missing corpus is a validation error."""
        result = self._encode(tmp_path, tmp_path / "nowhere")

        assert result.exit_code == 4
        assert "rcbht synth" in result.output

    def test_malformed_row(self, tmp_path):
        """Test a short row is a malformed record."""
        corpus = tmp_path / "corpus"
        _write_trial(corpus, "bad", "t,fx,fy,fz,tx,ty,tz\n0,1,2\n", SIDECAR)

        result = self._encode(tmp_path, corpus)

        assert result.exit_code == 10

    def test_non_monotone_time(self, tmp_path):
        """Test repeated timestamps are rejected."""
        corpus = tmp_path / "corpus"
        rows = "t,fx,fy,fz,tx,ty,tz\n" + "".join(
            f"{t},0,0,0,0,0,0\n" for t in (0.0, 0.01, 0.01, 0.02)
        )
        _write_trial(corpus, "bad", rows, SIDECAR)

        result = self._encode(tmp_path, corpus)

        assert result.exit_code == 11

    def test_missing_sidecar(self, tmp_path):
        """Test a trial without transitions cannot be segmented."""
        corpus = tmp_path / "corpus"
        _write_trial(corpus, "bare", "t,fx,fy,fz,tx,ty,tz\n0,0,0,0,0,0,0\n", None)

        result = self._encode(tmp_path, corpus)

        assert result.exit_code == 12

    def test_invalid_config_file(self, tmp_path):
        """Test an out-of-range config file is a configuration error."""
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"merge_ratio": 0.5}))

        result = self.runner.invoke(
            cli, ["--config", str(config), "synth", str(tmp_path / "corpus")]
        )

        assert result.exit_code == 3
        assert "merge_ratio" in result.output

    def test_single_class_training(self, tmp_path):
        """Test training on one class exits with its own code."""
        features = _write_features(tmp_path / "f.csv", ["approach"] * 6)

        result = self.runner.invoke(
            cli,
            [
                "--config", str(tmp_path / "config.json"), "train", str(features),
                "-o", str(tmp_path / "m.json"), "--folds", "2", "--kernel", "linear",
                "--C-powers=0..0",
            ],
        )

        assert result.exit_code == 50

    def test_too_few_samples_per_class(self, tmp_path):
        """Test a class that cannot fill every fold."""
        features = _write_features(tmp_path / "f.csv", ["approach"] * 4 + ["mating"])

        result = self.runner.invoke(
            cli,
            [
                "--config", str(tmp_path / "config.json"), "train", str(features),
                "-o", str(tmp_path / "m.json"), "--folds", "2",
            ],
        )

        assert result.exit_code == 55
        assert "mating" in result.output

    def test_foreign_model_file(self, tmp_path):
        """Test a JSON file that is not a model is rejected."""
        model = tmp_path / "model.json"
        model.write_text(json.dumps({"format": "other"}))
        thresholds = _write_thresholds(tmp_path / "thresholds.json")
        corpus = tmp_path / "corpus"
        corpus.mkdir()

        result = self.runner.invoke(
            cli,
            [
                "--config", str(tmp_path / "config.json"), "evaluate", str(corpus),
                "--model", str(model), "--thresholds", str(thresholds),
            ],
        )

        assert result.exit_code == 4
        assert "rcbht train" in result.output

    def test_invalid_confidence_threshold(self, tmp_path):
        """Test k outside [0.5, 1) is a configuration error."""
        model = tmp_path / "model.json"
        model.write_text("{}")

        result = self.runner.invoke(
            cli,
            [
                "--config", str(tmp_path / "config.json"), "evaluate",
                str(tmp_path), "--model", str(model), "--k", "1.5",
            ],
        )

        assert result.exit_code == 3


class TestExceptionHierarchy:
    """Test the exception hierarchy as seen by callers."""

    @pytest.mark.parametrize(
        "error_class",
        [
            exceptions.MalformedRecordError,
            exceptions.InsufficientDataError,
            exceptions.NoConvergenceError,
            exceptions.ModelMismatchError,
            exceptions.EmptyCorpusError,
        ],
    )
    def test_all_errors_are_rcbht_errors(self, error_class):
        """Test every domain error can be caught as RcbhtError."""
        with pytest.raises(exceptions.RcbhtError):
            raise error_class()

    def test_context_and_suggestions_preserved(self):
        """Test errors carry context, suggestions and the original cause."""
        cause = ValueError("bad float")
        error = exceptions.MalformedRecordError(
            "Bad row", row=3, suggestions=["Fix row 3"], original_error=cause
        )

        assert error.original_error is cause
        assert error.suggestions == ["Fix row 3"]
        assert error.context["row"] == 3
        assert "Bad row" in str(error)
