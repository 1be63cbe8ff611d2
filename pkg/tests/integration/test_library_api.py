"""Integration tests for the library API."""

import numpy as np
import pytest

import rcbht
from rcbht.classifier.validation import c_grid
from rcbht.features.matrix import build_features
from rcbht.pipeline.online import OnlinePipeline


class TestLibraryAPIIntegration:
    """Test the public API end to end."""

    def test_public_names(self):
        """Test the top-level package exposes the main entry points."""
        for name in rcbht.__all__:
            assert hasattr(rcbht, name), name

    def test_online_equals_offline_across_corpus(self):
        """Test both pipelines agree on every trial, arm and outcome."""
        trials = rcbht.generate_snap_corpus(
            n_nominal=3, n_abnormal=2, seed=11, rate_hz=100.0, arms=("left", "right")
        )
        thresholds = rcbht.calibrate_task(
            [t for t in trials if t.outcome == "nominal"], task="snap"
        )
        config = rcbht.PipelineConfig(thresholds=thresholds, merge_ratio=3.0)

        for trial in trials:
            offline = rcbht.run_offline(trial, config)
            online = rcbht.run_online(trial, config.online())
            assert online.grammar.to_dict() == offline.to_dict(), trial.key

    def test_streamed_samples_equal_replay(self, snap_corpus, snap_config):
        """Test pushing samples by hand matches the replay helper."""
        trial = snap_corpus[-1]
        pipeline = OnlinePipeline(
            snap_config.online(),
            trial.transitions,
            trial.rate_hz,
            trial_key=trial.key,
            arm_id=trial.arm_id,
            outcome=trial.outcome,
        )

        for sample in trial.samples():
            pipeline.push(sample)
        pipeline.finish()

        replay = rcbht.run_online(trial, snap_config.online())
        assert pipeline.grammar.to_dict() == replay.grammar.to_dict()

    def test_two_arm_features(self, tmp_path):
        """Test two-arm trials concatenate arm blocks left first."""
        trials = rcbht.generate_snap_corpus(
            n_nominal=2, seed=2, rate_hz=100.0, arms=("right", "left")
        )
        thresholds = rcbht.calibrate_task(trials, task="snap")
        config = rcbht.PipelineConfig(thresholds=thresholds)

        grammars = [rcbht.run_offline(trial, config) for trial in trials]
        features = build_features(grammars, "abnormality")

        assert features.layout.arms == ("left", "right")
        assert features.n_samples == 2
        assert features.layout.columns[0].startswith("left:")

    @pytest.mark.slow
    def test_nominal_state_classification(self):
        """Test cross-validated state accuracy on a clean synthetic corpus."""
        trials = rcbht.generate_snap_corpus(n_nominal=40, seed=1)
        thresholds = rcbht.calibrate_task(trials, task="snap")
        config = rcbht.PipelineConfig(thresholds=thresholds)

        _, features = rcbht.encode_corpus(trials, config, "nominal")
        report = rcbht.cross_validate(
            features.values,
            features.labels,
            folds=5,
            kernels=("rbf", "linear"),
            c_values=c_grid(-1, 2),
            seed=0,
        )

        assert report.best.mean >= 0.95
        assert np.isfinite(report.best.min)

    @pytest.mark.slow
    def test_nominal_state_classification_with_poly_kernel(self):
        """Test a cubic kernel at C=1 classifies states across five folds."""
        trials = rcbht.generate_snap_corpus(n_nominal=40, seed=1)
        thresholds = rcbht.calibrate_task(trials, task="snap")
        config = rcbht.PipelineConfig(thresholds=thresholds)

        _, features = rcbht.encode_corpus(trials, config, "nominal")
        report = rcbht.cross_validate(
            features.values,
            features.labels,
            folds=5,
            kernels=("poly",),
            c_values=[1.0],
            seed=0,
        )

        (cell,) = report.cells
        assert (cell.kernel, cell.C) == ("poly", 1.0)
        assert cell.mean >= 0.95
