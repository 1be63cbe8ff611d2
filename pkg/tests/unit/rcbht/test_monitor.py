"""Test verdicts, grammar sampling, confidence metrics and online evaluation."""

import json

import numpy as np
import pytest

from rcbht.classifier.multiclass import SvmClassifier
from rcbht.classifier.persistence import ModelBundle
from rcbht.features.matrix import FeatureLayout, Regime
from rcbht.models.exceptions import (
    EmptyCorpusError,
    EmptyTraceError,
    ModelMismatchError,
    ValidationError,
)
from rcbht.monitor.evaluation import (
    REPORT_COLUMNS,
    build_reports,
    evaluate_online,
    traces_from_snapshots,
)
from rcbht.monitor.metrics import metric_m, metric_m_from_counts, overall_probability
from rcbht.monitor.sampler import (
    GrammarSampler,
    InferenceSnapshot,
    InferenceTrace,
    TickClock,
)
from rcbht.monitor.verdicts import (
    DEFAULT_CONFIDENCE_THRESHOLDS,
    Verdict,
    check_threshold,
    verdict_for,
)
from rcbht.pipeline.config import PipelineConfig
from rcbht.pipeline.offline import encode_corpus
from rcbht.pipeline.online import run_online


def _snapshot(
    t: float,
    probs: tuple[float, ...],
    predicted: str = "a",
    truth: str | None = "a",
    state: str = "s",
    k: float = 0.7,
) -> InferenceSnapshot:
    return InferenceSnapshot(
        t=t,
        state=state,
        predicted=predicted,
        probs=probs,
        verdict=verdict_for(probs, k),
        truth=truth,
    )


def _trace(key: str, truth: str, snapshots: list[InferenceSnapshot]) -> InferenceTrace:
    trace = InferenceTrace(key=key, truth=truth)
    for snapshot in snapshots:
        trace.append(snapshot)
    return trace


@pytest.fixture(scope="module")
def nominal_bundle(snap_corpus, snap_thresholds):
    """State classifier trained on the nominal snap trials."""
    nominal = [trial for trial in snap_corpus if trial.outcome == "nominal"]
    config = PipelineConfig(thresholds=snap_thresholds)
    _, features = encode_corpus(nominal, config, Regime.NOMINAL)
    model = SvmClassifier(kernel="rbf", C=10.0, probability=True)
    model.fit(features.values, features.labels)
    return ModelBundle(model=model, layout=features.layout)


class TestVerdicts:
    """Test thresholded verdicts."""

    @pytest.mark.parametrize(
        ("top", "expected"),
        [
            (0.49, Verdict.INADMISSIBLE),
            (0.50, Verdict.UNCERTAIN),
            (0.70, Verdict.UNCERTAIN),
            (0.71, Verdict.CERTAIN),
        ],
    )
    def test_boundaries(self, top, expected):
        """Test 0.5 is admissible and k itself is still uncertain."""
        assert verdict_for([top, 1.0 - top], 0.70) is expected

    @pytest.mark.parametrize("k", [0.49, 1.0, 1.2])
    def test_invalid_threshold(self, k):
        """Test thresholds outside [0.5, 1) are rejected."""
        with pytest.raises(ValidationError):
            check_threshold(k)

    def test_valid_threshold(self):
        """Test the lower bound is included."""
        assert check_threshold(0.5) == 0.5

    def test_random_probabilities_partition(self):
        """Test every probability vector gets exactly the band of its top value."""
        rng = np.random.default_rng(5)
        seen = set()
        for _ in range(10_000):
            n_classes = int(rng.integers(2, 6))
            probs = rng.dirichlet(np.ones(n_classes))
            k = float(rng.choice(DEFAULT_CONFIDENCE_THRESHOLDS))
            top = probs.max()

            verdict = verdict_for(probs, k)

            if top < 0.5:
                assert verdict is Verdict.INADMISSIBLE
            elif top <= k:
                assert verdict is Verdict.UNCERTAIN
            else:
                assert verdict is Verdict.CERTAIN
            seen.add(verdict)
        assert seen == set(Verdict)

    @pytest.mark.parametrize("k", DEFAULT_CONFIDENCE_THRESHOLDS)
    def test_exact_boundaries(self, k):
        """Test a top of exactly 0.5 or exactly k is uncertain."""
        assert verdict_for([0.5, 0.5], k) is Verdict.UNCERTAIN
        assert verdict_for(np.array([k, 1.0 - k]), k) is Verdict.UNCERTAIN
        assert verdict_for(np.array([np.nextafter(k, 1.0), 0.0]), k) is Verdict.CERTAIN


class TestTickClock:
    """Test the fixed-rate tick schedule."""

    def test_due_ticks(self):
        """Test ticks are yielded once as time passes them."""
        clock = TickClock(10, t0=1.0)

        assert list(clock.due(1.25)) == pytest.approx([1.1, 1.2])
        assert list(clock.due(1.28)) == []
        assert list(clock.due(1.35)) == pytest.approx([1.3])

    def test_unsupported_rate(self):
        """Test only the supported tick rates are accepted."""
        with pytest.raises(ValidationError):
            TickClock(5)


class TestInferenceTrace:
    """Test traces of one (sub)task."""

    def test_counts(self):
        """Test certain-and-correct ticks at several thresholds."""
        trace = _trace(
            "t/s",
            "a",
            [
                _snapshot(0.1, (0.6, 0.4)),
                _snapshot(0.2, (0.8, 0.2)),
                _snapshot(0.3, (0.9, 0.1), predicted="b"),
                _snapshot(0.4, (0.95, 0.05)),
            ],
        )

        assert trace.length == 4
        assert trace.certain_count(0.7) == 2
        assert trace.certain_count(0.85) == 1
        assert trace.final_correct

    def test_out_of_order(self):
        """Test snapshots must not go back in time."""
        trace = _trace("t", "a", [_snapshot(0.2, (0.9, 0.1))])

        with pytest.raises(ValidationError):
            trace.append(_snapshot(0.1, (0.9, 0.1)))

    def test_snapshot_dict(self):
        """Test snapshots serialize their verdict and correctness."""
        data = _snapshot(0.1, (0.2, 0.8), predicted="b").to_dict()

        assert data["verdict"] == "certain"
        assert data["correct"] is False
        assert data["probs"] == [0.2, 0.8]


class TestMetrics:
    """Test overall probability and the m metric."""

    def test_overall_probability(self):
        """Test wrong predictions contribute zero."""
        snapshots = [
            _snapshot(0.1, (0.9, 0.1)),
            _snapshot(0.2, (0.6, 0.4), predicted="b"),
        ]

        assert overall_probability(snapshots) == pytest.approx(0.45)
        assert overall_probability([_trace("t", "a", snapshots)]) == pytest.approx(0.45)

    def test_overall_probability_empty(self):
        """Test an empty snapshot set is an error."""
        with pytest.raises(EmptyTraceError) as exc_info:
            overall_probability([])
        assert exc_info.value.exit_code == 61

    @pytest.mark.parametrize(
        ("count", "length", "expected"),
        [
            (19.07, 60.26, 0.95),
            (1.33, 38.89, 0.10),
            (4.89, 41.07, 0.36),
            (39.20, 173.96, 0.68),
            (23.15, 312.17, 0.22),
            (7.50, 127.33, 0.18),
            (10.0, 10.0, 3.0),
        ],
        ids=[
            "approach",
            "rotation",
            "insertion",
            "mating",
            "success",
            "abnormal",
            "always-certain",
        ],
    )
    def test_m_from_counts(self, count, length, expected):
        """Test m reproduces reported mean C, length and m triples."""
        assert metric_m_from_counts(count, length) == pytest.approx(expected, abs=0.01)

    def test_m_needs_length(self):
        """Test a zero-length task has no m."""
        with pytest.raises(EmptyTraceError):
            metric_m_from_counts(1.0, 0.0)
        with pytest.raises(EmptyTraceError):
            metric_m(InferenceTrace(key="t", truth="a"), 0.7)

    def test_m_of_trace(self):
        """Test a trace certain and correct on every tick scores 3."""
        trace = _trace("t", "a", [_snapshot(t, (0.9, 0.1)) for t in (0.1, 0.2, 0.3)])

        assert metric_m(trace, 0.7) == pytest.approx(3.0)


class TestReports:
    """Test per-class confidence reports."""

    def test_statistics(self):
        """Test C, length and m statistics per class and threshold."""
        traces = [
            _trace("t1/a", "a", [_snapshot(0.1 * i, (0.9, 0.1)) for i in range(3)]),
            _trace(
                "t2/a",
                "a",
                [_snapshot(0.1 * i, (0.6, 0.4)) for i in range(5)]
                + [_snapshot(0.5, (0.9, 0.1), predicted="b")],
            ),
            _trace("t1/b", "b", [_snapshot(0.1, (0.8, 0.2), predicted="b", truth="b")]),
        ]

        reports = build_reports(traces, [0.7], Regime.NOMINAL)

        assert [r.class_label for r in reports] == ["a", "b"]
        a = reports[0]
        assert (a.c_min, a.c_mean, a.c_max) == (0.0, 1.5, 3.0)
        assert a.avg_length == 4.5
        assert a.m_mean == pytest.approx(1.0)
        assert a.m_max == pytest.approx(2.0)
        assert a.accuracy == 0.5
        assert a.n_traces == 2
        assert reports[1].accuracy == 1.0
        assert reports[1].class_prob == pytest.approx(0.8)
        assert list(reports[0].to_row()) == REPORT_COLUMNS

    def test_one_row_per_threshold_and_class(self):
        """Test thresholds multiply the report rows."""
        traces = [_trace("t", "a", [_snapshot(0.1, (0.9, 0.1))])]

        reports = build_reports(traces, [0.7, 0.8, 0.95])

        assert [r.k for r in reports] == [0.7, 0.8, 0.95]

    def test_empty_traces(self):
        """Test reports need at least one snapshot."""
        with pytest.raises(EmptyTraceError):
            build_reports([InferenceTrace(key="t", truth="a")], [0.7])

    def test_traces_from_snapshots(self):
        """Test nominal traces split by state and abnormality traces do not."""
        snapshots = [
            _snapshot(0.1, (0.9, 0.1), state="approach", truth="approach"),
            _snapshot(0.2, (0.9, 0.1), state="approach", truth="approach"),
            _snapshot(0.3, (0.9, 0.1), state="insertion", truth="insertion"),
        ]

        nominal = traces_from_snapshots("t1", snapshots, Regime.NOMINAL)
        abnormal = traces_from_snapshots("t1", snapshots, Regime.ABNORMALITY)

        assert [(t.key, t.length) for t in nominal] == [
            ("t1/approach", 2),
            ("t1/insertion", 1),
        ]
        assert [(t.key, t.length) for t in abnormal] == [("t1", 3)]


class TestGrammarSampler:
    """Test per-tick classification of evolving grammars."""

    def test_requires_layout(self, nominal_bundle):
        """Test a model file without a layout cannot sample."""
        with pytest.raises(ModelMismatchError) as exc_info:
            GrammarSampler(ModelBundle(model=nominal_bundle.model))
        assert exc_info.value.exit_code == 60

    def test_requires_single_arm(self, nominal_bundle):
        """Test two-arm layouts are rejected online."""
        layout = nominal_bundle.layout
        lengths = dict(layout.lengths)
        lengths.update(
            {("left", state, layer): n for (_, state, layer), n in layout.lengths.items()}
        )
        two_arm = FeatureLayout(
            regime=layout.regime,
            arms=("left", "right"),
            states=layout.states,
            lengths=lengths,
        )

        with pytest.raises(ModelMismatchError):
            GrammarSampler(ModelBundle(model=nominal_bundle.model, layout=two_arm))

    def test_requires_probabilities(self, nominal_bundle):
        """Test models without probability estimates are rejected."""
        model = SvmClassifier.from_dict(nominal_bundle.model.to_dict())
        model.sigmoids = []

        with pytest.raises(ModelMismatchError):
            GrammarSampler(ModelBundle(model=model, layout=nominal_bundle.layout))

    def test_classification_cached_per_version(
        self, nominal_bundle, snap_corpus, snap_config
    ):
        """Test unchanged grammar versions reuse the last classification."""
        result = run_online(snap_corpus[0], snap_config.online())
        sampler = GrammarSampler(nominal_bundle)

        first = sampler.classify(result.grammar, "approach", [], version=3)
        second = sampler.classify(result.grammar, "approach", [], version=3)
        sampler.classify(result.grammar, "approach", [], version=-1)

        assert first == second
        assert sampler.classifications == 2
        assert first[0] in nominal_bundle.model.classes_
        assert sum(first[1]) == pytest.approx(1.0)

    def test_arm_mismatch(self, nominal_bundle, snap_corpus, snap_config):
        """Test grammars of another arm are rejected."""
        result = run_online(snap_corpus[0], snap_config.online())
        result.grammar.arm_id = "left"

        with pytest.raises(ModelMismatchError):
            GrammarSampler(nominal_bundle).classify(result.grammar, "approach", [])


class TestOnlineEvaluation:
    """Test replaying trials through a trained model."""

    def test_snapshots_interleaved(self, nominal_bundle, snap_corpus, snap_config):
        """Test ticks at the configured rate plus one final tick per state."""
        trial = snap_corpus[0]

        result = run_online(trial, snap_config.online(), nominal_bundle)

        snapshots = result.snapshots
        finals = [s for s in snapshots if s.final]
        assert [s.state for s in finals] == trial.state_ids
        assert all(s.truth == s.state for s in snapshots)
        times = [s.t for s in snapshots]
        assert times == sorted(times)
        duration = trial.t_last - trial.t_first
        ticks = len(snapshots) - len(finals)
        assert ticks == int(np.floor(duration * snap_config.rate_hz + 1e-9))

    def test_evaluate(self, tmp_path, nominal_bundle, snap_corpus, snap_config):
        """Test evaluation reports every class and writes CSV plus metadata."""
        trials = snap_corpus[:2]

        result = evaluate_online(trials, nominal_bundle, snap_config, [0.7, 0.9])

        assert len(result.reports) == 2 * len(trials[0].state_ids)
        assert len(result.traces) == 2 * len(trials[0].state_ids)
        assert all(0.0 <= r.accuracy <= 1.0 for r in result.reports)
        path = tmp_path / "report.csv"
        result.to_csv(path)
        assert path.read_text().splitlines()[0] == ",".join(REPORT_COLUMNS)
        metadata = json.loads(path.with_suffix(".json").read_text())
        assert metadata["rate_hz"] == 10
        assert metadata["thresholds"] == [0.7, 0.9]

    def test_empty_corpus(self, nominal_bundle, snap_config):
        """Test evaluating nothing is an error."""
        with pytest.raises(EmptyCorpusError) as exc_info:
            evaluate_online([], nominal_bundle, snap_config)
        assert exc_info.value.exit_code == 62
