"""Online replay of a corpus and per-class confidence reports."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from ..classifier.persistence import ModelBundle
from ..features.matrix import Regime
from ..models.exceptions import EmptyCorpusError, ModelMismatchError
from ..models.trial import WrenchTrial
from ..pipeline.config import PipelineConfig
from ..pipeline.online import run_online
from ..utils.config import write_json_document
from .metrics import metric_m_from_counts, overall_probability
from .sampler import InferenceSnapshot, InferenceTrace
from .verdicts import DEFAULT_CONFIDENCE_THRESHOLDS, check_threshold

logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "Type",
    "Thresh",
    "Class",
    "Acc",
    "OverallPr",
    "ClassPr",
    "minC",
    "meanC",
    "maxC",
    "AvgLen",
    "minM",
    "meanM",
    "maxM",
]


@dataclass(frozen=True)
class ConfidenceReport:
    """Statistics of one class at one confidence threshold ``k``."""

    regime: str
    k: float
    class_label: str
    accuracy: float
    overall_prob: float
    class_prob: float
    c_min: float
    c_mean: float
    c_max: float
    avg_length: float
    m_min: float
    m_mean: float
    m_max: float
    n_traces: int = 0

    def to_row(self) -> dict[str, Any]:
        return dict(
            zip(
                REPORT_COLUMNS,
                [
                    self.regime,
                    self.k,
                    self.class_label,
                    self.accuracy,
                    self.overall_prob,
                    self.class_prob,
                    self.c_min,
                    self.c_mean,
                    self.c_max,
                    self.avg_length,
                    self.m_min,
                    self.m_mean,
                    self.m_max,
                ],
                strict=True,
            )
        )


def build_reports(
    traces: Sequence[InferenceTrace],
    thresholds: Sequence[float] = DEFAULT_CONFIDENCE_THRESHOLDS,
    regime: Regime | str = Regime.NOMINAL,
) -> list[ConfidenceReport]:
    """Per-(k, class) statistics over completed traces.

    Accuracy counts (sub)tasks whose final tick is correct. The m statistics
    are the C statistics divided by a third of the average length.

    Raises:
        EmptyTraceError: If no trace holds a snapshot
    """
    regime = Regime(regime)
    # Traces without snapshots carry no statistics
    traces = [trace for trace in traces if trace.length]
    overall = overall_probability(traces)
    # Classes in first-seen order
    classes = list(dict.fromkeys(trace.truth for trace in traces))

    reports = []
    for k in thresholds:
        k = check_threshold(k)
        for label in classes:
            members = [trace for trace in traces if trace.truth == label]
            # Certain and correct ticks per trace
            counts = np.array([t.certain_count(k) for t in members], dtype=float)
            avg_length = float(np.mean([trace.length for trace in members]))
            c_min, c_mean, c_max = (
                float(counts.min()),
                float(counts.mean()),
                float(counts.max()),
            )
            reports.append(
                ConfidenceReport(
                    regime=regime.value,
                    k=k,
                    class_label=label,
                    accuracy=float(np.mean([t.final_correct for t in members])),
                    overall_prob=overall,
                    class_prob=overall_probability(members),
                    c_min=c_min,
                    c_mean=c_mean,
                    c_max=c_max,
                    avg_length=avg_length,
                    m_min=metric_m_from_counts(c_min, avg_length),
                    m_mean=metric_m_from_counts(c_mean, avg_length),
                    m_max=metric_m_from_counts(c_max, avg_length),
                    n_traces=len(members),
                )
            )
    return reports


@dataclass
class EvaluationResult:
    traces: list[InferenceTrace]
    reports: list[ConfidenceReport]
    rate_hz: int
    regime: Regime
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        rows = [report.to_row() for report in self.reports]
        return pd.DataFrame(rows, columns=REPORT_COLUMNS)

    def to_csv(self, path: Path) -> None:
        """Write the report CSV and its metadata next to it as JSON."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        write_json_document(path.with_suffix(".json"), self.metadata)
        logger.info(f"Wrote confidence report to {path}")


def traces_from_snapshots(
    trial_key: str, snapshots: Sequence[InferenceSnapshot], regime: Regime
) -> list[InferenceTrace]:
    """Split one trial's snapshots into (sub)task traces."""
    traces: dict[str, InferenceTrace] = {}
    for snapshot in snapshots:
        if regime is Regime.NOMINAL:
            # One trace per subtask
            key = f"{trial_key}/{snapshot.state}"
        else:
            key = trial_key
        trace = traces.get(key)
        if trace is None:
            trace = traces[key] = InferenceTrace(key=key, truth=snapshot.truth or "")
        trace.append(snapshot)
    return list(traces.values())


def evaluate_online(
    trials: Sequence[WrenchTrial],
    bundle: ModelBundle,
    config: PipelineConfig,
    thresholds: Sequence[float] = DEFAULT_CONFIDENCE_THRESHOLDS,
) -> EvaluationResult:
    """Replay every trial online at ``config.rate_hz`` and report per (class, k).

    Raises:
        EmptyCorpusError: If ``trials`` is empty
        ModelMismatchError: If the model cannot classify the trials' grammars
    """
    if not trials:
        raise EmptyCorpusError()
    if bundle.layout is None:
        raise ModelMismatchError("Model file carries no feature layout")
    # Fall back to the default k sweep
    thresholds = list(thresholds) or list(DEFAULT_CONFIDENCE_THRESHOLDS)
    regime = bundle.layout.regime
    online = config.online()

    traces: list[InferenceTrace] = []
    for trial in trials:
        # Verdicts per k are recomputed from the probabilities later
        result = run_online(trial, online, bundle, k=thresholds[0])
        traces.extend(traces_from_snapshots(trial.key, result.snapshots, regime))
        logger.debug(f"Replayed {trial!r}: {len(result.snapshots)} snapshots")

    reports = build_reports(traces, thresholds, regime)
    logger.info(
        f"Evaluated {len(trials)} trials online at {online.rate_hz} Hz: "
        f"{len(traces)} traces, {len(reports)} report rows"
    )
    return EvaluationResult(
        traces=traces,
        reports=reports,
        rate_hz=online.rate_hz,
        regime=regime,
        metadata={
            "regime": regime.value,
            "rate_hz": online.rate_hz,
            "thresholds": thresholds,
            "trials": len(trials),
            "correctness": "per tick",
            "accuracy": "final tick of each (sub)task",
        },
    )
