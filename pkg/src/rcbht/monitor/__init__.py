"""Online introspection: tick sampling, verdicts and confidence metrics.

Corpus replay lives in :mod:`rcbht.monitor.evaluation`, which depends on the
online pipeline.
"""

from .metrics import metric_m, metric_m_from_counts, overall_probability
from .sampler import GrammarSampler, InferenceSnapshot, InferenceTrace, TickClock
from .verdicts import (
    DEFAULT_CONFIDENCE_THRESHOLDS,
    Verdict,
    check_threshold,
    verdict_for,
)

__all__ = [
    "DEFAULT_CONFIDENCE_THRESHOLDS",
    "GrammarSampler",
    "InferenceSnapshot",
    "InferenceTrace",
    "TickClock",
    "Verdict",
    "check_threshold",
    "metric_m",
    "metric_m_from_counts",
    "overall_probability",
    "verdict_for",
]
