"""Thresholded interpretation of class probabilities."""

from collections.abc import Sequence
from enum import Enum

import numpy as np

from ..models.exceptions import ValidationError

ADMISSIBLE_PROBABILITY = 0.5
DEFAULT_CONFIDENCE_THRESHOLDS = (0.70, 0.75, 0.80, 0.85, 0.90, 0.95)


class Verdict(str, Enum):
    INADMISSIBLE = "inadmissible"
    UNCERTAIN = "uncertain"
    CERTAIN = "certain"


def check_threshold(k: float) -> float:
    """Validate a confidence threshold ``k`` in [0.5, 1)."""
    if not ADMISSIBLE_PROBABILITY <= k < 1.0:
        raise ValidationError(
            f"Confidence threshold {k} must lie in [0.5, 1)",
            field_name="k",
            field_value=k,
        )
    return float(k)


def verdict_for(probabilities: Sequence[float] | np.ndarray, k: float) -> Verdict:
    """Verdict of the top class probability.

    Below 0.5 is inadmissible, from 0.5 up to and including ``k`` uncertain,
    above ``k`` certain.
    """
    top = float(np.max(probabilities))
    if top < ADMISSIBLE_PROBABILITY:
        return Verdict.INADMISSIBLE
    if top <= k:
        return Verdict.UNCERTAIN
    return Verdict.CERTAIN
