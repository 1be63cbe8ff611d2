"""Slicing trials into state segments."""

import numpy as np

from ..models.exceptions import MissingTransitionsError, ValidationError
from ..models.trial import StateSegment, WrenchTrial


def segment_states(trial: WrenchTrial) -> list[StateSegment]:
    """Partition a trial into one segment per transition.

    Segment ``k`` holds the samples with ``t`` in ``[t_k, t_{k+1})``. Samples
    before the first transition belong to the first segment and the last
    segment runs to the end of the trial, so concatenating the segments
    reproduces the trial.

    Raises:
        MissingTransitionsError: If the trial has no transitions
        ValidationError: If a transition leaves a state without samples
    """
    if not trial.transitions:
        raise MissingTransitionsError(path=str(trial.source) if trial.source else None)

    starts = np.array([t for _, t in trial.transitions], dtype=float)
    cuts = np.searchsorted(trial.times, starts[1:], side="left")
    bounds = [0, *(int(c) for c in cuts), trial.n_samples]

    segments: list[StateSegment] = []
    for index, (state_id, t_start) in enumerate(trial.transitions):
        lo, hi = bounds[index], bounds[index + 1]
        if hi <= lo:
            raise ValidationError(
                f"State '{state_id}' has no samples",
                field_name="transitions",
                field_value=t_start,
                suggestions=["Check transition times against the sampled time range"],
            )
        t_end = (
            float(starts[index + 1]) if index + 1 < len(starts) else trial.t_last
        )
        segments.append(
            StateSegment(
                state_id=state_id,
                times=trial.times[lo:hi],
                wrench=trial.wrench[lo:hi],
                t_start=min(float(t_start), float(trial.times[lo])),
                t_end=t_end,
            )
        )
    return segments
