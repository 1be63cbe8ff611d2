"""Temporal confidence metrics over inference traces."""

from collections.abc import Iterable

from ..models.exceptions import EmptyTraceError
from .sampler import InferenceSnapshot, InferenceTrace


def overall_probability(
    snapshots: Iterable[InferenceSnapshot] | Iterable[InferenceTrace],
) -> float:
    """Mean probability of correct classifications: ``sum(P_i * b_i) / n``.

    ``P_i`` is the top probability of snapshot ``i`` and ``b_i`` is 1 when its
    prediction matches the ground truth. Traces are flattened to snapshots.

    Raises:
        EmptyTraceError: If there are no snapshots
    """
    flat: list[InferenceSnapshot] = []
    for item in snapshots:
        if isinstance(item, InferenceTrace):
            flat.extend(item.snapshots)
        else:
            flat.append(item)
    if not flat:
        raise EmptyTraceError()
    return sum(s.probability for s in flat if s.correct) / len(flat)


def metric_m_from_counts(certain_count: float, length: float) -> float:
    """``m = C / (L / 3)``.

    Raises:
        EmptyTraceError: If ``length`` is not positive
    """
    if not length > 0:
        raise EmptyTraceError(context={"length": length})
    return certain_count / (length / 3.0)


def metric_m(trace: InferenceTrace, k: float) -> float:
    """Certain-and-correct ticks over one third of the task length.

    Values above 1 mean confidence held for longer than a third of the task;
    3 means every tick was certain and correct.

    Raises:
        EmptyTraceError: If the trace has no snapshots
    """
    if not trace.length:
        raise EmptyTraceError(context={"trace": trace.key})
    return metric_m_from_counts(trace.certain_count(k), trace.length)
