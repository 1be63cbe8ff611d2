"""Between-layer filter pipes.

A pipe accepts labels of one (layer, axis) in time order, merges repeated
symbols and absorbs negligible labels into an adjacent neighbor, and fires
labels once they drop out of the pipe's lookback.

Merge rules, checked in this order when a settled label meets the newest
label held before it:

* repeat: identical symbols merge (span union, larger amplitude);
* absorb backward: the predecessor swallows the label when its amplitude is
  at least ``ratio`` times the label's amplitude and its duration at least
  ``ratio`` times the label's duration;
* absorb forward: the label swallows the predecessor under the same test.

A merged label is checked again against the label held before it, so merges
cascade back over everything the pipe still holds. A label is only checked
once its successor has arrived (or at flush), so a run of repeats is judged
as a whole.

``hold`` bounds the lookback: a pipe keeps at most that many settled labels
and fires older ones, which are final. With ``hold=None`` nothing fires
before flush and the output is an exact fixpoint of the merge rules.
"""

import logging
from collections.abc import Iterable

from ..models.exceptions import OutOfOrderError, ValidationError
from ..models.labels import Layer, TaggedLabel

logger = logging.getLogger(__name__)

DEFAULT_MERGE_RATIO = 5.0
# Two settled labels: a forward merge can still meet its predecessor's neighbor.
DEFAULT_HOLD = 2


def absorbs(keeper: TaggedLabel, label: TaggedLabel, ratio: float) -> bool:
    """Whether ``keeper`` is at least ``ratio`` times larger and longer than ``label``.

    A zero-amplitude label satisfies the amplitude condition.
    """
    amplitude_ok = label.amplitude == 0.0 or keeper.amplitude >= ratio * label.amplitude
    return amplitude_ok and keeper.duration >= ratio * label.duration


def merge_step(
    previous: TaggedLabel, label: TaggedLabel, ratio: float
) -> TaggedLabel | None:
    """The label that replaces an adjacent pair, or None when both stay."""
    # The predecessor keeps its place when both could absorb.
    if previous.symbol == label.symbol or absorbs(previous, label, ratio):
        return previous.merged_with(label)
    if absorbs(label, previous, ratio):
        return label.merged_with(previous)
    return None


class FilterPipe:
    """Streaming reduction stage for one (layer, axis)."""

    def __init__(
        self,
        layer: Layer,
        axis: str | None = None,
        ratio: float = DEFAULT_MERGE_RATIO,
        hold: int | None = DEFAULT_HOLD,
    ) -> None:
        if ratio <= 1:
            raise ValidationError(
                "Merge ratio must be greater than 1",
                field_name="merge_ratio",
                field_value=ratio,
            )
        if hold is not None and hold < 1:
            raise ValidationError(
                "Filter hold must be at least one label",
                field_name="hold",
                field_value=hold,
            )
        self.layer = Layer(layer)
        self.axis = axis
        self.ratio = ratio
        self.hold = hold
        self._kept: list[TaggedLabel] = []
        self._tail: TaggedLabel | None = None
        self.pushed = 0
        self.fired = 0

    @property
    def pending(self) -> list[TaggedLabel]:
        """Labels held in the pipe, oldest first."""
        return [*self._kept, *([self._tail] if self._tail is not None else [])]

    def push(self, label: TaggedLabel) -> list[TaggedLabel]:
        """Accept one label and return the labels that are now settled.

        Raises:
            OutOfOrderError: If the label belongs to another layer or axis, or
                starts before the pipe's newest label ends
        """
        self._check(label)
        self.pushed += 1

        if self._tail is None:
            self._tail = label.as_tagged()
        elif label.symbol == self._tail.symbol:
            # Repeats grow the tail until another symbol arrives.
            self._tail = self._tail.merged_with(label)
        else:
            self._settle_tail()
            self._tail = label.as_tagged()

        return self._fire(keep=self.hold)

    def extend(self, labels: Iterable[TaggedLabel]) -> list[TaggedLabel]:
        fired: list[TaggedLabel] = []
        for label in labels:
            fired.extend(self.push(label))
        return fired

    def flush(self) -> list[TaggedLabel]:
        """Settle everything held and return it; the pipe is empty afterwards."""
        if self._tail is not None:
            self._settle_tail()
            self._tail = None
        return self._fire(keep=0)

    def _settle_tail(self) -> None:
        assert self._tail is not None
        label = self._tail
        while self._kept:
            merged = merge_step(self._kept[-1], label, self.ratio)
            if merged is None:
                break
            # The merged label now borders the one held before it.
            self._kept.pop()
            label = merged
        self._kept.append(label)

    def _fire(self, keep: int | None) -> list[TaggedLabel]:
        if keep is None:
            return []
        cut = max(0, len(self._kept) - keep)
        fired, self._kept = self._kept[:cut], self._kept[cut:]
        if fired:
            self.fired += len(fired)
            logger.debug(
                f"{self.layer.value}/{self.axis} fired {[f.symbol for f in fired]}"
            )
        return fired

    def _check(self, label: TaggedLabel) -> None:
        if label.layer is not self.layer:
            raise OutOfOrderError(
                f"{label.layer.value} label pushed into a {self.layer.value} pipe",
                axis=label.axis,
            )
        if self.axis is None:
            self.axis = label.axis
        elif label.axis != self.axis:
            raise OutOfOrderError(
                f"Label from axis {label.axis} pushed into the {self.axis} pipe",
                axis=label.axis,
            )
        newest = self._tail
        if newest is not None and label.t_start < newest.t_end:
            raise OutOfOrderError(
                f"Label starting at {label.t_start} precedes the pipe tail ending "
                f"at {newest.t_end}",
                axis=label.axis,
            )


def filter_labels(
    labels: Iterable[TaggedLabel],
    ratio: float = DEFAULT_MERGE_RATIO,
    hold: int | None = DEFAULT_HOLD,
) -> list[TaggedLabel]:
    """Filter a whole label sequence of one (layer, axis) at once.

    The default hold gives the labels a streaming pipe would fire.
    """
    materialized = list(labels)
    if not materialized:
        return []
    pipe = FilterPipe(materialized[0].layer, materialized[0].axis, ratio, hold)
    return [*pipe.extend(materialized), *pipe.flush()]
