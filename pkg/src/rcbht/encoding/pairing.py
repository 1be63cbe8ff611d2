"""Disjoint consecutive pairing between layers.

Labels pair as (1, 2), (3, 4), ...; an odd trailing label at end of state is
paired with itself.
"""

from collections.abc import Callable, Sequence

from ..models.labels import TaggedLabel

Combine = Callable[[TaggedLabel, TaggedLabel], TaggedLabel]


def pair_labels(labels: Sequence[TaggedLabel], combine: Combine) -> list[TaggedLabel]:
    """Pair a complete state's labels.

    An odd trailing label is combined with itself, so it still yields a
    composed label rather than an UNSTABLE singleton.
    """
    paired = [combine(labels[i], labels[i + 1]) for i in range(0, len(labels) - 1, 2)]
    if len(labels) % 2:
        paired.append(combine(labels[-1], labels[-1]))
    return paired


class PairBuffer:
    """Streaming counterpart of :func:`pair_labels`."""

    def __init__(self, combine: Combine) -> None:
        self.combine = combine
        self._held: TaggedLabel | None = None

    @property
    def holding(self) -> bool:
        return self._held is not None

    def push(self, label: TaggedLabel) -> TaggedLabel | None:
        if self._held is None:
            self._held = label
            return None
        first, self._held = self._held, None
        return self.combine(first, label)

    def flush(self) -> TaggedLabel | None:
        if self._held is None:
            return None
        single, self._held = self._held, None
        return self.combine(single, single)
