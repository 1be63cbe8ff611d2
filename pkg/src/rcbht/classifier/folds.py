"""Seeded stratified fold assignment."""

from collections.abc import Sequence

import numpy as np

from ..models.exceptions import TooFewSamplesPerClassError, ValidationError


def stratified_folds(
    labels: Sequence[object], folds: int = 5, seed: int = 0
) -> list[np.ndarray]:
    """Split sample indices into ``folds`` test sets holding every class.

    Each class is shuffled with a generator seeded by ``seed`` and dealt
    round-robin over the folds; the deal continues across classes so fold
    sizes differ by at most one.

    Returns:
        Sorted test indices per fold

    Raises:
        TooFewSamplesPerClassError: If a class has fewer samples than folds
        ValidationError: If fewer than two folds are requested
    """
    if folds < 2:
        raise ValidationError(
            "Cross-validation needs at least two folds",
            field_name="folds",
            field_value=folds,
        )
    labels = list(labels)
    rng = np.random.default_rng(seed)
    buckets: list[list[int]] = [[] for _ in range(folds)]
    # Shared across classes so fold sizes stay within one
    cursor = 0
    # Classes are dealt in sorted order
    for label in sorted(set(labels), key=str):
        members = np.flatnonzero(np.array([x == label for x in labels]))
        if len(members) < folds:
            raise TooFewSamplesPerClassError(
                f"Class '{label}' has {len(members)} samples for {folds} folds",
                class_label=str(label),
            )
        for index in rng.permutation(members):
            buckets[cursor % folds].append(int(index))
            cursor += 1
    return [np.array(sorted(bucket), dtype=np.int64) for bucket in buckets]
