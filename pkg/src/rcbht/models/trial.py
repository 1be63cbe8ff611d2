"""Wrench trials and their state segments."""

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np

from .exceptions import (
    MalformedRecordError,
    MissingTransitionsError,
    NonMonotoneTimeError,
    ValidationError,
)
from .labels import AXES

SNAP_STATES: tuple[str, ...] = ("approach", "rotation", "insertion", "mating")


class Outcome(str, Enum):
    """Trial outcome."""

    NOMINAL = "nominal"
    ABNORMAL = "abnormal"


class WrenchSample(NamedTuple):
    """One time-stamped 6-axis wrench reading (N and N·m)."""

    t: float
    fx: float
    fy: float
    fz: float
    tx: float
    ty: float
    tz: float


@dataclass(eq=False)
class WrenchTrial:
    """A recorded or synthetic trial of one arm.

    ``times`` has shape (n,) and ``wrench`` has shape (n, 6) in the axis order
    fx, fy, fz, tx, ty, tz. ``transitions`` lists ``(state_id, t_start)`` pairs.
    """

    times: np.ndarray
    wrench: np.ndarray
    rate_hz: float
    transitions: tuple[tuple[str, float], ...]
    outcome: str = Outcome.NOMINAL.value
    arm_id: str = "right"
    trial_key: str = ""
    states: tuple[str, ...] | None = None
    ground_truth: dict[str, list[float]] | None = None
    source: Path | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.wrench = np.asarray(self.wrench, dtype=float)
        self.transitions = tuple((str(s), float(t)) for s, t in self.transitions)
        self.outcome = Outcome(self.outcome).value
        self.validate()

    def validate(self) -> None:
        """Check shape, finiteness, time order and transitions.

        Raises:
            MalformedRecordError: On bad shapes or non-finite values
            NonMonotoneTimeError: If times are not strictly increasing
            MissingTransitionsError: If there are no transitions
            ValidationError: On transitions outside the trial or out of order
        """
        path = str(self.source) if self.source else None

        if self.times.ndim != 1 or self.wrench.shape != (len(self.times), len(AXES)):
            raise MalformedRecordError(
                f"Expected times (n,) and wrench (n, 6), got {self.times.shape} "
                f"and {self.wrench.shape}",
                path=path,
            )
        if len(self.times) == 0:
            raise MalformedRecordError("Trial has no samples", path=path)

        bad_rows = np.flatnonzero(
            ~np.isfinite(self.times) | ~np.isfinite(self.wrench).all(axis=1)
        )
        if len(bad_rows):
            raise MalformedRecordError(
                "Trial contains non-finite values", path=path, row=int(bad_rows[0])
            )
        if self.times[0] < 0:
            raise MalformedRecordError("Timestamps must be >= 0", path=path, row=0)

        # Row of the first sample that fails to advance
        steps = np.flatnonzero(np.diff(self.times) <= 0)
        if len(steps):
            raise NonMonotoneTimeError(path=path, row=int(steps[0]) + 1)

        if not self.transitions:
            raise MissingTransitionsError(path=path)

        starts = [t for _, t in self.transitions]
        if any(b < a for a, b in zip(starts, starts[1:], strict=False)):
            raise ValidationError(
                "State transitions are not time-ordered",
                field_name="transitions",
                context={"path": path} if path else None,
            )
        # The first state may start a hair before the first sample
        if starts[0] < self.t_first - 1e-9 or starts[-1] > self.t_last:
            raise ValidationError(
                f"Transitions must lie within [{self.t_first}, {self.t_last}]",
                field_name="transitions",
                field_value=starts,
            )
        if self.states is not None:
            unknown = [s for s, _ in self.transitions if s not in self.states]
            if unknown:
                raise ValidationError(
                    f"Unknown state ids: {', '.join(unknown)}",
                    field_name="transitions",
                    suggestions=[f"Known states: {', '.join(self.states)}"],
                )

    @property
    def n_samples(self) -> int:
        return len(self.times)

    @property
    def t_first(self) -> float:
        return float(self.times[0])

    @property
    def t_last(self) -> float:
        return float(self.times[-1])

    @property
    def state_ids(self) -> list[str]:
        return [state for state, _ in self.transitions]

    @property
    def key(self) -> str:
        """Key shared by the arms of one two-arm trial."""
        if self.trial_key:
            return self.trial_key
        return self.source.stem if self.source else ""

    def axis(self, name: str) -> np.ndarray:
        """Samples of one wrench axis."""
        return self.wrench[:, AXES.index(name)]

    def samples(self) -> Iterator[WrenchSample]:
        """Iterate over samples in time order."""
        for t, row in zip(self.times, self.wrench, strict=True):
            yield WrenchSample(float(t), *(float(v) for v in row))

    def sidecar(self) -> dict[str, Any]:
        """Metadata written next to the trial CSV."""
        data: dict[str, Any] = {
            "rate_hz": self.rate_hz,
            "outcome": self.outcome,
            "arm_id": self.arm_id,
            "transitions": [[state, t] for state, t in self.transitions],
        }
        if self.trial_key:
            data["trial_key"] = self.trial_key
        if self.states is not None:
            data["states"] = list(self.states)
        if self.ground_truth is not None:
            data["ground_truth"] = self.ground_truth
        return data

    def __repr__(self) -> str:
        return (
            f"WrenchTrial(key='{self.key}', arm='{self.arm_id}', "
            f"samples={self.n_samples}, states={self.state_ids}, "
            f"outcome='{self.outcome}')"
        )


@dataclass(eq=False)
class StateSegment:
    """Contiguous slice of a trial belonging to one state.

    The slice spans ``[t_start, t_end)``; the last segment of a trial also
    contains the final sample.
    """

    state_id: str
    times: np.ndarray
    wrench: np.ndarray
    t_start: float
    t_end: float

    @property
    def n_samples(self) -> int:
        return len(self.times)

    def axis(self, name: str) -> np.ndarray:
        return self.wrench[:, AXES.index(name)]

    def __repr__(self) -> str:
        return (
            f"StateSegment(state='{self.state_id}', samples={self.n_samples}, "
            f"span=[{self.t_start:.3f}, {self.t_end:.3f}))"
        )
