"""Calibrated gradient thresholds."""

import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from ..utils.config import read_json_document, write_json_document
from .exceptions import ConfigurationError, ValidationError
from .labels import AXES


@dataclass(frozen=True)
class GradientThresholds:
    """Cut points partitioning |slope| into constant, small, medium, big and impulse.

    Negative slopes use the same cut points mirrored.
    """

    eps_const: float
    cut_small: float
    cut_medium: float
    cut_large: float

    def __post_init__(self) -> None:
        values = (self.eps_const, self.cut_small, self.cut_medium, self.cut_large)
        if not all(math.isfinite(v) for v in values):
            raise ValidationError(
                "Gradient thresholds must be finite", field_value=values
            )
        if not 0 < self.eps_const < self.cut_small < self.cut_medium < self.cut_large:
            raise ValidationError(
                "Gradient thresholds must satisfy "
                "0 < eps_const < cut_small < cut_medium < cut_large",
                field_value=values,
            )

    def to_dict(self) -> dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GradientThresholds":
        return cls(
            eps_const=float(data["eps_const"]),
            cut_small=float(data["cut_small"]),
            cut_medium=float(data["cut_medium"]),
            cut_large=float(data["cut_large"]),
        )


@dataclass(frozen=True)
class TaskThresholds:
    """Per-axis thresholds calibrated for one task."""

    task: str
    axes: dict[str, GradientThresholds]

    def __getitem__(self, axis: str) -> GradientThresholds:
        return self.axes[axis]

    def to_dict(self) -> dict[str, Any]:
        return {
            "task": self.task,
            "axes": {axis: self.axes[axis].to_dict() for axis in AXES if axis in self.axes},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TaskThresholds":
        try:
            axes = {
                axis: GradientThresholds.from_dict(values)
                for axis, values in data["axes"].items()
            }
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(
                f"Malformed thresholds document: {e}",
                suggestions=["Regenerate thresholds with 'rcbht calibrate'"],
                original_error=e,
            ) from None

        missing = [axis for axis in AXES if axis not in axes]
        if missing:
            raise ConfigurationError(
                f"Thresholds document lacks axes: {', '.join(missing)}",
                suggestions=["Regenerate thresholds with 'rcbht calibrate'"],
            )
        return cls(task=str(data.get("task", "task")), axes=axes)

    def save(self, path: Path) -> None:
        write_json_document(path, self.to_dict())

    @classmethod
    def load(cls, path: Path) -> "TaskThresholds":
        document = read_json_document(path)
        return cls.from_dict(document)
