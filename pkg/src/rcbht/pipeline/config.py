"""Pipeline settings shared by offline and online runs."""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

from ..encoding.filterpipe import DEFAULT_MERGE_RATIO
from ..encoding.primitives import DEFAULT_WINDOW_SECONDS, window_length
from ..models.exceptions import ValidationError
from ..models.thresholds import TaskThresholds
from ..utils.config import SEGMENTATION_MODES, TICK_RATES


class Mode(str, Enum):
    OFFLINE = "offline"
    ONLINE = "online"


@dataclass(frozen=True)
class PipelineConfig:
    """Encoding settings for one task.

    ``window`` fixes the primitive window in samples; when unset it is derived
    from ``window_seconds`` and each trial's sampling rate. ``rate_hz`` is the
    tick rate of online introspection.
    """

    thresholds: TaskThresholds
    window: int | None = None
    window_seconds: float = DEFAULT_WINDOW_SECONDS
    merge_ratio: float = DEFAULT_MERGE_RATIO
    mode: Mode = Mode.OFFLINE
    rate_hz: int = 10
    segmentation: str = "fixed"
    r2_threshold: float = 0.70

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.window is not None and self.window < 2:
            raise ValidationError(
                "Primitive window must hold at least 2 samples",
                field_name="window",
                field_value=self.window,
            )
        if not self.window_seconds > 0:
            raise ValidationError(
                "window_seconds must be positive",
                field_name="window_seconds",
                field_value=self.window_seconds,
            )
        if not self.merge_ratio > 1:
            raise ValidationError(
                "Merge ratio must be greater than 1",
                field_name="merge_ratio",
                field_value=self.merge_ratio,
            )
        if self.rate_hz not in TICK_RATES:
            raise ValidationError(
                f"Tick rate must be one of {TICK_RATES} Hz",
                field_name="rate_hz",
                field_value=self.rate_hz,
            )
        if self.segmentation not in SEGMENTATION_MODES:
            raise ValidationError(
                f"Segmentation must be one of {SEGMENTATION_MODES}",
                field_name="segmentation",
                field_value=self.segmentation,
            )
        if self.segmentation == "adaptive" and self.mode is Mode.ONLINE:
            raise ValidationError(
                "Adaptive segmentation needs the whole state and is offline only",
                field_name="segmentation",
                suggestions=["Use fixed segmentation for online runs"],
            )

    def window_for(self, sample_rate_hz: float) -> int:
        """Primitive window in samples for a trial sampled at ``sample_rate_hz``."""
        if self.window is not None:
            return self.window
        return window_length(sample_rate_hz, self.window_seconds)

    def online(self) -> "PipelineConfig":
        """Same settings in online mode, with fixed windows."""
        return replace(self, mode=Mode.ONLINE, segmentation="fixed")

    @classmethod
    def from_settings(
        cls, settings: dict[str, Any], thresholds: TaskThresholds, **overrides: Any
    ) -> "PipelineConfig":
        """Build from resolved ConfigManager settings."""
        values: dict[str, Any] = {
            "window_seconds": float(
                settings.get("window_seconds", DEFAULT_WINDOW_SECONDS)
            ),
            "merge_ratio": float(settings.get("merge_ratio", DEFAULT_MERGE_RATIO)),
            "rate_hz": int(settings.get("rate_hz", 10)),
            "segmentation": settings.get("segmentation", "fixed"),
            "r2_threshold": float(settings.get("r2_threshold", 0.70)),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(thresholds=thresholds, **values)
