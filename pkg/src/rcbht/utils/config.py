"""Configuration management for rcbht pipelines and calibrated thresholds."""

import json
import logging
import os
from pathlib import Path
from typing import Any

from ..models.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

TICK_RATES = (2, 10, 100)
KERNEL_KINDS = ("linear", "poly", "rbf")
SEGMENTATION_MODES = ("fixed", "adaptive")


def read_json_document(path: Path) -> dict[str, Any]:
    """Read a JSON document, wrapping failures in ConfigurationError.

    Args:
        path: Document location

    Returns:
        Parsed JSON object

    Raises:
        ConfigurationError: If the file is unreadable or not a JSON object
    """
    try:
        with open(path, encoding="utf-8") as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            f"Invalid JSON in {path.name}: {e}",
            config_file=str(path),
            suggestions=[
                "Check JSON syntax in the file",
                "Regenerate the file with the rcbht command that wrote it",
            ],
            original_error=e,
        ) from None
    except OSError as e:
        raise ConfigurationError(
            f"Failed to read {path.name}: {e}",
            config_file=str(path),
            suggestions=["Check the file exists", "Check file permissions"],
            original_error=e,
        ) from None

    if not isinstance(document, dict):
        raise ConfigurationError(
            f"Expected a JSON object in {path.name}", config_file=str(path)
        )
    return document


def write_json_document(path: Path, document: dict[str, Any]) -> None:
    """Write a JSON document with stable key order and indentation.

    Raises:
        ConfigurationError: If the file cannot be written
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise ConfigurationError(
            f"Failed to write {path.name}: {e}",
            config_file=str(path),
            suggestions=[
                "Check directory permissions",
                "Verify disk space is available",
            ],
            original_error=e,
        ) from None


class ConfigManager:
    """Manages the main rcbht configuration and per-task threshold documents.

    Settings resolve as built-in defaults, then the config file, then
    explicit overrides (usually command-line flags).
    """

    def __init__(
        self, config_dir: Path | None = None, config_file: Path | None = None
    ) -> None:
        """Initialize configuration manager.

        Args:
            config_dir: Custom configuration directory. If None, use default.
            config_file: Explicit main config file, overriding the one in
                ``config_dir``.
        """
        self.config_dir = config_dir or self.get_default_config_dir()
        self.main_config_file = config_file or self.config_dir / "config.json"

    @staticmethod
    def get_default_config_dir() -> Path:
        """Get the default configuration directory for the current platform.

        Returns:
            Path to configuration directory
        """
        if os.name == "nt":
            config_base = Path(os.environ.get("APPDATA", "~"))
        else:
            config_base = Path(os.environ.get("XDG_CONFIG_HOME", "~/.config"))

        return (config_base / "rcbht").expanduser()

    def ensure_config_dir(self) -> None:
        """Ensure configuration directory exists."""
        self.config_dir.mkdir(parents=True, exist_ok=True)

    def get_main_config(self) -> dict[str, Any]:
        """Get main configuration merged over the built-in defaults.

        Returns:
            Main configuration dictionary

        Raises:
            ConfigurationError: If configuration cannot be loaded or is invalid
        """
        config = self._get_default_main_config()

        if not self.main_config_file.exists():
            logger.debug("Main config file does not exist, returning defaults")
            return config

        # Keys missing from the file keep their defaults
        config.update(read_json_document(self.main_config_file))
        validate_main_config(config, config_file=str(self.main_config_file))
        logger.debug(f"Loaded main configuration from {self.main_config_file}")
        return config

    def save_main_config(self, config: dict[str, Any]) -> None:
        """Save main configuration.

        Raises:
            ConfigurationError: If configuration is invalid or cannot be saved
        """
        validate_main_config(config, config_file=str(self.main_config_file))
        self.ensure_config_dir()
        write_json_document(self.main_config_file, config)
        logger.debug("Saved main configuration")

    def resolve(self, overrides: dict[str, Any] | None = None) -> dict[str, Any]:
        """Resolve effective settings: defaults < config file < overrides.

        Args:
            overrides: Explicit settings; ``None`` values are ignored

        Returns:
            Effective configuration dictionary
        """
        config = self.get_main_config()
        # Unset flags leave the file value alone
        for key, value in (overrides or {}).items():
            if value is not None:
                config[key] = value
        validate_main_config(config)
        return config

    def thresholds_file(self, task: str) -> Path:
        """Location of the calibrated thresholds document for a task."""
        return self.config_dir / "thresholds" / f"{task}.json"

    def get_task_thresholds(self, task: str) -> dict[str, Any]:
        """Get the stored thresholds document for a task.

        Raises:
            ConfigurationError: If the task has never been calibrated
        """
        path = self.thresholds_file(task)
        if not path.exists():
            raise ConfigurationError(
                f"No calibrated thresholds for task '{task}'",
                config_file=str(path),
                suggestions=[
                    f"Run 'rcbht calibrate <corpus> --task {task}'",
                    "Pass a thresholds file explicitly with --thresholds",
                ],
            )
        return read_json_document(path)

    def save_task_thresholds(self, task: str, document: dict[str, Any]) -> Path:
        """Store a thresholds document for a task and return its path."""
        path = self.thresholds_file(task)
        write_json_document(path, document)
        logger.debug(f"Saved thresholds for task {task}")
        return path

    def list_calibrated_tasks(self) -> list[str]:
        """Get sorted names of tasks with stored thresholds."""
        directory = self.config_dir / "thresholds"
        if not directory.exists():
            return []
        return sorted(path.stem for path in directory.glob("*.json"))

    def _get_default_main_config(self) -> dict[str, Any]:
        """Get default main configuration.

        Returns:
            Default main configuration dictionary
        """
        return {
            "window_seconds": 0.25,
            "merge_ratio": 5.0,
            "r2_threshold": 0.70,
            "segmentation": "fixed",
            "rate_hz": 10,
            "confidence_thresholds": [0.70, 0.75, 0.80, 0.85, 0.90, 0.95],
            "kernels": list(KERNEL_KINDS),
            "c_powers": [-5, 4],
            "folds": 5,
            "seed": 0,
            "schema": "canonical",
            "logging": {"level": "INFO"},
        }


def validate_main_config(config: dict[str, Any], config_file: str | None = None) -> None:
    """Check every known setting lies within its legal range.

    Raises:
        ConfigurationError: On the first out-of-range setting
    """
    # Collect every problem; the first becomes the message
    problems: list[str] = []

    if float(config.get("window_seconds", 0.25)) <= 0:
        problems.append("window_seconds must be positive")
    if float(config.get("merge_ratio", 5.0)) <= 1:
        problems.append("merge_ratio must be greater than 1")
    if not 0 < float(config.get("r2_threshold", 0.7)) <= 1:
        problems.append("r2_threshold must lie in (0, 1]")
    if config.get("segmentation", "fixed") not in SEGMENTATION_MODES:
        problems.append(f"segmentation must be one of {SEGMENTATION_MODES}")
    if int(config.get("rate_hz", 10)) not in TICK_RATES:
        problems.append(f"rate_hz must be one of {TICK_RATES}")
    for k in config.get("confidence_thresholds", []):
        if not 0.5 <= float(k) < 1:
            problems.append(f"confidence threshold {k} must lie in [0.5, 1)")
    for kind in config.get("kernels", []):
        if kind not in KERNEL_KINDS:
            problems.append(f"unknown kernel '{kind}'")
    c_powers = config.get("c_powers", [-5, 4])
    if len(c_powers) != 2 or int(c_powers[0]) > int(c_powers[1]):
        problems.append("c_powers must be [low, high] with low <= high")
    if int(config.get("folds", 5)) < 2:
        problems.append("folds must be at least 2")

    if problems:
        raise ConfigurationError(
            f"Invalid configuration: {problems[0]}",
            config_file=config_file,
            suggestions=problems,
        )
