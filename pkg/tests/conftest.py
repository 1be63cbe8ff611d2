"""Shared pytest fixtures for rcbht tests."""

from pathlib import Path

import numpy as np
import pytest

from rcbht.encoding.primitives import calibrate_task
from rcbht.models.labels import AXES
from rcbht.models.thresholds import GradientThresholds, TaskThresholds
from rcbht.models.trial import WrenchTrial
from rcbht.pipeline.config import PipelineConfig
from rcbht.signal.synthetic import generate_snap_corpus
from rcbht.utils.config import ConfigManager

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def golden_dir() -> Path:
    """Directory holding the decision tables."""
    return GOLDEN_DIR


@pytest.fixture
def unit_gradients() -> GradientThresholds:
    """Round thresholds: const below 0.1, then cuts at 1, 5 and 20."""
    return GradientThresholds(eps_const=0.1, cut_small=1.0, cut_medium=5.0, cut_large=20.0)


@pytest.fixture
def unit_thresholds(unit_gradients: GradientThresholds) -> TaskThresholds:
    """Same round thresholds on every axis."""
    return TaskThresholds(task="unit", axes={axis: unit_gradients for axis in AXES})


@pytest.fixture(scope="session")
def snap_corpus() -> list[WrenchTrial]:
    """Small seeded snap corpus: nominal trials plus two failures."""
    return generate_snap_corpus(n_nominal=12, n_abnormal=2, seed=7)


@pytest.fixture(scope="session")
def snap_thresholds(snap_corpus: list[WrenchTrial]) -> TaskThresholds:
    """Thresholds calibrated on the nominal trials of the snap corpus."""
    nominal = [trial for trial in snap_corpus if trial.outcome == "nominal"]
    return calibrate_task(nominal, task="snap")


@pytest.fixture
def snap_config(snap_thresholds: TaskThresholds) -> PipelineConfig:
    """Offline pipeline settings for the snap corpus."""
    return PipelineConfig(thresholds=snap_thresholds)


@pytest.fixture
def ramp_trial() -> WrenchTrial:
    """Two-state noiseless trial at 100 Hz: fx rises, then holds."""
    rate = 100.0
    times = np.arange(200) / rate
    wrench = np.zeros((200, len(AXES)))
    wrench[:100, 0] = 3.0 * times[:100]
    wrench[100:, 0] = 3.0
    return WrenchTrial(
        times=times,
        wrench=wrench,
        rate_hz=rate,
        transitions=(("rise", 0.0), ("hold", 1.0)),
        trial_key="ramp",
    )


@pytest.fixture
def temp_config_dir(tmp_path: Path) -> Path:
    """Temporary configuration directory."""
    config_dir = tmp_path / ".config" / "rcbht"
    config_dir.mkdir(parents=True)
    return config_dir


@pytest.fixture
def config_manager(temp_config_dir: Path) -> ConfigManager:
    """ConfigManager rooted in a temporary directory."""
    return ConfigManager(config_dir=temp_config_dir)
