"""CLI commands for rcbht."""

from .corpus import calibrate, synth
from .encode import encode, report
from .monitor import evaluate, monitor
from .train import train

__all__ = ["synth", "calibrate", "encode", "report", "train", "evaluate", "monitor"]
