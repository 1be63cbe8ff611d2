"""Command-line interface for rcbht."""

from .main import main

__all__ = ["main"]
