"""Utilities for rcbht."""

from .config import ConfigManager, read_json_document, write_json_document
from .logging import setup_logging

__all__ = [
    "ConfigManager",
    "read_json_document",
    "setup_logging",
    "write_json_document",
]
