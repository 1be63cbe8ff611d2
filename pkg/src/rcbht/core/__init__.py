"""Trial schema plugin interface and registry."""

from .interfaces import BaseTrialSchema
from .registry import DEFAULT_SCHEMA, SchemaRegistry, get_registry

__all__ = [
    "BaseTrialSchema",
    "DEFAULT_SCHEMA",
    "SchemaRegistry",
    "get_registry",
]
