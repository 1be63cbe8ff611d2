"""Plugin registry for discovering and managing trial schemas."""

import logging
from typing import Any

try:
    from importlib.metadata import entry_points
except ImportError:
    from importlib_metadata import (
        entry_points,  # type: ignore[import-not-found,no-redef]
    )

from ..models.exceptions import SchemaError
from .interfaces.schema import BaseTrialSchema

logger = logging.getLogger(__name__)

DEFAULT_SCHEMA = "canonical"


class SchemaRegistry:
    """Registry for discovering and managing trial schemas."""

    ENTRY_POINT_GROUP = "rcbht.schemas"

    def __init__(self) -> None:
        """Initialize the schema registry."""
        self._schemas: dict[str, type[BaseTrialSchema]] = {}
        self._loaded = False

    def discover_schemas(self) -> None:
        """Register the built-in schema and discover plugins via entry points."""
        if self._loaded:
            return

        # The canonical schema is always available, plugins or not
        from ..schemas.csv_schema import CsvTrialSchema

        self._schemas.setdefault(DEFAULT_SCHEMA, CsvTrialSchema)

        logger.debug("Discovering trial schemas via entry points")

        try:
            eps = entry_points()

            # Python 3.10+ selects by group; older versions return a dict
            if hasattr(eps, "select"):
                schema_eps = eps.select(group=self.ENTRY_POINT_GROUP)
            else:
                schema_eps = eps.get(self.ENTRY_POINT_GROUP, [])  # type: ignore[arg-type]

            for ep in schema_eps:
                try:
                    logger.debug(f"Loading schema: {ep.name}")
                    schema_class = ep.load()

                    if not (
                        isinstance(schema_class, type)
                        and issubclass(schema_class, BaseTrialSchema)
                    ):
                        logger.warning(
                            f"Schema {ep.name} does not inherit from BaseTrialSchema, skipping"
                        )
                        continue

                    self._schemas[ep.name] = schema_class
                    logger.debug(f"Registered schema: {ep.name}")

                except Exception as e:
                    logger.error(f"Failed to load schema {ep.name}: {e}")

        except Exception as e:
            logger.error(f"Failed to discover schemas: {e}")

        self._loaded = True
        logger.debug(f"Discovery complete. Found {len(self._schemas)} schemas")

    def register_schema(self, name: str, schema_class: type[BaseTrialSchema]) -> None:
        """Manually register a schema.

        Raises:
            SchemaError: If the class is not a BaseTrialSchema
        """
        if not (isinstance(schema_class, type) and issubclass(schema_class, BaseTrialSchema)):
            raise SchemaError(
                f"Schema {name} must inherit from BaseTrialSchema", schema_name=name
            )

        self._schemas[name] = schema_class
        logger.info(f"Manually registered schema: {name}")

    def get_schema_class(self, name: str) -> type[BaseTrialSchema] | None:
        """Get schema class by name, or None if unknown."""
        self.discover_schemas()
        return self._schemas.get(name)

    def create_schema(self, name: str = DEFAULT_SCHEMA, **options: Any) -> BaseTrialSchema:
        """Instantiate a schema by name.

        Args:
            name: Registered schema name
            **options: Keyword arguments for the schema constructor

        Raises:
            SchemaError: If the schema is unknown or cannot be created
        """
        schema_class = self.get_schema_class(name)
        if schema_class is None:
            raise SchemaError(
                f"Unknown trial schema '{name}'",
                schema_name=name,
                suggestions=[
                    f"Available schemas: {', '.join(self.list_schemas())}",
                    "Install the package providing the schema",
                ],
            )
        try:
            return schema_class(**options)
        except Exception as e:
            raise SchemaError(
                f"Failed to create schema '{name}': {e}",
                schema_name=name,
                original_error=e,
            ) from None

    def list_schemas(self) -> list[str]:
        """Get sorted schema names."""
        self.discover_schemas()
        return sorted(self._schemas)

    def get_schema_info(self, name: str) -> dict[str, str] | None:
        """Get name, display name, version and description of a schema."""
        schema_class = self.get_schema_class(name)
        if not schema_class:
            return None

        try:
            schema = schema_class()
            return {
                "name": schema.name,
                "display_name": schema.display_name,
                "version": schema.version,
                "description": schema.description,
            }
        except Exception as e:
            logger.warning(f"Could not get info for schema {name}: {e}")
            return {
                "name": name,
                "display_name": name.title(),
                "version": "unknown",
                "description": "",
            }

    def reload_schemas(self) -> None:
        """Force reload of all schemas."""
        self._schemas.clear()
        self._loaded = False
        self.discover_schemas()


_registry = SchemaRegistry()


def get_registry() -> SchemaRegistry:
    """Get the global schema registry.

    Returns:
        Global SchemaRegistry instance
    """
    return _registry
