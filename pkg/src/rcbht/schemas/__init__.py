"""Built-in trial schemas."""

from .csv_schema import CANONICAL_COLUMNS, CsvTrialSchema, SchemaDescriptor

__all__ = ["CANONICAL_COLUMNS", "CsvTrialSchema", "SchemaDescriptor"]
