"""Test trial schema discovery and the canonical CSV schema."""

import json
from pathlib import Path
from unittest.mock import Mock, patch

import numpy as np
import pytest

from rcbht.core.interfaces.schema import BaseTrialSchema
from rcbht.core.registry import SchemaRegistry, get_registry
from rcbht.models.exceptions import (
    MalformedRecordError,
    MissingTransitionsError,
    SchemaError,
    ValidationError,
)
from rcbht.models.trial import WrenchTrial
from rcbht.schemas.csv_schema import CsvTrialSchema, SchemaDescriptor


class StubSchema(BaseTrialSchema):
    """Schema that never touches the disk."""

    @property
    def name(self) -> str:
        return "stub"

    @property
    def display_name(self) -> str:
        return "Stub Schema"

    def read(self, path: Path) -> WrenchTrial:
        raise NotImplementedError

    def write(self, trial: WrenchTrial, path: Path) -> None:
        raise NotImplementedError


class TestSchemaRegistry:
    """Test SchemaRegistry functionality."""

    def test_registry_singleton(self):
        """Test that registry follows singleton pattern."""
        assert get_registry() is get_registry()

    @patch("rcbht.core.registry.entry_points")
    def test_builtin_schema_always_present(self, mock_entry_points):
        """Test the canonical schema is registered without entry points."""
        mock_entry_points.return_value.select.return_value = []

        registry = SchemaRegistry()

        assert registry.list_schemas() == ["canonical"]
        assert isinstance(registry.create_schema(), CsvTrialSchema)

    @patch("rcbht.core.registry.entry_points")
    def test_discover_schema_plugin(self, mock_entry_points):
        """Test a schema shipped through entry points is registered."""
        mock_ep = Mock()
        mock_ep.name = "stub"
        mock_ep.load.return_value = StubSchema
        mock_entry_points.return_value.select.return_value = [mock_ep]

        registry = SchemaRegistry()

        assert registry.get_schema_class("stub") is StubSchema
        assert registry.get_schema_info("stub")["display_name"] == "Stub Schema"

    @patch("rcbht.core.registry.entry_points")
    def test_discover_skips_broken_and_invalid(self, mock_entry_points):
        """Test plugins that fail to load or are not schemas are skipped."""
        broken = Mock()
        broken.name = "broken"
        broken.load.side_effect = ImportError("Module not found")
        invalid = Mock()
        invalid.name = "invalid"
        invalid.load.return_value = str
        mock_entry_points.return_value.select.return_value = [broken, invalid]

        registry = SchemaRegistry()

        assert "broken" not in registry.list_schemas()
        assert "invalid" not in registry.list_schemas()

    def test_register_schema(self):
        """Test manual schema registration."""
        registry = SchemaRegistry()
        registry.register_schema("stub", StubSchema)

        assert registry.get_schema_class("stub") is StubSchema

    def test_register_rejects_non_schema(self):
        """Test registering a foreign class raises SchemaError."""
        registry = SchemaRegistry()

        with pytest.raises(SchemaError):
            registry.register_schema("bad", str)  # type: ignore[arg-type]

    def test_unknown_schema(self):
        """Test creating an unknown schema lists the available ones."""
        registry = SchemaRegistry()

        with pytest.raises(SchemaError) as exc_info:
            registry.create_schema("nope")
        assert any("canonical" in s for s in exc_info.value.suggestions)
        assert exc_info.value.exit_code == 5


class TestCsvTrialSchema:
    """Test the canonical CSV + sidecar layout."""

    def test_write_then_read(self, ramp_trial, tmp_path):
        """Test a written trial reads back unchanged."""
        schema = CsvTrialSchema()
        path = tmp_path / "ramp.csv"

        schema.write(ramp_trial, path)
        loaded = schema.read(path)

        np.testing.assert_array_equal(loaded.times, ramp_trial.times)
        np.testing.assert_array_equal(loaded.wrench, ramp_trial.wrench)
        assert loaded.transitions == ramp_trial.transitions
        assert loaded.key == "ramp"
        assert loaded.source == path

    def test_descriptor_maps_columns_and_time_unit(self, tmp_path):
        """Test an external layout in milliseconds is mapped onto the canonical one."""
        path = tmp_path / "external.csv"
        path.write_text(
            "time_ms;Fx;fy;fz;tx;ty;tz\n"
            "0;1;0;0;0;0;0\n"
            "10;2;0;0;0;0;0\n"
            "20;3;0;0;0;0;0\n"
        )
        path.with_suffix(".json").write_text(
            json.dumps({"rate_hz": 100, "transitions": [["a", 0.0]]})
        )
        schema = CsvTrialSchema(
            {"columns": {"t": "time_ms", "fx": "Fx"}, "time_scale": 0.001, "delimiter": ";"}
        )

        trial = schema.read(path)

        np.testing.assert_allclose(trial.times, [0.0, 0.01, 0.02])
        np.testing.assert_array_equal(trial.axis("fx"), [1.0, 2.0, 3.0])

    def test_descriptor_rejects_unknown_columns(self):
        """Test a descriptor cannot map names outside the canonical set."""
        with pytest.raises(ValidationError):
            SchemaDescriptor.from_dict({"columns": {"force": "F"}})

    def test_missing_column(self, tmp_path):
        """Test a file without a wrench column is malformed."""
        path = tmp_path / "short.csv"
        path.write_text("t,fx,fy,fz,tx,ty\n0,0,0,0,0,0\n")
        path.with_suffix(".json").write_text(
            json.dumps({"rate_hz": 10, "transitions": [["a", 0.0]]})
        )

        with pytest.raises(MalformedRecordError) as exc_info:
            CsvTrialSchema().read(path)
        assert "tz" in exc_info.value.message

    def test_non_numeric_value(self, tmp_path):
        """Test a text cell reports its row."""
        path = tmp_path / "text.csv"
        path.write_text("t,fx,fy,fz,tx,ty,tz\n0,0,0,0,0,0,0\n0.1,abc,0,0,0,0,0\n")
        path.with_suffix(".json").write_text(
            json.dumps({"rate_hz": 10, "transitions": [["a", 0.0]]})
        )

        with pytest.raises(MalformedRecordError) as exc_info:
            CsvTrialSchema().read(path)
        assert exc_info.value.context["row"] == 1

    def test_missing_sidecar(self, tmp_path):
        """Test a trial without a sidecar has no transitions."""
        path = tmp_path / "lonely.csv"
        path.write_text("t,fx,fy,fz,tx,ty,tz\n0,0,0,0,0,0,0\n")

        with pytest.raises(MissingTransitionsError):
            CsvTrialSchema().read(path)

    def test_sidecar_without_rate(self, tmp_path):
        """Test a sidecar lacking rate_hz is malformed."""
        path = tmp_path / "norate.csv"
        path.write_text("t,fx,fy,fz,tx,ty,tz\n0,0,0,0,0,0,0\n")
        path.with_suffix(".json").write_text(json.dumps({"transitions": [["a", 0.0]]}))

        with pytest.raises(MalformedRecordError):
            CsvTrialSchema().read(path)
