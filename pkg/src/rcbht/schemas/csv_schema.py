"""Built-in CSV + JSON sidecar trial schema."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from ..core.interfaces.schema import BaseTrialSchema
from ..models.exceptions import (
    MalformedRecordError,
    MissingTransitionsError,
    RcbhtError,
    ValidationError,
)
from ..models.labels import AXES
from ..models.trial import WrenchTrial

logger = logging.getLogger(__name__)

CANONICAL_COLUMNS: tuple[str, ...] = ("t", *AXES)


@dataclass(frozen=True)
class SchemaDescriptor:
    """Maps an external CSV layout onto the canonical one.

    ``columns`` maps canonical names (t, fx, ..., tz) to file column names;
    unmapped names are expected verbatim. ``time_scale`` converts the file's
    time unit to seconds.
    """

    columns: dict[str, str] = field(default_factory=dict)
    time_scale: float = 1.0
    sidecar_suffix: str = ".json"
    delimiter: str = ","

    def column(self, canonical: str) -> str:
        return self.columns.get(canonical, canonical)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SchemaDescriptor":
        unknown = set(data.get("columns", {})) - set(CANONICAL_COLUMNS)
        if unknown:
            raise ValidationError(
                f"Descriptor maps unknown columns: {', '.join(sorted(unknown))}",
                field_name="columns",
            )
        return cls(
            columns=dict(data.get("columns", {})),
            time_scale=float(data.get("time_scale", 1.0)),
            sidecar_suffix=str(data.get("sidecar_suffix", ".json")),
            delimiter=str(data.get("delimiter", ",")),
        )


class CsvTrialSchema(BaseTrialSchema):
    """One CSV per trial (``t,fx,fy,fz,tx,ty,tz``) plus a JSON sidecar.

    The sidecar holds ``rate_hz``, ``outcome``, ``arm_id`` and
    ``transitions`` as ``[[state_id, t_start], ...]``; ``trial_key`` and
    ``states`` are optional.
    """

    def __init__(self, descriptor: SchemaDescriptor | dict[str, Any] | None = None) -> None:
        if isinstance(descriptor, dict):
            descriptor = SchemaDescriptor.from_dict(descriptor)
        self.descriptor = descriptor or SchemaDescriptor()

    @property
    def name(self) -> str:
        return "canonical"

    @property
    def display_name(self) -> str:
        return "Canonical CSV + JSON sidecar"

    @property
    def description(self) -> str:
        return "t,fx,fy,fz,tx,ty,tz rows in SI units with transitions in <stem>.json"

    def sidecar_path(self, path: Path) -> Path:
        return path.with_suffix(self.descriptor.sidecar_suffix)

    def read(self, path: Path) -> WrenchTrial:
        path = Path(path)
        frame = self._read_frame(path)
        sidecar = self._read_sidecar(path)

        # Map canonical names to the file's header
        columns = [self.descriptor.column(name) for name in CANONICAL_COLUMNS]
        missing = [name for name in columns if name not in frame.columns]
        if missing:
            raise MalformedRecordError(
                f"Missing columns: {', '.join(missing)}",
                path=str(path),
                suggestions=[
                    f"Expected header: {','.join(columns)}",
                    "Map external column names with a schema descriptor",
                ],
            )

        values = np.empty((len(frame), len(columns)), dtype=float)
        for index, name in enumerate(columns):
            column = frame[name]
            # Report the first bad cell instead of a pandas dtype error
            if not pd.api.types.is_numeric_dtype(column):
                converted = pd.to_numeric(column, errors="coerce")
                bad = np.flatnonzero(converted.isna().to_numpy())
                if len(bad):
                    raise MalformedRecordError(
                        f"Non-numeric value {column.iloc[bad[0]]!r} in column '{name}'",
                        path=str(path),
                        row=int(bad[0]),
                    )
                column = converted
            values[:, index] = column.to_numpy(dtype=float)

        # Seconds from here on
        times = values[:, 0] * self.descriptor.time_scale

        try:
            return WrenchTrial(
                times=times,
                wrench=values[:, 1:],
                rate_hz=float(sidecar["rate_hz"]),
                transitions=tuple(
                    (str(state), float(t)) for state, t in sidecar["transitions"]
                ),
                outcome=sidecar.get("outcome", "nominal"),
                arm_id=str(sidecar.get("arm_id", "right")),
                trial_key=str(sidecar.get("trial_key", "")),
                states=tuple(sidecar["states"]) if "states" in sidecar else None,
                ground_truth=sidecar.get("ground_truth"),
                source=path,
            )
        except RcbhtError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedRecordError(
                f"Malformed sidecar {self.sidecar_path(path).name}: {e}",
                path=str(path),
                suggestions=[
                    "Sidecar needs rate_hz, outcome, arm_id and transitions",
                    "Transitions are [[state_id, t_start], ...]",
                ],
                original_error=e,
            ) from None

    def write(self, trial: WrenchTrial, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)

        # Times back in the descriptor's unit
        frame = pd.DataFrame(
            {
                self.descriptor.column("t"): trial.times / self.descriptor.time_scale,
                **{
                    self.descriptor.column(axis): trial.axis(axis)
                    for axis in AXES
                },
            }
        )
        frame.to_csv(path, index=False, sep=self.descriptor.delimiter)

        # Metadata goes next to the samples
        with open(self.sidecar_path(path), "w", encoding="utf-8") as f:
            json.dump(trial.sidecar(), f, indent=2)
            f.write("\n")

        logger.debug(f"Wrote trial {trial.key or path.stem} to {path}")

    def _read_frame(self, path: Path) -> pd.DataFrame:
        try:
            return pd.read_csv(
                path,
                sep=self.descriptor.delimiter,
                float_precision="round_trip",
                skipinitialspace=True,
            )
        except FileNotFoundError as e:
            raise MalformedRecordError(
                f"Trial file not found: {path}",
                path=str(path),
                suggestions=["Check the trial path"],
                original_error=e,
            ) from None
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise MalformedRecordError(
                f"Could not parse trial file: {e}",
                path=str(path),
                original_error=e,
            ) from None

    def _read_sidecar(self, path: Path) -> dict[str, Any]:
        sidecar_path = self.sidecar_path(path)
        if not sidecar_path.exists():
            raise MissingTransitionsError(
                f"No sidecar found at {sidecar_path.name}", path=str(path)
            )
        try:
            with open(sidecar_path, encoding="utf-8") as f:
                sidecar = json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise MalformedRecordError(
                f"Invalid JSON in sidecar {sidecar_path.name}: {e}",
                path=str(path),
                original_error=e,
            ) from None

        if not isinstance(sidecar, dict) or not sidecar.get("transitions"):
            raise MissingTransitionsError(path=str(path))
        return sidecar
