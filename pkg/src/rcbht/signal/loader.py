"""Trial and corpus ingestion."""

import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Iterator
from pathlib import Path

from ..core.interfaces.schema import BaseTrialSchema
from ..core.registry import DEFAULT_SCHEMA, get_registry
from ..models.exceptions import MalformedRecordError, ValidationError
from ..models.labels import AXES
from ..models.trial import WrenchSample, WrenchTrial

logger = logging.getLogger(__name__)

SchemaLike = BaseTrialSchema | str | None


def resolve_schema(schema: SchemaLike = None) -> BaseTrialSchema:
    """Turn a schema name (or None for the default) into a schema instance."""
    if isinstance(schema, BaseTrialSchema):
        return schema
    return get_registry().create_schema(schema or DEFAULT_SCHEMA)


def load_trial(path: Path, schema: SchemaLike = None) -> WrenchTrial:
    """Load and validate one trial.

    Args:
        path: Trial file location
        schema: Schema instance or registered schema name

    Raises:
        MalformedRecordError: If a row fails the schema
        NonMonotoneTimeError: If timestamps are not strictly increasing
        MissingTransitionsError: If no transitions are annotated
    """
    trial = resolve_schema(schema).read(Path(path))
    logger.debug(f"Loaded {trial!r}")
    return trial


def write_trial(trial: WrenchTrial, path: Path, schema: SchemaLike = None) -> None:
    """Write one trial in the given schema."""
    resolve_schema(schema).write(trial, Path(path))


def load_corpus(directory: Path, schema: SchemaLike = None) -> list[WrenchTrial]:
    """Load every trial in a directory in sorted file order.

    Raises:
        ValidationError: If ``directory`` is not a directory
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise ValidationError(
            f"Corpus directory not found: {directory}",
            field_name="directory",
            suggestions=["Check the corpus path", "Generate one with 'rcbht synth'"],
        )

    resolved = resolve_schema(schema)
    paths = sorted(directory.glob(resolved.file_pattern))
    trials = [resolved.read(path) for path in paths]
    logger.info(f"Loaded {len(trials)} trials from {directory}")
    return trials


def group_arms(trials: list[WrenchTrial]) -> list[list[WrenchTrial]]:
    """Group trials sharing a trial key, keeping first-seen key order.

    Within a group, arms are sorted by ``arm_id`` so that "left" precedes
    "right".
    """
    groups: dict[str, list[WrenchTrial]] = defaultdict(list)
    for trial in trials:
        groups[trial.key].append(trial)

    grouped = [sorted(group, key=lambda t: t.arm_id) for group in groups.values()]
    for group in grouped:
        arms = [t.arm_id for t in group]
        if len(set(arms)) != len(arms):
            raise ValidationError(
                f"Trial '{group[0].key}' has duplicate arms: {arms}",
                field_name="arm_id",
                suggestions=["Give each file of a two-arm trial a distinct arm_id"],
            )
        outcomes = {t.outcome for t in group}
        if len(outcomes) != 1:
            raise ValidationError(
                f"Arms of trial '{group[0].key}' disagree on outcome",
                field_name="outcome",
            )
    return grouped


def read_sample_stream(
    lines: Iterable[str], delimiter: str = ","
) -> Iterator[WrenchSample]:
    """Parse canonical ``t,fx,fy,fz,tx,ty,tz`` rows as they arrive.

    Blank lines and a leading header row are skipped.

    Raises:
        MalformedRecordError: On a row with the wrong field count or a
            non-numeric or non-finite value
    """
    header = ["t", *AXES]
    for row, line in enumerate(lines):
        text = line.strip()
        if not text:
            continue
        fields = [item.strip() for item in text.split(delimiter)]
        # Only a first-line header is tolerated
        if row == 0 and fields == header:
            continue
        if len(fields) != len(header):
            raise MalformedRecordError(
                f"Expected {len(header)} values, got {len(fields)}: {text!r}",
                row=row,
            )
        try:
            values = [float(item) for item in fields]
        except ValueError:
            raise MalformedRecordError(
                f"Non-numeric value in {text!r}", row=row
            ) from None
        if not all(math.isfinite(value) for value in values):
            raise MalformedRecordError(f"Non-finite value in {text!r}", row=row)
        yield WrenchSample(*values)
