"""Feature layouts and matrices built from trial grammars."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from ..models.exceptions import (
    InconsistentAlphabetError,
    MalformedRecordError,
    ValidationError,
)
from ..models.grammar import TrialGrammar
from ..models.labels import AXES, PAD_CODE, Layer
from .encoder import encode_partial, encode_symbols, resample_sentences

logger = logging.getLogger(__name__)

ANY_STATE = "*"
LABEL_COLUMN = "label"


class Regime(str, Enum):
    """Training regime: which samples a matrix holds and what they are labeled."""

    NOMINAL = "nominal"
    ABNORMALITY = "abnormality"


@dataclass(frozen=True)
class FeatureLayout:
    """Column structure of a feature matrix.

    Columns run arm by arm, then state by state (only ``*`` in the nominal
    regime), then layer by layer, then axis by axis, then position. A block of
    one (arm, state, layer) holds ``len(AXES) * lengths[(arm, state, layer)]`` codes,
    so the arms of a two-arm trial may differ in width.
    """

    regime: Regime
    arms: tuple[str, ...]
    states: tuple[str, ...]
    lengths: dict[tuple[str, str, str], int] = field(default_factory=dict)

    def length(self, arm: str, state: str, layer: Layer) -> int:
        key = ANY_STATE if self.regime is Regime.NOMINAL else state
        return self.lengths[(arm, key, layer.value)]

    def arm_width(self, arm: str) -> int:
        """Number of features contributed by one arm."""
        return sum(
            len(AXES) * self.lengths[(arm, state, layer.value)]
            for state in self.states
            for layer in Layer
        )

    @property
    def columns(self) -> list[str]:
        names = []
        for arm in self.arms:
            for state in self.states:
                for layer in Layer:
                    size = self.lengths[(arm, state, layer.value)]
                    for axis in AXES:
                        names.extend(
                            f"{arm}:{state}:{layer.value}:{axis}:{pos}"
                            for pos in range(size)
                        )
        return names

    @property
    def n_features(self) -> int:
        return sum(self.arm_width(arm) for arm in self.arms)

    def encode(
        self,
        arms: dict[str, TrialGrammar],
        state: str | None = None,
        completed: Iterable[str] | None = None,
    ) -> np.ndarray:
        """Feature vector of one sample.

        In the nominal regime ``state`` selects the sentences; otherwise every
        layout state contributes, with states absent from the grammar filled
        with the pad code. Sentences of states not in ``completed`` are still
        being produced and are padded with the pad code rather than
        resampled. ``completed=None`` treats every state as complete.

        Raises:
            InconsistentAlphabetError: If the arms differ from the layout's
        """
        if set(arms) != set(self.arms):
            raise InconsistentAlphabetError(
                f"Layout expects arms {list(self.arms)}, got {sorted(arms)}"
            )
        if self.regime is Regime.NOMINAL and state is None:
            raise ValidationError("Nominal-regime encoding needs a state")

        done = None if completed is None else set(completed)
        states = [state] if self.regime is Regime.NOMINAL else list(self.states)

        codes: list[int] = []
        for arm in self.arms:
            grammar = arms[arm]
            for name in states:
                assert name is not None
                present = name in grammar.states
                complete = done is None or name in done
                for layer in Layer:
                    size = self.length(arm, name, layer)
                    sentences = [grammar.sentence(name, layer, axis) for axis in AXES]
                    if not present:
                        # A state the trial never reached
                        codes.extend([PAD_CODE] * (size * len(AXES)))
                    elif complete:
                        # Finished sentences stretch or shrink to the layout length
                        for symbols in resample_sentences(sentences, size):
                            codes.extend(encode_symbols(symbols, layer))
                    else:
                        # Still being produced: pad rather than resample
                        for sentence in sentences:
                            codes.extend(encode_partial(sentence, size))
        return np.asarray(codes, dtype=np.int64)

    def to_dict(self) -> dict[str, Any]:
        return {
            "regime": self.regime.value,
            "arms": list(self.arms),
            "states": list(self.states),
            "lengths": [
                [arm, state, layer, size]
                for (arm, state, layer), size in self.lengths.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FeatureLayout":
        return cls(
            regime=Regime(data["regime"]),
            arms=tuple(data["arms"]),
            states=tuple(data["states"]),
            lengths={
                (arm, state, layer): int(size)
                for arm, state, layer, size in data["lengths"]
            },
        )

    @classmethod
    def from_columns(cls, columns: Sequence[str]) -> "FeatureLayout":
        """Recover a layout from ``arm:state:layer:axis:pos`` column names.

        Raises:
            InconsistentAlphabetError: If a column name is malformed
        """
        arms: list[str] = []
        # States in first-seen order
        states: list[str] = []
        lengths: dict[tuple[str, str, str], int] = {}
        for name in columns:
            parts = name.split(":")
            malformed = (
                len(parts) != 5
                or parts[2] not in Layer.__members__
                or parts[3] not in AXES
                or not parts[4].isdigit()
            )
            if malformed:
                raise InconsistentAlphabetError(
                    f"Malformed feature column '{name}'",
                    suggestions=["Feature columns are arm:state:layer:axis:position"],
                )
            arm, state, layer, _, pos = parts
            if arm not in arms:
                arms.append(arm)
            if state not in states:
                states.append(state)
            key = (arm, state, layer)
            lengths[key] = max(lengths.get(key, 0), int(pos) + 1)

        regime = Regime.NOMINAL if states == [ANY_STATE] else Regime.ABNORMALITY
        try:
            layout = cls(
                regime=regime, arms=tuple(arms), states=tuple(states), lengths=lengths
            )
            in_order = layout.columns == list(columns)
        except KeyError:
            in_order = False
        if not in_order:
            raise InconsistentAlphabetError(
                "Feature columns are not in layout order",
                suggestions=["Regenerate the features file with 'rcbht encode'"],
            )
        return layout


@dataclass(eq=False)
class FeatureMatrix:
    """Ordinal feature rows with their class labels."""

    values: np.ndarray
    labels: list[str]
    layout: FeatureLayout
    row_keys: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.int64)
        if values.size == 0:
            values = values.reshape(0, self.layout.n_features)
        if values.ndim != 2 or values.shape[0] != len(self.labels):
            raise ValidationError(
                f"Expected {len(self.labels)} feature rows, got shape {values.shape}"
            )
        self.values = values
        if self.values.shape[1] != self.layout.n_features:
            raise InconsistentAlphabetError(
                f"Matrix has {self.values.shape[1]} columns, layout expects "
                f"{self.layout.n_features}"
            )
        self._check_codes()

    @property
    def n_samples(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.values.shape[1])

    @property
    def classes(self) -> list[str]:
        """Distinct labels in first-seen order."""
        return list(dict.fromkeys(self.labels))

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.values, columns=self.layout.columns)
        frame[LABEL_COLUMN] = self.labels
        return frame

    def to_csv(self, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        logger.debug(f"Wrote {self.n_samples}x{self.n_features} features to {path}")

    @classmethod
    def from_csv(cls, path: Path) -> "FeatureMatrix":
        """Read a features CSV written by :meth:`to_csv`.

        Raises:
            MalformedRecordError: If the file cannot be parsed
            InconsistentAlphabetError: If columns or codes do not fit a layout
        """
        try:
            frame = pd.read_csv(path, dtype={LABEL_COLUMN: str})
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise MalformedRecordError(
                f"Could not read features file: {e}",
                path=str(path),
                original_error=e,
            ) from None
        if frame.columns[-1] != LABEL_COLUMN:
            raise InconsistentAlphabetError(
                f"Last column of {Path(path).name} must be '{LABEL_COLUMN}'"
            )
        layout = FeatureLayout.from_columns(list(frame.columns[:-1]))
        return cls(
            values=frame.iloc[:, :-1].to_numpy(dtype=np.int64),
            labels=[str(v) for v in frame[LABEL_COLUMN]],
            layout=layout,
        )

    def _check_codes(self) -> None:
        if not self.n_samples:
            return
        offset = 0
        for arm in self.layout.arms:
            for state in self.layout.states:
                for layer in Layer:
                    width = len(AXES) * self.layout.lengths[(arm, state, layer.value)]
                    block = self.values[:, offset : offset + width]
                    out_of_range = block.size and (
                        block.min() < PAD_CODE or block.max() > len(layer.alphabet)
                    )
                    if out_of_range:
                        raise InconsistentAlphabetError(
                            f"Codes outside the {layer.value} alphabet in block {state}"
                        )
                    offset += width


def _group(grammars: Sequence[TrialGrammar]) -> list[dict[str, TrialGrammar]]:
    groups: dict[str, dict[str, TrialGrammar]] = {}
    for grammar in grammars:
        arms = groups.setdefault(grammar.trial_key, {})
        if grammar.arm_id in arms:
            raise ValidationError(
                f"Trial '{grammar.trial_key}' has two grammars for arm {grammar.arm_id}",
                field_name="arm_id",
            )
        arms[grammar.arm_id] = grammar
    return list(groups.values())


def infer_layout(grammars: Sequence[TrialGrammar], regime: Regime | str) -> FeatureLayout:
    """Layout with the longest sentence length seen per (arm, state, layer).

    In the nominal regime lengths are maximized over all states; in the
    abnormality regime each state keeps its own length. Arms are ordered by
    name, so "left" precedes "right".
    """
    regime = Regime(regime)
    if not grammars:
        raise ValidationError("Cannot infer a feature layout from no grammars")

    arms = sorted({g.arm_id for g in grammars})
    states: list[str] = []
    for grammar in grammars:
        for state in grammar.states:
            if state not in states:
                states.append(state)

    layout_states = (ANY_STATE,) if regime is Regime.NOMINAL else tuple(states)
    # At least one position per block
    lengths = {
        (arm, state, layer.value): 1
        for arm in arms
        for state in layout_states
        for layer in Layer
    }
    for grammar in grammars:
        for state in grammar.states:
            name = ANY_STATE if regime is Regime.NOMINAL else state
            for layer in Layer:
                key = (grammar.arm_id, name, layer.value)
                longest = max(len(grammar.sentence(state, layer, axis)) for axis in AXES)
                lengths[key] = max(lengths[key], longest)

    return FeatureLayout(
        regime=regime, arms=tuple(arms), states=layout_states, lengths=lengths
    )


def build_features(
    grammars: Sequence[TrialGrammar],
    regime: Regime | str,
    layout: FeatureLayout | None = None,
) -> FeatureMatrix:
    """Feature matrix of a corpus of trial grammars.

    The nominal regime yields one row per (trial, state) labeled with the
    state; the abnormality regime one row per trial labeled with its outcome.
    Two-arm trials share a trial key and concatenate their arm blocks.

    Raises:
        AllEmptyError: If a state produced no labels on any axis
        InconsistentAlphabetError: If grammars do not fit ``layout``
    """
    regime = Regime(regime)
    layout = layout or infer_layout(grammars, regime)
    if layout.regime is not regime:
        raise InconsistentAlphabetError(
            f"Layout is for the {layout.regime.value} regime, not {regime.value}"
        )

    rows: list[np.ndarray] = []
    labels: list[str] = []
    keys: list[str] = []
    # One sample per state (nominal) or per trial (abnormality)
    for arms in _group(grammars):
        first = next(iter(arms.values()))
        if regime is Regime.NOMINAL:
            for state in first.states:
                rows.append(layout.encode(arms, state=state))
                labels.append(state)
                keys.append(f"{first.trial_key}/{state}")
        else:
            rows.append(layout.encode(arms))
            labels.append(first.outcome)
            keys.append(first.trial_key)

    values = np.vstack(rows) if rows else np.zeros((0, layout.n_features), dtype=np.int64)
    logger.info(
        f"Built {regime.value} features: {len(rows)} samples x {layout.n_features} columns"
    )
    return FeatureMatrix(values=values, labels=labels, layout=layout, row_keys=keys)
