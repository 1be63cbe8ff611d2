"""Grammar sentences and per-trial grammars."""

from dataclasses import dataclass, field
from typing import Any

from .exceptions import InconsistentAlphabetError
from .labels import AXES, Layer, TaggedLabel


@dataclass(frozen=True)
class GrammarSentence:
    """Ordered labels one axis produced at one layer during one state."""

    axis: str
    layer: Layer
    labels: tuple[TaggedLabel, ...] = ()

    def __post_init__(self) -> None:
        for label in self.labels:
            if label.layer is not self.layer or label.axis != self.axis:
                raise InconsistentAlphabetError(
                    f"Label {label.layer.value}/{label.axis} does not belong to "
                    f"sentence {self.layer.value}/{self.axis}"
                )

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(label.symbol for label in self.labels)

    def __len__(self) -> int:
        return len(self.labels)


@dataclass
class TrialGrammar:
    """All sentences of one trial arm, keyed by (state, layer, axis)."""

    trial_key: str
    arm_id: str
    outcome: str
    states: list[str]
    sentences: dict[tuple[str, Layer, str], GrammarSentence] = field(
        default_factory=dict
    )

    def sentence(self, state: str, layer: Layer, axis: str) -> GrammarSentence:
        """Sentence for a state, or an empty sentence if none was recorded."""
        return self.sentences.get(
            (state, layer, axis), GrammarSentence(axis=axis, layer=layer)
        )

    def set_sentence(self, state: str, sentence: GrammarSentence) -> None:
        if state not in self.states:
            self.states.append(state)
        self.sentences[(state, sentence.layer, sentence.axis)] = sentence

    def symbols(self) -> dict[tuple[str, str, str], tuple[str, ...]]:
        """Plain symbol view keyed by (state, layer, axis) strings."""
        return {
            (state, layer.value, axis): sentence.symbols
            for (state, layer, axis), sentence in self.sentences.items()
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "trial_key": self.trial_key,
            "arm_id": self.arm_id,
            "outcome": self.outcome,
            "states": list(self.states),
            "sentences": [
                {
                    "state": state,
                    "layer": layer.value,
                    "axis": axis,
                    "labels": [label.to_dict() for label in sentence.labels],
                }
                for (state, layer, axis), sentence in sorted(
                    self.sentences.items(),
                    key=lambda item: (
                        self.states.index(item[0][0]),
                        list(Layer).index(item[0][1]),
                        AXES.index(item[0][2]),
                    ),
                )
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TrialGrammar":
        grammar = cls(
            trial_key=data["trial_key"],
            arm_id=data["arm_id"],
            outcome=data["outcome"],
            states=list(data["states"]),
        )
        for entry in data["sentences"]:
            layer = Layer(entry["layer"])
            labels = tuple(TaggedLabel.from_dict(item) for item in entry["labels"])
            grammar.set_sentence(
                entry["state"],
                GrammarSentence(axis=entry["axis"], layer=layer, labels=labels),
            )
        return grammar
