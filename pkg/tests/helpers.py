"""Label factories and small builders shared by tests."""

import factory

from rcbht.models.grammar import GrammarSentence, TrialGrammar
from rcbht.models.labels import Layer, TaggedLabel


class TaggedLabelFactory(factory.Factory):
    """Consecutive one-second labels on fx, primitive layer by default."""

    class Meta:
        model = TaggedLabel

    layer = Layer.PRIM
    symbol = "CONST"
    t_start = factory.Sequence(float)
    t_end = factory.LazyAttribute(lambda o: o.t_start + 1.0)
    amplitude = 1.0
    axis = "fx"


def label_run(
    symbols: list[str],
    layer: Layer = Layer.PRIM,
    axis: str = "fx",
    durations: list[float] | None = None,
    amplitudes: list[float] | None = None,
    t0: float = 0.0,
) -> list[TaggedLabel]:
    """Contiguous labels with the given symbols, durations and amplitudes."""
    durations = durations or [1.0] * len(symbols)
    amplitudes = amplitudes or [1.0] * len(symbols)
    labels = []
    t = t0
    for symbol, duration, amplitude in zip(symbols, durations, amplitudes, strict=True):
        labels.append(
            TaggedLabelFactory(
                layer=layer,
                symbol=symbol,
                t_start=t,
                t_end=t + duration,
                amplitude=amplitude,
                axis=axis,
            )
        )
        t += duration
    return labels


def build_grammar(
    sentences: dict[str, dict[Layer, dict[str, list[str]]]],
    trial_key: str = "trial",
    arm_id: str = "right",
    outcome: str = "nominal",
) -> TrialGrammar:
    """Grammar from ``{state: {layer: {axis: symbols}}}``; omitted axes stay empty."""
    grammar = TrialGrammar(trial_key, arm_id, outcome, [])
    for state, layers in sentences.items():
        if state not in grammar.states:
            grammar.states.append(state)
        for layer, axes in layers.items():
            for axis, symbols in axes.items():
                labels = tuple(label_run(symbols, layer=layer, axis=axis))
                grammar.set_sentence(state, GrammarSentence(axis, layer, labels))
    return grammar
