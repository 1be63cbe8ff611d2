"""Sample-by-sample grammar encoding with optional online introspection.

Each axis runs a chain of stages

    PrimitiveStream -> FilterPipe(PRIM) -> PairBuffer(compose)
      -> FilterPipe(MC) -> PairBuffer(behave) -> FilterPipe(LLB)

and a label reaches the grammar when the last pipe of its layer fires it. At
the end of every state each chain is flushed stage by stage, so the
sentences of a completed state equal the offline encoding of that state.
"""

import json
import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any

from ..classifier.persistence import ModelBundle
from ..encoding.behaviors import behave
from ..encoding.compositions import compose
from ..encoding.filterpipe import FilterPipe
from ..encoding.pairing import PairBuffer
from ..encoding.primitives import PrimitiveStream
from ..features.matrix import Regime
from ..models.exceptions import NonMonotoneTimeError, ValidationError
from ..models.grammar import GrammarSentence, TrialGrammar
from ..models.labels import AXES, Layer, TaggedLabel
from ..models.thresholds import TaskThresholds
from ..models.trial import WrenchSample, WrenchTrial
from ..monitor.sampler import GrammarSampler, InferenceSnapshot, TickClock
from .config import PipelineConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabelEvent:
    """A label fired by the last pipe of its layer."""

    state: str
    label: TaggedLabel

    @property
    def t(self) -> float:
        """Event time: the end of the label's source span."""
        return self.label.t_end

    def to_dict(self) -> dict[str, Any]:
        return {"type": "label", "state": self.state, **self.label.to_dict()}


Event = LabelEvent | InferenceSnapshot


def event_to_dict(event: Event) -> dict[str, Any]:
    if isinstance(event, LabelEvent):
        return event.to_dict()
    return {"type": "snapshot", **event.to_dict()}


def write_event_log(events: Iterable[Event], stream: IO[str]) -> int:
    """Write events as newline-delimited JSON and return how many were written."""
    count = 0
    for event in events:
        stream.write(json.dumps(event_to_dict(event), sort_keys=True) + "\n")
        count += 1
    return count


def save_event_log(events: Iterable[Event], path: Path) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        return write_event_log(events, f)


class AxisChain:
    """Stage chain of one axis."""

    def __init__(
        self, axis: str, thresholds: TaskThresholds, window: int, ratio: float
    ) -> None:
        self.axis = axis
        self.stream = PrimitiveStream(axis, thresholds[axis], window)
        self.prim_pipe = FilterPipe(Layer.PRIM, axis, ratio)
        self.mc_pairs = PairBuffer(compose)
        self.mc_pipe = FilterPipe(Layer.MC, axis, ratio)
        self.llb_pairs = PairBuffer(behave)
        self.llb_pipe = FilterPipe(Layer.LLB, axis, ratio)

    def push(self, t: float, value: float) -> list[TaggedLabel]:
        """Feed one sample; return labels fired anywhere in the chain."""
        primitive = self.stream.push(t, value)
        if primitive is None:
            return []
        return self._from_primitives(self.prim_pipe.push(primitive))

    def flush(self) -> list[TaggedLabel]:
        """Drain every stage in order at the end of a state."""
        fired: list[TaggedLabel] = []
        primitive = self.stream.flush()
        if primitive is not None:
            fired.extend(self._from_primitives(self.prim_pipe.push(primitive)))
        fired.extend(self._from_primitives(self.prim_pipe.flush()))

        composition = self.mc_pairs.flush()
        if composition is not None:
            fired.extend(self._from_compositions(self.mc_pipe.push(composition)))
        fired.extend(self._from_compositions(self.mc_pipe.flush()))

        behavior = self.llb_pairs.flush()
        if behavior is not None:
            fired.extend(self.llb_pipe.push(behavior))
        fired.extend(self.llb_pipe.flush())
        return fired

    def _from_primitives(self, primitives: list[TaggedLabel]) -> list[TaggedLabel]:
        fired = list(primitives)
        for primitive in primitives:
            composition = self.mc_pairs.push(primitive)
            if composition is not None:
                fired.extend(self._from_compositions(self.mc_pipe.push(composition)))
        return fired

    def _from_compositions(self, compositions: list[TaggedLabel]) -> list[TaggedLabel]:
        fired = list(compositions)
        for composition in compositions:
            behavior = self.llb_pairs.push(composition)
            if behavior is not None:
                fired.extend(self.llb_pipe.push(behavior))
        return fired


@dataclass
class OnlineResult:
    grammar: TrialGrammar
    events: list[Event] = field(default_factory=list)

    @property
    def labels(self) -> list[LabelEvent]:
        return [e for e in self.events if isinstance(e, LabelEvent)]

    @property
    def snapshots(self) -> list[InferenceSnapshot]:
        return [e for e in self.events if isinstance(e, InferenceSnapshot)]


class OnlinePipeline:
    """Incremental encoder of one trial arm.

    Samples must arrive in time order. ``transitions`` assigns each sample to
    the last state starting at or before it (samples before the first
    transition belong to the first state). With a sampler, the evolving
    grammar is classified at every tick of ``config.rate_hz`` and once more
    at the end of every state.
    """

    def __init__(
        self,
        config: PipelineConfig,
        transitions: Iterable[tuple[str, float]],
        sample_rate_hz: float,
        trial_key: str = "",
        arm_id: str = "right",
        outcome: str = "nominal",
        sampler: GrammarSampler | None = None,
        on_event: Callable[[Event], None] | None = None,
    ) -> None:
        if config.segmentation != "fixed":
            raise ValidationError(
                "Online encoding needs fixed segmentation",
                field_name="segmentation",
                suggestions=["Use config.online() for online runs"],
            )
        self.transitions = list(transitions)
        if not self.transitions:
            raise ValidationError(
                "Online encoding needs state transitions", field_name="transitions"
            )
        self.config = config
        self.window = config.window_for(sample_rate_hz)
        self.sampler = sampler
        self.on_event = on_event
        self.grammar = TrialGrammar(
            trial_key=trial_key, arm_id=arm_id, outcome=outcome, states=[]
        )
        self.events: list[Event] = []
        self.version = 0
        self._chains = {
            axis: AxisChain(axis, config.thresholds, self.window, config.merge_ratio)
            for axis in AXES
        }
        self._state_index = -1
        self._sentences: dict[tuple[Layer, str], list[TaggedLabel]] = {}
        self._completed: list[str] = []
        self._state_samples = 0
        self._last_t: float | None = None
        self._clock: TickClock | None = None
        self._finished = False

    @property
    def state(self) -> str | None:
        if self._state_index < 0:
            return None
        return self.transitions[self._state_index][0]

    def push(self, sample: WrenchSample) -> list[Event]:
        """Feed one sample and return the events it triggered.

        Raises:
            ValidationError: If the pipeline is finished or a state receives
                no samples
            NonMonotoneTimeError: If a sample does not advance in time
        """
        if self._finished:
            raise ValidationError("Online pipeline already finished")
        t = float(sample.t)
        if self._last_t is not None and t <= self._last_t:
            raise NonMonotoneTimeError(
                f"Sample at t={t} does not follow t={self._last_t}"
            )
        start = len(self.events)

        # Close every state the sample has moved past
        target = self._state_for(t)
        if self._state_index < 0:
            self._begin_state(0)
            if self.sampler is not None:
                # Ticks count from the first sample
                self._clock = TickClock(self.config.rate_hz, t0=t)
        while self._state_index < target:
            self._end_state()
            self._begin_state(self._state_index + 1)

        values = sample[1:]
        for axis, value in zip(AXES, values, strict=True):
            self._record(self._chains[axis].push(t, value))
        self._state_samples += 1
        self._last_t = t

        # Snapshots for every tick up to this sample
        if self._clock is not None:
            for tick in self._clock.due(t):
                self._snapshot(tick, final=False)
        return self.events[start:]

    def finish(self) -> list[Event]:
        """Close the last state and return the events that triggered."""
        if self._finished:
            return []
        start = len(self.events)
        if self._state_index >= 0:
            self._end_state()
        self._finished = True
        logger.debug(
            f"Online run of '{self.grammar.trial_key}' finished with "
            f"{len(self.events)} events"
        )
        return self.events[start:]

    def _state_for(self, t: float) -> int:
        index = 0
        for i, (_, t_start) in enumerate(self.transitions):
            if t_start <= t:
                index = i
        # States never reopen
        return max(index, self._state_index)

    def _begin_state(self, index: int) -> None:
        self._state_index = index
        self._state_samples = 0
        state = self.transitions[index][0]
        self._sentences = {(layer, axis): [] for layer in Layer for axis in AXES}
        if state not in self.grammar.states:
            self.grammar.states.append(state)
        # Bump so the sampler sees a changed grammar
        self.version += 1

    def _end_state(self) -> None:
        state = self.state
        assert state is not None
        if self._state_samples == 0:
            raise ValidationError(
                f"State '{state}' has no samples",
                field_name="transitions",
                suggestions=["Check transition times against the sampled time range"],
            )
        # Drain every stage before the sentences are final
        for axis in AXES:
            self._record(self._chains[axis].flush())
        for (layer, axis), labels in self._sentences.items():
            self.grammar.set_sentence(
                state, GrammarSentence(axis=axis, layer=layer, labels=tuple(labels))
            )
        self._completed.append(state)
        self.version += 1
        if self.sampler is not None and self._last_t is not None:
            self._snapshot(self._last_t, final=True)

    def _record(self, labels: list[TaggedLabel]) -> None:
        if not labels:
            return
        state = self.state
        assert state is not None
        touched = set()
        for label in labels:
            self._sentences[(label.layer, label.axis)].append(label)
            touched.add((label.layer, label.axis))
            self._emit(LabelEvent(state=state, label=label))
        for layer, axis in touched:
            self.grammar.set_sentence(
                state,
                GrammarSentence(
                    axis=axis, layer=layer, labels=tuple(self._sentences[(layer, axis)])
                ),
            )
        self.version += 1

    def _snapshot(self, t: float, final: bool) -> None:
        assert self.sampler is not None
        state = self.state
        assert state is not None
        # Ground truth is the state or, for abnormality models, the outcome
        truth = state if self.sampler.regime is Regime.NOMINAL else self.grammar.outcome
        snapshot = self.sampler.tick(
            t,
            self.grammar,
            state,
            self._completed,
            version=self.version,
            truth=truth,
            final=final,
        )
        self._emit(snapshot)

    def _emit(self, event: Event) -> None:
        self.events.append(event)
        if self.on_event is not None:
            self.on_event(event)


def run_online(
    trial: WrenchTrial,
    config: PipelineConfig,
    bundle: ModelBundle | None = None,
    k: float = 0.70,
    on_event: Callable[[Event], None] | None = None,
) -> OnlineResult:
    """Replay a trial sample by sample.

    Without a model only label events are produced; with one, inference
    snapshots are interleaved at ``config.rate_hz``.
    """
    sampler = GrammarSampler(bundle, k) if bundle is not None else None
    pipeline = OnlinePipeline(
        config,
        trial.transitions,
        trial.rate_hz,
        trial_key=trial.key,
        arm_id=trial.arm_id,
        outcome=trial.outcome,
        sampler=sampler,
        on_event=on_event,
    )
    for sample in trial.samples():
        pipeline.push(sample)
    pipeline.finish()
    return OnlineResult(grammar=pipeline.grammar, events=pipeline.events)
