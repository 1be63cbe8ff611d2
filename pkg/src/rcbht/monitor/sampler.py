"""Fixed-rate sampling of an evolving grammar through a trained model."""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..classifier.persistence import ModelBundle
from ..features.matrix import FeatureLayout, Regime
from ..models.exceptions import ModelMismatchError, ValidationError
from ..models.grammar import TrialGrammar
from ..utils.config import TICK_RATES
from .verdicts import Verdict, check_threshold, verdict_for

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InferenceSnapshot:
    """Classifier output at one tick.

    ``verdict`` is judged against the sampler's threshold; use
    :meth:`verdict_at` for others.
    """

    t: float
    state: str
    predicted: str
    probs: tuple[float, ...]
    verdict: Verdict
    truth: str | None = None
    final: bool = False

    @property
    def probability(self) -> float:
        """Probability of the predicted class."""
        return max(self.probs)

    @property
    def correct(self) -> bool:
        return self.truth is not None and self.predicted == self.truth

    def verdict_at(self, k: float) -> Verdict:
        return verdict_for(self.probs, k)

    def certain_and_correct(self, k: float) -> bool:
        return self.correct and self.verdict_at(k) is Verdict.CERTAIN

    def to_dict(self) -> dict[str, Any]:
        return {
            "t": self.t,
            "state": self.state,
            "predicted": self.predicted,
            "probs": list(self.probs),
            "verdict": self.verdict.value,
            "truth": self.truth,
            "correct": self.correct,
            "final": self.final,
        }


@dataclass
class InferenceTrace:
    """Snapshots of one (sub)task in time order."""

    key: str
    truth: str
    snapshots: list[InferenceSnapshot] = field(default_factory=list)

    def append(self, snapshot: InferenceSnapshot) -> None:
        if self.snapshots and snapshot.t < self.snapshots[-1].t:
            raise ValidationError(
                f"Snapshot at {snapshot.t} precedes the trace's last tick "
                f"at {self.snapshots[-1].t}",
                field_name="t",
            )
        self.snapshots.append(snapshot)

    @property
    def length(self) -> int:
        """Task length L in ticks."""
        return len(self.snapshots)

    @property
    def final(self) -> InferenceSnapshot | None:
        return self.snapshots[-1] if self.snapshots else None

    @property
    def final_correct(self) -> bool:
        final = self.final
        return final is not None and final.predicted == self.truth

    def certain_count(self, k: float) -> int:
        """Certain-and-correct ticks C at threshold ``k``."""
        return sum(s.certain_and_correct(k) for s in self.snapshots)


class TickClock:
    """Tick times ``t0 + n / rate_hz`` for n = 1, 2, ... as time advances."""

    def __init__(self, rate_hz: int, t0: float = 0.0) -> None:
        if rate_hz not in TICK_RATES:
            raise ValidationError(
                f"Tick rate must be one of {TICK_RATES} Hz",
                field_name="rate_hz",
                field_value=rate_hz,
            )
        self.rate_hz = rate_hz
        self.t0 = t0
        self._count = 1

    @property
    def next_tick(self) -> float:
        return self.t0 + self._count / self.rate_hz

    def due(self, t: float) -> Iterator[float]:
        """Yield the ticks that have elapsed by time ``t``."""
        while self.next_tick <= t:
            tick = self.next_tick
            self._count += 1
            yield tick


class GrammarSampler:
    """Classifies a grammar snapshot per tick with a trained model.

    The feature vector is rebuilt only when the grammar version or state
    changes; ticks in between reuse the latest classification.
    """

    def __init__(self, bundle: ModelBundle, k: float = 0.70) -> None:
        if bundle.layout is None:
            raise ModelMismatchError(
                "Model file carries no feature layout",
                suggestions=["Retrain the model with 'rcbht train' on a features file"],
            )
        if len(bundle.layout.arms) != 1:
            raise ModelMismatchError(
                f"Online sampling supports single-arm models, got arms "
                f"{list(bundle.layout.arms)}",
                suggestions=["Train a separate model per arm for online use"],
            )
        if not bundle.model.has_probabilities:
            raise ModelMismatchError(
                "Model has no probability estimates",
                suggestions=["Retrain with probability estimates enabled"],
            )
        self.model = bundle.model
        self.layout: FeatureLayout = bundle.layout
        self.arm = bundle.layout.arms[0]
        self.k = check_threshold(k)
        self._cache_key: tuple[int, str, str] | None = None
        self._cached: tuple[str, tuple[float, ...]] | None = None
        self.classifications = 0

    @property
    def regime(self) -> Regime:
        return self.layout.regime

    def classify(
        self,
        grammar: TrialGrammar,
        state: str,
        completed: Iterable[str],
        version: int = -1,
    ) -> tuple[str, tuple[float, ...]]:
        """Predicted class and coupled probabilities for a grammar snapshot.

        ``version`` identifies the snapshot; a negative version disables caching.

        Raises:
            ModelMismatchError: If the grammar's arm differs from the model's
        """
        key = (version, state, grammar.trial_key)
        if version >= 0 and key == self._cache_key and self._cached is not None:
            return self._cached

        # Cache miss: encode and classify afresh
        if grammar.arm_id != self.arm:
            raise ModelMismatchError(
                f"Model was trained on arm '{self.arm}', "
                f"trial is arm '{grammar.arm_id}'"
            )
        done = list(completed)
        vector = self.layout.encode(
            {self.arm: grammar},
            # Nominal models see only the current state
            state=state if self.regime is Regime.NOMINAL else None,
            completed=done,
        )
        probs = self.model.predict_proba(vector[np.newaxis, :])[0]
        result = (
            self.model.classes_[int(np.argmax(probs))],
            tuple(float(p) for p in probs),
        )
        self.classifications += 1
        self._cache_key, self._cached = key, result
        return result

    def tick(
        self,
        t: float,
        grammar: TrialGrammar,
        state: str,
        completed: Iterable[str],
        version: int = -1,
        truth: str | None = None,
        final: bool = False,
    ) -> InferenceSnapshot:
        """Snapshot of the grammar as of time ``t``."""
        predicted, probs = self.classify(grammar, state, completed, version)
        return InferenceSnapshot(
            t=t,
            state=state,
            predicted=predicted,
            probs=probs,
            verdict=verdict_for(probs, self.k),
            truth=truth,
            final=final,
        )
