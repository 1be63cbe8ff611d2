"""Whole-trial grammar encoding."""

import logging
from collections.abc import Sequence
from pathlib import Path

from ..encoding.behaviors import behave
from ..encoding.compositions import compose
from ..encoding.filterpipe import filter_labels
from ..encoding.pairing import pair_labels
from ..encoding.primitives import extract_primitives, segment_adaptive
from ..features.matrix import FeatureLayout, FeatureMatrix, Regime, build_features
from ..models.exceptions import ValidationError
from ..models.grammar import GrammarSentence, TrialGrammar
from ..models.labels import AXES, Layer, TaggedLabel
from ..models.trial import StateSegment, WrenchTrial
from ..signal.loader import group_arms
from ..signal.segmentation import segment_states
from ..utils.config import read_json_document, write_json_document
from .config import PipelineConfig

logger = logging.getLogger(__name__)


def encode_segment(
    segment: StateSegment, axis: str, config: PipelineConfig, window: int
) -> dict[Layer, list[TaggedLabel]]:
    """Filtered labels of every layer for one state segment of one axis."""
    times, values = segment.times, segment.axis(axis)
    thresholds = config.thresholds[axis]
    if config.segmentation == "adaptive":
        primitives = segment_adaptive(
            times, values, axis, thresholds, r2_threshold=config.r2_threshold
        )
    else:
        primitives = extract_primitives(times, values, axis, thresholds, window)

    prim = filter_labels(primitives, config.merge_ratio)
    mc = filter_labels(pair_labels(prim, compose), config.merge_ratio)
    llb = filter_labels(pair_labels(mc, behave), config.merge_ratio)
    return {Layer.PRIM: prim, Layer.MC: mc, Layer.LLB: llb}


def run_offline(trial: WrenchTrial, config: PipelineConfig) -> TrialGrammar:
    """Encode a whole trial into per-(state, layer, axis) sentences.

    Raises:
        MissingTransitionsError: If the trial has no state transitions
        KeyError: If the thresholds lack an axis
    """
    window = config.window_for(trial.rate_hz)
    grammar = TrialGrammar(
        trial_key=trial.key, arm_id=trial.arm_id, outcome=trial.outcome, states=[]
    )
    for segment in segment_states(trial):
        for axis in AXES:
            for layer, labels in encode_segment(segment, axis, config, window).items():
                grammar.set_sentence(
                    segment.state_id,
                    GrammarSentence(axis=axis, layer=layer, labels=tuple(labels)),
                )
    logger.debug(f"Encoded {trial!r} into {len(grammar.states)} states offline")
    return grammar


def encode_corpus(
    trials: Sequence[WrenchTrial],
    config: PipelineConfig,
    regime: Regime | str,
    layout: FeatureLayout | None = None,
) -> tuple[list[TrialGrammar], FeatureMatrix]:
    """Encode every trial and build the feature matrix of a regime.

    Arms of a two-arm trial are encoded together, left before right.

    Raises:
        ValidationError: If a trial repeats an arm or its arms disagree on
            the outcome
    """
    groups = group_arms(list(trials))
    grammars = [run_offline(arm, config) for arms in groups for arm in arms]
    logger.info(f"Encoded {len(grammars)} arms of {len(groups)} trials offline")
    return grammars, build_features(grammars, regime, layout)


def save_grammars(grammars: Sequence[TrialGrammar], path: Path) -> Path:
    """Write trial grammars as one JSON document."""
    path = Path(path)
    write_json_document(path, {"grammars": [g.to_dict() for g in grammars]})
    logger.debug(f"Wrote {len(grammars)} grammars to {path}")
    return path


def load_grammars(path: Path) -> list[TrialGrammar]:
    """Read a document written by :func:`save_grammars`.

    Raises:
        ConfigurationError: If the file is unreadable or not JSON
        ValidationError: If the document holds no grammar list
    """
    document = read_json_document(Path(path))
    try:
        return [TrialGrammar.from_dict(item) for item in document["grammars"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(
            f"Malformed grammars file {Path(path).name}: {e}",
            field_name="grammars",
            suggestions=["Regenerate it with 'rcbht encode --grammars'"],
            original_error=e,
        ) from None
