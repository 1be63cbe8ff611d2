"""Domain models for wrench trials, grammar labels and errors."""

from .exceptions import (
    AllEmptyError,
    ClassifierError,
    ConfigurationError,
    DegenerateTargetsError,
    DegenerateWindowError,
    EmptyCorpusError,
    EmptySpecError,
    EmptyTraceError,
    EncodingError,
    FeatureError,
    InconsistentAlphabetError,
    InsufficientDataError,
    InvalidPairwiseMatrixError,
    MalformedRecordError,
    MissingTransitionsError,
    ModelMismatchError,
    MonitorError,
    NoConvergenceError,
    NonAdjacentError,
    NonMonotoneTimeError,
    OutOfOrderError,
    RcbhtError,
    SchemaError,
    SignalError,
    SingleClassError,
    TooFewSamplesPerClassError,
    UntrainedModelError,
    ValidationError,
)
from .grammar import GrammarSentence, TrialGrammar
from .labels import (
    AXES,
    PAD_CODE,
    BehaviorSymbol,
    CompositionSymbol,
    Layer,
    LinearFit,
    LowLevelBehavior,
    MotionComposition,
    PrimitiveLabel,
    PrimitiveSymbol,
    TaggedLabel,
)
from .thresholds import GradientThresholds, TaskThresholds
from .trial import SNAP_STATES, Outcome, StateSegment, WrenchSample, WrenchTrial

__all__ = [
    # Exceptions
    "RcbhtError",
    "ConfigurationError",
    "ValidationError",
    "SchemaError",
    "SignalError",
    "MalformedRecordError",
    "NonMonotoneTimeError",
    "MissingTransitionsError",
    "EmptySpecError",
    "EncodingError",
    "InsufficientDataError",
    "DegenerateWindowError",
    "NonAdjacentError",
    "OutOfOrderError",
    "FeatureError",
    "AllEmptyError",
    "InconsistentAlphabetError",
    "ClassifierError",
    "SingleClassError",
    "NoConvergenceError",
    "UntrainedModelError",
    "DegenerateTargetsError",
    "InvalidPairwiseMatrixError",
    "TooFewSamplesPerClassError",
    "MonitorError",
    "ModelMismatchError",
    "EmptyTraceError",
    "EmptyCorpusError",
    # Labels
    "AXES",
    "PAD_CODE",
    "Layer",
    "PrimitiveSymbol",
    "CompositionSymbol",
    "BehaviorSymbol",
    "LinearFit",
    "TaggedLabel",
    "PrimitiveLabel",
    "MotionComposition",
    "LowLevelBehavior",
    # Trials and grammars
    "SNAP_STATES",
    "Outcome",
    "WrenchSample",
    "WrenchTrial",
    "StateSegment",
    "GradientThresholds",
    "TaskThresholds",
    "GrammarSentence",
    "TrialGrammar",
]
