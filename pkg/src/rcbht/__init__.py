"""rcbht - Hierarchical action grammars from force-torque streams.

rcbht turns 6-axis wrench streams into primitive, motion-composition and
low-level-behavior sentences, offline or sample by sample, and classifies
task state with multi-class SVMs whose calibrated probabilities drive online
introspection.
"""

__version__ = "0.1.0"

from .classifier import (
    CvReport,
    KernelSpec,
    ModelBundle,
    SvmClassifier,
    cross_validate,
    load_model,
    save_model,
)
from .encoding import calibrate_task
from .features import FeatureLayout, FeatureMatrix, Regime, build_features
from .models import (
    AXES,
    ConfigurationError,
    Layer,
    RcbhtError,
    TaskThresholds,
    TrialGrammar,
    ValidationError,
    WrenchSample,
    WrenchTrial,
)
from .monitor import GrammarSampler, InferenceSnapshot, Verdict, metric_m
from .pipeline import (
    OnlinePipeline,
    PipelineConfig,
    encode_corpus,
    render_grammar_map,
    run_offline,
    run_online,
)
from .signal import generate_snap_corpus, load_corpus, load_trial, write_trial

__all__ = [
    # Version
    "__version__",
    # Trials and grammars
    "AXES",
    "Layer",
    "TaskThresholds",
    "TrialGrammar",
    "WrenchSample",
    "WrenchTrial",
    "generate_snap_corpus",
    "load_corpus",
    "load_trial",
    "write_trial",
    "calibrate_task",
    # Pipelines
    "PipelineConfig",
    "OnlinePipeline",
    "run_offline",
    "run_online",
    "encode_corpus",
    "render_grammar_map",
    # Features and classification
    "FeatureLayout",
    "FeatureMatrix",
    "Regime",
    "build_features",
    "SvmClassifier",
    "KernelSpec",
    "CvReport",
    "ModelBundle",
    "cross_validate",
    "save_model",
    "load_model",
    # Introspection
    "GrammarSampler",
    "InferenceSnapshot",
    "Verdict",
    "metric_m",
    # Exceptions
    "RcbhtError",
    "ConfigurationError",
    "ValidationError",
]
