"""Grammar encoding layers and the filter pipes between them."""

from .behaviors import behave, behave_symbols
from .compositions import compose, compose_symbols
from .filterpipe import DEFAULT_HOLD, DEFAULT_MERGE_RATIO, FilterPipe, filter_labels
from .pairing import PairBuffer, pair_labels
from .primitives import (
    PrimitiveStream,
    calibrate_gradients,
    calibrate_task,
    classify_gradient,
    classify_slope,
    extract_primitives,
    fit_window,
    segment_adaptive,
    window_length,
)

__all__ = [
    "DEFAULT_HOLD",
    "DEFAULT_MERGE_RATIO",
    "FilterPipe",
    "PairBuffer",
    "PrimitiveStream",
    "behave",
    "behave_symbols",
    "calibrate_gradients",
    "calibrate_task",
    "classify_gradient",
    "classify_slope",
    "compose",
    "compose_symbols",
    "extract_primitives",
    "filter_labels",
    "fit_window",
    "pair_labels",
    "segment_adaptive",
    "window_length",
]
