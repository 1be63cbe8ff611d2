"""Fixed-length ordinal features from grammar sentences."""

from .encoder import decode_codes, encode_partial, encode_symbols, resample_sentences
from .matrix import (
    ANY_STATE,
    LABEL_COLUMN,
    FeatureLayout,
    FeatureMatrix,
    Regime,
    build_features,
    infer_layout,
)

__all__ = [
    "ANY_STATE",
    "LABEL_COLUMN",
    "FeatureLayout",
    "FeatureMatrix",
    "Regime",
    "build_features",
    "decode_codes",
    "encode_partial",
    "encode_symbols",
    "infer_layout",
    "resample_sentences",
]
