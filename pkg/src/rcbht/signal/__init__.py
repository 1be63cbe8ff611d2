"""Trial ingestion, state segmentation and synthetic trials."""

from .loader import (
    group_arms,
    load_corpus,
    load_trial,
    read_sample_stream,
    resolve_schema,
    write_trial,
)
from .segmentation import segment_states
from .synthetic import (
    ProfileSegment,
    SyntheticSpec,
    generate_snap_corpus,
    generate_synthetic_trial,
    ground_truth_symbols,
    snap_assembly_spec,
)

__all__ = [
    "ProfileSegment",
    "SyntheticSpec",
    "generate_snap_corpus",
    "generate_synthetic_trial",
    "ground_truth_symbols",
    "group_arms",
    "load_corpus",
    "load_trial",
    "read_sample_stream",
    "resolve_schema",
    "segment_states",
    "snap_assembly_spec",
    "write_trial",
]
