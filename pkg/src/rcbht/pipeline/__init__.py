"""Offline and online grammar pipelines and grammar map rendering."""

from .config import Mode, PipelineConfig
from .offline import (
    encode_corpus,
    encode_segment,
    load_grammars,
    run_offline,
    save_grammars,
)
from .online import (
    AxisChain,
    Event,
    LabelEvent,
    OnlinePipeline,
    OnlineResult,
    event_to_dict,
    run_online,
    save_event_log,
    write_event_log,
)
from .render import GrammarMap, map_to_table, render_grammar_map, save_map_image

__all__ = [
    "AxisChain",
    "Event",
    "GrammarMap",
    "LabelEvent",
    "Mode",
    "OnlinePipeline",
    "OnlineResult",
    "PipelineConfig",
    "encode_corpus",
    "encode_segment",
    "event_to_dict",
    "load_grammars",
    "map_to_table",
    "render_grammar_map",
    "run_offline",
    "run_online",
    "save_event_log",
    "save_grammars",
    "save_map_image",
    "write_event_log",
]
