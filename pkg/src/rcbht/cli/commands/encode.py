"""Encoding commands: feature matrices and grammar maps."""

import logging
from pathlib import Path

import click
from rich.console import Console

from ...classifier.persistence import load_model
from ...features.matrix import Regime
from ...models.exceptions import RcbhtError
from ...models.grammar import TrialGrammar
from ...models.labels import Layer
from ...pipeline.offline import encode_corpus, load_grammars, run_offline, save_grammars
from ...pipeline.render import map_to_table, render_grammar_map, save_map_image
from ...signal.loader import load_corpus
from ...utils.config import SEGMENTATION_MODES
from ..common import (
    exit_unexpected,
    exit_with_error,
    load_thresholds,
    pipeline_config,
    resolve_settings,
    threshold_options,
)

logger = logging.getLogger(__name__)


@click.command()
@click.argument("corpus_dir", type=click.Path(file_okay=False))
@click.option(
    "--output",
    "-o",
    required=True,
    type=click.Path(dir_okay=False),
    help="Features CSV to write",
)
@click.option(
    "--regime",
    type=click.Choice([r.value for r in Regime]),
    default=Regime.NOMINAL.value,
    show_default=True,
    help="Per-state rows labeled by state, or per-trial rows labeled by outcome",
)
@threshold_options
@click.option("--segmentation", type=click.Choice(SEGMENTATION_MODES))
@click.option("--merge-ratio", type=float, help="Filter merge ratio (> 1)")
@click.option("--window-seconds", type=float, help="Primitive window length")
@click.option(
    "--model",
    "model_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Reuse the feature layout stored in a model file",
)
@click.option(
    "--grammars",
    "grammars_path",
    type=click.Path(dir_okay=False),
    help="Also write the encoded grammars as JSON",
)
@click.pass_context
def encode(
    ctx: click.Context,
    corpus_dir: str,
    output: str,
    regime: str,
    thresholds_path: str | None,
    task: str,
    segmentation: str | None,
    merge_ratio: float | None,
    window_seconds: float | None,
    model_path: str | None,
    grammars_path: str | None,
) -> None:
    """Encode every trial in CORPUS_DIR and write its feature matrix."""
    try:
        settings = resolve_settings(
            ctx,
            segmentation=segmentation,
            merge_ratio=merge_ratio,
            window_seconds=window_seconds,
        )
        config = pipeline_config(settings, load_thresholds(ctx, thresholds_path, task))
        # Reuse the layout a model was trained with
        layout = load_model(Path(model_path)).layout if model_path else None

        trials = load_corpus(Path(corpus_dir), settings["schema"])
        grammars, features = encode_corpus(trials, config, regime, layout)
        features.to_csv(Path(output))
        if grammars_path:
            save_grammars(grammars, Path(grammars_path))

        click.echo(
            click.style(
                f"✅ Encoded {len(trials)} trials into {features.n_samples} x "
                f"{features.n_features} {regime} features: {output}",
                fg="green",
            )
        )
        # Count by class
        counts = {label: features.labels.count(label) for label in features.classes}
        click.echo(
            "   Classes: " + ", ".join(f"{k}: {v}" for k, v in counts.items())
        )
    except RcbhtError as e:
        exit_with_error(e)
    except Exception as e:
        exit_unexpected("encode", e)


@click.command()
@click.argument("source", type=click.Path(exists=True))
@click.option(
    "--layer",
    type=click.Choice([layer.value for layer in Layer]),
    default=Layer.LLB.value,
    show_default=True,
    help="Grammar layer to draw",
)
@threshold_options
@click.option(
    "--image",
    type=click.Path(dir_okay=False),
    help="Save the map as an image (needs the plot extra) instead of text",
)
@click.option("--plain", is_flag=True, help="Print an uncolored text grid")
@click.pass_context
def report(
    ctx: click.Context,
    source: str,
    layer: str,
    thresholds_path: str | None,
    task: str,
    image: str | None,
    plain: bool,
) -> None:
    """Draw the grammar map of SOURCE.

    SOURCE is a corpus directory (encoded offline first) or a grammars JSON
    file written by 'rcbht encode --grammars'.
    """
    try:
        path = Path(source)
        grammars: list[TrialGrammar]
        # Corpus directories are encoded first
        if path.is_dir():
            settings = resolve_settings(ctx)
            config = pipeline_config(
                settings, load_thresholds(ctx, thresholds_path, task)
            )
            trials = load_corpus(path, settings["schema"])
            grammars = [run_offline(trial, config) for trial in trials]
        else:
            grammars = load_grammars(path)

        grammar_map = render_grammar_map(grammars, layer)
        if image:
            save_map_image(grammar_map, Path(image))
            click.echo(
                click.style(
                    f"✅ Saved {grammar_map.n_rows}-row {layer} map to {image}",
                    fg="green",
                )
            )
        elif plain:
            click.echo(grammar_map.to_text())
        else:
            Console().print(map_to_table(grammar_map))
    except RcbhtError as e:
        exit_with_error(e)
    except Exception as e:
        exit_unexpected("report", e)
