"""Online introspection commands: corpus evaluation and live monitoring."""

import json
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import IO, Any

import click
from rich.console import Console
from rich.table import Table

from ...classifier.persistence import load_model
from ...models.exceptions import MalformedRecordError, RcbhtError
from ...monitor.evaluation import (
    ConfidenceReport,
    EvaluationResult,
    build_reports,
    evaluate_online,
    traces_from_snapshots,
)
from ...monitor.sampler import GrammarSampler, InferenceSnapshot
from ...pipeline.online import Event, OnlinePipeline, event_to_dict
from ...signal.loader import load_corpus, load_trial, read_sample_stream
from ...utils.config import read_json_document
from ..common import (
    RATE_CHOICES,
    exit_unexpected,
    exit_with_error,
    load_thresholds,
    parse_rate,
    pipeline_config,
    resolve_settings,
    threshold_options,
)

logger = logging.getLogger(__name__)

_VERDICT_STYLES = {"certain": "green", "uncertain": "yellow", "inadmissible": "red"}


def create_report_table(reports: Sequence[ConfidenceReport]) -> Table:
    """Table of per-(threshold, class) confidence statistics."""
    table = Table(
        title="📈 Online introspection", show_header=True, header_style="bold blue"
    )
    for name in ("Type", "Thresh", "Class"):
        table.add_column(name, style="cyan", no_wrap=True)
    for name in ("Acc", "OverallPr", "ClassPr", "minC", "meanC", "maxC", "AvgLen"):
        table.add_column(name, justify="right")
    for name in ("minM", "meanM", "maxM"):
        table.add_column(name, justify="right", style="green")

    for r in reports:
        table.add_row(
            r.regime,
            f"{r.k:g}",
            r.class_label,
            f"{r.accuracy:.2f}",
            f"{r.overall_prob:.2f}",
            f"{r.class_prob:.2f}",
            f"{r.c_min:g}",
            f"{r.c_mean:.2f}",
            f"{r.c_max:g}",
            f"{r.avg_length:.2f}",
            f"{r.m_min:.2f}",
            f"{r.m_mean:.2f}",
            f"{r.m_max:.2f}",
        )
    return table


def _stream_metadata(sidecar: Path) -> dict[str, Any]:
    """Transitions and trial metadata for a sample stream.

    Raises:
        MalformedRecordError: If the sidecar lacks transitions or a rate
    """
    document = read_json_document(sidecar)
    try:
        return {
            "transitions": [(str(s), float(t)) for s, t in document["transitions"]],
            "sample_rate_hz": float(document["rate_hz"]),
            "trial_key": str(document.get("trial_key", sidecar.stem)),
            "arm_id": str(document.get("arm_id", "right")),
            "outcome": str(document.get("outcome", "nominal")),
        }
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedRecordError(
            f"Malformed sidecar {sidecar.name}: {e}",
            path=str(sidecar),
            suggestions=["Sidecar needs rate_hz and transitions"],
            original_error=e,
        ) from None


@click.command()
@click.argument("corpus_dir", type=click.Path(file_okay=False))
@click.option(
    "--model",
    "model_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Model file written by 'rcbht train'",
)
@threshold_options
@click.option(
    "--rate",
    type=click.Choice(RATE_CHOICES),
    callback=parse_rate,
    help="Tick rate in Hz (default from config: 10)",
)
@click.option(
    "--k",
    "ks",
    type=float,
    multiple=True,
    help="Confidence threshold in [0.5, 1); repeat for several",
)
@click.option("--merge-ratio", type=float, help="Filter merge ratio (> 1)")
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    help="Write the report as CSV (metadata goes next to it as JSON)",
)
@click.pass_context
def evaluate(
    ctx: click.Context,
    corpus_dir: str,
    model_path: str,
    thresholds_path: str | None,
    task: str,
    rate: int | None,
    ks: tuple[float, ...],
    merge_ratio: float | None,
    output: str | None,
) -> None:
    """Replay every trial in CORPUS_DIR online and report confidence per class."""
    try:
        settings = resolve_settings(
            ctx,
            rate_hz=rate,
            merge_ratio=merge_ratio,
            confidence_thresholds=list(ks) or None,
        )
        config = pipeline_config(settings, load_thresholds(ctx, thresholds_path, task))
        # Load the model and the corpus to replay
        bundle = load_model(Path(model_path))
        trials = load_corpus(Path(corpus_dir), settings["schema"])

        click.echo(f"🔄 Replaying {len(trials)} trials at {config.rate_hz} Hz...")
        result = evaluate_online(
            trials, bundle, config, settings["confidence_thresholds"]
        )
        # Display results
        Console().print(create_report_table(result.reports))
        # Export to CSV if requested
        if output:
            result.to_csv(Path(output))
            click.echo(click.style(f"✅ Report written to {output}", fg="green"))
    except RcbhtError as e:
        exit_with_error(e)
    except Exception as e:
        exit_unexpected("evaluate", e)


@click.command()
@click.argument("trial", required=False, type=click.Path(dir_okay=False))
@click.option(
    "--model",
    "model_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Model file written by 'rcbht train'",
)
@click.option(
    "--sidecar",
    type=click.Path(exists=True, dir_okay=False),
    help="Trial metadata (transitions, rate_hz) when streaming from stdin",
)
@threshold_options
@click.option(
    "--rate",
    type=click.Choice(RATE_CHOICES),
    callback=parse_rate,
    help="Tick rate in Hz (default from config: 10)",
)
@click.option(
    "--k",
    default=0.70,
    show_default=True,
    type=float,
    help="Confidence threshold in [0.5, 1)",
)
@click.option("--merge-ratio", type=float, help="Filter merge ratio (> 1)")
@click.option(
    "--events",
    type=click.Path(dir_okay=False, allow_dash=True),
    help="Write label events and snapshots as NDJSON ('-' for stdout)",
)
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    help="Write the report as CSV",
)
@click.pass_context
def monitor(
    ctx: click.Context,
    trial: str | None,
    model_path: str,
    sidecar: str | None,
    thresholds_path: str | None,
    task: str,
    rate: int | None,
    k: float,
    merge_ratio: float | None,
    events: str | None,
    output: str | None,
) -> None:
    """Classify a trial online as it is replayed or streamed.

    TRIAL is a trial CSV with its sidecar. Without TRIAL (or with '-'),
    samples are read line by line from standard input in the same row format
    and --sidecar supplies the transitions.
    """
    event_stream: IO[str] | None = None
    try:
        settings = resolve_settings(ctx, rate_hz=rate, merge_ratio=merge_ratio)
        config = pipeline_config(
            settings, load_thresholds(ctx, thresholds_path, task)
        ).online()
        sampler = GrammarSampler(load_model(Path(model_path)), k)

        # Events share stdout only when asked to
        if events == "-":
            event_stream = click.get_text_stream("stdout")
        elif events:
            Path(events).parent.mkdir(parents=True, exist_ok=True)
            event_stream = open(events, "w", encoding="utf-8")

        def on_event(event: Event) -> None:
            if event_stream is not None:
                event_stream.write(json.dumps(event_to_dict(event), sort_keys=True))
                event_stream.write("\n")
            if events != "-" and isinstance(event, InferenceSnapshot):
                verdict = event.verdict.value
                marker = "■" if event.final else "·"
                click.echo(
                    f"{marker} t={event.t:8.3f}  {event.state:<12} -> "
                    f"{event.predicted:<12} p={event.probability:.2f}  "
                    + click.style(verdict, fg=_VERDICT_STYLES[verdict])
                )

        # Replay a recorded trial or stream samples from stdin
        if trial and trial != "-":
            source = load_trial(Path(trial), settings["schema"])
            pipeline = OnlinePipeline(
                config,
                source.transitions,
                source.rate_hz,
                trial_key=source.key,
                arm_id=source.arm_id,
                outcome=source.outcome,
                sampler=sampler,
                on_event=on_event,
            )
            samples = source.samples()
        else:
            if not sidecar:
                raise click.UsageError("Streaming from stdin needs --sidecar")
            metadata = _stream_metadata(Path(sidecar))
            pipeline = OnlinePipeline(
                config, sampler=sampler, on_event=on_event, **metadata
            )
            samples = read_sample_stream(click.get_text_stream("stdin"))

        # Feed samples through the pipeline
        for sample in samples:
            pipeline.push(sample)
        pipeline.finish()

        # Summarize the snapshots like an offline evaluation
        snapshots = [e for e in pipeline.events if isinstance(e, InferenceSnapshot)]
        traces = traces_from_snapshots(
            pipeline.grammar.trial_key, snapshots, sampler.regime
        )
        reports = build_reports(traces, [k], sampler.regime)
        if events != "-":
            Console().print(create_report_table(reports))
        if output:
            EvaluationResult(
                traces=traces,
                reports=reports,
                rate_hz=config.rate_hz,
                regime=sampler.regime,
                metadata={
                    "regime": sampler.regime.value,
                    "rate_hz": config.rate_hz,
                    "thresholds": [k],
                    "trial": pipeline.grammar.trial_key,
                },
            ).to_csv(Path(output))
            click.echo(click.style(f"✅ Report written to {output}", fg="green"))
    except RcbhtError as e:
        exit_with_error(e)
    except click.ClickException:
        raise
    except Exception as e:
        exit_unexpected("monitor", e)
    finally:
        if event_stream is not None and events != "-":
            event_stream.close()

