"""Corpus commands: synthetic generation and gradient calibration."""

import logging
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from ...encoding.primitives import calibrate_task
from ...models.exceptions import RcbhtError
from ...models.thresholds import TaskThresholds
from ...signal.loader import load_corpus, write_trial
from ...signal.synthetic import generate_snap_corpus
from ..common import config_manager, exit_unexpected, exit_with_error, resolve_settings

logger = logging.getLogger(__name__)


def create_thresholds_table(thresholds: TaskThresholds) -> Table:
    table = Table(
        title=f"📐 Gradient thresholds: {thresholds.task}",
        show_header=True,
        header_style="bold blue",
    )
    table.add_column("Axis", style="cyan", no_wrap=True)
    for name in ("eps_const", "cut_small", "cut_medium", "cut_large"):
        table.add_column(name, justify="right")
    for axis, values in thresholds.axes.items():
        table.add_row(
            axis,
            *(f"{value:.4g}" for value in values.to_dict().values()),
        )
    return table


@click.command()
@click.argument("output_dir", type=click.Path(file_okay=False))
@click.option("--nominal", default=40, show_default=True, help="Nominal trials")
@click.option("--abnormal", default=0, show_default=True, help="Abnormal trials")
@click.option(
    "--sample-rate",
    default=200.0,
    show_default=True,
    help="Sampling rate of the generated trials in Hz",
)
@click.option(
    "--noise", default=0.02, show_default=True, help="Gaussian noise std (N, N·m)"
)
@click.option(
    "--arm",
    "arms",
    multiple=True,
    default=("right",),
    show_default=True,
    help="Arm ids; repeat for two-arm trials",
)
@click.pass_context
def synth(
    ctx: click.Context,
    output_dir: str,
    nominal: int,
    abnormal: int,
    sample_rate: float,
    noise: float,
    arms: tuple[str, ...],
) -> None:
    """Generate a seeded snap-assembly corpus into OUTPUT_DIR."""
    try:
        settings = resolve_settings(ctx)
        trials = generate_snap_corpus(
            n_nominal=nominal,
            n_abnormal=abnormal,
            seed=int(settings["seed"]),
            rate_hz=sample_rate,
            noise_std=noise,
            arms=arms,
        )
        directory = Path(output_dir)
        # Two-arm trials get one file per arm
        for trial in trials:
            stem = trial.key if len(arms) == 1 else f"{trial.key}-{trial.arm_id}"
            write_trial(trial, directory / f"{stem}.csv", settings["schema"])

        click.echo(
            click.style(
                f"✅ Wrote {len(trials)} trial files to {directory}", fg="green"
            )
        )
        click.echo(f"   Nominal: {nominal}, abnormal: {abnormal}, arms: {len(arms)}")
    except RcbhtError as e:
        exit_with_error(e)
    except Exception as e:
        exit_unexpected("synth", e)


@click.command()
@click.argument("corpus_dir", type=click.Path(file_okay=False))
@click.option("--task", default="task", show_default=True, help="Task name")
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False),
    help="Thresholds file (default: stored under the config directory)",
)
@click.option("--window-seconds", type=float, help="Primitive window length")
@click.option(
    "--nominal-only/--all-trials",
    default=True,
    show_default=True,
    help="Calibrate on nominal trials only",
)
@click.pass_context
def calibrate(
    ctx: click.Context,
    corpus_dir: str,
    task: str,
    output: str | None,
    window_seconds: float | None,
    nominal_only: bool,
) -> None:
    """Calibrate per-axis gradient thresholds from the trials in CORPUS_DIR."""
    try:
        settings = resolve_settings(ctx, window_seconds=window_seconds)
        trials = load_corpus(Path(corpus_dir), settings["schema"])
        # Thresholds describe nominal motion unless told otherwise
        if nominal_only:
            trials = [trial for trial in trials if trial.outcome == "nominal"]

        thresholds = calibrate_task(
            trials, task=task, window_seconds=float(settings["window_seconds"])
        )
        # Explicit file, else the config directory
        if output:
            path = Path(output)
            thresholds.save(path)
        else:
            path = config_manager(ctx).save_task_thresholds(
                task, thresholds.to_dict()
            )

        Console().print(create_thresholds_table(thresholds))
        click.echo(
            click.style(
                f"✅ Calibrated {len(trials)} trials; thresholds saved to {path}",
                fg="green",
            )
        )
    except RcbhtError as e:
        exit_with_error(e)
    except Exception as e:
        exit_unexpected("calibrate", e)
