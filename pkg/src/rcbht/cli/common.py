"""Helpers shared by the rcbht commands."""

import logging
import re
from pathlib import Path
from typing import Any, NoReturn

import click

from ..models.exceptions import RcbhtError
from ..models.thresholds import TaskThresholds
from ..pipeline.config import PipelineConfig
from ..utils.config import TICK_RATES, ConfigManager

logger = logging.getLogger(__name__)

RATE_CHOICES = [str(rate) for rate in TICK_RATES]

_POWER_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.|:)\s*(-?\d+)\s*$")


def exit_with_error(error: RcbhtError) -> NoReturn:
    """Print an rcbht error with its suggestions and exit with its code."""
    click.echo(click.style(f"❌ Error: {error.message}", fg="red"))
    if error.suggestions:
        click.echo("\n💡 Suggestions:")
        for suggestion in error.suggestions:
            click.echo(f"   • {suggestion}")
    if error.original_error is not None:
        logger.debug(f"Caused by: {error.original_error!r}")
    click.get_current_context().exit(error.exit_code)


def exit_unexpected(command: str, error: Exception) -> NoReturn:
    logger.exception(f"Unexpected error in {command} command")
    click.echo(click.style(f"❌ Unexpected error: {error}", fg="red"))
    click.echo("💡 Please report this issue if it persists.")
    raise click.Abort() from error


def config_manager(ctx: click.Context) -> ConfigManager:
    manager = (ctx.obj or {}).get("config_manager")
    if manager is None:
        manager = ConfigManager()
    return manager  # type: ignore[no-any-return]


def resolve_settings(ctx: click.Context, **overrides: Any) -> dict[str, Any]:
    """Effective settings: defaults < config file < global flags < command flags."""
    obj = ctx.obj or {}
    if obj.get("seed") is not None:
        overrides.setdefault("seed", obj["seed"])
    return config_manager(ctx).resolve(overrides)


def load_thresholds(
    ctx: click.Context, thresholds_path: str | None, task: str
) -> TaskThresholds:
    """Thresholds from an explicit file, else the calibrated ones of ``task``.

    Raises:
        ConfigurationError: If the task was never calibrated
    """
    if thresholds_path:
        return TaskThresholds.load(Path(thresholds_path))
    document = config_manager(ctx).get_task_thresholds(task)
    return TaskThresholds.from_dict(document)


def pipeline_config(
    settings: dict[str, Any], thresholds: TaskThresholds, **overrides: Any
) -> PipelineConfig:
    return PipelineConfig.from_settings(settings, thresholds, **overrides)


def parse_power_range(
    ctx: click.Context | None, param: click.Parameter | None, value: str | None
) -> tuple[int, int] | None:
    """Click callback turning ``"-5..4"`` into ``(-5, 4)``."""
    if value is None:
        return None
    match = _POWER_RANGE.match(value)
    if not match:
        raise click.BadParameter(f"'{value}' is not a range like -5..4")
    low, high = int(match.group(1)), int(match.group(2))
    if low > high:
        raise click.BadParameter(f"empty range {low}..{high}")
    return low, high


def parse_rate(
    ctx: click.Context | None, param: click.Parameter | None, value: str | None
) -> int | None:
    return int(value) if value is not None else None


def threshold_options(command: Any) -> Any:
    """Attach the ``--thresholds``/``--task`` pair to a command."""
    command = click.option(
        "--task",
        default="task",
        show_default=True,
        help="Task whose calibrated thresholds to use",
    )(command)
    command = click.option(
        "--thresholds",
        "thresholds_path",
        type=click.Path(exists=True, dir_okay=False),
        help="Thresholds file (overrides --task)",
    )(command)
    return command
