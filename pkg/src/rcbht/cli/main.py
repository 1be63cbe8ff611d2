"""Main CLI entry point for rcbht."""

import logging
import sys
from pathlib import Path

# Try to import CLI dependencies, gracefully handle missing ones
try:
    import click
except ImportError:
    print("CLI dependencies not installed. Install with: pip install rcbht[cli]")
    sys.exit(1)

try:
    from .. import __version__
    from ..utils.config import ConfigManager
    from ..utils.logging import setup_logging
    from .commands.corpus import calibrate, synth
    from .commands.encode import encode, report
    from .commands.monitor import evaluate, monitor
    from .commands.train import train
except ImportError as e:
    print(f"Failed to import CLI modules: {e}")
    print("Install CLI dependencies with: pip install rcbht[cli]")
    sys.exit(1)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.option("--log-file", type=click.Path(), help="Log file path")
@click.option(
    "--config",
    "config_file",
    type=click.Path(dir_okay=False),
    help="Main config file (default: $XDG_CONFIG_HOME/rcbht/config.json)",
)
@click.option(
    "--seed",
    type=int,
    default=None,
    help="Seed for fold shuffling and synthetic noise (default from config: 0)",
)
@click.version_option(version=__version__, prog_name="rcbht")
@click.pass_context
def main(
    ctx: click.Context,
    verbose: bool,
    log_file: str | None,
    config_file: str | None,
    seed: int | None,
) -> None:
    """rcbht - Action grammars from force-torque streams and task introspection.

    A typical workflow on a corpus of trial CSVs with JSON sidecars:

        rcbht synth corpus/ --nominal 40
        rcbht calibrate corpus/ --task snap
        rcbht encode corpus/ --task snap -o features.csv
        rcbht train features.csv -o model.json
        rcbht evaluate corpus/ --task snap --model model.json --rate 10

    Settings resolve as built-in defaults, then the config file, then flags.
    """
    log_level = "DEBUG" if verbose else "WARNING"
    log_path = Path(log_file) if log_file else None
    setup_logging(level=log_level, log_file=log_path, verbose=verbose)

    logger = logging.getLogger(__name__)
    logger.debug("Starting rcbht")

    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["seed"] = seed
    if config_file:
        path = Path(config_file)
        manager = ConfigManager(config_dir=path.parent, config_file=path)
    else:
        manager = ConfigManager()
    ctx.obj["config_manager"] = manager


main.add_command(synth)
main.add_command(calibrate)
main.add_command(encode)
main.add_command(report)
main.add_command(train)
main.add_command(evaluate)
main.add_command(monitor)


if __name__ == "__main__":
    main()
