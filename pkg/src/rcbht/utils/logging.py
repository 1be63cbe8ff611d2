"""Logging setup shared by the rcbht CLI and library callers.

Console records go to stderr so that ``rcbht monitor --stdin`` can stream
events on stdout.
"""

import logging
import sys
from pathlib import Path

CONSOLE_FORMAT = "%(levelname)s: %(message)s"
DETAILED_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Third-party loggers that flood DEBUG output.
QUIET_LOGGERS = ("matplotlib", "PIL", "factory")


def _level(name: str) -> int:
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else logging.INFO


def _file_handler(log_file: Path) -> logging.Handler | None:
    try:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_file, encoding="utf-8")
    except OSError as e:
        logging.getLogger(__name__).warning(f"Could not open log file {log_file}: {e}")
        return None
    handler.setFormatter(logging.Formatter(DETAILED_FORMAT))
    handler.setLevel(logging.DEBUG)
    return handler


def setup_logging(
    level: str = "INFO",
    log_file: Path | None = None,
    verbose: bool = False,
    format_string: str | None = None,
) -> None:
    """Route rcbht records to stderr and, optionally, a log file.

    Without ``verbose`` the console shows warnings only, keeping library
    progress lines such as per-fold accuracies out of command output. The
    file receives every record the ``rcbht`` logger lets through.

    Args:
        level: Level of the ``rcbht`` logger (DEBUG, INFO, WARNING, ERROR)
        log_file: Extra destination for detailed records
        verbose: Show records from ``level`` up on the console
        format_string: Console format, overriding the built-in ones
    """
    numeric_level = _level(level)
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    for handler in root.handlers:
        handler.close()
    root.handlers.clear()

    console = logging.StreamHandler(sys.stderr)
    default_format = DETAILED_FORMAT if verbose else CONSOLE_FORMAT
    console.setFormatter(logging.Formatter(format_string or default_format))
    console.setLevel(numeric_level if verbose else logging.WARNING)
    root.addHandler(console)

    if log_file:
        file_handler = _file_handler(Path(log_file))
        if file_handler is not None:
            root.addHandler(file_handler)

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    logging.getLogger("rcbht").setLevel(numeric_level)
