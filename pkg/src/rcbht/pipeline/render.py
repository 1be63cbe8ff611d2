"""Grammar maps: one row per trial, one column block per axis."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

from ..models.exceptions import ConfigurationError
from ..models.grammar import TrialGrammar
from ..models.labels import AXES, Layer

if TYPE_CHECKING:
    from rich.table import Table

logger = logging.getLogger(__name__)

# One rich style per alphabet position; layers share the palette.
_STYLES = (
    "bold red",
    "green",
    "blue",
    "yellow",
    "magenta",
    "cyan",
    "white",
    "bright_black",
    "bold bright_red",
)
_CMAP = "tab10"


@dataclass
class GrammarMap:
    """Symbols of one layer per trial and axis, states concatenated in order."""

    layer: Layer
    rows: list[str] = field(default_factory=list)
    cells: list[dict[str, list[str]]] = field(default_factory=list)
    axes: tuple[str, ...] = AXES

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def block_width(self, axis: str) -> int:
        """Widest sentence of an axis over all rows."""
        return max((len(cell[axis]) for cell in self.cells), default=0)

    def to_text(self, cell_width: int = 4) -> str:
        """Plain grid, axis blocks separated by ``|``, symbols cut to fit."""
        widths = {axis: self.block_width(axis) for axis in self.axes}
        name_width = max((len(name) for name in self.rows), default=0)
        lines = []
        for name, cell in zip(self.rows, self.cells, strict=True):
            blocks = [
                "".join(
                    s[: cell_width - 1].ljust(cell_width) for s in cell[axis]
                ).ljust(widths[axis] * cell_width)
                for axis in self.axes
            ]
            lines.append(f"{name.ljust(name_width)} |" + "|".join(blocks) + "|")
        return "\n".join(lines)


def render_grammar_map(
    grammars: Sequence[TrialGrammar], layer: Layer | str = Layer.LLB
) -> GrammarMap:
    """Collect the sentences of ``layer`` for every trial grammar."""
    layer = Layer(layer)
    grammar_map = GrammarMap(layer=layer)
    for grammar in grammars:
        row_name = grammar.trial_key or "?"
        if len({g.arm_id for g in grammars}) > 1:
            row_name = f"{row_name}:{grammar.arm_id}"
        grammar_map.rows.append(row_name)
        grammar_map.cells.append(
            {
                axis: [
                    symbol
                    for state in grammar.states
                    for symbol in grammar.sentence(state, layer, axis).symbols
                ]
                for axis in AXES
            }
        )
    return grammar_map


def map_to_table(grammar_map: GrammarMap) -> "Table":
    """Rich table of a grammar map with color-coded symbol abbreviations."""
    from rich.table import Table
    from rich.text import Text

    alphabet = grammar_map.layer.alphabet
    table = Table(title=f"{grammar_map.layer.value} grammar map")
    table.add_column("Trial", style="cyan")
    for axis in grammar_map.axes:
        table.add_column(axis)
    for name, cell in zip(grammar_map.rows, grammar_map.cells, strict=True):
        rendered = []
        for axis in grammar_map.axes:
            text = Text()
            for index, symbol in enumerate(cell[axis]):
                if index:
                    text.append(" ")
                style = _STYLES[alphabet.index(symbol) % len(_STYLES)]
                text.append(symbol[:3], style=style)
            rendered.append(text)
        table.add_row(name, *rendered)
    return table


def save_map_image(grammar_map: GrammarMap, path: Path) -> Path:
    """Draw a grammar map as a color grid image.

    Raises:
        ConfigurationError: If matplotlib is not installed
    """
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        import numpy as np
    except ImportError as e:
        raise ConfigurationError(
            "Image rendering needs matplotlib",
            suggestions=["Install the plot extra: pip install 'rcbht[plot]'"],
            original_error=e,
        ) from None

    alphabet = grammar_map.layer.alphabet
    widths = [max(1, grammar_map.block_width(axis)) for axis in grammar_map.axes]
    grid = np.full((max(1, grammar_map.n_rows), sum(widths)), np.nan)
    for row, cell in enumerate(grammar_map.cells):
        offset = 0
        for axis, width in zip(grammar_map.axes, widths, strict=True):
            for pos, symbol in enumerate(cell[axis]):
                grid[row, offset + pos] = alphabet.index(symbol)
            offset += width

    n_rows, n_cols = grid.shape
    fig, ax = plt.subplots(figsize=(max(6.0, 0.25 * n_cols), 1 + 0.3 * n_rows))
    image = ax.imshow(
        np.ma.masked_invalid(grid),
        aspect="auto",
        interpolation="nearest",
        cmap=_CMAP,
        vmin=0,
        vmax=len(alphabet) - 1,
    )
    edges = np.cumsum(widths)[:-1] - 0.5
    for edge in edges:
        ax.axvline(edge, color="black", linewidth=1)
    centers = np.cumsum(widths) - np.asarray(widths) / 2 - 0.5
    ax.set_xticks(centers)
    ax.set_xticklabels(list(grammar_map.axes))
    ax.set_yticks(range(grammar_map.n_rows))
    ax.set_yticklabels(grammar_map.rows)
    ax.set_title(f"{grammar_map.layer.value} grammar map")
    colorbar = fig.colorbar(image, ax=ax, ticks=range(len(alphabet)))
    colorbar.ax.set_yticklabels(list(alphabet))

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    logger.info(f"Saved {grammar_map.n_rows}-row grammar map to {path}")
    return path
