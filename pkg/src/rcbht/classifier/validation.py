"""Grid cross-validation over kernels and penalty values."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from ..models.exceptions import NoConvergenceError, ValidationError
from .folds import stratified_folds
from .kernels import KernelKind, KernelSpec
from .multiclass import SvmClassifier

logger = logging.getLogger(__name__)

DEFAULT_C_POWERS = (-5, 4)
REPORT_COLUMNS = ["kernel", "C", "min", "mean", "max"]


def c_grid(
    low: int = DEFAULT_C_POWERS[0], high: int = DEFAULT_C_POWERS[1]
) -> list[float]:
    """Penalty values ``10**x`` for ``x = low..high`` inclusive."""
    if low > high:
        raise ValidationError(
            f"Empty C grid {low}..{high}",
            field_name="c_powers",
            suggestions=["Give the lower power first, e.g. -5..4"],
        )
    return [10.0**power for power in range(low, high + 1)]


@dataclass
class CvCell:
    """Validation accuracies of one (kernel, C) grid cell, one per fold.

    A fold whose training failed to converge is recorded as NaN.
    """

    kernel: str
    C: float
    accuracies: list[float] = field(default_factory=list)

    @property
    def min(self) -> float:
        return _stat(np.nanmin, self.accuracies)

    @property
    def mean(self) -> float:
        return _stat(np.nanmean, self.accuracies)

    @property
    def max(self) -> float:
        return _stat(np.nanmax, self.accuracies)


def _stat(reducer: Callable[[np.ndarray], Any], values: list[float]) -> float:
    array = np.asarray(values, dtype=float)
    if not np.isfinite(array).any():
        return float("nan")
    return float(reducer(array))


@dataclass
class CvReport:
    cells: list[CvCell]
    folds: int
    seed: int

    @property
    def best(self) -> CvCell:
        """Cell with the highest mean accuracy; earlier grid cells win ties."""
        scored = [cell for cell in self.cells if np.isfinite(cell.mean)]
        if not scored:
            raise NoConvergenceError(
                "No grid cell produced a converged fold",
                suggestions=["Narrow the C grid", "Try the linear kernel"],
            )
        return max(scored, key=lambda cell: cell.mean)

    @property
    def c_values(self) -> list[float]:
        return list(dict.fromkeys(cell.C for cell in self.cells))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [[c.kernel, c.C, c.min, c.mean, c.max] for c in self.cells],
            columns=REPORT_COLUMNS,
        )

    def to_grid(self) -> pd.DataFrame:
        """Wide view: one row per (kernel, statistic), one column per C."""
        frame = self.to_frame().melt(
            id_vars=["kernel", "C"], var_name="stat", value_name="accuracy"
        )
        grid = frame.pivot_table(
            index=["kernel", "stat"], columns="C", values="accuracy", dropna=False
        )
        return grid.reindex(columns=self.c_values)

    def to_csv(self, path: Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        logger.info(f"Wrote cross-validation report to {path}")


def cross_validate(
    X: np.ndarray,
    y: Sequence[str],
    folds: int = 5,
    kernels: Sequence[str | KernelSpec] = ("linear", "poly", "rbf"),
    c_values: Sequence[float] | None = None,
    seed: int = 0,
) -> CvReport:
    """Stratified k-fold accuracy for every (kernel, C) cell.

    The same seeded folds are used for every cell, so the report is a
    deterministic function of the inputs.

    Raises:
        TooFewSamplesPerClassError: If a class cannot populate every fold
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    labels = [str(label) for label in y]
    # Every cell is scored on the same folds
    test_sets = stratified_folds(labels, folds, seed)
    c_values = list(c_values) if c_values is not None else c_grid()
    label_array = np.array(labels)

    cells = []
    for kernel in kernels:
        spec = (
            kernel if isinstance(kernel, KernelSpec) else KernelSpec(KernelKind(kernel))
        )
        for C in c_values:
            cell = CvCell(kernel=str(spec), C=float(C))
            for fold, test in enumerate(test_sets):
                # Train on the other folds
                train = np.setdiff1d(np.arange(len(labels)), test)
                model = SvmClassifier(kernel=spec, C=C, probability=False)
                try:
                    model.fit(X[train], label_array[train].tolist())
                except NoConvergenceError as e:
                    logger.warning(f"{spec} C={C:g} fold {fold}: {e.message}")
                    cell.accuracies.append(float("nan"))
                    continue
                cell.accuracies.append(model.score(X[test], label_array[test].tolist()))
            logger.debug(
                f"{cell.kernel} C={cell.C:g}: mean accuracy {cell.mean:.3f} "
                f"over {folds} folds"
            )
            cells.append(cell)

    report = CvReport(cells=cells, folds=folds, seed=seed)
    best = report.best
    logger.info(
        f"Cross-validated {len(cells)} cells; best {best.kernel} C={best.C:g} "
        f"mean {best.mean:.3f}"
    )
    return report
