"""Train command implementation."""

import logging
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from ...classifier.kernels import KernelKind, KernelSpec
from ...classifier.multiclass import SvmClassifier
from ...classifier.persistence import save_model
from ...classifier.validation import CvReport, c_grid, cross_validate
from ...features.matrix import FeatureMatrix
from ...models.exceptions import RcbhtError
from ...utils.config import KERNEL_KINDS
from ..common import (
    exit_unexpected,
    exit_with_error,
    parse_power_range,
    resolve_settings,
)

logger = logging.getLogger(__name__)


def create_cv_table(report: CvReport) -> Table:
    """Mean accuracy per kernel (rows) and C (columns), best cell in bold."""
    best = report.best
    table = Table(
        title=f"🧪 {report.folds}-fold cross-validation (mean accuracy)",
        show_header=True,
        header_style="bold blue",
    )
    # Add columns
    table.add_column("Kernel", style="cyan", no_wrap=True)
    for C in report.c_values:
        table.add_column(f"{C:g}", justify="right")

    # Add rows
    means = report.to_grid().xs("mean", level="stat")
    for kernel in dict.fromkeys(cell.kernel for cell in report.cells):
        row = []
        for C, mean in means.loc[kernel].items():
            text = f"{mean:.3f}"
            if (kernel, C) == (best.kernel, best.C):
                text = f"[bold green]{text}[/bold green]"
            row.append(text)
        table.add_row(kernel, *row)
    return table


@click.command()
@click.argument("features_csv", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--output",
    "-o",
    required=True,
    type=click.Path(dir_okay=False),
    help="Model file to write",
)
@click.option(
    "--report",
    "report_path",
    type=click.Path(dir_okay=False),
    help="Write the cross-validation report as CSV",
)
@click.option(
    "--kernel",
    "kernels",
    multiple=True,
    type=click.Choice(KERNEL_KINDS),
    help="Kernels to search; repeat for several (default from config: all)",
)
@click.option(
    "--C-powers",
    "c_powers",
    callback=parse_power_range,
    help="Penalty grid as powers of ten, e.g. -5..4 (default from config)",
)
@click.option("--folds", type=int, help="Cross-validation folds (default 5)")
@click.pass_context
def train(
    ctx: click.Context,
    features_csv: str,
    output: str,
    report_path: str | None,
    kernels: tuple[str, ...],
    c_powers: tuple[int, int] | None,
    folds: int | None,
) -> None:
    """Grid-search an SVM on FEATURES_CSV and save the best model.

    Every (kernel, C) cell is scored by stratified k-fold accuracy; the best
    mean wins and is refit on all rows with probability estimates.
    """
    try:
        settings = resolve_settings(
            ctx,
            kernels=list(kernels) or None,
            c_powers=list(c_powers) if c_powers else None,
            folds=folds,
        )
        seed = int(settings["seed"])
        low, high = (int(p) for p in settings["c_powers"])

        features = FeatureMatrix.from_csv(Path(features_csv))
        click.echo(
            f"📋 Cross-validating {features.n_samples} samples over "
            f"{len(settings['kernels'])} kernels x {high - low + 1} C values..."
        )
        # Grid search over kernels and C
        cv = cross_validate(
            features.values,
            features.labels,
            folds=int(settings["folds"]),
            kernels=settings["kernels"],
            c_values=c_grid(low, high),
            seed=seed,
        )
        best = cv.best
        # Display the grid
        Console().print(create_cv_table(cv))
        if report_path:
            cv.to_csv(Path(report_path))

        # Refit the best cell on every sample with probability outputs
        model = SvmClassifier(
            kernel=KernelSpec(KernelKind(best.kernel)),
            C=best.C,
            probability=True,
            seed=seed,
        ).fit(features.values, features.labels)
        save_model(
            model,
            Path(output),
            layout=features.layout,
            metadata={
                "regime": features.layout.regime.value,
                "kernel": best.kernel,
                "C": best.C,
                "cv_mean": best.mean,
                "folds": cv.folds,
                "seed": seed,
                "samples": features.n_samples,
            },
        )

        # Show summary
        click.echo(
            click.style(
                f"✅ Best {best.kernel} C={best.C:g} "
                f"(mean {best.mean:.3f}, min {best.min:.3f}, max {best.max:.3f})",
                fg="green",
            )
        )
        click.echo(f"   Model saved to {output}")
    except RcbhtError as e:
        exit_with_error(e)
    except Exception as e:
        exit_unexpected("train", e)
