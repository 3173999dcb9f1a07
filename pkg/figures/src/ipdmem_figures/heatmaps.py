"""Per-strategy (mu, rho) payoff-ratio heatmap grid from a heatmap-mode CSV."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import (
    MU_GRID,
    RHO_GRID,
    STRATEGY_TOKENS,
    SchemaError,
    heatmap_table,
    read_rows,
    single_mode,
)


def phi_matrices(csv_path: str | Path) -> dict[str, list[list[float]]]:
    """Pivot a heatmap CSV into one 21x21 matrix per strategy.

    Matrix rows follow RHO_GRID (rho ascending), columns follow MU_GRID, so
    matrix[r][m] is the mean phi of the agent with rho = RHO_GRID[r] at
    mu = MU_GRID[m]. The pivot is lossless: exactly 441 cells per strategy.
    """
    rows = read_rows(csv_path)
    mode = single_mode(rows, csv_path)
    if mode != "heatmap":
        raise SchemaError(f"{csv_path}: mode column is {mode!r}, expected 'heatmap'")
    table = heatmap_table(rows, csv_path)
    matrices = {}
    for strategy in STRATEGY_TOKENS:
        matrices[strategy] = [
            [table[strategy][(mu, rho)].phi_mean for mu in MU_GRID] for rho in RHO_GRID
        ]
    return matrices


def shared_color_bounds(matrices: dict[str, list[list[float]]]) -> tuple[float, float]:
    values = [v for matrix in matrices.values() for row in matrix for v in row]
    return min(values), max(values)


def plot_heatmaps(csv_path: str | Path, output: str | Path) -> Path:
    """Render the 2x3 grid of per-strategy heatmaps with one shared color scale."""
    matrices = phi_matrices(csv_path)
    vmin, vmax = shared_color_bounds(matrices)

    fig, axes = plt.subplots(2, 3, figsize=(13, 7), sharex=True, sharey=True)
    mesh = None
    for ax, strategy in zip(axes.flat, STRATEGY_TOKENS):
        mesh = ax.imshow(
            matrices[strategy],
            origin="lower",
            aspect="auto",
            vmin=vmin,
            vmax=vmax,
            cmap="viridis",
            extent=(-0.025, 1.025, -0.025, 1.025),
        )
        ax.set_title(strategy)
    for ax in axes[-1]:
        ax.set_xlabel(r"memory ratio $\mu$")
    for ax in axes[:, 0]:
        ax.set_ylabel(r"cooperation probability $\rho$")
    colorbar = fig.colorbar(mesh, ax=axes, fraction=0.03, pad=0.02)
    colorbar.set_label(r"payoff ratio $\phi$")
    output = Path(output)
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot the six-strategy heatmap grid from a heatmap-mode sweep CSV."
    )
    parser.add_argument("csv", help="input heatmap CSV (6 x 441 cells)")
    parser.add_argument("output", help="output image path (e.g. heatmaps.png)")
    args = parser.parse_args(argv)
    try:
        path = plot_heatmaps(args.csv, args.output)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
