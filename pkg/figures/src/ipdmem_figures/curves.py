"""Six-strategy payoff-ratio curves from a sweep CSV."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import MU_GRID, STRATEGY_TOKENS, SchemaError, curve_table, read_rows, single_mode

KINDS = {"curves-homogeneous": "homogeneous", "curves-heterogeneous": "heterogeneous"}

STRATEGY_COLORS = {
    "FR": "tab:gray",
    "FMC": "tab:red",
    "FMD": "tab:blue",
    "FMU": "tab:green",
    "FLP": "tab:purple",
    "FMP": "tab:orange",
}


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render: input CSV, figure kind, output image path."""

    input_csv: Path
    kind: str
    output: Path


def render(spec: FigureSpec) -> Path:
    """Render the figure described by ``spec`` (curves or heatmap grid)."""
    if spec.kind == "heatmap-grid":
        from .heatmaps import plot_heatmaps

        return plot_heatmaps(spec.input_csv, spec.output)
    return plot_phi_curves(spec.input_csv, spec.kind, spec.output)


def plot_phi_curves(csv_path: str | Path, kind: str, output: str | Path) -> Path:
    """Render one line per strategy (mu on x, mean phi on y) and save the image.

    The CSV must contain the full 6 strategies x 21 mu grid for the matching
    mode; gaps and mode mismatches raise SchemaError.
    """
    if kind not in KINDS:
        raise SchemaError(f"unknown figure kind {kind!r}, expected one of {sorted(KINDS)}")
    rows = read_rows(csv_path)
    mode = single_mode(rows, csv_path)
    if mode != KINDS[kind]:
        raise SchemaError(
            f"{csv_path}: mode column is {mode!r} but figure kind {kind!r} needs {KINDS[kind]!r}"
        )
    table = curve_table(rows, csv_path)

    fig, ax = plt.subplots(figsize=(9, 5))
    for strategy in STRATEGY_TOKENS:
        means = [table[strategy][mu].phi_mean for mu in MU_GRID]
        sds = [table[strategy][mu].phi_sd for mu in MU_GRID]
        ax.errorbar(
            MU_GRID,
            means,
            yerr=sds,
            label=strategy,
            color=STRATEGY_COLORS[strategy],
            marker="o",
            markersize=3,
            capsize=2,
            linewidth=1.4,
        )
    ax.axhline(1.0, color="black", linewidth=0.8, linestyle="--")
    ax.set_xlabel(r"memory ratio $\mu$")
    ax.set_ylabel(r"payoff ratio $\phi$ of cooperators")
    ax.set_title(f"{mode} environment")
    ax.legend(ncol=3)
    ax.set_xlim(-0.02, 1.02)
    fig.tight_layout()
    output = Path(output)
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="Plot six-strategy payoff-ratio curves from a sweep CSV."
    )
    parser.add_argument("csv", help="input sweep CSV (homogeneous or heterogeneous mode)")
    parser.add_argument("output", help="output image path (e.g. curves.png)")
    parser.add_argument(
        "--kind",
        choices=sorted(KINDS),
        help="figure kind; inferred from the CSV mode column when omitted",
    )
    args = parser.parse_args(argv)
    try:
        kind = args.kind
        if kind is None:
            mode = single_mode(read_rows(args.csv), args.csv)
            kind = next((k for k, m in KINDS.items() if m == mode), None)
            if kind is None:
                raise SchemaError(f"{args.csv}: mode {mode!r} has no curve figure kind")
        path = plot_phi_curves(args.csv, kind, args.output)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
