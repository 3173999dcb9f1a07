"""Flat results table and deterministic CSV serialization.

Schema version 1. The header is fixed; numbers are rendered with repr so
they round-trip at full precision, and identical tables always serialize
to identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .experiments import SweepResult

SCHEMA_VERSION = 1
CSV_HEADER = ("mode", "strategy", "mu", "group", "phi_mean", "phi_sd", "realizations", "seed")


@dataclass(frozen=True)
class ResultsRow:
    mode: str
    strategy: str
    mu: float
    group: str
    phi_mean: float
    phi_sd: float
    realizations: int
    seed: int


@dataclass(frozen=True)
class ResultsTable:
    """One row per sweep cell, in sweep order."""

    rows: tuple[ResultsRow, ...]

    @classmethod
    def from_sweep(cls, sweep: SweepResult) -> "ResultsTable":
        return cls(
            rows=tuple(
                ResultsRow(
                    mode=sweep.mode,
                    strategy=cell.strategy,
                    mu=cell.mu,
                    group=cell.group,
                    phi_mean=cell.phi_mean,
                    phi_sd=cell.phi_sd,
                    realizations=cell.realizations,
                    seed=cell.seed,
                )
                for cell in sweep.cells
            )
        )


def render_csv(table: ResultsTable) -> str:
    """Render the table as CSV text, header first, repr-precision floats."""
    lines = [",".join(CSV_HEADER)]
    for row in table.rows:
        lines.append(
            ",".join(
                (
                    row.mode,
                    row.strategy,
                    repr(row.mu),
                    row.group,
                    repr(row.phi_mean),
                    repr(row.phi_sd),
                    str(row.realizations),
                    str(row.seed),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_results(table: ResultsTable, path: str | Path) -> None:
    """Write the CSV to ``path``; the parent directory must exist."""
    target = Path(path)
    try:
        target.write_text(render_csv(table), encoding="ascii", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {target}: {exc}") from exc
