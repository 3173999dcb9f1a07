"""The sweep CSV interface: fixed header, row parsing, completeness checks.

This package consumes the engine's CSV files as its only input; the schema
constants here mirror that file contract (schema version 1).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

CSV_HEADER = ("mode", "strategy", "mu", "group", "phi_mean", "phi_sd", "realizations", "seed")

STRATEGY_TOKENS = ("FR", "FMC", "FMD", "FMU", "FLP", "FMP")

#: Expected grids: 21 values of 0.05 steps on [0, 1] for both mu and rho.
MU_GRID = tuple(round(0.05 * m, 2) for m in range(21))
RHO_GRID = tuple(round(0.05 * k, 2) for k in range(21))

MODES = ("homogeneous", "heterogeneous", "heatmap")


class SchemaError(ValueError):
    """The CSV does not satisfy the sweep-file contract."""


@dataclass(frozen=True)
class SweepRow:
    mode: str
    strategy: str
    mu: float
    group: str
    phi_mean: float
    phi_sd: float
    realizations: int
    seed: int


def read_rows(path: str | Path) -> list[SweepRow]:
    """Read and validate a sweep CSV; raises SchemaError on malformed input."""
    path = Path(path)
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if header != CSV_HEADER:
            raise SchemaError(
                f"{path}: unexpected header {header!r}, expected {CSV_HEADER!r}"
            )
        rows = []
        for lineno, fields in enumerate(reader, start=2):
            if len(fields) != len(CSV_HEADER):
                raise SchemaError(f"{path}:{lineno}: expected {len(CSV_HEADER)} fields")
            mode, strategy, mu, group, phi_mean, phi_sd, realizations, seed = fields
            if mode not in MODES:
                raise SchemaError(f"{path}:{lineno}: unknown mode {mode!r}")
            if strategy not in STRATEGY_TOKENS:
                raise SchemaError(f"{path}:{lineno}: unknown strategy {strategy!r}")
            try:
                rows.append(
                    SweepRow(
                        mode=mode,
                        strategy=strategy,
                        mu=float(mu),
                        group=group,
                        phi_mean=float(phi_mean),
                        phi_sd=float(phi_sd),
                        realizations=int(realizations),
                        seed=int(seed),
                    )
                )
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: bad numeric field ({exc})") from None
    return rows


def single_mode(rows: list[SweepRow], path: str | Path) -> str:
    modes = {row.mode for row in rows}
    if len(modes) != 1:
        raise SchemaError(f"{path}: expected a single mode column value, found {sorted(modes)}")
    return modes.pop()


def curve_table(rows: list[SweepRow], path: str | Path) -> dict[str, dict[float, SweepRow]]:
    """Pivot curve rows to strategy -> mu -> row, requiring the full grid.

    Missing (strategy, mu) combinations raise SchemaError listing every gap.
    """
    table: dict[str, dict[float, SweepRow]] = {s: {} for s in STRATEGY_TOKENS}
    for row in rows:
        table.setdefault(row.strategy, {})[row.mu] = row
    missing = [
        (strategy, mu)
        for strategy in STRATEGY_TOKENS
        for mu in MU_GRID
        if mu not in table.get(strategy, {})
    ]
    if missing:
        listed = ", ".join(f"({s}, mu={mu})" for s, mu in missing[:12])
        suffix = "" if len(missing) <= 12 else f" and {len(missing) - 12} more"
        raise SchemaError(f"{path}: missing curve cells: {listed}{suffix}")
    return table


def heatmap_table(
    rows: list[SweepRow], path: str | Path
) -> dict[str, dict[tuple[float, float], SweepRow]]:
    """Pivot heatmap rows to strategy -> (mu, rho) -> row, requiring 6 x 441 cells."""
    table: dict[str, dict[tuple[float, float], SweepRow]] = {s: {} for s in STRATEGY_TOKENS}
    for row in rows:
        try:
            rho = float(row.group)
        except ValueError:
            raise SchemaError(
                f"{path}: heatmap group column must hold rho values, got {row.group!r}"
            ) from None
        table.setdefault(row.strategy, {})[(row.mu, rho)] = row
    missing = [
        (strategy, mu, rho)
        for strategy in STRATEGY_TOKENS
        for mu in MU_GRID
        for rho in RHO_GRID
        if (mu, rho) not in table.get(strategy, {})
    ]
    if missing:
        listed = ", ".join(f"({s}, mu={mu}, rho={rho})" for s, mu, rho in missing[:8])
        suffix = "" if len(missing) <= 8 else f" and {len(missing) - 8} more"
        raise SchemaError(f"{path}: missing heatmap cells: {listed}{suffix}")
    return table
