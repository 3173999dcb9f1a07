"""Experiment builders, mu sweeps, and payoff-ratio aggregation.

A sweep is a pure function of (master_seed, realizations, grids, payoffs):
run-cells are seeded with :func:`~ipdmem.engine.split_seed` over stable
indices, results are reduced by key in task order, and a work pool may
execute any number of cells concurrently without changing the output.

Seed discipline:

* homogeneous: cell (strategy s, mu m) uses split_seed(master, s_index, m_index),
* heterogeneous and heatmap: cell mu m uses split_seed(master, m_index),
* realization k inside a cell uses split_seed(cell_seed, k).

Strategy indices follow :data:`~ipdmem.forgetting.STRATEGIES`; mu indices
follow the sequence of mu values actually swept (the full grid by default).
"""

from __future__ import annotations

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Iterator, Sequence

from .engine import EnvironmentConfig, RealizationResult, run_realization, split_seed
from .forgetting import STRATEGIES, Strategy
from .model import DEFAULT_PAYOFFS, AgentSpec, PayoffMatrix

#: The 21 cooperation probabilities 0.05k, k = 0..20.
RHO_GRID: tuple[float, ...] = tuple(round(0.05 * k, 2) for k in range(21))

#: The 21 memory ratios 0.05m, m = 0..20.
MU_GRID: tuple[float, ...] = tuple(round(0.05 * m, 2) for m in range(21))

#: Predicate over agent identities defining a payoff group.
GroupSelector = Callable[[AgentSpec], bool]


def cooperators(spec: AgentSpec) -> bool:
    """Cooperator group: agents with rho strictly above 0.5."""
    return spec.rho > 0.5


def cooperators_of(strategy: Strategy) -> GroupSelector:
    """Cooperators (rho > 0.5) restricted to one forgetting strategy."""
    return lambda spec: spec.rho > 0.5 and spec.strategy is strategy


def payoff_ratio(result: RealizationResult, group: GroupSelector) -> float:
    """Mean payoff of the selected group over the population mean payoff.

    Returns NaN when the population mean payoff is zero (degenerate
    configurations only, e.g. every played game pays zero).
    """
    roster = result.config.agent_roster
    members = [i for i, spec in enumerate(roster) if group(spec)]
    if not members:
        raise ValueError("group selector matched no agents")
    payoffs = result.total_payoffs
    population_mean = sum(payoffs) / len(payoffs)
    if population_mean == 0.0:
        return float("nan")
    group_mean = sum(payoffs[i] for i in members) / len(members)
    return group_mean / population_mean


def build_homogeneous(
    strategy: Strategy, agents_per_rho: int = 6
) -> tuple[AgentSpec, ...]:
    """Roster where every agent shares one strategy, agents_per_rho per rho value."""
    if agents_per_rho < 1:
        raise ValueError(f"agents_per_rho must be >= 1, got {agents_per_rho}")
    return tuple(
        AgentSpec(id=k * agents_per_rho + c, rho=rho, strategy=strategy)
        for k, rho in enumerate(RHO_GRID)
        for c in range(agents_per_rho)
    )


def build_heterogeneous() -> tuple[AgentSpec, ...]:
    """Roster with exactly one agent per (rho, strategy) pair: 21 * 6 = 126 agents."""
    return tuple(
        AgentSpec(id=k * len(STRATEGIES) + s, rho=rho, strategy=strategy)
        for k, rho in enumerate(RHO_GRID)
        for s, strategy in enumerate(STRATEGIES)
    )


@dataclass(frozen=True)
class SweepCell:
    """Aggregated payoff ratio for one (strategy, mu, group) sweep point."""

    strategy: str
    mu: float
    group: str
    phi_mean: float
    phi_sd: float
    realizations: int
    seed: int


@dataclass(frozen=True)
class SweepResult:
    mode: str
    cells: tuple[SweepCell, ...]


@dataclass(frozen=True)
class _RunCell:
    """One environment batch to execute: a config plus the groups to score."""

    mu: float
    cell_seed: int
    config: EnvironmentConfig
    # (strategy token, group label, selector) per output cell
    groups: tuple[tuple[str, str, GroupSelector], ...]


def _aggregate(phis: list[float]) -> tuple[float, float]:
    mean = statistics.fmean(phis)
    sd = statistics.stdev(phis) if len(phis) > 1 else 0.0
    return mean, sd


def _execute(
    mode: str,
    run_cells: Sequence[_RunCell],
    realizations: int,
    workers: int | None,
    progress: Callable[[str], None] | None,
) -> SweepResult:
    """Run every (cell, realization) task and reduce per cell, in task order."""
    if realizations < 1:
        raise ValueError(f"realizations must be >= 1, got {realizations}")
    configs = [
        replace(cell.config, seed=split_seed(cell.cell_seed, k))
        for cell in run_cells
        for k in range(realizations)
    ]

    def reduce_results(results: Iterator[RealizationResult]) -> Iterable[SweepCell]:
        for cell in run_cells:
            batch = [next(results) for _ in range(realizations)]
            for strategy_token, label, selector in cell.groups:
                phis = [payoff_ratio(res, selector) for res in batch]
                mean, sd = _aggregate(phis)
                yield SweepCell(
                    strategy=strategy_token,
                    mu=cell.mu,
                    group=label,
                    phi_mean=mean,
                    phi_sd=sd,
                    realizations=realizations,
                    seed=cell.cell_seed,
                )
            if progress is not None:
                progress(f"{mode}: mu={cell.mu} done ({realizations} realizations)")

    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = tuple(reduce_results(pool.map(run_realization, configs)))
    else:
        cells = tuple(reduce_results(map(run_realization, configs)))
    return SweepResult(mode=mode, cells=cells)


def _mu_indices(mu_values: Sequence[float]) -> list[tuple[int, float]]:
    for mu in mu_values:
        if not 0.0 <= mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {mu}")
    return list(enumerate(mu_values))


def homogeneous_sweep(
    realizations: int,
    master_seed: int,
    *,
    agents_per_rho: int = 6,
    tau: int = 30,
    payoffs: PayoffMatrix = DEFAULT_PAYOFFS,
    mu_values: Sequence[float] = MU_GRID,
    strategies: Sequence[Strategy] = STRATEGIES,
    workers: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> SweepResult:
    """Payoff ratio of cooperators per (strategy, mu) in single-strategy environments.

    One environment per strategy and mu; the cooperator group (rho > 0.5) is
    scored against that environment's own population.
    """
    run_cells = []
    for strategy in strategies:
        s_index = STRATEGIES.index(strategy)
        roster = build_homogeneous(strategy, agents_per_rho)
        for m_index, mu in _mu_indices(mu_values):
            config = EnvironmentConfig(
                n_agents=len(roster),
                mu=mu,
                payoffs=payoffs,
                tau=tau,
                agent_roster=roster,
                seed=0,
            )
            run_cells.append(
                _RunCell(
                    mu=mu,
                    cell_seed=split_seed(master_seed, s_index, m_index),
                    config=config,
                    groups=((strategy.value, "cooperators", cooperators),),
                )
            )
    return _execute("homogeneous", run_cells, realizations, workers, progress)


def heterogeneous_sweep(
    realizations: int,
    master_seed: int,
    *,
    tau: int = 30,
    payoffs: PayoffMatrix = DEFAULT_PAYOFFS,
    mu_values: Sequence[float] = MU_GRID,
    workers: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> SweepResult:
    """Per-strategy cooperator payoff ratios in the mixed environment.

    One shared environment per mu; each strategy's cooperators (rho > 0.5)
    are scored against the whole 126-agent population, giving six curve
    points per mu.
    """
    roster = build_heterogeneous()
    run_cells = []
    for m_index, mu in _mu_indices(mu_values):
        config = EnvironmentConfig(
            n_agents=len(roster),
            mu=mu,
            payoffs=payoffs,
            tau=tau,
            agent_roster=roster,
            seed=0,
        )
        groups = tuple(
            (strategy.value, "cooperators", cooperators_of(strategy))
            for strategy in STRATEGIES
        )
        run_cells.append(
            _RunCell(
                mu=mu,
                cell_seed=split_seed(master_seed, m_index),
                config=config,
                groups=groups,
            )
        )
    return _execute("heterogeneous", run_cells, realizations, workers, progress)


def heatmap_sweep(
    realizations: int,
    master_seed: int,
    *,
    tau: int = 30,
    payoffs: PayoffMatrix = DEFAULT_PAYOFFS,
    mu_values: Sequence[float] = MU_GRID,
    workers: int | None = None,
    progress: Callable[[str], None] | None = None,
) -> SweepResult:
    """Individual payoff ratios per (strategy, mu, rho) in the mixed environment.

    Every agent forms its own singleton group, yielding 21 x 21 points per
    strategy over the full grids. The group column carries the agent's rho.
    """
    roster = build_heterogeneous()

    def singleton(agent_id: int) -> GroupSelector:
        return lambda spec: spec.id == agent_id

    run_cells = []
    for m_index, mu in _mu_indices(mu_values):
        config = EnvironmentConfig(
            n_agents=len(roster),
            mu=mu,
            payoffs=payoffs,
            tau=tau,
            agent_roster=roster,
            seed=0,
        )
        groups = tuple(
            (spec.strategy.value, repr(spec.rho), singleton(spec.id))
            for spec in roster
        )
        run_cells.append(
            _RunCell(
                mu=mu,
                cell_seed=split_seed(master_seed, m_index),
                config=config,
                groups=groups,
            )
        )
    return _execute("heatmap", run_cells, realizations, workers, progress)


@dataclass(frozen=True)
class EndpointCheck:
    """Comparison of one no-forgetting endpoint across strategy labelings."""

    mu: float
    payoffs_identical: bool
    counters_identical: bool
    evictions: int

    @property
    def passed(self) -> bool:
        return self.payoffs_identical and self.counters_identical and self.evictions == 0


@dataclass(frozen=True)
class EndpointReport:
    checks: tuple[EndpointCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def verify_endpoints(
    seed: int,
    *,
    tau: int = 30,
    payoffs: PayoffMatrix = DEFAULT_PAYOFFS,
) -> EndpointReport:
    """Check that strategy labels are inert at mu = 0 and mu = 1.

    At those endpoints no eviction can ever occur (nothing is stored, or
    everything fits), so relabeling every agent's strategy must reproduce
    the exact same per-agent trace under a shared seed. Runs the mixed
    labeling plus the six uniform labelings and compares full payoff and
    counter vectors bit-exactly.
    """
    base = build_heterogeneous()
    labelings = [base]
    for strategy in STRATEGIES:
        labelings.append(
            tuple(replace(spec, strategy=strategy) for spec in base)
        )

    checks = []
    for mu in (0.0, 1.0):
        results = [
            run_realization(
                EnvironmentConfig(
                    n_agents=len(roster),
                    mu=mu,
                    payoffs=payoffs,
                    tau=tau,
                    agent_roster=roster,
                    seed=seed,
                )
            )
            for roster in labelings
        ]
        reference = results[0]
        payoffs_identical = all(
            res.total_payoffs == reference.total_payoffs for res in results
        )
        counters_identical = all(
            res.games_played == reference.games_played
            and res.rounds_refused == reference.rounds_refused
            for res in results
        )
        checks.append(
            EndpointCheck(
                mu=mu,
                payoffs_identical=payoffs_identical,
                counters_identical=counters_identical,
                evictions=sum(res.evictions for res in results),
            )
        )
    return EndpointReport(checks=tuple(checks))
