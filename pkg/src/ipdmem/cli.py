"""Command-line surface: run, sweep, heatmap, verify-endpoints."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .config import ConfigError, RunConfigFile, parse_config, parse_mu_list, parse_payoffs, parse_strategy
from .engine import EnvironmentConfig, run_realization
from .experiments import heatmap_sweep, heterogeneous_sweep, homogeneous_sweep, verify_endpoints
from .forgetting import STRATEGIES, Strategy
from .model import AgentSpec
from .results import ResultsTable, write_results


def _load_config(args: argparse.Namespace) -> RunConfigFile:
    if getattr(args, "config", None):
        path = Path(args.config)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        config = parse_config(text)
    else:
        config = RunConfigFile()
    # flags override config-file values
    if getattr(args, "seed", None) is not None:
        config.master_seed = args.seed
    if getattr(args, "realizations", None) is not None:
        config.realizations = args.realizations
    if getattr(args, "tau", None) is not None:
        config.tau = args.tau
    if getattr(args, "payoffs", None) is not None:
        config.payoffs = parse_payoffs(args.payoffs)
    if getattr(args, "mu_list", None) is not None:
        config.mu_list = parse_mu_list(args.mu_list)
    if getattr(args, "agents_per_rho", None) is not None:
        config.agents_per_rho = args.agents_per_rho
    if getattr(args, "strategy", None) is not None:
        config.strategy = parse_strategy(args.strategy)
    if getattr(args, "output", None) is not None:
        config.output = args.output
    if getattr(args, "n", None) is not None:
        config.n_agents = args.n
    if getattr(args, "mu", None) is not None:
        config.mu = args.mu
    if getattr(args, "workers", None) is not None:
        config.workers = args.workers
    if getattr(args, "mode", None) is not None:
        config.mode = args.mode
    return config


def _require_seed(config: RunConfigFile) -> int:
    if config.master_seed is None:
        raise ConfigError("a seed is required: pass --seed or set master_seed in the config file")
    return config.master_seed


def _progress(line: str) -> None:
    print(line, file=sys.stderr, flush=True)


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args)
    seed = _require_seed(config)
    n = config.n_agents
    if config.mu is None or not 0.0 <= config.mu <= 1.0:
        raise ConfigError(f"mu: must lie in [0, 1], got {config.mu}")
    strategy = config.strategy or Strategy.FR
    # evenly spread cooperation probabilities across [0, 1]
    roster = tuple(
        AgentSpec(id=i, rho=i / (n - 1), strategy=strategy) for i in range(n)
    )
    env = EnvironmentConfig(
        n_agents=n,
        mu=config.mu,
        payoffs=config.payoffs,
        tau=config.tau,
        agent_roster=roster,
        seed=seed,
    )
    result = run_realization(env)
    print(f"rounds={result.rounds} played={result.played_rounds} "
          f"refused={result.refused_rounds} evictions={result.evictions}")
    print("id,rho,strategy,payoff,games,refused")
    for spec in roster:
        print(
            f"{spec.id},{repr(spec.rho)},{spec.strategy.value},"
            f"{repr(result.total_payoffs[spec.id])},"
            f"{result.games_played[spec.id]},{result.rounds_refused[spec.id]}"
        )
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _load_config(args)
    if config.mode not in ("homogeneous", "heterogeneous"):
        raise ConfigError(
            f"sweep requires --mode homogeneous or heterogeneous, got {config.mode!r}"
        )
    seed = _require_seed(config)
    if config.mode == "homogeneous":
        strategies = (config.strategy,) if config.strategy else STRATEGIES
        sweep = homogeneous_sweep(
            config.realizations,
            seed,
            agents_per_rho=config.agents_per_rho,
            tau=config.tau,
            payoffs=config.payoffs,
            mu_values=config.mu_list,
            strategies=strategies,
            workers=config.workers,
            progress=_progress,
        )
    else:
        sweep = heterogeneous_sweep(
            config.realizations,
            seed,
            tau=config.tau,
            payoffs=config.payoffs,
            mu_values=config.mu_list,
            workers=config.workers,
            progress=_progress,
        )
    output = config.output or f"{config.mode}.csv"
    write_results(ResultsTable.from_sweep(sweep), output)
    print(f"wrote {len(sweep.cells)} rows to {output}")
    return 0


def _cmd_heatmap(args: argparse.Namespace) -> int:
    config = _load_config(args)
    seed = _require_seed(config)
    sweep = heatmap_sweep(
        config.realizations,
        seed,
        tau=config.tau,
        payoffs=config.payoffs,
        mu_values=config.mu_list,
        workers=config.workers,
        progress=_progress,
    )
    output = config.output or "heatmap.csv"
    write_results(ResultsTable.from_sweep(sweep), output)
    print(f"wrote {len(sweep.cells)} rows to {output}")
    return 0


def _cmd_verify_endpoints(args: argparse.Namespace) -> int:
    config = _load_config(args)
    seed = _require_seed(config)
    report = verify_endpoints(seed, tau=config.tau, payoffs=config.payoffs)
    for check in report.checks:
        status = "ok" if check.passed else "MISMATCH"
        print(
            f"mu={check.mu}: payoffs_identical={check.payoffs_identical} "
            f"counters_identical={check.counters_identical} "
            f"evictions={check.evictions} [{status}]"
        )
    if report.passed:
        print("PASS")
        return 0
    print("FAIL")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ipdmem",
        description="Iterated prisoner's dilemma with bounded memory: run experiments and sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--seed", type=int, help="master seed (required unless set in config)")
        p.add_argument("--tau", type=int, help="average games per pair")
        p.add_argument("--payoffs", help="payoff values T,R,P,S")
        p.add_argument("--workers", type=int, help="worker processes for parallel cells")

    p_run = sub.add_parser("run", help="run one realization and print per-agent payoffs")
    add_common(p_run)
    p_run.add_argument("--mode", choices=["single"], help="only 'single' is valid here")
    p_run.add_argument("--n", type=int, help="number of agents (rho evenly spread over [0,1])")
    p_run.add_argument("--mu", type=float, help="memory ratio in [0,1]")
    p_run.add_argument("--strategy", help="forgetting strategy token (default FR)")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a mu sweep and write a CSV")
    add_common(p_sweep)
    p_sweep.add_argument("--mode", choices=["homogeneous", "heterogeneous"])
    p_sweep.add_argument("--realizations", type=int, help="realizations per cell")
    p_sweep.add_argument("--mu-list", dest="mu_list", help="comma-separated mu values (default full grid)")
    p_sweep.add_argument("--agents-per-rho", dest="agents_per_rho", type=int,
                         help="homogeneous roster size per rho value (default 6)")
    p_sweep.add_argument("--strategy", help="restrict a homogeneous sweep to one strategy")
    p_sweep.add_argument("-o", "--output", help="output CSV path (default <mode>.csv)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_heat = sub.add_parser("heatmap", help="run the individual-payoff sweep and write a CSV")
    add_common(p_heat)
    p_heat.add_argument("--realizations", type=int, help="realizations per cell")
    p_heat.add_argument("--mu-list", dest="mu_list", help="comma-separated mu values (default full grid)")
    p_heat.add_argument("-o", "--output", help="output CSV path (default heatmap.csv)")
    p_heat.set_defaults(func=_cmd_heatmap)

    p_verify = sub.add_parser(
        "verify-endpoints",
        help="check strategy-label inertness at mu=0 and mu=1 under a shared seed",
    )
    add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify_endpoints)

    return parser


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
