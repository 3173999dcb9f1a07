"""Flat key=value run configuration: parsing, defaults, validation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .experiments import MU_GRID
from .forgetting import Strategy
from .model import PayoffMatrix

MODES = ("homogeneous", "heterogeneous", "heatmap", "single")


class ConfigError(ValueError):
    """A configuration document failed validation; the message names the key."""


@dataclass
class RunConfigFile:
    """Parsed run configuration with defaults applied.

    ``strategy`` restricts a homogeneous sweep to one strategy and sets the
    roster strategy for single mode; ``n_agents`` and ``mu`` only apply to
    single mode.
    """

    mode: str | None = None
    strategy: Strategy | None = None
    agents_per_rho: int = 6
    payoffs: PayoffMatrix = field(
        default_factory=lambda: PayoffMatrix(5.0, 3.0, 1.0, 0.0)
    )
    tau: int = 30
    realizations: int = 50
    master_seed: int | None = None
    mu_list: tuple[float, ...] = MU_GRID
    output: str | None = None
    n_agents: int = 126
    mu: float = 1.0
    workers: int | None = None


def _parse_int(key: str, raw: str, minimum: int) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None
    if value < minimum:
        raise ConfigError(f"{key}: must be >= {minimum}, got {value}")
    return value


def _parse_mu(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{key}: mu values must lie in [0, 1], got {value}")
    return value


def parse_strategy(token: str, key: str = "strategy") -> Strategy:
    try:
        return Strategy(token)
    except ValueError:
        valid = ", ".join(s.value for s in Strategy)
        raise ConfigError(f"{key}: unknown strategy {token!r} (expected one of {valid})") from None


def parse_payoffs(raw: str, key: str = "payoffs") -> PayoffMatrix:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"{key}: expected 4 comma-separated numbers T,R,P,S, got {raw!r}")
    try:
        t, r, p, s = (float(x) for x in parts)
    except ValueError:
        raise ConfigError(f"{key}: expected 4 comma-separated numbers T,R,P,S, got {raw!r}") from None
    try:
        return PayoffMatrix(temptation=t, reward=r, punishment=p, sucker=s)
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def parse_mu_list(raw: str, key: str = "mu_list") -> tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"{key}: empty mu list")
    return tuple(_parse_mu(key, p) for p in parts)


def parse_config(text: str) -> RunConfigFile:
    """Parse a flat ``key = value`` document ('#' starts a comment).

    Unknown keys, malformed values, out-of-range mu, unknown strategy
    tokens, and payoff-inequality violations all raise :class:`ConfigError`
    naming the offending key.
    """
    config = RunConfigFile()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key == "mode":
            if raw not in MODES:
                raise ConfigError(f"mode: unknown mode {raw!r} (expected one of {', '.join(MODES)})")
            config.mode = raw
        elif key == "strategy":
            config.strategy = parse_strategy(raw)
        elif key == "agents_per_rho":
            config.agents_per_rho = _parse_int(key, raw, minimum=1)
        elif key == "payoffs":
            config.payoffs = parse_payoffs(raw)
        elif key == "tau":
            config.tau = _parse_int(key, raw, minimum=1)
        elif key == "realizations":
            config.realizations = _parse_int(key, raw, minimum=1)
        elif key == "master_seed":
            seed = _parse_int(key, raw, minimum=0)
            if seed >= 1 << 64:
                raise ConfigError(f"{key}: must fit in 64 bits, got {seed}")
            config.master_seed = seed
        elif key == "mu_list":
            config.mu_list = parse_mu_list(raw)
        elif key == "output":
            config.output = raw
        elif key == "n_agents":
            config.n_agents = _parse_int(key, raw, minimum=2)
        elif key == "mu":
            config.mu = _parse_mu(key, raw)
        elif key == "workers":
            config.workers = _parse_int(key, raw, minimum=1)
        else:
            raise ConfigError(f"unknown config key {key!r} (line {lineno})")
    return config
