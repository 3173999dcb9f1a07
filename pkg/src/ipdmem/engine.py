"""Single-realization execution: round scheduling, refusal protocol, payoffs.

Determinism contract
--------------------
A realization owns exactly one ``random.Random`` stream seeded from its
config. Every stochastic step consumes exactly one ``random()`` draw:

* pair selection: one draw decoded to a pair index,
* each action: one draw (cooperate iff u < rho),
* each eviction: one draw inside the evictor.

Willingness checks consume no draws and short-circuit after the first
refusal, so the number of draws per round is a deterministic function of
the round's outcome path and replays under the same seed are bit-exact.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .forgetting import EVICTORS, evictor_for
from .model import (
    Action,
    AgentSpec,
    AgentState,
    MemoryStore,
    PayoffMatrix,
    draw_action,
    observe_action,
    record_outcome,
    willing_to_play,
)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(x: int) -> int:
    # splitmix64 finalizer
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def split_seed(master: int, *indices: int) -> int:
    """Derive an independent 64-bit seed from a master seed and index path.

    Folds each index into the state with a splitmix64 step, so the scheme
    composes: split_seed(split_seed(m, a), b) == split_seed(m, a, b).
    """
    state = master & _MASK64
    for index in indices:
        state = _mix64((state + _GOLDEN + index) & _MASK64)
    return state


def memory_capacity(mu: float, n_agents: int) -> int:
    """Per-agent record capacity M = round(mu * N), ties rounding up."""
    return int(mu * n_agents + 0.5)


@dataclass(frozen=True)
class EnvironmentConfig:
    """Complete description of one experiment environment.

    Together with ``seed`` this reproduces a realization bit-exactly. The
    roster must list agents in id order (roster[i].id == i) and memory
    capacity is the same for every agent.
    """

    n_agents: int
    mu: float
    payoffs: PayoffMatrix
    tau: int
    agent_roster: tuple[AgentSpec, ...]
    seed: int

    def __post_init__(self) -> None:
        if self.n_agents < 2:
            raise ValueError(f"need at least 2 agents, got {self.n_agents}")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {self.mu}")
        if self.tau < 1:
            raise ValueError(f"tau must be a positive integer, got {self.tau}")
        if len(self.agent_roster) != self.n_agents:
            raise ValueError(
                f"roster size {len(self.agent_roster)} != n_agents {self.n_agents}"
            )
        for i, spec in enumerate(self.agent_roster):
            if spec.id != i:
                raise ValueError(f"roster must be in id order; position {i} has id {spec.id}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def memory_cap(self) -> int:
        return memory_capacity(self.mu, self.n_agents)

    @property
    def n_pairs(self) -> int:
        return self.n_agents * (self.n_agents - 1) // 2

    @property
    def total_rounds(self) -> int:
        return self.n_pairs * self.tau


@dataclass(frozen=True)
class RoundOutcome:
    """Result of one scheduled round: either a played game or a refusal."""

    played: bool
    actions: tuple[Action, Action] | None = None
    payoffs: tuple[float, float] | None = None


REFUSED = RoundOutcome(played=False)


@dataclass(frozen=True)
class RealizationResult:
    """Per-agent accumulators and totals for one completed realization."""

    config: EnvironmentConfig
    seed: int
    total_payoffs: tuple[float, ...]
    games_played: tuple[int, ...]
    rounds_refused: tuple[int, ...]
    rounds: int
    played_rounds: int
    refused_rounds: int
    evictions: int


def play_round(
    agents: list[AgentState],
    i: int,
    j: int,
    payoffs: PayoffMatrix,
    rng: random.Random,
) -> RoundOutcome:
    """Play (or refuse) one round between agents ``i`` and ``j``.

    Both willingness checks run first (no draws); if either side refuses,
    only the refusal counters change. Otherwise the lower index draws its
    action first, payoffs are assigned from the outcome table, and the
    lower index updates its memory first.
    """
    if i == j:
        raise ValueError(f"an agent cannot play itself (i == j == {i})")
    agent_i, agent_j = agents[i], agents[j]
    if not willing_to_play(agent_i, j) or not willing_to_play(agent_j, i):
        agent_i.rounds_refused += 1
        agent_j.rounds_refused += 1
        return REFUSED

    act_i = draw_action(agent_i.spec.rho, rng)
    act_j = draw_action(agent_j.spec.rho, rng)
    if act_i is Action.COOPERATE:
        if act_j is Action.COOPERATE:
            pay_i = pay_j = payoffs.reward
        else:
            pay_i, pay_j = payoffs.sucker, payoffs.temptation
    else:
        if act_j is Action.COOPERATE:
            pay_i, pay_j = payoffs.temptation, payoffs.sucker
        else:
            pay_i = pay_j = payoffs.punishment
    agent_i.total_payoff += pay_i
    agent_j.total_payoff += pay_j
    agent_i.games_played += 1
    agent_j.games_played += 1
    record_outcome(agent_i, j, act_j, evictor_for(agent_i.spec.strategy), rng)
    record_outcome(agent_j, i, act_i, evictor_for(agent_j.spec.strategy), rng)
    return RoundOutcome(played=True, actions=(act_i, act_j), payoffs=(pay_i, pay_j))


def run_realization(config: EnvironmentConfig) -> RealizationResult:
    """Execute exactly C(N,2) * tau rounds from empty memories.

    Each round draws one unordered pair uniformly at random (one draw over
    the lexicographic pair index) and plays it via the round protocol. The
    loop is an inlined equivalent of repeated :func:`play_round` calls on
    the same stream; tests pin the equivalence.
    """
    n = config.n_agents
    cap = config.memory_cap
    pm = config.payoffs
    t_pay, r_pay, p_pay, s_pay = pm.temptation, pm.reward, pm.punishment, pm.sucker

    rng = random.Random(config.seed)
    rnd = rng.random

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    n_pairs = len(pairs)
    total_rounds = n_pairs * config.tau

    rho = [spec.rho for spec in config.agent_roster]
    stores = [MemoryStore(capacity=cap) for _ in range(n)]
    recmaps = [store.records for store in stores]
    evictors = [EVICTORS[spec.strategy] for spec in config.agent_roster]
    observe = observe_action

    payoff = [0.0] * n
    games = [0] * n
    refused = [0] * n
    played_rounds = 0

    for _ in range(total_rounds):
        i, j = pairs[int(rnd() * n_pairs)]
        mem_i = recmaps[i]
        mem_j = recmaps[j]
        # willing iff unknown or perceived cooperator; (c+1)/(c+d+2) > 0.5 iff c > d
        rec = mem_i.get(j)
        if rec is not None and rec.coop_count <= rec.defect_count:
            refused[i] += 1
            refused[j] += 1
            continue
        rec = mem_j.get(i)
        if rec is not None and rec.coop_count <= rec.defect_count:
            refused[i] += 1
            refused[j] += 1
            continue

        coop_i = rnd() < rho[i]
        coop_j = rnd() < rho[j]
        if coop_i:
            if coop_j:
                payoff[i] += r_pay
                payoff[j] += r_pay
            else:
                payoff[i] += s_pay
                payoff[j] += t_pay
        else:
            if coop_j:
                payoff[i] += t_pay
                payoff[j] += s_pay
            else:
                payoff[i] += p_pay
                payoff[j] += p_pay
        games[i] += 1
        games[j] += 1
        played_rounds += 1

        observe(stores[i], j, coop_j, evictors[i], rng)
        observe(stores[j], i, coop_i, evictors[j], rng)

    return RealizationResult(
        config=config,
        seed=config.seed,
        total_payoffs=tuple(payoff),
        games_played=tuple(games),
        rounds_refused=tuple(refused),
        rounds=total_rounds,
        played_rounds=played_rounds,
        refused_rounds=total_rounds - played_rounds,
        evictions=sum(store.evictions for store in stores),
    )


def run_batch(
    config: EnvironmentConfig,
    realizations: int,
    master_seed: int,
    workers: int | None = None,
) -> list[RealizationResult]:
    """Run independent realizations with seeds split from ``master_seed``.

    Realization k uses seed split_seed(master_seed, k). With ``workers`` > 1
    the realizations execute in a process pool; results are ordered by k
    either way, so sequential and concurrent execution are interchangeable.
    """
    if realizations < 1:
        raise ValueError(f"realizations must be >= 1, got {realizations}")
    configs = [
        replace(config, seed=split_seed(master_seed, k)) for k in range(realizations)
    ]
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_realization, configs))
    return [run_realization(cfg) for cfg in configs]
