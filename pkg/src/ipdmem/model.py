"""Core domain types and the pure decision/perception rules.

Everything here is a function of its explicit arguments plus, where noted,
a caller-owned random stream. There is no module-level mutable state, so
these operations are safe to use from concurrent realization workers as
long as each realization owns its agents and its stream exclusively.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable

if TYPE_CHECKING:
    from .forgetting import Strategy


class Action(enum.Enum):
    """A move in a single prisoner's dilemma game."""

    COOPERATE = "C"
    DEFECT = "D"


class Perception(enum.Enum):
    """How an agent classifies a remembered opponent."""

    COOPERATOR = "cooperator"
    DEFECTOR = "defector"


@dataclass(frozen=True)
class PayoffMatrix:
    """The four prisoner's dilemma payoffs.

    Construction enforces the two dilemma conditions:
    S < P < R < T and S + T < 2R.
    """

    temptation: float
    reward: float
    punishment: float
    sucker: float

    def __post_init__(self) -> None:
        t, r, p, s = self.temptation, self.reward, self.punishment, self.sucker
        if not s < p:
            raise ValueError(f"S < P violated (S={s}, P={p})")
        if not p < r:
            raise ValueError(f"P < R violated (P={p}, R={r})")
        if not r < t:
            raise ValueError(f"R < T violated (R={r}, T={t})")
        if not s + t < 2 * r:
            raise ValueError(f"S + T < 2R violated (S+T={s + t}, 2R={2 * r})")


#: Classic payoff values; the dilemma conditions hold and every experiment
#: uses them unless the config overrides.
DEFAULT_PAYOFFS = PayoffMatrix(temptation=5.0, reward=3.0, punishment=1.0, sucker=0.0)


@dataclass(frozen=True)
class AgentSpec:
    """Immutable identity of an agent: index, cooperation probability, strategy."""

    id: int
    rho: float
    strategy: "Strategy"

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError(f"agent id must be nonnegative, got {self.id}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must be in [0, 1], got {self.rho}")


@dataclass(slots=True)
class MemoryRecord:
    """Per-opponent counters: how often the opponent cooperated/defected against the owner.

    A record only exists after at least one game, so coop_count + defect_count >= 1.
    """

    opponent: int
    coop_count: int = 0
    defect_count: int = 0


@dataclass
class MemoryStore:
    """Bounded map of opponent index -> MemoryRecord.

    Holds at most ``capacity`` records; the owner never appears as a key in
    its own store. ``evictions`` counts how many records were discarded to
    admit new opponents (instrumentation for the no-forgetting endpoints).
    """

    capacity: int
    records: dict[int, MemoryRecord] = field(default_factory=dict)
    evictions: int = 0


@dataclass
class AgentState:
    """Mutable per-realization state: identity plus memory and accumulators."""

    spec: AgentSpec
    memory: MemoryStore
    total_payoff: float = 0.0
    games_played: int = 0
    rounds_refused: int = 0


#: An eviction policy: given a non-empty store and the realization's random
#: stream, return the opponent index of the record to discard.
Evictor = Callable[[MemoryStore, random.Random], int]


def perceived_ratio(coop_count: int, defect_count: int) -> float:
    """Laplace-smoothed cooperation fraction (c + 1) / (c + d + 2).

    Strictly inside (0, 1) for any nonnegative counts; (0, 0) gives the
    symmetric baseline 0.5. Larger samples at the same c:d ratio move the
    value further from 0.5, so evidence weight grows with sample size.
    """
    return (coop_count + 1) / (coop_count + defect_count + 2)


def classify(ratio: float) -> Perception:
    """Cooperator iff the ratio is strictly above 0.5; 0.5 itself is a defector."""
    return Perception.COOPERATOR if ratio > 0.5 else Perception.DEFECTOR


def draw_action(rho: float, rng: random.Random) -> Action:
    """Draw one action: cooperate with probability rho.

    Consumes exactly one uniform draw u in [0, 1) and cooperates iff u < rho,
    so rho=0 never cooperates and rho=1 always does.
    """
    return Action.COOPERATE if rng.random() < rho else Action.DEFECT


def willing_to_play(agent: AgentState, opponent: int) -> bool:
    """Whether ``agent`` agrees to a game against ``opponent``.

    Unknown opponents are always played; known ones only if they are
    perceived as cooperators. Consumes no random draws.
    """
    record = agent.memory.records.get(opponent)
    if record is None:
        return True
    ratio = perceived_ratio(record.coop_count, record.defect_count)
    return classify(ratio) is Perception.COOPERATOR


def observe_action(
    store: MemoryStore,
    opponent: int,
    cooperated: bool,
    evictor: Evictor,
    rng: random.Random,
) -> None:
    """Fold one observed action of ``opponent`` into ``store``.

    Existing records are incremented in place. A new opponent gets a fresh
    record, evicting one chosen by ``evictor`` when the store is full. With
    capacity 0 nothing is stored and the evictor is never called.
    """
    record = store.records.get(opponent)
    if record is not None:
        if cooperated:
            record.coop_count += 1
        else:
            record.defect_count += 1
        return
    capacity = store.capacity
    if capacity == 0:
        return
    records = store.records
    if len(records) >= capacity:
        victim = evictor(store, rng)
        if victim not in records:
            raise RuntimeError(f"evictor returned absent opponent {victim}")
        del records[victim]
        store.evictions += 1
    if cooperated:
        records[opponent] = MemoryRecord(opponent, 1, 0)
    else:
        records[opponent] = MemoryRecord(opponent, 0, 1)


def record_outcome(
    agent: AgentState,
    opponent: int,
    opponent_action: Action,
    evictor: Evictor,
    rng: random.Random,
) -> None:
    """Update ``agent``'s memory after a played game against ``opponent``."""
    observe_action(
        agent.memory, opponent, opponent_action is Action.COOPERATE, evictor, rng
    )
