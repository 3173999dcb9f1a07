"""Iterated prisoner's dilemma with bounded agent memory and forgetting strategies."""

from .engine import (
    EnvironmentConfig,
    RealizationResult,
    RoundOutcome,
    memory_capacity,
    play_round,
    run_batch,
    run_realization,
    split_seed,
)
from .experiments import (
    MU_GRID,
    RHO_GRID,
    SweepCell,
    SweepResult,
    build_heterogeneous,
    build_homogeneous,
    heatmap_sweep,
    heterogeneous_sweep,
    homogeneous_sweep,
    payoff_ratio,
    verify_endpoints,
)
from .forgetting import STRATEGIES, Strategy, evictor_for
from .model import (
    Action,
    AgentSpec,
    AgentState,
    DEFAULT_PAYOFFS,
    MemoryRecord,
    MemoryStore,
    PayoffMatrix,
    Perception,
    classify,
    draw_action,
    perceived_ratio,
    record_outcome,
    willing_to_play,
)

__version__ = "0.1.0"
