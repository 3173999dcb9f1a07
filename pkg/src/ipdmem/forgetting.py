"""The six eviction policies for a full memory admitting a new opponent.

Every evictor takes a non-empty :class:`~ipdmem.model.MemoryStore` and the
realization's random stream, consumes exactly one uniform draw, and returns
the opponent index of the record to discard. Extrema are compared with exact
integer arithmetic (cross-multiplication), so ties are true ties of the
underlying ratios rather than artifacts of float rounding: e.g. records
(1,0) and (0,1) are equidistant from 0.5 and must tie under FMU, which a
naive ``abs(ratio - 0.5)`` comparison breaks.

Tied candidates are sorted by opponent index before the draw so the mapping
from stream value to chosen record is platform-independent.
"""

from __future__ import annotations

import enum
import random

from .model import Evictor, MemoryStore


class Strategy(enum.Enum):
    """Forgetting strategy tokens, serialized exactly as written here."""

    FR = "FR"
    FMC = "FMC"
    FMD = "FMD"
    FMU = "FMU"
    FLP = "FLP"
    FMP = "FMP"


#: Canonical ordering used for strategy indices in seed derivation and output.
STRATEGIES: tuple[Strategy, ...] = tuple(Strategy)


def _pick(candidates: list[int], rng: random.Random) -> int:
    # int(u * k) stays in [0, k) for k << 2**52; exactly one draw per eviction.
    candidates.sort()
    return candidates[int(rng.random() * len(candidates))]


def evict_fr(memory: MemoryStore, rng: random.Random) -> int:
    """Forget a uniformly random remembered opponent."""
    if not memory.records:
        raise ValueError("cannot evict from an empty memory")
    return _pick(list(memory.records), rng)


def evict_fmc(memory: MemoryStore, rng: random.Random) -> int:
    """Forget the opponent with the highest perceived cooperation ratio."""
    if not memory.records:
        raise ValueError("cannot evict from an empty memory")
    best_num, best_den = 0, 1  # ratio 0, below any real record's ratio
    ties: list[int] = []
    for opponent, rec in memory.records.items():
        num = rec.coop_count + 1
        den = rec.coop_count + rec.defect_count + 2
        diff = num * best_den - best_num * den
        if diff > 0:
            best_num, best_den = num, den
            ties = [opponent]
        elif diff == 0:
            ties.append(opponent)
    return _pick(ties, rng)


def evict_fmd(memory: MemoryStore, rng: random.Random) -> int:
    """Forget the opponent with the lowest perceived cooperation ratio."""
    if not memory.records:
        raise ValueError("cannot evict from an empty memory")
    best_num, best_den = 1, 0  # ratio +inf, above any real record's ratio
    ties: list[int] = []
    for opponent, rec in memory.records.items():
        num = rec.coop_count + 1
        den = rec.coop_count + rec.defect_count + 2
        diff = num * best_den - best_num * den
        if diff < 0:
            best_num, best_den = num, den
            ties = [opponent]
        elif diff == 0:
            ties.append(opponent)
    return _pick(ties, rng)


def evict_fmu(memory: MemoryStore, rng: random.Random) -> int:
    """Forget the opponent whose perceived ratio is closest to 0.5.

    Distance |t - 0.5| equals |c - d| / (2 (c + d + 2)); the constant factor
    cancels in comparisons, leaving |c - d| / (c + d + 2).
    """
    if not memory.records:
        raise ValueError("cannot evict from an empty memory")
    best_num, best_den = 1, 0  # distance +inf
    ties: list[int] = []
    for opponent, rec in memory.records.items():
        num = abs(rec.coop_count - rec.defect_count)
        den = rec.coop_count + rec.defect_count + 2
        diff = num * best_den - best_num * den
        if diff < 0:
            best_num, best_den = num, den
            ties = [opponent]
        elif diff == 0:
            ties.append(opponent)
    return _pick(ties, rng)


def evict_flp(memory: MemoryStore, rng: random.Random) -> int:
    """Forget the opponent with the fewest recorded games."""
    if not memory.records:
        raise ValueError("cannot evict from an empty memory")
    best = -1
    ties: list[int] = []
    for opponent, rec in memory.records.items():
        total = rec.coop_count + rec.defect_count
        if best < 0 or total < best:
            best = total
            ties = [opponent]
        elif total == best:
            ties.append(opponent)
    return _pick(ties, rng)


def evict_fmp(memory: MemoryStore, rng: random.Random) -> int:
    """Forget the opponent with the most recorded games."""
    if not memory.records:
        raise ValueError("cannot evict from an empty memory")
    best = -1
    ties: list[int] = []
    for opponent, rec in memory.records.items():
        total = rec.coop_count + rec.defect_count
        if total > best:
            best = total
            ties = [opponent]
        elif total == best:
            ties.append(opponent)
    return _pick(ties, rng)


EVICTORS: dict[Strategy, Evictor] = {
    Strategy.FR: evict_fr,
    Strategy.FMC: evict_fmc,
    Strategy.FMD: evict_fmd,
    Strategy.FMU: evict_fmu,
    Strategy.FLP: evict_flp,
    Strategy.FMP: evict_fmp,
}


def evictor_for(strategy: Strategy) -> Evictor:
    """Dispatch a strategy token to its eviction operation."""
    return EVICTORS[strategy]
