"""Eviction policy tests: extrema via exact Fraction oracles, tie-break uniformity."""

import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ipdmem.forgetting import (
    EVICTORS,
    Strategy,
    evict_flp,
    evict_fmc,
    evict_fmd,
    evict_fmp,
    evict_fmu,
    evict_fr,
    evictor_for,
)
from ipdmem.model import MemoryRecord, MemoryStore


def store_from(counts: dict[int, tuple[int, int]], capacity: int | None = None) -> MemoryStore:
    store = MemoryStore(capacity=capacity if capacity is not None else len(counts))
    for opponent, (c, d) in counts.items():
        store.records[opponent] = MemoryRecord(opponent, c, d)
    return store


def ratio(c: int, d: int) -> Fraction:
    return Fraction(c + 1, c + d + 2)


def oracle_ties(store: MemoryStore, strategy: Strategy) -> set[int]:
    """Exact-arithmetic set of records attaining the strategy's extremum."""
    items = list(store.records.items())
    if strategy is Strategy.FR:
        return {opp for opp, _ in items}
    if strategy is Strategy.FMC:
        key = lambda rec: ratio(rec.coop_count, rec.defect_count)
        best = max(key(rec) for _, rec in items)
    elif strategy is Strategy.FMD:
        key = lambda rec: ratio(rec.coop_count, rec.defect_count)
        best = min(key(rec) for _, rec in items)
    elif strategy is Strategy.FMU:
        key = lambda rec: abs(ratio(rec.coop_count, rec.defect_count) - Fraction(1, 2))
        best = min(key(rec) for _, rec in items)
    elif strategy is Strategy.FLP:
        key = lambda rec: rec.coop_count + rec.defect_count
        best = min(key(rec) for _, rec in items)
    else:
        key = lambda rec: rec.coop_count + rec.defect_count
        best = max(key(rec) for _, rec in items)
    return {opp for opp, rec in items if key(rec) == best}


class TestSingletonAndExamples:
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_singleton_memory_is_forced(self, strategy):
        store = store_from({3: (2, 1)})
        assert evictor_for(strategy)(store, random.Random(0)) == 3

    def test_fmc_picks_highest_ratio(self):
        store = store_from({7: (3, 0), 9: (0, 3)})
        assert evict_fmc(store, random.Random(0)) == 7

    def test_fmd_picks_lowest_ratio(self):
        store = store_from({7: (3, 0), 9: (0, 3)})
        assert evict_fmd(store, random.Random(0)) == 9

    def test_fmd_half_beats_third(self):
        store = store_from({1: (1, 1), 2: (0, 1)})  # ratios 1/2 and 1/3
        assert evict_fmd(store, random.Random(0)) == 2

    def test_fmu_picks_closest_to_half(self):
        store = store_from({1: (1, 1), 2: (4, 0)})  # distances 0 and 1/3
        assert evict_fmu(store, random.Random(0)) == 1

    def test_flp_picks_fewest_games(self):
        store = store_from({1: (5, 2), 2: (1, 0)})
        assert evict_flp(store, random.Random(0)) == 2

    def test_fmp_picks_most_games(self):
        store = store_from({1: (5, 2), 2: (1, 0)})
        assert evict_fmp(store, random.Random(0)) == 1

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_empty_memory_is_a_contract_violation(self, strategy):
        with pytest.raises(ValueError, match="empty"):
            evictor_for(strategy)(MemoryStore(capacity=3), random.Random(0))


class TestUniformity:
    def test_fr_uniform_over_five_records(self):
        # 10^5 trials, each slot expected 20000; 500 is well past 3 sigma (~380)
        counts = Counter()
        rng = random.Random(2024)
        store = store_from({i: (i, 2 * i + 1) for i in range(5)})
        for _ in range(100_000):
            counts[evict_fr(store, rng)] += 1
        for opponent in store.records:
            assert abs(counts[opponent] - 20_000) < 500

    def test_identical_records_tie_uniformly(self):
        counts = Counter()
        rng = random.Random(7)
        store = store_from({1: (2, 1), 2: (2, 1), 3: (2, 1)})
        trials = 30_000
        for _ in range(trials):
            counts[evict_fmc(store, rng)] += 1
        for opponent in (1, 2, 3):
            assert abs(counts[opponent] - trials / 3) < 400

    def test_fmu_symmetric_distance_tie(self):
        # (1,0) -> 2/3 and (0,1) -> 1/3 are equidistant from 0.5: a true tie
        counts = Counter()
        rng = random.Random(11)
        store = store_from({4: (1, 0), 8: (0, 1)})
        trials = 20_000
        for _ in range(trials):
            counts[evict_fmu(store, rng)] += 1
        assert counts[4] + counts[8] == trials
        assert abs(counts[4] - trials / 2) < 300

    def test_flp_equal_sums_tie_uniformly(self):
        counts = Counter()
        rng = random.Random(13)
        store = store_from({4: (1, 0), 8: (0, 1)})
        trials = 20_000
        for _ in range(trials):
            counts[evict_flp(store, rng)] += 1
        assert abs(counts[4] - trials / 2) < 300


record_counts = st.tuples(st.integers(0, 30), st.integers(0, 30)).filter(
    lambda cd: cd[0] + cd[1] >= 1
)
stores = st.dictionaries(st.integers(0, 40), record_counts, min_size=1, max_size=12)


class TestProperties:
    @given(counts=stores, strategy=st.sampled_from(list(Strategy)), seed=st.integers(0, 2**32))
    def test_choice_is_present_and_attains_extremum(self, counts, strategy, seed):
        store = store_from(counts)
        chosen = evictor_for(strategy)(store, random.Random(seed))
        assert chosen in store.records
        assert chosen in oracle_ties(store, strategy)

    @given(counts=stores, strategy=st.sampled_from(list(Strategy)), seed=st.integers(0, 2**32))
    def test_deterministic_under_same_seed(self, counts, strategy, seed):
        store = store_from(counts)
        first = evictor_for(strategy)(store, random.Random(seed))
        second = evictor_for(strategy)(store, random.Random(seed))
        assert first == second

    @given(counts=stores)
    def test_fmc_fmd_duality(self, counts):
        store = store_from(counts)
        ratios = {ratio(c, d) for c, d in counts.values()}
        if len(counts) > 1 and len(ratios) == len(counts):
            # all ratios distinct: unique max and min differ
            rng = random.Random(0)
            assert evict_fmc(store, rng) != evict_fmd(store, rng)

    @given(counts=stores)
    def test_flp_fmp_duality(self, counts):
        store = store_from(counts)
        sums = {c + d for c, d in counts.values()}
        if len(counts) > 1 and len(sums) == len(counts):
            rng = random.Random(0)
            assert evict_flp(store, rng) != evict_fmp(store, rng)

    @given(counts=stores, strategy=st.sampled_from(list(Strategy)))
    def test_exactly_one_draw_consumed(self, counts, strategy):
        store = store_from(counts)
        rng_a = random.Random(5)
        rng_b = random.Random(5)
        evictor_for(strategy)(store, rng_a)
        rng_b.random()
        assert rng_a.random() == rng_b.random()


def test_evictor_for_covers_every_strategy():
    assert set(EVICTORS) == set(Strategy)
    assert evictor_for(Strategy.FR) is evict_fr
    assert evictor_for(Strategy.FMD) is evict_fmd
    assert evictor_for(Strategy.FMU) is evict_fmu
