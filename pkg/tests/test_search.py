import itertools

import numpy as np
import pytest

from monodelta import (
    DominanceMatrix,
    Ordering,
    ResponseMatrix,
    SearchParams,
    build_tournament,
    contradiction_count,
    exact_min_contradictions,
    initial_ordering,
    local_search,
    monotone_delta,
    swap_cost_delta,
)
from monodelta.errors import InstanceTooLargeError, PositionOutOfRangeError, ReliabilityError

from conftest import likert
from oracles import brute_force, recount_swap


def test_initial_ordering_examples():
    assert initial_ordering(ResponseMatrix([[2, 2], [1, 1], [3, 3]])).perm == (1, 0, 2)
    assert initial_ordering(ResponseMatrix(np.ones((4, 3)))).perm == (0, 1, 2, 3)
    assert initial_ordering(ResponseMatrix([[1, 2], [2, 3], [4, 4]])).perm == (0, 1, 2)


def test_search_params_validation():
    for bad in [dict(restarts=0), dict(max_non_improving=0), dict(seed=-1), dict(seed=2**64), dict(proposal_mode="x")]:
        with pytest.raises(ReliabilityError):
            SearchParams(**bad)


def test_swap_delta_examples(small_w):
    assert swap_cost_delta(small_w, Ordering((0, 1)), 0, 1) == -1
    zero = DominanceMatrix(np.zeros((3, 3), dtype=int), 2)
    assert swap_cost_delta(zero, [2, 0, 1], 0, 2) == 0
    with pytest.raises(PositionOutOfRangeError):
        swap_cost_delta(small_w, [0, 1], 1, 1)
    with pytest.raises(PositionOutOfRangeError):
        swap_cost_delta(small_w, [0, 1], 0, 2)


def test_local_search_examples(small_w):
    res = local_search(small_w)
    assert res.c_star == 1
    assert res.delta == pytest.approx(1 - 1 / 3)
    mono = ResponseMatrix(np.arange(12, dtype=float).reshape(6, 2)[::-1])
    res = monotone_delta(mono)
    assert (res.c_star, res.delta) == (0, 1.0)


def test_exact_examples(small_w):
    assert exact_min_contradictions(small_w).c_star == 1
    assert exact_min_contradictions(small_w).ordering.perm == (1, 0)
    zero = exact_min_contradictions(DominanceMatrix(np.zeros((5, 5), dtype=int), 2))
    assert zero.c_star == 0 and zero.ordering.perm == (0, 1, 2, 3, 4)
    single = exact_min_contradictions(DominanceMatrix(np.zeros((1, 1), dtype=int), 2))
    assert single.c_star == 0
    with pytest.raises(InstanceTooLargeError):
        exact_min_contradictions(DominanceMatrix(np.zeros((10, 10), dtype=int), 1))


@pytest.mark.parametrize("seed", range(25))
def test_exact_matches_brute_force(seed):
    t = build_tournament(likert(seed, 6, 4))
    res = exact_min_contradictions(t)
    c, perm = brute_force(t)
    assert res.c_star == c
    assert res.ordering.perm == perm
    assert contradiction_count(t, res.ordering) == c


@pytest.mark.parametrize("seed", range(10))
def test_local_search_sound_and_above_oracle(seed):
    m = likert(seed, 8, 4)
    t = build_tournament(m)
    res = monotone_delta(m)
    assert res.c_star == contradiction_count(t, res.best_ordering)
    assert res.c_star >= exact_min_contradictions(t).c_star
    assert res.delta == 1 - res.c_star / res.c_max


def test_determinism_and_seed_effect():
    m = likert(7, 40, 6)
    a = monotone_delta(m, SearchParams(seed=11))
    b = monotone_delta(m, SearchParams(seed=11))
    assert a == b
    assert a.diagnostics.restart_costs == b.diagnostics.restart_costs
    c = monotone_delta(m, SearchParams(seed=12))
    assert c.diagnostics.restart_costs[1:] != a.diagnostics.restart_costs[1:]


@pytest.mark.parametrize("mode", ["adjacent-sweep-then-random", "random-pair"])
def test_accepted_costs_strictly_decrease(mode):
    m = likert(3, 30, 5)
    res = monotone_delta(m, SearchParams(seed=5, restarts=3, proposal_mode=mode, trace=True))
    assert len(res.diagnostics.trace) == 3
    for trace, final in zip(res.diagnostics.trace, res.diagnostics.restart_costs):
        assert all(b < a for a, b in zip(trace, trace[1:]))
        assert trace[-1] == final
    assert res.c_star == min(res.diagnostics.restart_costs)
    assert res.diagnostics.best_restart == res.diagnostics.restart_costs.index(res.c_star)


def test_first_restart_starts_from_mean_order():
    m = likert(9, 20, 4)
    t = build_tournament(m)
    res = monotone_delta(m, SearchParams(restarts=1, trace=True))
    assert res.diagnostics.trace[0][0] == contradiction_count(t, initial_ordering(m))


def test_local_optimum_has_no_improving_swap():
    m = likert(4, 15, 5)
    t = build_tournament(m)
    res = monotone_delta(m, SearchParams(restarts=1, max_non_improving=10**6))
    for p, q in itertools.combinations(range(t.n), 2):
        assert swap_cost_delta(t, res.best_ordering, p, q) >= 0


def test_diagnostics_recorded():
    res = monotone_delta(likert(1, 25, 4), SearchParams(restarts=4))
    d = res.diagnostics
    assert d.restarts == 4 and len(d.restart_costs) == 4
    assert d.proposals >= d.accepted_swaps > 0
    assert d.seconds > 0
    assert d.trace is None


@pytest.mark.parametrize("seed", range(5))
def test_swap_delta_matches_recount(seed):
    t = build_tournament(likert(seed, 9, 3))
    perm = list(np.random.default_rng(seed).permutation(9))
    for p, q in itertools.combinations(range(9), 2):
        assert swap_cost_delta(t, perm, p, q) == recount_swap(t, perm, p, q)
