"""Searching for a low-contradiction ordering of respondents.

The local search follows a strict-descent swap scheme: start from the
respondents sorted by mean score, propose swaps of two positions, and accept
a proposal only if it lowers the contradiction count. A run stops after
``max_non_improving`` consecutive rejected proposals. Several restarts are
made, the first from the mean-score ordering and the rest from seeded random
permutations.

Swap costs are evaluated incrementally. With ``D = W - W.T`` and the
tournament re-indexed by position, ``P[i, j] = D[perm[i], perm[j]]``,
swapping positions ``p < q`` changes the count by::

    P[q, p] + sum(P[q, m] - P[p, m] for p < m < q)

which is O(1) given row prefix sums of ``P``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .data import ResponseMatrix
from .errors import InstanceTooLargeError, LengthMismatchError, PositionOutOfRangeError, ReliabilityError
from .tournament import (
    DeltaResult,
    DominanceMatrix,
    Ordering,
    SearchDiagnostics,
    build_tournament,
    contradiction_count,
    delta_from_counts,
    max_contradictions,
)

ProposalMode = Literal["adjacent-sweep-then-random", "random-pair"]

_UINT64 = 2**64
_MIN_BATCH = 64
_MAX_BATCH = 8192


@dataclass(frozen=True)
class SearchParams:
    """Local search settings.

    ``max_non_improving=None`` means ``N * (N - 1)`` consecutive rejected
    proposals, i.e. on average one look at every ordered pair of positions.
    Set ``trace=True`` to keep the accepted contradiction counts of every
    restart in the diagnostics.
    """

    seed: int = 0
    restarts: int = 10
    max_non_improving: int | None = None
    proposal_mode: ProposalMode = "adjacent-sweep-then-random"
    trace: bool = False

    def __post_init__(self):
        if not 0 <= self.seed < _UINT64:
            raise ReliabilityError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.restarts < 1:
            raise ReliabilityError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_non_improving is not None and self.max_non_improving < 1:
            raise ReliabilityError(f"max_non_improving must be >= 1, got {self.max_non_improving}")
        if self.proposal_mode not in ("adjacent-sweep-then-random", "random-pair"):
            raise ReliabilityError(f"unknown proposal mode {self.proposal_mode!r}")


@dataclass(frozen=True)
class ExactResult:
    c_star: int
    ordering: Ordering
    permutations_examined: int


def initial_ordering(m: ResponseMatrix) -> Ordering:
    """Respondents sorted by ascending mean score, ties kept in row order."""
    means = m.values.mean(axis=1)
    return Ordering(tuple(np.argsort(means, kind="stable")))


def net_score_ordering(t: DominanceMatrix) -> Ordering:
    """Start ordering for when only the tournament is available: ascending net wins."""
    net = t.w.sum(axis=1) - t.w.sum(axis=0)
    return Ordering(tuple(np.argsort(net, kind="stable")))


def swap_cost_delta(t: DominanceMatrix, o: Ordering | Sequence[int], p: int, q: int) -> int:
    """Change in contradiction count from swapping positions ``p < q`` of ``o``.

    Only the pairs whose relative order flips are re-scored, so the cost is
    O(q - p).
    """
    perm = o.as_array() if isinstance(o, Ordering) else np.asarray(o, dtype=np.intp)
    if len(perm) != t.n:
        raise LengthMismatchError(f"ordering has {len(perm)} entries, tournament has {t.n} respondents")
    if not 0 <= p < q < len(perm):
        raise PositionOutOfRangeError(f"need 0 <= p < q < {len(perm)}, got p={p}, q={q}")
    w = t.w
    a, b = perm[p], perm[q]
    between = perm[p + 1 : q]
    before = w[a, b] + w[a, between].sum() + w[between, b].sum()
    after = w[b, a] + w[b, between].sum() + w[between, a].sum()
    return int(after - before)


def _adjacent_sweep(d: list[list[int]], perm: list[int], cost: int, trace: list[int] | None) -> tuple[int, int, int]:
    """Swap improving adjacent pairs until a full pass makes no change."""
    n = len(perm)
    accepted = proposals = 0
    improved = True
    while improved:
        improved = False
        for p in range(n - 1):
            proposals += 1
            change = d[perm[p + 1]][perm[p]]
            if change < 0:
                perm[p], perm[p + 1] = perm[p + 1], perm[p]
                cost += change
                accepted += 1
                improved = True
                if trace is not None:
                    trace.append(cost)
    return cost, accepted, proposals


def _random_descent(
    d: np.ndarray,
    perm: np.ndarray,
    cost: int,
    rng: np.random.Generator,
    limit: int,
    trace: list[int] | None,
) -> tuple[int, int, int]:
    """Random-pair strict descent until ``limit`` consecutive proposals fail.

    Proposals are drawn and scored in batches; the first improving proposal
    of a batch is accepted and the rest of the batch is discarded.
    """
    n = len(perm)
    accepted = proposals = 0
    if n < 2:
        return cost, accepted, proposals
    pos = d[np.ix_(perm, perm)]
    prefix = np.zeros((n, n + 1), dtype=np.int64)
    np.cumsum(pos, axis=1, out=prefix[:, 1:])
    rejected = 0
    while rejected < limit:
        size = min(max(_MIN_BATCH, rejected), _MAX_BATCH, limit - rejected)
        i = rng.integers(0, n, size)
        j = rng.integers(0, n - 1, size)
        j += j >= i
        p = np.minimum(i, j)
        q = np.maximum(i, j)
        change = pos[q, p] + prefix[q, q] - prefix[q, p + 1] - prefix[p, q] + prefix[p, p + 1]
        hits = np.flatnonzero(change < 0)
        if hits.size == 0:
            rejected += size
            proposals += size
            continue
        h = hits[0]
        proposals += h + 1
        rejected = 0
        a, b = p[h], q[h]
        perm[[a, b]] = perm[[b, a]]
        # swapping columns a and b only shifts prefix sums over (a, b]
        prefix[:, a + 1 : b + 1] += (pos[:, b] - pos[:, a])[:, None]
        pos[:, [a, b]] = pos[:, [b, a]]
        pos[[a, b], :] = pos[[b, a], :]
        prefix[[a, b], :] = prefix[[b, a], :]
        cost += int(change[h])
        accepted += 1
        if trace is not None:
            trace.append(cost)
    return cost, accepted, proposals


def _restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng((seed + restart) % _UINT64)


def local_search(
    t: DominanceMatrix,
    params: SearchParams | None = None,
    start: Ordering | None = None,
) -> DeltaResult:
    """Minimize the contradiction count of ``t`` by restarted swap descent.

    Parameters
    ----------
    t : DominanceMatrix
    params : SearchParams, optional
    start : Ordering, optional
        Starting ordering of the first restart. :func:`monotone_delta` passes
        the mean-score ordering; without it the ascending net-wins ordering
        of the tournament is used.

    Returns
    -------
    DeltaResult
        The best ordering over all restarts; ties go to the earliest restart.
    """
    params = params or SearchParams()
    n = t.n
    c_max = max_contradictions(n, t.k_items)
    start = start or net_score_ordering(t)
    if len(start) != n:
        raise LengthMismatchError(f"start ordering has {len(start)} entries, tournament has {n} respondents")
    limit = params.max_non_improving or max(1, n * (n - 1))
    d = t.w - t.w.T
    d_rows = d.tolist()

    began = time.perf_counter()
    best_cost, best_perm, best_restart = None, None, 0
    costs, traces = [], []
    accepted_total = proposals_total = 0
    for r in range(params.restarts):
        rng = _restart_rng(params.seed, r)
        perm = start.as_array().copy() if r == 0 else rng.permutation(n)
        cost = contradiction_count(t, perm)
        trace = [cost] if params.trace else None
        if params.proposal_mode == "adjacent-sweep-then-random":
            plist = perm.tolist()
            cost, acc, prop = _adjacent_sweep(d_rows, plist, cost, trace)
            perm = np.asarray(plist, dtype=np.intp)
            accepted_total += acc
            proposals_total += prop
        cost, acc, prop = _random_descent(d, perm, cost, rng, limit, trace)
        accepted_total += acc
        proposals_total += prop
        costs.append(cost)
        if trace is not None:
            traces.append(tuple(trace))
        if best_cost is None or cost < best_cost:
            best_cost, best_perm, best_restart = cost, perm.copy(), r

    diagnostics = SearchDiagnostics(
        restarts=params.restarts,
        accepted_swaps=accepted_total,
        proposals=proposals_total,
        seconds=time.perf_counter() - began,
        restart_costs=tuple(costs),
        best_restart=best_restart,
        trace=tuple(traces) if params.trace else None,
    )
    return DeltaResult(
        c_star=best_cost,
        c_max=c_max,
        delta=delta_from_counts(best_cost, c_max),
        best_ordering=Ordering(tuple(best_perm)),
        diagnostics=diagnostics,
    )


def monotone_delta(m: ResponseMatrix, params: SearchParams | None = None) -> DeltaResult:
    """Monotone Delta of a response matrix: ``1 - C* / C_max``."""
    return local_search(build_tournament(m), params, start=initial_ordering(m))


def exact_min_contradictions(t: DominanceMatrix, limit: int = 9) -> ExactResult:
    """Exhaustive minimum contradiction count for small tournaments.

    Permutations are enumerated in lexicographic order and a prefix is
    abandoned once its committed cost (pairs inside the prefix plus pairs
    from the prefix to the remaining respondents) reaches the incumbent.
    The returned ordering is the lexicographically smallest optimum.

    Raises
    ------
    InstanceTooLargeError
        If ``t.n > limit``.
    """
    n = t.n
    if n > limit:
        raise InstanceTooLargeError(f"{n} respondents exceeds the exhaustive search limit of {limit}")
    w = t.w.tolist()
    best_cost = None
    best_perm: list[int] = list(range(n))
    examined = 0
    prefix: list[int] = []
    used = [False] * n

    def visit(committed: int) -> None:
        nonlocal best_cost, best_perm, examined
        if len(prefix) == n:
            examined += 1
            if best_cost is None or committed < best_cost:
                best_cost, best_perm = committed, prefix.copy()
            return
        for v in range(n):
            if used[v]:
                continue
            if best_cost is not None and committed >= best_cost:
                return
            used[v] = True
            prefix.append(v)
            wv = w[v]
            visit(committed + sum(wv[u] for u in range(n) if not used[u]))
            prefix.pop()
            used[v] = False

    visit(0)
    return ExactResult(c_star=best_cost or 0, ordering=Ordering(tuple(best_perm)), permutations_examined=max(examined, 1))
