"""Weighted dominance tournaments over respondents and their contradiction counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .data import ResponseMatrix
from .errors import CountOutOfRangeError, DegenerateInstanceError, LengthMismatchError, ReliabilityError


@dataclass(frozen=True)
class DominanceMatrix:
    """``w[j, k]`` is the number of items on which respondent j strictly beats k."""

    w: np.ndarray
    k_items: int

    def __post_init__(self):
        w = np.array(self.w, dtype=np.int64, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ReliabilityError(f"dominance matrix must be square, got {w.shape}")
        if np.any(np.diag(w) != 0):
            raise ReliabilityError("dominance matrix must have a zero diagonal")
        if np.any(w < 0) or np.any(w + w.T > self.k_items):
            raise ReliabilityError(f"pair weights must lie in [0, {self.k_items}] and sum to at most k_items")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DominanceMatrix):
            return NotImplemented
        return self.k_items == other.k_items and np.array_equal(self.w, other.w)

    __hash__ = None


@dataclass(frozen=True)
class Ordering:
    """A permutation of respondent indices, earliest (lowest latent level) first."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ReliabilityError(f"not a permutation of 0..{len(perm) - 1}: {perm}")
        object.__setattr__(self, "perm", perm)

    def __len__(self):
        return len(self.perm)

    def __iter__(self):
        return iter(self.perm)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.perm, dtype=np.intp)

    def reversed(self) -> "Ordering":
        return Ordering(self.perm[::-1])

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(tuple(range(n)))


@dataclass(frozen=True)
class SearchDiagnostics:
    restarts: int = 0
    accepted_swaps: int = 0
    proposals: int = 0
    seconds: float = 0.0
    restart_costs: tuple[int, ...] = ()
    best_restart: int = 0
    trace: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class DeltaResult:
    c_star: int
    c_max: int
    delta: float
    best_ordering: Ordering
    diagnostics: SearchDiagnostics = field(default_factory=SearchDiagnostics, compare=False)

    def __post_init__(self):
        if not 0 <= self.c_star <= self.c_max:
            raise CountOutOfRangeError(f"c_star={self.c_star} outside [0, {self.c_max}]")


def build_tournament(m: ResponseMatrix) -> DominanceMatrix:
    """Count strict item-level dominances between every pair of respondents.

    Ties contribute to neither direction.
    """
    x = m.values
    n = x.shape[0]
    w = np.zeros((n, n), dtype=np.int64)
    for col in x.T:
        w += col[:, None] > col[None, :]
    return DominanceMatrix(w, m.n_items)


def tie_counts(m: ResponseMatrix) -> np.ndarray:
    """Number of items on which each pair of respondents gives equal responses."""
    x = m.values
    ties = np.zeros((x.shape[0],) * 2, dtype=np.int64)
    for col in x.T:
        ties += col[:, None] == col[None, :]
    return ties


def _perm_array(o: Ordering | Sequence[int]) -> np.ndarray:
    return o.as_array() if isinstance(o, Ordering) else np.asarray(o, dtype=np.intp)


def contradiction_count(t: DominanceMatrix, o: Ordering | Sequence[int]) -> int:
    """Total weight of pairs where an earlier respondent beats a later one."""
    perm = _perm_array(o)
    if len(perm) != t.n:
        raise LengthMismatchError(f"ordering has {len(perm)} entries, tournament has {t.n} respondents")
    return int(np.triu(t.w[np.ix_(perm, perm)], 1).sum())


def max_contradictions(n: int, k: int) -> int:
    """``k * n * (n - 1) / 2``: every item of every pair contradicting."""
    if n < 2:
        raise DegenerateInstanceError(f"need at least 2 respondents, got {n}")
    if k < 1:
        raise DegenerateInstanceError(f"need at least 1 item, got {k}")
    return k * n * (n - 1) // 2


def delta_from_counts(c_star: int, c_max: int) -> float:
    if c_max <= 0 or not 0 <= c_star <= c_max:
        raise CountOutOfRangeError(f"c_star={c_star} outside [0, {c_max}]")
    return 1.0 - c_star / c_max
