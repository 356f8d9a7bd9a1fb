"""A small worked example: from responses to a dominance tournament to delta.

Run with ``python3 demos/01_tournament_basics.py``.
"""

# %%
import numpy as np

from monodelta import (
    ResponseMatrix,
    build_tournament,
    contradiction_count,
    exact_min_contradictions,
    initial_ordering,
    monotone_delta,
    swap_cost_delta,
)

# five respondents answering four Likert items
x = np.array(
    [
        [2, 1, 2, 3],
        [4, 4, 5, 4],
        [1, 2, 1, 1],
        [3, 3, 2, 4],
        [5, 4, 4, 5],
    ]
)
m = ResponseMatrix(x, ("look", "light", "texture", "detail"))

# %% the tournament: w[j, k] counts items where respondent j strictly beats k
t = build_tournament(m)
print("W =\n", t.w)

# %% a candidate latent ordering, lowest first, and its contradictions
start = initial_ordering(m)
print("mean-score ordering:", start.perm)
print("contradictions:", contradiction_count(t, start))
print("reversed ordering:", contradiction_count(t, start.reversed()))

# swapping two positions only re-scores the pairs whose order flips
print("swap positions 1 and 2 changes the count by", swap_cost_delta(t, start, 1, 2))

# %% the local search against the exhaustive oracle
res = monotone_delta(m)
exact = exact_min_contradictions(t)
print(f"local search: C*={res.c_star}  C_max={res.c_max}  delta={res.delta:.4f}")
print(f"exhaustive:   C*={exact.c_star}  after {exact.permutations_examined} complete orderings")
print("best ordering:", res.best_ordering.perm)
