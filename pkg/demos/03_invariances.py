"""Properties that separate the rank-based coefficient from alpha.

1. Any strictly increasing per-item rescaling leaves the tournament, and so
   delta, unchanged while alpha moves.
2. Repeating the whole item set multiplies every count by the same factor;
   delta stays put while alpha climbs toward 1.
"""

# %%
import numpy as np

from monodelta import ResponseMatrix, SyntheticSpec, build_tournament, cronbach_alpha, generate_unidimensional, monotone_delta

m = generate_unidimensional(SyntheticSpec(40, 6, (0.8,) * 6, 0.6, likert_levels=5, seed=3))
print(f"original      alpha={cronbach_alpha(m):.4f}  delta={monotone_delta(m).delta:.4f}")

# %% monotone rescaling of every item
warped = ResponseMatrix(np.exp(m.values) + m.values**3)
print("same tournament:", build_tournament(warped) == build_tournament(m))
print(f"rescaled      alpha={cronbach_alpha(warped):.4f}  delta={monotone_delta(warped).delta:.4f}")

# %% whole-instrument repetition
for reps in (2, 3, 5):
    big = ResponseMatrix(np.tile(m.values, reps))
    res = monotone_delta(big)
    print(f"x{reps} items     alpha={cronbach_alpha(big):.4f}  delta={res.delta:.4f}  C*={res.c_star}")
