"""Running a method on f and on alpha*f + beta side by side.

Run with ``python demos/homogeneity.py``.
"""

# %% A single check: Geom-LTM on f1 against (1/grossone) * f1 + grossone.
from grossopt import check_homogeneity
from grossopt.experiments import FINITE, G_SCALE, H_SCALE, IDENTITY

v = check_homogeneity("f1", "geom-ltm", G_SCALE)
print(f"{v.method} on {v.problem}: equal={v.sequences_equal} trials={v.trial_counts} cases={sorted(v.cases)}")

# %% All methods, the two gross scales: the trial sequences coincide exactly.
from grossopt import METHOD_IDS

for scale in (G_SCALE, H_SCALE):
    counts = [check_homogeneity("f3", m, scale, check_invariants=False).trial_counts[0] for m in METHOD_IDS]
    print(scale.label, dict(zip(METHOD_IDS, counts)))

# %% With a finite pair the same comparison runs in doubles. Rounding of
# 2*f + 10 can reorder characteristics that differ by an ulp or two.
for scale in (IDENTITY, FINITE):
    for m in ("geom-al", "geom-gl"):
        v = check_homogeneity("f3", m, scale, check_invariants=False)
        where = "" if v.first_divergence is None else f" first divergence at iteration {v.first_divergence.iteration}"
        print(f"{scale.label:>8} {m}: equal={v.sequences_equal}{where}")
