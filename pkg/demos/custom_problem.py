"""Defining an objective from an expression and solving it with every method.

Run with ``python demos/custom_problem.py``.
"""

# %% An expression in x over a domain; '^' is power.
from grossopt import METHOD_IDS, MethodConfig, grid_min_oracle, run
from grossopt.problems import lipschitz_overestimate, problem_from_expression

expr = "(x - 0.3)^2 + 0.1*sin(20*x)"
p = problem_from_expression("wavy_bowl", (0, 1), expr)

# %% The a-priori method needs an overestimate of the Lipschitz constant.
lbar = lipschitz_overestimate(p, 1e-5, safety=1.2)
p = problem_from_expression("wavy_bowl", (0, 1), expr, lipschitz=lbar)
print(f"L estimate {lbar:.4f}; brute-force minimum {grid_min_oracle(p, 1e-5)}")

# %% Adaptive estimators usually need far fewer trials.
for m in METHOD_IDS:
    rep = run(p, MethodConfig.from_id(m))
    print(f"{m:<9} x*={rep.x_best:.5f} f*={rep.z_best:.6f} trials={rep.trial_count}")

# %% The same problem from a JSON file, as accepted by
# ``grossopt solve --problems-file``.
import json
import tempfile

from grossopt.problems import load_problems

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    json.dump({"problems": [{"name": "wavy_bowl", "domain": [0, 1], "expression": expr, "lipschitz": lbar}]}, fh)
print(load_problems(fh.name))
