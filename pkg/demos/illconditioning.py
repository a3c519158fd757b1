"""Why scaling an objective can hide its minimum from double precision.

Run with ``python demos/illconditioning.py``.
"""

# %% Set up: f3 on [-10, 10] and its image g = 1e-17 * f3 + 1.
from grossopt import GROSSONE, illcond_demo
from grossopt.grossone import parse

demo = illcond_demo(alpha=1e-17, beta=1.0, step=1e-4)
print("true grid minimum of f3:", demo.true_argmin)

# %% In doubles every g value rounds to (almost) 1.0, so the argmin is wherever
# rounding happens to leave the smallest number.
x, g = demo.float_argmin
print(f"float argmin of g: x={x:.4f}, g={g!r}")
distinct = len(set(demo.g_values.tolist()))
print(f"{distinct} distinct g values over {len(demo.xs)} grid points")

# %% Undoing the scaling does not help: the information is already gone.
print("argmin of (g - 1) / 1e-17:", demo.inverted_argmin)

# %% The same scaling with gross numbers keeps f in its own digit.
xg, gg = demo.gross_argmin
print(f"gross argmin: x={xg:.4f}, g={gg.pretty()}")
print("recovered f*:", demo.gross_recovered)
assert demo.gross_recovered == demo.true_argmin[1]

# %% Any infinitesimal scale works, e.g. alpha = 1@-2, beta = 5@1.
v = parse("1@-2") * parse("-12.0312@0") + 5 * GROSSONE
print("example gross value:", v, "=", v.pretty())
