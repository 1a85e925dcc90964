"""A small (alpha, h) sweep: how often reconstruction fails as the transient grows.

Run with ``python3 demos/sweep_heatmap.py``. Takes about ten seconds.
"""
# %%
import numpy as np

from modhys.experiments import SweepConfig, run_sweep, write_sweep

cfg = SweepConfig(alpha_values=[0.0, 0.02, 0.05, 0.07], h_values=[0.0, 0.03, 0.06, 0.1],
                  n_trials=20)
cells = run_sweep(cfg)

# %% [markdown]
# Rows are h, columns alpha. Each count is the number of seeds (out of 20)
# whose recovered samples have MSE above 1e-3.

# %%
table = np.array([c.failures for c in cells]).reshape(len(cfg.alpha_values), -1).T
print("h \\ alpha", cfg.alpha_values)
for h, row in zip(cfg.h_values, table):
    print(f"{h:<9g}", row.tolist())

# %% [markdown]
# Longer transients produce more failures, and h = 0 with a transient is
# the worst corner since the signal curvature limit 2h / alpha^2 is zero.

# %%
csv_path, svg_path = write_sweep(cells, cfg, "demo_out")
print("wrote", csv_path, "and", svg_path)
