"""
Fitting learning curves and comparing them out of sample
========================================================

A synthetic series with a cost floor is fitted with all four model kinds,
then a hindcast shows how much a floor-free curve over-predicts progress.
"""

import numpy as np

from thermolearn import CostSeries, fit, hindcast_compare, lambda_audit

rng = np.random.default_rng(3)
t = np.arange(40.0)
Q = 10.0 * np.exp(0.09 * t) + 4.0 * t
clean = 1.5 + 3.0 * Q ** -0.35 * np.exp(-0.01 * t)
series = CostSeries(t, Q, clean * np.exp(rng.normal(0, 0.003, t.size)), label="synthetic")

for kind in ("wright", "moore", "combined", "floor"):
    fr = fit(series, kind)
    params = ", ".join(f"{k}={v:.4g}" for k, v in fr.params.items())
    print(f"{kind:>9}: rss={fr.rss:.3e}  {params}  {'ok' if fr.in_range else fr.flags}")

###############################################################################
# Train on the first 60%, score the rest by mean squared log error.

res = hindcast_compare(series, split=0.6)
print(f"\ntrained on {res.n_train} points")
for kind in res.ranking:
    print(f"{kind:>9}: msle={res.scores[kind]:.3e}")

###############################################################################
# Progress ratios of the fitted exponents.

audit = lambda_audit([res.fits[k] for k in ("wright", "combined", "floor")])
print(f"\nlabels: {audit.progress_labels}; mean lambda {audit.mean_lambda:.3f}")
