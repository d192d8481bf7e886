"""
How much exogenous innovation keeps exergy flat?
================================================

Holding E_t constant while production grows at r forces c_t = c0 e^{-rt}.
The floor share then grows as theta0 e^{rt} and reaches 1 at the critical
time, beyond which no finite innovation rate suffices.
"""

import numpy as np
from scipy.optimize import brentq

from thermolearn import critical_time, required_h
from thermolearn.presets import preset_scenario

scn = preset_scenario("fig2")
t_inf = critical_time(scn.theta0, scn.r)
print(f"critical time: {t_inf:.2f} years")

t = np.array([0, 5, 10, 14, 20, 30, 40, 50, 60, 64])
full = required_h(scn, t).h_required
asym = required_h(scn, t, asymptotic=True).h_required
print(f"{'t':>4} {'h_d':>10} {'h_d (no shock term)':>20}")
for row in zip(t, full, asym):
    print(f"{row[0]:4.0f} {row[1]:10.4f} {row[2]:20.4f}")

###############################################################################
# Two readings of "doubling": relative to the initial requirement, or relative
# to the scenario's assumed 1%/y.

h0 = full[0]
t_double = brentq(lambda s: required_h(scn, s).h_required - 2 * h0, 0, 60)
t_two_pct = brentq(lambda s: required_h(scn, s).h_required - 0.02, 0, 60)
print(f"\nh_d(0) = {h0:.5f}; doubles at t = {t_double:.2f}; reaches 2%/y at t = {t_two_pct:.2f}")
