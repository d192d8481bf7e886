"""
Cumulative emissions and warming
================================

Carbon intensity falls at rate -eta; warming is proportional to cumulative
emissions. The closed form keeps only the late-time part of exergy use, so
it under-counts early emissions compared with integrating the full path.
"""

import numpy as np

from thermolearn import ClimateParams, cumulative_emissions, delta_T
from thermolearn.presets import preset_scenario

scn = preset_scenario("fig1-growth")
t = np.array([10.0, 25.0, 50.0, 100.0, 200.0])

for eta in (0.0, -0.02):
    cp = ClimateParams(kappa0=1.0, eta=eta, rho=1.65e-3)
    approx = cumulative_emissions(scn, cp, t)
    exact = cumulative_emissions(scn, cp, t, mode="exact")
    print(f"eta = {eta}")
    for row in zip(t, approx, exact, approx / exact - 1, delta_T(scn, cp, t, mode="exact")):
        print("  t={:5.0f}  closed={:10.3f}  integral={:10.3f}  gap={:+7.2%}  dT={:.4f}".format(*row))
