"""
Exergy trajectories under four growth scenarios
===============================================

A one-off efficiency reform (p = 2.6) followed by learning with lambda = 1/3,
exogenous innovation h = 1%/y and a floor that is 20% of today's cost.
Only the growth rate of production differs between the four runs.
"""

import numpy as np

from thermolearn import cost_ratio, decoupling_lhs, exergy_ratio, trajectory
from thermolearn.presets import preset_scenario
from thermolearn.scenario_io import emit_trajectory

NAMES = ["fig1-growth", "fig1-low", "fig1-zero", "fig1-negative"]
t = np.array([0, 5, 11.45, 25, 50])

###############################################################################
# Relative exergy consumption epsilon = E_t / E_0

print(f"{'t':>6}" + "".join(f"{n:>15}" for n in NAMES))
for ti in t:
    row = [exergy_ratio(preset_scenario(n), ti) for n in NAMES]
    print(f"{ti:6.2f}" + "".join(f"{v:15.4f}" for v in row))

###############################################################################
# With 2.5%/y growth, cost falls 55% in 50 years but exergy still rises 56%.

growth = preset_scenario("fig1-growth")
print(f"\ngrowth: c(50)/c0 = {cost_ratio(growth, 50.0):.3f}, "
      f"epsilon(50) = {exergy_ratio(growth, 50.0):.3f}")

###############################################################################
# Sign of d ln(E - floor)/dt. The low-growth case starts out decoupling and
# turns marginally positive by year 50.

low = preset_scenario("fig1-low")
for ti in (0, 10, 30, 50):
    rep = decoupling_lhs(low, float(ti))
    print(f"low growth t={ti:>2}: lhs={rep.lhs:+.2e} ({rep.regime})")

###############################################################################
# SVG chart of the growth scenario, written next to this script.

svg = emit_trajectory(trajectory(growth, np.arange(0, 50.5, 0.5)), "svg")
with open("fig1_growth.svg", "wb") as fh:
    fh.write(svg)
print("wrote fig1_growth.svg")
