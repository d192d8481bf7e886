"""Acceptance gate: each check runs at its stated tolerance and reports one line.

The PASS/FAIL lines are collected and repeated in the pytest terminal summary
(see conftest.py); ``pytest -s tests/test_acceptance.py`` also shows them inline.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import brentq

from thermolearn import (ClimateParams, CostSeries, Scenario, cost_ratio, critical_time,
                         cumulative_emissions, cumulative_production, decoupling_lhs,
                         exergy_at, exergy_ratio, fit, hindcast_compare,
                         policy_coefficient_from_gamma, production_at, required_h)
from thermolearn.decoupling import breakeven_rate, breakeven_rate_bisect
from thermolearn.model import asymptotic_exergy
from thermolearn.presets import preset_scenario

RESULTS = []       # (id, passed, message), read by the terminal-summary hook


def report(cid, passed, message):
    line = f"{'PASS' if passed else 'FAIL'}  [{cid}] {message}"
    RESULTS.append((cid, passed, line))
    print(line)
    assert passed, line


def within(value, target, tol):
    return abs(value - target) <= tol


def random_scenario(rng, r=None):
    theta0, lam = rng.uniform(0.0, 0.9), rng.uniform(0.02, 0.95)
    h, p, r_b = rng.uniform(0.0, 0.05), rng.uniform(1.0, 10.0), rng.uniform(0.001, 0.1)
    r = rng.uniform(-0.1, 0.1) if r is None else r
    if rng.random() < 0.5:
        return Scenario.relative(theta0=theta0, lam=lam, h=h, p=p, r_b=r_b, r=r)
    a, y0 = rng.uniform(0.1, 50.0), rng.uniform(0.1, 100.0)
    c_f = theta0 / (1 - theta0) * a * (y0 / (p * r_b)) ** (-lam)
    return Scenario.absolute(a=a, c_f=c_f, lam=lam, h=h, y0=y0, r_b=r_b, p=p, r=r)


N_RANDOM = 1000
SEED = 20260419


# --- 1. growth scenario ---------------------------------------------------------

@pytest.mark.parametrize("t,target,tol", [(5.0, 1.008, 0.002), (25.0, 1.16, 0.005),
                                          (50.0, 1.564, 0.005)])
def test_1_growth_epsilon(t, target, tol):
    eps = exergy_ratio(preset_scenario("fig1-growth"), t)
    report(f"1 eps({t:g})", within(eps, target, tol),
           f"growth epsilon({t:g}) = {eps:.6f}, want {target} +/- {tol}")


def test_1_growth_cost_at_50():
    c = cost_ratio(preset_scenario("fig1-growth"), 50.0)
    report("1 c(50)", within(c, 0.448, 0.005), f"growth c(50)/c0 = {c:.6f}, want 0.448 +/- 0.005")


def test_1_growth_time_to_22_percent_saving():
    scn = preset_scenario("fig1-growth")
    t = brentq(lambda s: cost_ratio(scn, s) - 0.78, 0.0, 50.0, xtol=1e-12)
    report("1 t(c=0.78)", within(t, 11.45, 0.05), f"c/c0 = 0.78 at t = {t:.4f}, want 11.45 +/- 0.05")


# --- 2. other scenarios ------------------------------------------------------------

@pytest.mark.parametrize("preset,target", [("fig1-low", 0.791), ("fig1-zero", 0.500),
                                           ("fig1-negative", 0.314)])
def test_2_scenario_epsilon_at_50(preset, target):
    eps = exergy_ratio(preset_scenario(preset), 50.0)
    report(f"2 {preset}", within(eps, target, 0.005),
           f"{preset} epsilon(50) = {eps:.6f}, want {target} +/- 0.005")


def test_2_low_growth_marginally_positive():
    lhs = decoupling_lhs(preset_scenario("fig1-low"), 50.0).lhs
    report("2 low lhs(50)", lhs > 0, f"low-growth decoupling lhs(50) = {lhs:.4e}, want > 0")


# --- 3. innovation demand ---------------------------------------------------------------

def test_3_critical_time():
    t_inf = critical_time(0.2, 0.025)
    report("3 t_inf", within(t_inf, 64.38, 0.02), f"critical_time = {t_inf:.4f}, want 64.38 +/- 0.02")


def test_3_required_h_doubling_time():
    scn = preset_scenario("fig2")
    h0 = required_h(scn, 0.0).h_required
    t2 = brentq(lambda s: required_h(scn, s).h_required - 2 * h0, 0.0, 60.0, xtol=1e-12)
    report("3 doubling", 13.0 <= t2 <= 15.0,
           f"required_h doubles from {h0:.6f} at t = {t2:.3f}, want t in [13, 15]")


def test_3_required_h_divergence():
    scn = preset_scenario("fig2")
    t_inf = critical_time(0.2, 0.025)
    ts = t_inf - np.array([0.1, 0.05, 0.01, 1e-4])
    h = required_h(scn, ts).h_required
    report("3 divergence", bool(np.all(h > 10)),
           f"min required_h within 0.1 y of t_inf = {h.min():.4f}, want > 10")


# --- 4. breakeven ------------------------------------------------------------------------

def test_4_breakeven_without_floor():
    r_star = breakeven_rate(1 / 3, 0.01, 0.0)
    report("4 r*(theta=0)", r_star == 0.015, f"breakeven(1/3, 0.01, 0) = {r_star!r}, want 0.015")


def test_4_breakeven_theta_limit():
    r_star = breakeven_rate(1 / 3, 0.01, 1e-12)
    report("4 r*(theta->0)", within(r_star, 0.015, 1e-12),
           f"breakeven(1/3, 0.01, 1e-12) = {r_star!r}, want 0.015")


def test_4_breakeven_with_floor():
    closed = breakeven_rate(1 / 3, 0.01, 0.2)
    bis = breakeven_rate_bisect(1 / 3, 0.01, 0.2)
    ok = abs(closed - bis) <= 1e-12 and 0 < closed < 0.015
    report("4 r*(theta=0.2)", ok,
           f"closed {closed:.15f} vs bisection {bis:.15f}, diff {abs(closed - bis):.1e}")


# --- 5. gamma to p -------------------------------------------------------------------------

def test_5_gamma_to_p():
    p = policy_coefficient_from_gamma(0.22, 0.2, 1 / 3)
    report("5 p(gamma)", within(p, 2.62, 0.01), f"p(gamma=0.22) = {p:.5f}, want 2.62 +/- 0.01")


# --- 6. property suite -------------------------------------------------------------------------

def _scenarios(r=None, seed=SEED):
    rng = np.random.default_rng(seed)
    for _ in range(N_RANDOM):
        yield random_scenario(rng, r=None if r is None else r(rng)), rng.uniform(0.0, 150.0)


def test_6a_ratio_path_matches_absolute_path():
    worst = 0.0
    for scn, t in _scenarios():
        pc = scn.policy
        absolute = exergy_at(scn, t) / (pc.c0 * pc.y0)
        worst = max(worst, abs(exergy_ratio(scn, t) / absolute - 1))
    report("6a ratio==absolute", worst <= 1e-12,
           f"{N_RANDOM} scenarios, worst relative gap {worst:.2e}, want <= 1e-12")


def _sign_mismatches():
    step, mismatches, checked = 1e-4, 0, 0
    for scn, t in _scenarios(seed=SEED + 1):
        lhs = decoupling_lhs(scn, t).lhs
        if abs(lhs) < 1e-7:
            continue
        t = max(t, step)
        dE = exergy_at(scn, t + step) - exergy_at(scn, t - step)
        checked += 1
        mismatches += np.sign(dE) != np.sign(lhs)
    return checked, mismatches


def test_6b_sign_matches_finite_difference():
    checked, mismatches = _sign_mismatches()
    report("6b sign==FD", mismatches == 0,
           f"{checked} scenarios outside the dead band, {mismatches} sign mismatches")


def test_6c_negative_growth_always_decreasing():
    bad = sum(decoupling_lhs(scn, t).lhs >= 0
              for scn, t in _scenarios(r=lambda g: -g.uniform(1e-6, 0.2), seed=SEED + 2))
    report("6c r<0 => lhs<0", bad == 0, f"{N_RANDOM} scenarios with r < 0, {bad} with lhs >= 0")


def test_6d_pure_wright_identity():
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(N_RANDOM):
        # r_b = r > 0 is required, so only growing economies qualify
        lam, r, t = rng.uniform(0.02, 0.95), rng.uniform(1e-4, 0.2), rng.uniform(0, 150)
        scn = Scenario.relative(theta0=0.0, lam=lam, h=0.0, p=1.0, r_b=r, r=r)
        worst = max(worst, abs(exergy_ratio(scn, t) / math.exp(r * (1 - lam) * t) - 1))
    report("6d pure Wright", worst <= 1e-12,
           f"{N_RANDOM} scenarios, worst relative gap {worst:.2e} (float64 exactness bound 1e-12)")


# --- 7. quadrature oracles -------------------------------------------------------------------------

def test_7_cumulative_production_quadrature():
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(200):
        scn, t = random_scenario(rng), rng.uniform(0.01, 150.0)
        pc = scn.policy
        integral = quad(lambda s: production_at(scn, s), 0.0, t, epsabs=0, epsrel=1e-13)[0]
        got = cumulative_production(scn, t) - pc.Q0
        worst = max(worst, abs(got / integral - 1))
    report("7 Q quadrature", worst <= 1e-9,
           f"200 scenarios, worst relative gap {worst:.2e}, want <= 1e-9")


def test_7_climate_quadrature():
    scn = preset_scenario("fig1-growth")
    worst = 0.0
    for eta in (-0.03, -0.01, 0.0, 0.01):
        cp = ClimateParams(kappa0=0.8, eta=eta, rho=1.5e-3)
        for t in (1.0, 20.0, 50.0, 100.0):
            f = lambda s: cp.kappa0 * math.exp(cp.eta * s) * asymptotic_exergy(scn, s)[0]  # noqa
            integral = quad(f, 0.0, t, epsabs=0, epsrel=1e-13)[0]
            worst = max(worst, abs(cumulative_emissions(scn, cp, t) / integral - 1))
    report("7 climate quadrature", worst <= 1e-9,
           f"16 (eta, t) cases, worst relative gap {worst:.2e}, want <= 1e-9")


# --- 8. calibration ----------------------------------------------------------------------------

T = np.arange(20.0)
Q = 10.0 * np.exp(0.08 * T) + 5.0 * T


def test_8_combined_round_trip():
    fr = fit(CostSeries(T, Q, 2.0 * Q ** (-1 / 3) * np.exp(-0.01 * T)), "combined")
    a = math.exp(fr.params["ln_a"])
    errs = [abs(a / 2 - 1), abs(fr.params["lambda"] * 3 - 1), abs(fr.params["h"] / 0.01 - 1)]
    report("8 round trip", max(errs) <= 1e-6,
           f"a, lambda, h recovered with worst relative error {max(errs):.2e}, want <= 1e-6")


def test_8_sahal_equivalence():
    t = np.arange(15.0)
    q = 3.0 * np.exp(0.05 * t)
    s = CostSeries(t, q, 2.0 * q ** (-1 / 3))
    pw, pm = fit(s, "wright").predict(q, t), fit(s, "moore").predict(q, t)
    gap = float(np.max(np.abs(pw / pm - 1)))
    report("8 Sahal", gap <= 1e-9, f"wright vs moore predictions differ by {gap:.2e}, want <= 1e-9")


GENERATORS = {
    "wright": lambda t, q: 2.0 * q ** -0.35,
    "moore": lambda t, q: 2.0 * np.exp(-0.03 * t),
    "combined": lambda t, q: 2.0 * q ** -0.3 * np.exp(-0.01 * t),
    "floor": lambda t, q: 0.5 + 2.0 * q ** -0.3 * np.exp(-0.01 * t),
}


@pytest.mark.parametrize("kind", list(GENERATORS))
def test_8_hindcast_ranks_generator_first(kind):
    t = np.arange(30.0)
    q = 10.0 * np.exp(0.08 * t) + 5.0 * t
    res = hindcast_compare(CostSeries(t, q, GENERATORS[kind](t, q)), split=0.6)
    report(f"8 hindcast {kind}", res.ranking[0] == kind,
           f"{kind}-generated data ranked {res.ranking}")


def test_runtime_budget():
    # every check should be well under a second; time the heaviest one
    start = time.perf_counter()
    _sign_mismatches()
    elapsed = time.perf_counter() - start
    report("runtime", elapsed < 1.0, f"1000-scenario sign check took {elapsed:.3f} s, want < 1 s")

