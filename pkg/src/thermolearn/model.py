"""
Learning-curve family and closed-form cost / exergy trajectories.

The cost of producing one unit (here: its thermodynamic cost, i.e. the exergy
spent per unit of product) follows

    c = c_f + a * Q**(-lam) * exp(-h * t)

with cumulative production Q, an endogenous learning exponent ``lam``, an
exogenous innovation rate ``h`` and a floor cost ``c_f``. A policy shock at
t = 0 replaces Q0 by an effective value Q0_eff = Q0 / p. After the shock,
production grows exponentially at rate ``r`` and every quantity below has a
closed form; nothing is time-stepped.

All trajectory functions accept a scalar or array ``t`` (years since policy
onset) and return a float or an ndarray accordingly.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from ._numerics import as_scalar_or_array, growth_integral
from .errors import DomainError, ValidationError

CURVE_KINDS = ("wright", "moore", "combined", "floor")

# Plausibility band; leaving it requires override_bounds=True.
LAMBDA_BOUNDS = (0.0, 1.0)      # open interval
H_BOUNDS = (0.0, 1.0)
P_BOUNDS = (1.0, 100.0)
THETA0_BOUNDS = (0.0, 0.999)
R_BOUNDS = (-0.2, 0.2)


def _require(cond, message, key):
    if not cond:
        raise ValidationError(message, key=key)


def _finite(x):
    return isinstance(x, (int, float, np.floating, np.integer)) and math.isfinite(x)


@dataclass(frozen=True)
class LearningParams:
    a: float
    lam: float
    h: float = 0.0
    c_f: float = 0.0
    override_bounds: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        for name in ("a", "lam", "h", "c_f"):
            _require(_finite(getattr(self, name)), "must be a finite number", name)
        _require(self.a > 0, f"a must be > 0, got {self.a}", "a")
        _require(self.h >= 0, f"h must be >= 0, got {self.h}", "h")
        _require(self.c_f >= 0, f"c_f must be >= 0, got {self.c_f}", "c_f")
        if not self.override_bounds:
            lo, hi = LAMBDA_BOUNDS
            _require(lo < self.lam < hi,
                     f"lambda must lie in ({lo}, {hi}), got {self.lam}", "lambda")
            _require(self.h <= H_BOUNDS[1],
                     f"h must be <= {H_BOUNDS[1]} per year, got {self.h}", "h")


@dataclass(frozen=True)
class PolicyContext:
    """State right after the policy shock at t = 0."""

    p: float
    r_b: float
    y0: float
    Q0: float
    Q0_eff: float
    c0: float
    theta0: float

    def __post_init__(self):
        for name in ("p", "r_b", "y0", "Q0", "Q0_eff", "c0", "theta0"):
            _require(_finite(getattr(self, name)), "must be a finite number", name)
        _require(self.p >= 1, f"p must be >= 1 (Q0_eff <= Q0), got {self.p}", "p")
        _require(self.r_b > 0, f"r_b must be > 0, got {self.r_b}", "r_b")
        _require(self.y0 > 0, f"y0 must be > 0, got {self.y0}", "y0")
        _require(self.Q0 > 0 and self.Q0_eff > 0, "cumulative production must be > 0", "Q0")
        _require(self.Q0_eff <= self.Q0 * (1 + 1e-12), "Q0_eff must not exceed Q0", "Q0_eff")
        _require(0 <= self.theta0 < 1, f"theta0 must lie in [0, 1), got {self.theta0}",
                 "theta0")


@dataclass(frozen=True)
class Scenario:
    learning: LearningParams
    policy: PolicyContext
    r: float
    override_bounds: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        _require(_finite(self.r), "must be a finite number", "r")
        lp, pc = self.learning, self.policy
        c0 = lp.c_f + lp.a * pc.Q0_eff ** (-lp.lam)
        _require(math.isclose(c0, pc.c0, rel_tol=1e-12),
                 "policy context c0 is inconsistent with the learning parameters", "c0")
        if not self.override_bounds:
            lo, hi = R_BOUNDS
            _require(lo <= self.r <= hi, f"r must lie in [{lo}, {hi}], got {self.r}", "r")
            _require(pc.theta0 <= THETA0_BOUNDS[1],
                     f"theta0 must be <= {THETA0_BOUNDS[1]}, got {pc.theta0}", "theta0")
            _require(pc.p <= P_BOUNDS[1], f"p must be <= {P_BOUNDS[1]}, got {pc.p}", "p")

    @classmethod
    def relative(cls, theta0, lam, h, r_b, r, p=None, gamma=None, override_bounds=False):
        """Build a scenario normalised to c0 = 1 and y0 = 1.

        Exactly one of ``p`` and ``gamma`` (first-step saving) must be given.
        """
        if (p is None) == (gamma is None):
            raise ValidationError("exactly one of p and gamma is required", key="p")
        _require(_finite(theta0) and 0 <= theta0 < 1,
                 f"theta0 must lie in [0, 1), got {theta0}", "theta0")
        if gamma is not None:
            p = policy_coefficient_from_gamma(gamma, theta0, lam)
        _require(_finite(p) and p >= 1, f"p must be >= 1, got {p}", "p")
        _require(_finite(r_b) and r_b > 0, f"r_b must be > 0, got {r_b}", "r_b")
        a = (1.0 - theta0) * (p * r_b) ** (-lam)
        learning = LearningParams(a=a, lam=lam, h=h, c_f=theta0,
                                  override_bounds=override_bounds)
        policy = derive_policy_context(learning, y0=1.0, r_b=r_b, p=p,
                                       override_bounds=override_bounds)
        return cls(learning, policy, r, override_bounds=override_bounds)

    @classmethod
    def absolute(cls, a, c_f, lam, h, y0, r_b, p, r, override_bounds=False):
        learning = LearningParams(a=a, lam=lam, h=h, c_f=c_f, override_bounds=override_bounds)
        policy = derive_policy_context(learning, y0=y0, r_b=r_b, p=p,
                                       override_bounds=override_bounds)
        return cls(learning, policy, r, override_bounds=override_bounds)

    @property
    def theta0(self):
        return self.policy.theta0

    def replace_r(self, r):
        return Scenario(self.learning, self.policy, r, override_bounds=self.override_bounds)


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    y: float
    Q: float
    c: float
    c_ratio: float
    theta: float
    E: float
    epsilon: float


FIELDS = ("t", "y", "Q", "c", "c_ratio", "theta", "E", "epsilon")


# --------------------------------------------------------------------------
# Curve family
# --------------------------------------------------------------------------

def eval_curve(kind, params, Q=None, t=0.0):
    """Evaluate one member of the learning-curve family.

    ``wright``   a * Q**-lam
    ``moore``    a * exp(-h t)
    ``combined`` a * Q**-lam * exp(-h t)
    ``floor``    c_f + a * Q**-lam * exp(-h t)
    """
    if kind not in CURVE_KINDS:
        raise ValidationError(f"unknown curve kind {kind!r}", key="kind")
    c = params.a
    if kind != "moore":
        if Q is None:
            raise DomainError(f"{kind} curve needs cumulative production Q")
        Qa = np.asarray(Q, dtype=float)
        if np.any(Qa <= 0):
            raise DomainError("Q must be > 0")
        c = c * Qa ** (-params.lam)
    if kind != "wright":
        c = c * np.exp(-params.h * np.asarray(t, dtype=float))
    if kind == "floor":
        c = params.c_f + c
    if np.ndim(t) == 0 and (kind == "moore" or np.ndim(Q) == 0):
        return float(c)
    return np.asarray(c, dtype=float)


def policy_coefficient_from_gamma(gamma, theta0, lam):
    """Policy coefficient p implied by a first-step saving ``gamma``.

    gamma is the fractional cost reduction obtained by moving along the curve
    from Q0_eff to p * Q0_eff; inverting gives
    p = (1 - gamma / (1 - theta0)) ** (-1 / lam).
    """
    _require(0 <= theta0 < 1, f"theta0 must lie in [0, 1), got {theta0}", "theta0")
    _require(lam > 0, f"lambda must be > 0, got {lam}", "lambda")
    _require(gamma >= 0, f"gamma must be >= 0, got {gamma}", "gamma")
    if gamma >= 1 - theta0:
        raise ValidationError(
            f"policy savings exceed physical margin: gamma={gamma} >= 1 - theta0={1 - theta0}",
            key="gamma")
    return (1.0 - gamma / (1.0 - theta0)) ** (-1.0 / lam)


def derive_policy_context(learning, y0, r_b, p, override_bounds=False):
    _require(_finite(y0) and y0 > 0, f"y0 must be > 0, got {y0}", "y0")
    _require(_finite(r_b) and r_b > 0, f"r_b must be > 0, got {r_b}", "r_b")
    _require(_finite(p) and p >= 1, f"p must be >= 1 (Q0_eff <= Q0 violated), got {p}", "p")
    if not override_bounds:
        _require(p <= P_BOUNDS[1], f"p must be <= {P_BOUNDS[1]}, got {p}", "p")
    Q0 = y0 / r_b
    Q0_eff = y0 / (p * r_b)
    c0 = learning.c_f + learning.a * Q0_eff ** (-learning.lam)
    return PolicyContext(p=p, r_b=r_b, y0=y0, Q0=Q0, Q0_eff=Q0_eff, c0=c0,
                         theta0=learning.c_f / c0)


# --------------------------------------------------------------------------
# Trajectories
# --------------------------------------------------------------------------

def _times(t):
    ta = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(ta)) or np.any(ta < 0):
        raise DomainError("t must be finite and >= 0 (measured from policy onset)")
    return ta


def production_at(scn, t):
    ta = _times(t)
    return as_scalar_or_array(scn.policy.y0 * np.exp(scn.r * ta), t)


def cumulative_production(scn, t):
    ta = _times(t)
    pc = scn.policy
    return as_scalar_or_array(pc.Q0 + pc.y0 * growth_integral(scn.r, ta), t)


def _shock_base(scn, ta):
    # 1 + p r_b G(r, t) = (Q0_eff + Q_t - Q0) / Q0_eff
    pc = scn.policy
    return 1.0 + pc.p * pc.r_b * growth_integral(scn.r, ta)


def cost_at(scn, t):
    ta = _times(t)
    lp, pc = scn.learning, scn.policy
    shifted = pc.Q0_eff + pc.y0 * growth_integral(scn.r, ta)
    c = lp.c_f + lp.a * shifted ** (-lp.lam) * np.exp(-lp.h * ta)
    return as_scalar_or_array(c, t)


def cost_ratio(scn, t):
    """c_t / c0 from the relative parameter set (theta0, lam, h, p, r_b, r)."""
    ta = _times(t)
    th, lp = scn.theta0, scn.learning
    ratio = th + (1.0 - th) * _shock_base(scn, ta) ** (-lp.lam) * np.exp(-lp.h * ta)
    return as_scalar_or_array(ratio, t)


def theta_at(scn, t):
    """Floor share c_f / c_t."""
    return as_scalar_or_array(scn.learning.c_f / np.asarray(cost_at(scn, t)), t)


def exergy_at(scn, t):
    """Absolute exergy consumption E_t = c_t * y_t."""
    ta = _times(t)
    return as_scalar_or_array(np.asarray(cost_at(scn, ta)) * scn.policy.y0 * np.exp(scn.r * ta), t)


def exergy_ratio(scn, t):
    """E_t / E0, computed from the relative form."""
    ta = _times(t)
    return as_scalar_or_array(np.asarray(cost_ratio(scn, ta)) * np.exp(scn.r * ta), t)


def asymptotic_exergy(scn, t):
    """Exergy once the policy shock has died out; returns ``(E, epsilon)``.

    Only defined for r > 0. The approximation drops the transient, so it does
    not reproduce E0 at t = 0.
    """
    if not scn.r > 0:
        raise DomainError(f"asymptotic form requires r > 0, got r={scn.r}")
    ta = _times(t)
    lp, pc, r = scn.learning, scn.policy, scn.r
    slow = np.exp(((1 - lp.lam) * r - lp.h) * ta)
    E = lp.c_f * pc.y0 * np.exp(r * ta) + lp.a * pc.y0 ** (1 - lp.lam) * r ** lp.lam * slow
    th = pc.theta0
    eps = th * np.exp(r * ta) + (1 - th) * (pc.p * pc.r_b / r) ** (-lp.lam) * slow
    return as_scalar_or_array(E, t), as_scalar_or_array(eps, t)


# Zero-growth closed forms, kept as an independent path from the r-general ones.

def stationary_cost(a, c_f, lam, h, y0, p, r_b, t):
    ta = _times(t)
    return as_scalar_or_array(
        c_f + a * y0 ** (-lam) * (1.0 / (p * r_b) + ta) ** (-lam) * np.exp(-h * ta), t)


def stationary_exergy_ratio(theta0, lam, h, p, r_b, t):
    ta = _times(t)
    return as_scalar_or_array(
        theta0 + (1 - theta0) * (1 + p * r_b * ta) ** (-lam) * np.exp(-h * ta), t)


def sample_times(t_max, dt):
    """Grid 0, dt, 2 dt, ... up to t_max inclusive (tolerant to rounding)."""
    if not (dt > 0 and math.isfinite(dt)):
        raise ValidationError(f"dt must be > 0, got {dt}", key="dt")
    if not (t_max >= dt and math.isfinite(t_max)):
        raise ValidationError(f"t_max must be >= dt, got {t_max}", key="t_max")
    n = int(math.floor(t_max / dt + 1e-9))
    return np.arange(n + 1) * dt


def trajectory(scn, times):
    times = _times(np.atleast_1d(times))
    y = production_at(scn, times)
    Q = cumulative_production(scn, times)
    c = cost_at(scn, times)
    cr = cost_ratio(scn, times)
    eps = exergy_ratio(scn, times)
    theta = scn.learning.c_f / c
    E = c * y
    return [TrajectoryPoint(*map(float, row))
            for row in zip(times, y, Q, c, cr, theta, E, eps)]
