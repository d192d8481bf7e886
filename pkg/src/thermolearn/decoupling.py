"""
Decoupling conditions and the quantities derived from them.

The rate-of-change test used throughout is the log-derivative of the
above-floor part of exergy consumption,

    lhs = r - h - lam * (shock term) + r / (1/theta_t - 1),

whose sign equals the sign of dE/dt. Breakeven growth rate, the innovation
rate needed to hold exergy constant and the critical time all follow from it.
"""

from dataclasses import dataclass
import math

import numpy as np

from ._numerics import as_scalar_or_array, bisect_root, growth_integral
from .errors import ConvergenceError, DomainError, ValidationError
from .model import _times, cost_at

# Shock term within this relative distance of its limit counts as "asymptotic".
ASYMPTOTIC_TOL = 1e-2


@dataclass(frozen=True)
class DecouplingReport:
    t: float
    lhs: float
    decreasing: bool
    regime: str          # 'initial' | 'transient' | 'asymptotic'
    zero_growth: bool = False


@dataclass(frozen=True)
class InnovationDemand:
    t: object            # float or ndarray
    h_required: object
    t_infinity: float


def _floor_term(r, theta):
    # r / (1/theta - 1) written to be finite (zero) at theta = 0
    theta = np.asarray(theta, dtype=float)
    return r * theta / (1.0 - theta)


def learning_term(lam, p, r_b, r, t):
    """lam * r / ([r / (p r_b) - 1] e^{-rt} + 1).

    Rewritten as lam p r_b e^{rt} / (1 + p r_b G(r, t)) with G the growth
    integral, which is the same quantity but stays valid at r = 0.
    """
    t = np.asarray(t, dtype=float)
    return lam * p * r_b * np.exp(r * t) / (1.0 + p * r_b * growth_integral(r, t))


def condition_lhs(r, h, lam, p, r_b, theta_t, t):
    """Left-hand side of the exergy-decrease test with an explicit floor share."""
    return r - h - learning_term(lam, p, r_b, r, t) + _floor_term(r, theta_t)


def _regime(scn, t):
    if t == 0:
        return "initial"
    pc = scn.policy
    if scn.r > 0 and abs((scn.r / (pc.p * pc.r_b) - 1.0) * math.exp(-scn.r * t)) < ASYMPTOTIC_TOL:
        return "asymptotic"
    return "transient"


def decoupling_lhs(scn, t):
    """Evaluate the exergy-decrease test at a single time ``t``.

    For r = 0 the same expression reduces to the derivative of the log of the
    stationary form, -h - lam p r_b / (1 + p r_b t); the report flags it.
    """
    _times(t)
    t = float(t)
    lp, pc = scn.learning, scn.policy
    theta_t = lp.c_f / cost_at(scn, t)
    lhs = float(condition_lhs(scn.r, lp.h, lp.lam, pc.p, pc.r_b, theta_t, t))
    return DecouplingReport(t=t, lhs=lhs, decreasing=lhs < 0, regime=_regime(scn, t),
                            zero_growth=scn.r == 0)


def initial_condition(scn):
    """The test at t = 0: r - h - lam r_b p + r / (1/theta0 - 1)."""
    lp, pc = scn.learning, scn.policy
    return scn.r - lp.h - lp.lam * pc.r_b * pc.p + float(_floor_term(scn.r, pc.theta0))


def asymptotic_condition(theta, r, lam, h):
    """The test once the shock has vanished: r (1 - lam) - h + r / (1/theta - 1)."""
    if not r > 0:
        raise DomainError(f"asymptotic condition requires r > 0, got {r}")
    if not 0 <= theta < 1:
        raise DomainError(f"theta must lie in [0, 1), got {theta}")
    return r * (1 - lam) - h + float(_floor_term(r, theta))


def breakeven_rate(lam, h, theta):
    """Growth rate at which asymptotic exergy consumption is stationary.

    Returns None when h = 0 (no positive root exists). The closed form
    h / (1 - lam + theta / (1 - theta)) is cross-checked by bisection.
    """
    if not 0 < lam < 1:
        raise ValidationError(f"lambda must lie in (0, 1), got {lam}", key="lambda")
    if not 0 <= theta < 1:
        raise ValidationError(f"theta must lie in [0, 1), got {theta}", key="theta")
    if h < 0:
        raise ValidationError(f"h must be >= 0, got {h}", key="h")
    if h == 0:
        return None
    r_star = h / (1 - lam + theta / (1 - theta))
    r_bis = breakeven_rate_bisect(lam, h, theta)
    if abs(r_star - r_bis) > 1e-12:
        raise ConvergenceError(f"closed form {r_star!r} and bisection {r_bis!r} disagree")
    return r_star


def breakeven_rate_bisect(lam, h, theta):
    """Bisection root of the asymptotic condition on (0, h / (1 - lam)]."""
    f = lambda r: r * (1 - lam) - h + r * theta / (1 - theta)  # noqa: E731
    # at theta = 0 the root sits on h / (1 - lam); widen so round-off keeps the bracket
    return bisect_root(f, 0.0, h / (1 - lam) * (1 + 1e-9))


def critical_time(theta0, r):
    """Time after which no finite exogenous innovation rate holds exergy constant."""
    if not r > 0:
        raise DomainError(f"critical time requires r > 0, got {r}")
    if theta0 == 0:
        return math.inf
    if not 0 < theta0 < 1:
        raise DomainError(f"theta0 must lie in (0, 1), got {theta0}")
    return -math.log(theta0) / r


def required_h(scn, t, asymptotic=False):
    """Exogenous innovation rate that keeps exergy consumption constant.

    Holding E constant forces c_t = c0 e^{-rt}, hence theta_t = theta0 e^{rt};
    the scenario's own ``h`` is ignored. ``asymptotic=True`` drops the shock
    term, leaving r (1 - lam) + r / (e^{-rt} / theta0 - 1).
    """
    lp, pc, r = scn.learning, scn.policy, scn.r
    if not r > 0:
        raise DomainError(f"required innovation rate is defined for r > 0, got {r}")
    ta = _times(t)
    t_inf = critical_time(pc.theta0, r)
    if np.any(ta >= t_inf):
        raise DomainError(
            f"t must be < t_infinity={t_inf:.6g}: relative decoupling is impossible beyond it")
    theta_t = pc.theta0 * np.exp(r * ta)
    if asymptotic:
        h_d = r * (1 - lp.lam) + _floor_term(r, theta_t)
    else:
        h_d = r - learning_term(lp.lam, pc.p, pc.r_b, r, ta) + _floor_term(r, theta_t)
    return InnovationDemand(t=as_scalar_or_array(ta, t), h_required=as_scalar_or_array(h_d, t),
                            t_infinity=t_inf)
