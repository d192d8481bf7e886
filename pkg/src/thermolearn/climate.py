"""
Temperature extension: carbon intensity kappa = kappa0 * exp(eta t) applied to
exergy consumption, cumulative emissions, and warming via TCRE.

Default units: exergy in EJ, kappa in PgC/EJ, rho in degC per PgC. Anything
else is the caller's business.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.integrate import quad

from ._numerics import as_scalar_or_array, growth_integral
from .errors import DomainError, ValidationError
from .model import _times, exergy_at

# Likely TCRE range, degC per 1000 PgC.
TCRE_RANGE_PER_1000_PGC = (0.8, 2.5)

MODES = ("asymptotic", "exact")
VARIANTS = ("direct", "printed")


@dataclass(frozen=True)
class ClimateParams:
    kappa0: float
    eta: float
    rho: float
    rho_band: tuple = (TCRE_RANGE_PER_1000_PGC[0] / 1000, TCRE_RANGE_PER_1000_PGC[1] / 1000)
    override_bounds: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        for name in ("kappa0", "eta", "rho"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError("must be a finite number", key=name)
        if self.kappa0 < 0:
            raise ValidationError(f"kappa0 must be >= 0, got {self.kappa0}", key="kappa0")
        if self.rho < 0:
            raise ValidationError(f"rho must be >= 0, got {self.rho}", key="rho")
        lo, hi = self.rho_band
        if not self.override_bounds and not lo <= self.rho <= hi:
            raise ValidationError(f"rho={self.rho} outside plausibility band [{lo}, {hi}]",
                                  key="rho")


def carbon_intensity(cp, t):
    return as_scalar_or_array(cp.kappa0 * np.exp(cp.eta * np.asarray(t, dtype=float)), t)


def _asymptotic_rates(scn, cp):
    lp, r = scn.learning, scn.r
    return r + cp.eta, (1 - lp.lam) * r - lp.h + cp.eta


def _asymptotic_weights(scn):
    lp, pc, r = scn.learning, scn.policy, scn.r
    return lp.c_f * pc.y0, lp.a * pc.y0 ** (1 - lp.lam) * r ** lp.lam


def cumulative_emissions(scn, cp, t, mode="asymptotic", variant="direct"):
    """Carbon emitted between policy onset and ``t``.

    ``asymptotic`` integrates kappa times the shock-free exergy trajectory in
    closed form; ``exact`` integrates kappa times the full exergy trajectory
    numerically. ``variant='printed'`` reproduces the published antiderivative
    with its "+1" terms and no integration constant; it is kept only for
    comparison and is not an integral from 0.
    """
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}", key="mode")
    if variant not in VARIANTS:
        raise ValidationError(f"unknown variant {variant!r}", key="variant")
    ta = _times(t)
    if mode == "exact":
        if variant != "direct":
            raise ValidationError("the printed variant only exists in asymptotic mode",
                                  key="variant")
        return as_scalar_or_array(_exact_emissions(scn, cp, ta), t)
    if not scn.r > 0:
        raise DomainError(f"asymptotic emissions require r > 0, got r={scn.r}")
    x_floor, x_learn = _asymptotic_rates(scn, cp)
    w_floor, w_learn = _asymptotic_weights(scn)
    if variant == "printed":
        out = (w_floor / (x_floor + 1) * np.exp((x_floor + 1) * ta)
               + w_learn / (x_learn + 1) * np.exp((x_learn + 1) * ta))
    else:
        out = w_floor * growth_integral(x_floor, ta) + w_learn * growth_integral(x_learn, ta)
    return as_scalar_or_array(cp.kappa0 * out, t)


def _exact_emissions(scn, cp, ta):
    flat = np.atleast_1d(ta).ravel()
    if cp.kappa0 == 0:
        return np.zeros_like(ta)
    integrand = lambda s: cp.kappa0 * math.exp(cp.eta * s) * exergy_at(scn, s)  # noqa: E731
    order = np.argsort(flat, kind="stable")
    total, prev = 0.0, 0.0
    out = np.empty_like(flat)
    for i in order:
        if flat[i] > prev:
            piece, _ = quad(integrand, prev, flat[i], epsabs=0.0, epsrel=1e-11, limit=200)
            total += piece
            prev = flat[i]
        out[i] = total
    return out.reshape(np.shape(ta))


def delta_T(scn, cp, t, mode="asymptotic", variant="direct"):
    """Warming attributable to the sector since policy onset, rho * cumulative emissions."""
    em = np.asarray(cumulative_emissions(scn, cp, t, mode=mode, variant=variant))
    return as_scalar_or_array(cp.rho * em, t)
