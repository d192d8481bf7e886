"""Small numerical primitives used across the package."""

import numpy as np
from scipy.optimize import bisect as _bisect
from scipy.special import exprel

from .errors import ConvergenceError

BISECT_XTOL = 1e-12
BISECT_MAXITER = 200


def growth_integral(r, t):
    """Integral of exp(r*s) over s in [0, t], i.e. (exp(r*t) - 1) / r.

    Evaluated as ``t * exprel(r*t)`` so r = 0 gives exactly t and small |r*t|
    loses no digits to cancellation.
    """
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    return t * exprel(r * t)


def as_scalar_or_array(x, like):
    """Return a Python float when ``like`` was a scalar, else an ndarray."""
    x = np.asarray(x, dtype=float)
    if np.ndim(like) == 0 and x.ndim == 0:
        return float(x)
    return x


def bisect_root(f, lo, hi):
    """Bracketed bisection with the package-wide tolerance and iteration cap."""
    try:
        return _bisect(f, lo, hi, xtol=BISECT_XTOL, rtol=4 * np.finfo(float).eps,
                       maxiter=BISECT_MAXITER)
    except RuntimeError as exc:  # scipy raises RuntimeError on maxiter
        raise ConvergenceError(str(exc)) from exc
