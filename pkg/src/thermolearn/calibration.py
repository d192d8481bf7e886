"""
Fitting learning-curve models to observed (t, Q, c) series.

All fits work on log cost. Wright, Moore and the combined model are linear
in log space and solved by ordinary least squares; the floor model is
nonlinear and solved by bounded least squares from a fixed grid of starts.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.optimize import least_squares

from .errors import RankDeficiencyError, ValidationError
from .model import CURVE_KINDS, LAMBDA_BOUNDS

N_PARAMS = {"wright": 2, "moore": 2, "combined": 3, "floor": 4}
FLOOR_STARTS = (0.0, 0.25, 0.5, 0.75, 0.9, 0.97, 0.99, 0.999)    # fractions of min(c)
FLOOR_MAX_ITER = 500
FLOOR_FTOL = 1e-12
RANK_TOL = 1e-10
# Hindcast scores closer than this are ties, broken by fewer parameters.
TIE_TOL = 1e-12
# Estimates this close to an open lambda bound count as on it (OLS round-off).
BOUND_TOL = 1e-12

LAMBDA_REFERENCE_MEAN = 1.0 / 3.0
LAMBDA_SECTOR_RANGE = (0.27, 0.47)


@dataclass(frozen=True)
class CostSeries:
    t: np.ndarray
    Q: np.ndarray
    c: np.ndarray
    label: str = ""

    def __post_init__(self):
        t, Q, c = (np.asarray(v, dtype=float) for v in (self.t, self.Q, self.c))
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "c", c)
        if not (t.ndim == Q.ndim == c.ndim == 1 and len(t) == len(Q) == len(c)):
            raise ValidationError("t, Q and c must be 1-d and of equal length", key="series")
        if len(t) < 2:
            raise ValidationError("a series needs at least 2 records", key="series")
        if not np.all(np.isfinite(np.concatenate([t, Q, c]))):
            raise ValidationError("non-finite value", key="series")
        if np.any(np.diff(t) <= 0):
            raise ValidationError("t must be strictly increasing", key="t")
        if np.any(Q <= 0):
            raise ValidationError("Q must be > 0", key="Q")
        if np.any(np.diff(Q) < 0):
            raise ValidationError("Q must be non-decreasing", key="Q")
        if np.any(c <= 0):
            raise ValidationError("c must be > 0", key="c")

    def __len__(self):
        return len(self.t)

    def head(self, n):
        return CostSeries(self.t[:n], self.Q[:n], self.c[:n], self.label)

    def tail(self, n):
        return CostSeries(self.t[n:], self.Q[n:], self.c[n:], self.label)


@dataclass
class FitResult:
    kind: str
    params: dict              # ln_a, lambda, h, c_f as applicable
    rss: float                # in log space
    stderr: dict
    converged: bool
    n: int
    flags: list = field(default_factory=list)

    @property
    def in_range(self):
        return not self.flags

    def predict(self, Q=None, t=None):
        p = self.params
        log_c = np.full(np.shape(Q if Q is not None else t), p["ln_a"], dtype=float)
        if "lambda" in p:
            log_c = log_c - p["lambda"] * np.log(np.asarray(Q, dtype=float))
        if "h" in p:
            log_c = log_c - p["h"] * np.asarray(t, dtype=float)
        c = np.exp(log_c)
        if "c_f" in p:
            c = p["c_f"] + c
        return c


def _range_flags(params):
    flags = []
    lam = params.get("lambda")
    lo, hi = LAMBDA_BOUNDS
    if lam is not None and not lo + BOUND_TOL < lam < hi - BOUND_TOL:
        flags.append(f"lambda={lam:.6g} outside ({LAMBDA_BOUNDS[0]}, {LAMBDA_BOUNDS[1]})")
    h = params.get("h")
    if h is not None and h < 0:
        flags.append(f"h={h:.6g} negative")
    return flags


def _design(series, kind):
    cols, names = [np.ones(len(series))], ["intercept"]
    if kind in ("wright", "combined"):
        cols.append(-np.log(series.Q))
        names.append("ln Q")
    if kind in ("moore", "combined"):
        cols.append(-series.t)
        names.append("t")
    return np.column_stack(cols), names


def _check_rank(X, names):
    scale = np.linalg.norm(X, axis=0)
    Xs = X / np.where(scale > 0, scale, 1.0)
    # a column that is constant duplicates the intercept
    for j, name in enumerate(names[1:], start=1):
        col = X[:, j]
        if np.ptp(col) <= RANK_TOL * max(1.0, np.max(np.abs(col))):
            raise RankDeficiencyError(
                f"'{name}' is constant and collinear with the intercept", ("intercept", name))
    sv = np.linalg.svd(Xs, compute_uv=False)
    if sv[-1] <= RANK_TOL * sv[0]:
        pair = ("ln Q", "t") if {"ln Q", "t"} <= set(names) else tuple(names[:2])
        raise RankDeficiencyError(
            f"columns {pair[0]!r} and {pair[1]!r} are collinear (exponential production: "
            "Wright and Moore forms are indistinguishable)", pair)


def _fit_ols(series, kind):
    X, names = _design(series, kind)
    _check_rank(X, names)
    y = np.log(series.c)
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    rss = float(resid @ resid)
    dof = len(y) - X.shape[1]
    s2 = rss / dof if dof > 0 else math.nan
    cov = s2 * np.linalg.inv(X.T @ X)
    se = np.sqrt(np.clip(np.diag(cov), 0, None))
    keys = {"intercept": "ln_a", "ln Q": "lambda", "t": "h"}
    params = {keys[n]: float(b) for n, b in zip(names, beta)}
    stderr = {keys[n]: float(s) for n, s in zip(names, se)}
    return FitResult(kind, params, rss, stderr, True, len(y), _range_flags(params))


def _floor_model(x, Q, t):
    ln_a, lam, h, c_f = x
    core = np.exp(ln_a - lam * np.log(Q) - h * t)
    return c_f + core, core


def _fit_floor(series, max_iter=FLOOR_MAX_ITER):
    if len(series) < 5:
        raise ValidationError("the floor model needs at least 5 points", key="series")
    Q, t, logc = series.Q, series.t, np.log(series.c)
    cmin = float(np.min(series.c))
    c_f_hi = cmin * (1 - 1e-9)

    def resid(x):
        return np.log(_floor_model(x, Q, t)[0]) - logc

    def jac(x):
        model, core = _floor_model(x, Q, t)
        dcore = core / model
        return np.column_stack([dcore, -np.log(Q) * dcore, -t * dcore, 1.0 / model])

    best = None
    for frac in FLOOR_STARTS:
        c_f0 = frac * cmin
        # start the remaining parameters at the combined-model fit to c - c_f0
        try:
            shifted = CostSeries(t, Q, series.c - c_f0)
            comb = _fit_ols(shifted, "combined").params
            x0 = [comb["ln_a"], comb["lambda"], comb["h"], c_f0]
        except (ValidationError, np.linalg.LinAlgError):
            x0 = [math.log(cmin), 1.0 / 3.0, 0.0, c_f0]
        x0[3] = min(max(x0[3], 0.0), c_f_hi)
        res = least_squares(resid, x0, jac=jac, method="trf",
                            bounds=([-np.inf, -np.inf, -np.inf, 0.0],
                                    [np.inf, np.inf, np.inf, c_f_hi]),
                            ftol=FLOOR_FTOL, xtol=1e-15, gtol=1e-15, max_nfev=max_iter)
        rss = float(2 * res.cost)
        if best is None or rss < best[1]:
            best = (res, rss)
    res, rss = best
    dof = len(series) - 4
    try:
        J = res.jac
        cov = (rss / dof) * np.linalg.pinv(J.T @ J) if dof > 0 else np.full((4, 4), np.nan)
        se = np.sqrt(np.clip(np.diag(cov), 0, None))
    except np.linalg.LinAlgError:
        se = np.full(4, np.nan)
    names = ("ln_a", "lambda", "h", "c_f")
    params = {n: float(v) for n, v in zip(names, res.x)}
    converged = bool(res.status > 0)
    return FitResult("floor", params, rss, dict(zip(names, map(float, se))), converged,
                     len(series), _range_flags(params))


def fit(series, kind, max_iter=FLOOR_MAX_ITER):
    """Fit one model kind; see the module docstring for the method per kind."""
    if kind not in CURVE_KINDS:
        raise ValidationError(f"unknown model kind {kind!r}", key="kind")
    if kind == "floor":
        return _fit_floor(series, max_iter=max_iter)
    if kind == "combined" and len(series) < 4:
        raise ValidationError("the combined model needs at least 4 points", key="series")
    if len(series) < 3:
        raise ValidationError(f"the {kind} model needs at least 3 points", key="series")
    return _fit_ols(series, kind)


@dataclass
class HindcastRanking:
    ranking: list             # kinds, best first
    scores: dict              # kind -> mean squared log error on the held-out part
    fits: dict
    n_train: int


def _min_points(kind):
    return {"wright": 3, "moore": 3, "combined": 4, "floor": 5}[kind]


def hindcast_compare(series, kinds=CURVE_KINDS, split=0.6):
    """Fit on the first ceil(split n) points, score on the rest, rank ascending."""
    if not 0.3 < split < 0.9:
        raise ValidationError(f"split must lie in (0.3, 0.9), got {split}", key="split")
    kinds = list(kinds)
    if not kinds:
        raise ValidationError("no model kinds given", key="kinds")
    n = len(series)
    n_train = math.ceil(split * n)
    if n_train >= n:
        raise ValidationError("no points left for scoring", key="split")
    for kind in kinds:
        if kind not in CURVE_KINDS:
            raise ValidationError(f"unknown model kind {kind!r}", key="kinds")
        if n_train < _min_points(kind):
            raise ValidationError(
                f"{kind} needs {_min_points(kind)} training points, have {n_train}", key="split")
    train, test = series.head(n_train), series.tail(n_train)
    fits, scores = {}, {}
    for kind in kinds:
        fr = fit(train, kind)
        pred = fr.predict(test.Q, test.t)
        with np.errstate(invalid="ignore", divide="ignore"):
            err = np.log(pred) - np.log(test.c)
        fits[kind] = fr
        scores[kind] = float(np.mean(err ** 2)) if np.all(np.isfinite(err)) else math.inf
    ranking = _rank(scores)
    return HindcastRanking(ranking, scores, fits, n_train)


def _rank(scores):
    ordered = sorted(scores, key=lambda k: (scores[k], N_PARAMS[k]))
    # re-sort inside tie groups by parsimony
    out, i = [], 0
    while i < len(ordered):
        j = i + 1
        while j < len(ordered) and scores[ordered[j]] - scores[ordered[i]] <= TIE_TOL:
            j += 1
        out.extend(sorted(ordered[i:j], key=lambda k: N_PARAMS[k]))
        i = j
    return out


@dataclass
class LambdaAudit:
    n: int
    violations: list          # (index, label, lambda, reason)
    mean_lambda: float
    progress_labels: list     # e.g. '80% curve' per fit
    deviation_from_reference: float
    mean_in_sector_range: bool


def progress_ratio(lam):
    """Fraction of cost retained per doubling of cumulative production."""
    return 2.0 ** (-lam)


def lambda_audit(results):
    """Check fitted learning exponents against 0 < lambda < 1."""
    results = list(results)
    if not results:
        raise ValidationError("no fit results to audit", key="results")
    lams, labels, violations = [], [], []
    for i, fr in enumerate(results):
        lam = fr.params.get("lambda") if isinstance(fr, FitResult) else float(fr)
        if lam is None:
            raise ValidationError(f"result {i} ({fr.kind}) has no learning exponent",
                                  key=f"results[{i}]")
        lams.append(lam)
        labels.append(f"{round(100 * progress_ratio(lam))}% curve")
        if lam >= 1:
            violations.append((i, labels[-1], lam, "lambda >= 1"))
        elif lam <= 0:
            violations.append((i, labels[-1], lam, "lambda <= 0"))
    mean = float(np.mean(lams))
    lo, hi = LAMBDA_SECTOR_RANGE
    return LambdaAudit(len(lams), violations, mean, labels, mean - LAMBDA_REFERENCE_MEAN,
                       lo <= mean <= hi)
