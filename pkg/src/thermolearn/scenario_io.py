"""
Scenario configuration documents, trajectory emission (CSV / SVG) and
cost-series CSV input.

A configuration is one JSON object::

    {
      "relative": {"theta0": 0.2, "lambda": 0.333, "h": 0.01,
                   "p": 2.6, "r_b": 0.025, "r": 0.025},
      "sampling": {"t_max": 50, "dt": 0.5},
      "output": {"format": "csv"},
      "override_bounds": false
    }

``absolute`` may replace ``relative`` (keys a, c_f, lambda, h, y0, r_b, p, r).
In the relative form exactly one of ``p`` / ``gamma`` is given.
"""

import csv
from dataclasses import dataclass, field
import io
import json
import math

import numpy as np

from .calibration import CostSeries
from .errors import ValidationError
from .model import FIELDS, Scenario, sample_times, trajectory

RELATIVE_KEYS = ("theta0", "lambda", "h", "r_b", "r")
ABSOLUTE_KEYS = ("a", "c_f", "lambda", "h", "y0", "r_b", "p", "r")
TOP_KEYS = ("relative", "absolute", "sampling", "output", "override_bounds", "label")
OUTPUT_FORMATS = ("csv", "svg")


@dataclass(frozen=True)
class ScenarioConfig:
    form: str                 # 'relative' | 'absolute'
    params: dict
    t_max: float = 50.0
    dt: float = 0.5
    output: dict = field(default_factory=lambda: {"format": "csv"})
    override_bounds: bool = False
    label: str = ""

    def to_scenario(self):
        return _build_scenario(self.form, self.params, self.override_bounds)

    def times(self):
        return sample_times(self.t_max, self.dt)

    def to_dict(self):
        doc = {self.form: dict(self.params),
               "sampling": {"t_max": self.t_max, "dt": self.dt},
               "output": dict(self.output),
               "override_bounds": self.override_bounds}
        if self.label:
            doc["label"] = self.label
        return doc

    def with_params(self, **updates):
        params = dict(self.params)
        params.update(updates)
        return ScenarioConfig(self.form, params, self.t_max, self.dt, dict(self.output),
                              self.override_bounds, self.label)


def _number(value, key):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"expected a number, got {value!r}", key=key)
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError("must be finite", key=key)
    return value


def _build_scenario(form, params, override_bounds):
    kw = {("lam" if k == "lambda" else k): v for k, v in params.items()}
    try:
        if form == "relative":
            return Scenario.relative(override_bounds=override_bounds, **kw)
        return Scenario.absolute(override_bounds=override_bounds, **kw)
    except ValidationError as exc:
        key = f"{form}.{exc.key}" if exc.key else form
        raise ValidationError(exc.message, key=key) from None


def _parse_params(form, block):
    if not isinstance(block, dict):
        raise ValidationError("expected an object", key=form)
    if form == "relative":
        allowed = RELATIVE_KEYS + ("p", "gamma")
        has_p, has_gamma = "p" in block, "gamma" in block
        if has_p == has_gamma:
            raise ValidationError("exactly one of p and gamma is required",
                                  key=f"{form}.{'gamma' if has_p else 'p'}")
        required = RELATIVE_KEYS + (("p",) if has_p else ("gamma",))
    else:
        allowed = required = ABSOLUTE_KEYS
        if "gamma" in block:
            raise ValidationError("gamma is only accepted in the relative form",
                                  key=f"{form}.gamma")
    for key in block:
        if key not in allowed:
            raise ValidationError("unknown key", key=f"{form}.{key}")
    for key in required:
        if key not in block:
            raise ValidationError("missing key", key=f"{form}.{key}")
    return {k: _number(block[k], f"{form}.{k}") for k in required}


def config_from_dict(doc):
    if not isinstance(doc, dict):
        raise ValidationError("configuration must be a JSON object", key="$")
    for key in doc:
        if key not in TOP_KEYS:
            raise ValidationError("unknown key", key=key)
    forms = [f for f in ("relative", "absolute") if f in doc]
    if len(forms) != 1:
        raise ValidationError("exactly one of 'relative' and 'absolute' is required",
                              key="absolute" if len(forms) == 2 else "relative")
    form = forms[0]
    params = _parse_params(form, doc[form])

    sampling = doc.get("sampling", {})
    if not isinstance(sampling, dict):
        raise ValidationError("expected an object", key="sampling")
    for key in sampling:
        if key not in ("t_max", "dt"):
            raise ValidationError("unknown key", key=f"sampling.{key}")
    t_max = _number(sampling.get("t_max", 50.0), "sampling.t_max")
    dt = _number(sampling.get("dt", 0.5), "sampling.dt")
    if dt <= 0:
        raise ValidationError("must be > 0", key="sampling.dt")
    if t_max < dt:
        raise ValidationError("must be >= dt", key="sampling.t_max")

    output = doc.get("output", {"format": "csv"})
    if not isinstance(output, dict):
        raise ValidationError("expected an object", key="output")
    for key in output:
        if key != "format":
            raise ValidationError("unknown key", key=f"output.{key}")
    fmt = output.get("format", "csv")
    if fmt not in OUTPUT_FORMATS:
        raise ValidationError(f"must be one of {OUTPUT_FORMATS}", key="output.format")

    override = doc.get("override_bounds", False)
    if not isinstance(override, bool):
        raise ValidationError("expected true or false", key="override_bounds")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ValidationError("expected a string", key="label")

    cfg = ScenarioConfig(form, params, t_max, dt, {"format": fmt}, override, label)
    cfg.to_scenario()  # range and invariant checks, with key paths
    return cfg


def parse_config(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc}", key="$") from None
    return config_from_dict(doc)


def serialize_config(cfg):
    return json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# Output
# --------------------------------------------------------------------------

def format_number(x):
    """Shortest decimal string that round-trips to the same double."""
    return repr(float(x))


def emit_table(header, rows):
    """CSV bytes: header row, comma separator, LF line endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else format_number(v) for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def emit_trajectory(points, format="csv"):
    if format == "csv":
        return emit_table(FIELDS, ([getattr(p, f) for f in FIELDS] for p in points))
    if format == "svg":
        return trajectory_svg(points)
    raise ValidationError(f"unknown format {format!r}", key="format")


def simulate(cfg):
    """Trajectory points for a configuration."""
    return trajectory(cfg.to_scenario(), cfg.times())


def trajectory_svg(points, width=640, height=400, title=""):
    """Self-contained line chart of epsilon and c/c0 against t."""
    t = np.array([p.t for p in points])
    series = {"epsilon": np.array([p.epsilon for p in points]),
              "c_ratio": np.array([p.c_ratio for p in points])}
    colours = {"epsilon": "#1f77b4", "c_ratio": "#d62728"}
    left, right, top, bottom = 60, 20, 30, 45
    x0, x1 = float(t.min()), float(t.max())
    if x1 == x0:
        x1 = x0 + 1.0
    ys = np.concatenate(list(series.values()))
    y0, y1 = min(0.0, float(ys.min())), float(ys.max()) * 1.05
    if y1 <= y0:
        y1 = y0 + 1.0
    pw, ph = width - left - right, height - top - bottom

    def sx(v):
        return left + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
           f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>']
    for k in range(6):
        xv = x0 + (x1 - x0) * k / 5
        yv = y0 + (y1 - y0) * k / 5
        out.append(f'<text x="{sx(xv):.2f}" y="{top + ph + 15}" text-anchor="middle">'
                   f'{xv:.4g}</text>')
        out.append(f'<text x="{left - 5}" y="{sy(yv) + 4:.2f}" text-anchor="end">{yv:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 8}" text-anchor="middle">'
               't (years)</text>')
    if title:
        out.append(f'<text x="{left + pw / 2:.2f}" y="18" text-anchor="middle">{title}</text>')
    for i, (name, ys_) in enumerate(series.items()):
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(t, ys_))
        out.append(f'<polyline fill="none" stroke="{colours[name]}" stroke-width="1.5" '
                   f'points="{pts}"/>')
        ly = top + 12 + 14 * i
        out.append(f'<line x1="{left + pw - 90}" y1="{ly}" x2="{left + pw - 70}" y2="{ly}" '
                   f'stroke="{colours[name]}" stroke-width="1.5"/>')
        out.append(f'<text x="{left + pw - 65}" y="{ly + 4}">{name}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# Cost series input
# --------------------------------------------------------------------------

def read_cost_series(text, label=""):
    """Parse CSV text with header ``t,Q,c`` into a CostSeries."""
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r and any(cell.strip() for cell in r)]
    if not rows:
        raise ValidationError("empty cost series", key="header")
    header = [h.strip() for h in rows[0]]
    if header != ["t", "Q", "c"]:
        raise ValidationError(f"expected header 't,Q,c', got {','.join(header)!r}", key="header")
    data = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ValidationError("expected 3 fields", key=f"line {lineno}")
        try:
            data.append([float(v) for v in row])
        except ValueError:
            raise ValidationError(f"non-numeric field in {row!r}", key=f"line {lineno}") from None
    if not data:
        raise ValidationError("no data rows", key="series")
    arr = np.array(data)
    return CostSeries(arr[:, 0], arr[:, 1], arr[:, 2], label=label)


def emit_cost_series(series):
    return emit_table(("t", "Q", "c"), zip(series.t, series.Q, series.c))
