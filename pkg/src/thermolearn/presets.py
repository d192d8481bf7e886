"""Built-in scenarios matching the published example figures."""

from .errors import ValidationError
from .scenario_io import ScenarioConfig

_FIG1 = {"theta0": 0.2, "lambda": 1.0 / 3.0, "h": 0.01, "p": 2.6, "r_b": 0.025}

PRESETS = {
    "fig1-growth": dict(_FIG1, r=0.025),
    "fig1-low": dict(_FIG1, r=0.01),
    "fig1-zero": dict(_FIG1, r=0.0),
    "fig1-negative": dict(_FIG1, r=-0.01),
    # h is irrelevant for the required-innovation trajectory
    "fig2": dict(_FIG1, r=0.025),
}


def preset_config(name, t_max=50.0, dt=0.5):
    try:
        params = PRESETS[name]
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}",
                              key="preset") from None
    return ScenarioConfig("relative", dict(params), t_max=t_max, dt=dt, label=name)


def preset_scenario(name):
    return preset_config(name).to_scenario()
