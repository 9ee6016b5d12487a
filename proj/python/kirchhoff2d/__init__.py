"""Rigid body and point vortices in a 2D ideal fluid."""

import csv
import io
import json
from fractions import Fraction

import numpy as np

from . import _core
from ._core import ConfigError, Error, added_mass, fit_gevrey, preset_names, synthetic_sequence

__all__ = [
    "ConfigError",
    "Error",
    "added_mass",
    "fit_gevrey",
    "load_scenario",
    "preset_names",
    "run",
    "synthetic_sequence",
    "upsilon_sum",
    "verify_identities",
]


def load_scenario(path_or_preset):
    """Config text for a file path or a shipped preset name."""
    if path_or_preset in preset_names():
        return _core.preset_text(path_or_preset)
    with open(path_or_preset) as f:
        return f.read()


def scenario(text):
    return json.loads(_core.scenario_json(text))


def run(config, dt=None, panels=None):
    """Integrate a scenario (config text, path or preset); columns come back as numpy arrays."""
    text = config if "\n" in config or "=" in config else load_scenario(config)
    res = _core.run(text, dt, panels)
    rows = list(csv.reader(io.StringIO(res["csv"])))
    cols = {name: np.array([float(r[i]) for r in rows[1:]]) for i, name in enumerate(rows[0])}
    return {
        "columns": cols,
        "status": res["status"],
        "gamma_drift": res["gamma_drift"],
        "normal_residual": res["normal_residual"],
        "metadata": json.loads(res["metadata"]),
        "csv": res["csv"],
    }


def verify_identities(**kw):
    return _core.verify_identities(**kw)


def upsilon_sum(s, m):
    return Fraction(_core.upsilon_sum(s, m))
