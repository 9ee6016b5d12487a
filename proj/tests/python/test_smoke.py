import math
import os
from fractions import Fraction

import pytest

import kirchhoff2d as k2


def test_added_mass_disc():
    m = k2.added_mass("disc", radius=1.0, panels=256)
    assert abs(m["m2"][0, 0] - math.pi) < 0.01 * math.pi
    assert abs(m["m2"][1, 1] - math.pi) < 0.01 * math.pi
    assert abs(m["m2"][2, 2]) < 1e-8
    assert m["asymmetry"] < 1e-10


def test_presets_and_round_trip():
    names = k2.preset_names()
    assert "circulation-orbit" in names
    text = k2.load_scenario("circulation-orbit")
    sc = k2.scenario(text)
    again = k2.scenario(k2._core.serialize_scenario(text))
    assert sc == again
    with pytest.raises(k2.ConfigError):
        k2.scenario(text.replace("dt = 0.031415926535897934", "dt = -1"))


def test_shipped_file_matches_preset():
    path = os.path.join(os.environ.get("KIRCHHOFF2D_SCENARIOS", "scenarios"), "circulation-orbit.cfg")
    if not os.path.exists(path):
        pytest.skip("scenario directory not found")
    assert k2.scenario(k2.load_scenario(path)) == k2.scenario(k2.load_scenario("circulation-orbit"))


def test_orbit_run():
    res = k2.run("circulation-orbit")
    assert res["status"] == "ok"
    hx, hy = res["columns"]["hx"], res["columns"]["hy"]
    r = ((hx - 0.0) ** 2 + (hy - 0.5) ** 2) ** 0.5
    assert abs(r - 0.5).max() < 0.01
    assert res["gamma_drift"] < 1e-6
    # deterministic
    assert k2.run("circulation-orbit")["csv"] == res["csv"]


def test_identities_small():
    rep = k2.verify_identities(max_k=2, max_n=1, bound_k=3, bound_n=1, instances=2)
    assert rep["passed"], rep["checks"]
    assert rep["coefficients_csv"].startswith("family,k,index")


def test_upsilon_exact():
    assert k2.upsilon_sum(1, 3) == Fraction(1, 16)
    assert k2.upsilon_sum(2, 4) == Fraction(1, 32) + Fraction(1, 81)


def test_gevrey_fit():
    f = k2.fit_gevrey(k2.synthetic_sequence(1.0, 2.0, 1.0, 12))
    assert abs(f["M"] - 1.0) < 0.1
    assert abs(f["L"] - 2.0) < 0.2
