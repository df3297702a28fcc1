"""Smoke tests for the python bindings (run with PYTHONPATH at the built module)."""
import json
import math

import _c1homeo as m


def test_apply_map():
    x, y = m.apply_map("H", 3.0, 4.0)
    assert abs(x - 15.0) < 1e-12 and abs(y - 20.0) < 1e-12
    rx, ry = m.apply_inverse("H", x, y)
    assert abs(rx - 3.0) < 1e-9 and abs(ry - 4.0) < 1e-9


def test_unknown_map_raises():
    try:
        m.apply_map("frobnicate", 0.0, 0.0)
    except m.GeomError:
        return
    raise AssertionError("expected GeomError")


def test_induced_direction_identity():
    out = m.induced_direction("identity", 0.3, -0.2, 0.7)
    assert out["exists"]
    assert abs(out["theta"] - 0.7) < 1e-9


def test_induced_profile_csv():
    csv = m.induced_profile_csv("G", 0.0, 0.0, samples=8)
    lines = csv.strip().split("\n")
    assert lines[0] == "theta_in,theta_out,residual,exists"
    assert len(lines) == 9


def test_classify_json():
    rep = json.loads(m.classify_json("corner_shear"))
    assert rep["map"] == "corner_shear"
    assert rep["overall"] == "FAIL"
    assert rep["properties"]["a"]["status"] == "FAIL"
    rep = json.loads(m.classify_json("rot:30"))
    assert rep["overall"] == "PASS"


def test_construct_curve():
    rows = []
    for n in range(1, 2401):
        theta = math.atan2(2.0 / n, 1.0)
        rows.append(f"{1.0 / n},{1.0 / n**2},{theta}")
    rows.append("limit,0,0,0")
    out = m.construct_curve("x,y,theta\n" + "\n".join(rows) + "\n", want=6,
                            samples=64)
    assert out["validation"]["status"] == "PASS"
    assert out["curve_csv"].startswith("t,x,y,slope")
    assert "<svg" in out["svg"]


def test_transverse_csv():
    rows = []
    for k in range(1, 41):
        rows.append(f"{1.0 / ((2 * k + 1) * math.pi)},0,{math.pi / 4}")
    rows.append("limit,0,0,0")
    v = m.is_transverse_csv("x,y,theta\n" + "\n".join(rows) + "\n")
    assert v["status"] == "PASS"


def test_default_battery_json():
    bat = json.loads(m.default_battery_json())
    assert len(bat["curves"]) == 12
    assert len(bat["sequences"]) == 8
    assert len(bat["points"]) == 6


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"{name}: ok")
            except Exception as e:  # noqa: BLE001
                print(f"{name}: FAILED: {e}")
                failures += 1
    raise SystemExit(failures)
