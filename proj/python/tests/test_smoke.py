import json
import pathlib

import pytest

import wavefront as wf

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_riemann_burgers_shock():
    waves = wf.solve_riemann(wf.FluxModel.burgers(), 1.0, 0.0)
    assert len(waves) == 1
    assert waves[0].kind == "shock"
    assert waves[0].speed_lo == pytest.approx(0.5, abs=1e-15)


def test_riemann_cubic_shock_then_fan():
    waves = wf.solve_riemann(wf.FluxModel.power(3), -1.0, 1.0)
    kinds = [w.kind for w in waves]
    # The shock speed equals f'(0.5), so it is reported as a contact.
    assert kinds == ["contact", "rarefaction"]
    # Shock from -1 to the conjugate -(-1)/2, with speed f'(0.5) = 0.75.
    assert waves[0].ur == pytest.approx(0.5, abs=1e-12)
    assert waves[0].speed_lo == pytest.approx(0.75, abs=1e-12)


def test_conjugate_of_cubic():
    cubic = wf.FluxModel.power(3)
    assert cubic.conjugate(0.0, 0.4) == pytest.approx(-0.2, abs=1e-12)


def test_step_function_variation():
    u = wf.StepFunction([0.0, 1.0, 2.0, 3.0], [1.0, 0.25, 0.75])
    assert u.total_variation() == 3.0
    assert 2 * sum(u.undulation_heights()) == 3.0
    assert u.integral() == 2.0


def test_simulate_conserves_mass():
    u0 = wf.StepFunction([-1.0, 0.0, 0.5, 1.0], [1.0, -0.5, 0.75])
    sim = wf.simulate(wf.FluxModel.burgers(), u0, 1.0 / 64, 1.0)
    assert sim.time == 1.0
    assert sim.event_count > 0
    assert sim.trace(0.5).integral() == pytest.approx(u0.integral(), abs=1e-12)
    report = sim.oleinik(1.0)
    assert report["pass"]


def test_bundled_scenario_runs():
    res = wf.run_scenario_file(str(ROOT / "scenarios" / "burgers_dambreak.scn"))
    assert res["exit_code"] == 0
    summary = json.loads(res["files"]["summary.json"])
    assert summary["pass"] is True
    assert res["files"]["solution.csv"].startswith("time,x_left,x_right,value")


def test_parse_error_is_raised():
    with pytest.raises(wf.ParseError):
        wf.run_scenario("[flux]\nkind = burgers\n[datum]\nkind = steps\nbreakpoints = 0 x\nvalues = 1\n")


def test_example_scenario_text():
    text = wf.example_scenario("sharpness", 3, 2.0)
    assert "[flux]" in text and "[datum]" in text
