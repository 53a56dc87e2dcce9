import math

import numpy as np
import pytest

import biharm


def test_resonance_and_modes():
    p = biharm.make_params(-5.0, math.pi)
    info = biharm.resonance_check(p)
    assert info.resonant
    assert info.pairs == [(1, 2)]
    modes = biharm.enumerate_modes(p, 4)
    assert [m.n for m in modes] == [1, 2, 3, 4]
    assert modes[0].lam == pytest.approx(-4.0)
    assert modes[0].partner == 2


def test_invalid_gamma_raises_with_code():
    with pytest.raises(biharm.BiharmError) as exc:
        biharm.make_params(1.0, math.pi)
    assert exc.value.args[0] == "NonNegativeGamma"


def test_null_control_round_trip():
    p = biharm.make_params(-3.0, math.pi)
    x = np.linspace(0.0, math.pi, 2049)
    y0 = biharm.project(x * (math.pi - x) + 0j, p, 8)
    f, report = biharm.null_control(p, y0, 1.0, 8, oracle_phase_step=0.02)
    assert max(report["residual_modal"]) <= 1e-8 * np.linalg.norm(y0.coeffs)
    assert report["verified_by_oracle"]
    final = biharm.controlled_evolve(y0, f, 1.0)
    assert np.max(np.abs(final.coeffs)) <= 1e-8


def test_dichotomy_and_invisible_trace():
    bad = biharm.observability_bounds(biharm.make_params(-5.0, math.pi), 8, 1.0)
    good = biharm.observability_bounds(biharm.make_params(-3.0, math.pi), 8, 1.0)
    assert bad.lower <= 1e-10 < 1e-6 <= good.lower
    v = biharm.invisible_mode(biharm.make_params(-5.0, math.pi), (1, 2), 8)
    trace = np.asarray(biharm.boundary_trace(v, list(np.linspace(0.0, 1.0, 200))))
    assert np.max(np.abs(trace)) <= 1e-12
    with pytest.raises(biharm.BiharmError):
        biharm.null_control(biharm.make_params(-5.0, math.pi), v, 1.0, 8)


def test_scan_dip():
    grid = list(np.linspace(-6.0, -4.0, 21))
    rows = biharm.resonance_scan(grid, math.pi, 8, 1.0)
    best = min(rows, key=lambda r: r.constant)
    assert best.gamma == pytest.approx(-5.0)
    assert best.status == "resonant"
