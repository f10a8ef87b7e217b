import math
import warnings

import numpy as np
import pytest

from twoway_secrecy.experiments import (
    SweepRangeError,
    SweepSpec,
    is_unimodal,
    optimize_alpha,
    sweep_alpha,
    sweep_distance,
    sweep_snr,
    validate,
)
from twoway_secrecy.experiments.optimize import golden_section_max, grid_scan
from twoway_secrecy.experiments.output import CSV_COLUMNS, read_csv, to_csv, to_json
from twoway_secrecy.experiments.sweeps import curve, snr_params
from twoway_secrecy.params import ConfigError, SystemParams, default_scenario

BASE = default_scenario()


@pytest.fixture(scope="module")
def alpha_rows():
    spec = SweepSpec("alpha", 0.05, 0.95, 19, methods=("closed_form", "monte_carlo"),
                     mc_samples=200_000, seed=1)
    return sweep_alpha(spec, BASE)


# -- SweepSpec ---------------------------------------------------------------

@pytest.mark.parametrize("kw", [
    dict(variable="alpha", start=0.0, stop=0.9, steps=5),
    dict(variable="alpha", start=0.1, stop=1.0, steps=5),
    dict(variable="alpha", start=0.5, stop=0.4, steps=5),
    dict(variable="alpha", start=0.1, stop=0.4, steps=1),
    dict(variable="power", start=0.1, stop=0.4, steps=3),
    dict(variable="snr_db", start=30, stop=40, steps=3, scenarios=()),
    dict(variable="snr_db", start=30, stop=40, steps=3, methods=("exact",)),
    dict(variable="distance_m", start=0.0, stop=4.0, steps=3),
])
def test_spec_rejects(kw):
    with pytest.raises(SweepRangeError):
        SweepSpec(**kw)


def test_grid_is_clean():
    assert list(SweepSpec("alpha", 0.05, 0.95, 19).grid())[5] == 0.3


def test_wrong_variable_for_sweep():
    with pytest.raises(SweepRangeError):
        sweep_snr(SweepSpec("alpha", 0.1, 0.9, 3), BASE)


# -- sweeps -------------------------------------------------------------------

def test_alpha_sweep_rows(alpha_rows):
    assert len(alpha_rows) == 19
    for row in alpha_rows:
        assert set(row.essr) == {(s, m) for s in ("wfj", "wofj") for m in ("closed_form", "monte_carlo")}
        assert all(v >= 0 for v in row.essr.values())
        assert set(row.std_err) == {("wfj", "monte_carlo"), ("wofj", "monte_carlo")}


def test_alpha_sweep_wfj_closed_form_unimodal(alpha_rows):
    assert is_unimodal(curve(alpha_rows, "wfj", "closed_form")[1])


@pytest.mark.parametrize("scenario,target", [("wfj", 0.38), ("wofj", 0.62)])
def test_alpha_sweep_monte_carlo_argmax(alpha_rows, scenario, target):
    x, y = curve(alpha_rows, scenario, "monte_carlo")
    assert is_unimodal(y)
    assert abs(x[np.argmax(y)] - target) <= 0.05 + 1e-9


def test_alpha_sweep_closed_form_wofj_argmax(alpha_rows):
    x, y = curve(alpha_rows, "wofj", "closed_form")
    assert abs(x[np.argmax(y)] - 0.62) <= 0.05 + 1e-9


@pytest.mark.xfail(strict=True, reason="closed-form bound peaks at alpha ~0.29; the 0.38 "
                                       "optimum is a property of the exact (simulated) ESSR")
def test_alpha_sweep_closed_form_wfj_argmax(alpha_rows):
    x, y = curve(alpha_rows, "wfj", "closed_form")
    assert abs(x[np.argmax(y)] - 0.38) <= 0.05 + 1e-9


def test_sweep_parallel_is_identical():
    spec1 = SweepSpec("alpha", 0.1, 0.9, 9, methods=("closed_form", "monte_carlo"), mc_samples=20_000)
    spec4 = SweepSpec("alpha", 0.1, 0.9, 9, methods=("closed_form", "monte_carlo"), mc_samples=20_000,
                      workers=4)
    a = to_csv(r for row in sweep_alpha(spec1, BASE) for r in row.records())
    b = to_csv(r for row in sweep_alpha(spec4, BASE) for r in row.records())
    assert a == b


def test_snr_sweep_nondecreasing():
    rows = sweep_snr(SweepSpec("snr_db", 30, 50, 11, methods=("closed_form", "monte_carlo"),
                               mc_samples=100_000), BASE)
    for scen in ("wfj", "wofj"):
        for m in ("closed_form", "monte_carlo"):
            x, y = curve(rows, scen, m)
            assert list(x) == [30 + 2 * k for k in range(11)]
            assert np.all(np.diff(y) >= 0)


def test_snr_params():
    p = snr_params(BASE.params, 50.0)
    assert p.p_s1 == p.p_s2 == pytest.approx(10.0)
    assert p.n0 == BASE.params.n0


def test_distance_sweep_shape_and_trend():
    spec = SweepSpec("distance_m", 2.0, 5.0, 2, scenarios=("wfj",), methods=("closed_form",))
    rows = sweep_distance(spec, BASE)
    assert len(rows) == 2 * 19
    assert rows[0].label() == "alpha@distance_m=2"
    opt = {}
    for d in (2.0, 5.0):
        x, y = curve(rows, "wfj", "closed_form", distance=d)
        opt[d] = x[np.argmax(y)]
    assert opt[2.0] < opt[5.0]


def test_distance_sweep_fixed_alpha():
    spec = SweepSpec("distance_m", 2.0, 6.0, 5, scenarios=("wofj",))
    rows = sweep_distance(spec, BASE, alpha_grid=None)
    x, y = curve(rows, "wofj", "closed_form")
    assert list(x) == [2, 3, 4, 5, 6]
    assert np.all(np.diff(y) <= 0)


def test_distance_sweep_bad_args():
    spec = SweepSpec("distance_m", 2.0, 5.0, 2)
    with pytest.raises(SweepRangeError):
        sweep_distance(spec, BASE, rj_ratio=0)
    with pytest.raises(SweepRangeError):
        sweep_distance(spec, BASE, alpha_grid=[0.5, 1.0])


def test_is_unimodal():
    assert is_unimodal([1, 3, 2])
    assert not is_unimodal([1, 2, 3])
    assert not is_unimodal([3, 2, 1])
    assert not is_unimodal([1, 3, 2, 4, 1])
    assert not is_unimodal([0, 0, 2, 1])
    assert is_unimodal([0, 0, 2, 1], strict=False)
    assert not is_unimodal([1, 1, 1], strict=False)
    assert not is_unimodal([1, 2])


# -- optimiser ----------------------------------------------------------------

def test_golden_section_quadratic():
    a, v, n = golden_section_max(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, 1e-6)
    assert a == pytest.approx(0.3, abs=1e-6)
    assert n < 40


def test_grid_scan():
    a, v, n = grid_scan(lambda x: -abs(x - 0.42))
    assert a == pytest.approx(0.42) and n == 99


def test_optimize_closed_form_wofj():
    opt = optimize_alpha(BASE.params.with_(jamming=False), BASE.gains)
    assert not opt.fallback
    assert abs(opt.alpha - 0.62) <= 0.05


@pytest.mark.xfail(strict=True, reason="closed-form optimum is alpha ~0.29, outside 0.38 +- 0.05")
def test_optimize_closed_form_wfj_matches_figure():
    opt = optimize_alpha(BASE.params, BASE.gains)
    assert abs(opt.alpha - 0.38) <= 0.05


def test_optimize_closed_form_wfj_value():
    opt = optimize_alpha(BASE.params, BASE.gains)
    assert not opt.fallback
    grid = np.arange(0.01, 0.99, 1e-3)
    from twoway_secrecy.analytics import essr_lower_bound
    best = max(essr_lower_bound(BASE.params.with_(alpha=float(a)), BASE.gains).r_lb for a in grid)
    assert opt.essr >= best - 1e-9


def test_optimize_tolerance_consistency():
    a = optimize_alpha(BASE.params, BASE.gains, tolerance=1e-3)
    b = optimize_alpha(BASE.params, BASE.gains, tolerance=1e-4)
    assert abs(a.alpha - b.alpha) < 2e-3


def test_optimize_monte_carlo():
    opt = optimize_alpha(BASE.params, BASE.gains, "monte_carlo", tolerance=1e-2, mc_samples=100_000)
    assert abs(opt.alpha - 0.38) <= 0.05
    assert not opt.fallback


def test_optimize_degenerate_falls_back():
    p = BASE.params.with_(eta_r=1e-6, eta_j=1e-6)
    with pytest.warns(RuntimeWarning, match="grid scan"):
        opt = optimize_alpha(p, BASE.gains)
    assert opt.fallback
    assert opt.essr == 0.0


def test_optimize_bad_args():
    with pytest.raises(ValueError):
        optimize_alpha(BASE.params, BASE.gains, tolerance=0)
    with pytest.raises(ValueError):
        optimize_alpha(BASE.params, BASE.gains, method="newton")


# -- validate -----------------------------------------------------------------

def test_validate_defaults_pass():
    report = validate(BASE.params, BASE.gains, 10**6, seed=0)
    assert report.passed, "\n".join(report.lines())
    names = [c.name for c in report.checks]
    assert "lower_bound_vs_mc_gap" in names and "jammer_outage" in names


def test_validate_zero_threshold():
    p = BASE.params.with_(theta_r=0.0)
    report = validate(p, BASE.gains, 10**5)
    out = {c.name: c for c in report.checks}
    assert out["relay_outage"].passed and out["relay_outage"].value == 0.0
    assert out["jammer_outage"].value == 0.0


def test_validate_rejects_corrupted_params():
    p = SystemParams()
    object.__setattr__(p, "eta_r", -0.5)
    with pytest.raises(ConfigError):
        validate(p, BASE.gains, 10**5)


def test_validate_min_samples():
    with pytest.raises(ValueError):
        validate(BASE.params, BASE.gains, 100)


# -- output -------------------------------------------------------------------

def test_csv_round_trip(alpha_rows):
    records = [r for row in alpha_rows for r in row.records()]
    text = to_csv(records)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert "\r" not in text
    back = read_csv(text)
    assert len(back) == len(records)
    for a, b in zip(records, back):
        assert b["essr_bps_hz"] == a["essr_bps_hz"]
        assert b["value"] == a["value"]
        assert b["std_err"] == a["std_err"]


def test_csv_round_trip_awkward_floats():
    vals = [math.pi, 1e-300, 2.0 ** -1074, 0.1 + 0.2, 1 / 3]
    recs = [{"variable": "alpha", "value": v, "scenario": "wfj", "method": "closed_form",
             "essr_bps_hz": v, "std_err": None} for v in vals]
    back = read_csv(to_csv(recs))
    assert [b["value"] for b in back] == vals


def test_json_shape(alpha_rows):
    import json
    doc = json.loads(to_json(BASE, [r for row in alpha_rows[:2] for r in row.records()]))
    assert set(doc) == {"params", "rows", "tool_version"}
    assert doc["params"]["linear"]["p_s1"] == pytest.approx(10.0)
    assert set(CSV_COLUMNS) <= set(doc["rows"][0])


def test_asymptotic_slope_ratio_is_two():
    # jamming caps gamma_R while without it gamma_R grows with SNR, so the
    # slopes approach (1 - alpha) and (1 - alpha)/2 bits per decade-of-SNR log2(10)
    from twoway_secrecy.montecarlo import estimate_essr
    slopes = {}
    for jam in (True, False):
        p0 = BASE.params.with_(jamming=jam)
        v = [estimate_essr(snr_params(p0, s), BASE.gains, 200_000, seed=5).mean for s in (110.0, 120.0)]
        slopes[jam] = (v[1] - v[0]) / 10.0
    per_db = (1 - BASE.params.alpha) * math.log2(10) / 10
    assert slopes[True] == pytest.approx(per_db, rel=1e-3)
    assert slopes[True] / slopes[False] == pytest.approx(2.0, rel=2e-3)
