import csv
import json

import numpy as np
import pytest

from transference.convergence import ConvergenceReport, fit_loglog_slope, rate_report

T = np.array([50.0, 100, 200, 400, 800])


def test_slope_exact_power_law():
    assert fit_loglog_slope(T, 3.0 / T) == pytest.approx(-1.0, abs=1e-12)
    assert fit_loglog_slope(T, 0.1 * T ** -2) == pytest.approx(-2.0, abs=1e-12)


def test_slope_ignores_noise_floor():
    err = 1.0 / T
    err[-3:] = 1e-14
    assert np.isnan(fit_loglog_slope(T, err))
    err[-2:] = 1.0 / T[-2:]
    assert fit_loglog_slope(T, err) == pytest.approx(-1.0, abs=1e-12)


def test_rate_report_pass_and_fail():
    assert rate_report(T, 1.0 / T, None, 0.0).passed
    assert not rate_report(T, T ** -2.0, None, 0.0).passed
    bumpy = 1.0 / T
    bumpy[2] = bumpy[1]
    assert not rate_report(T, bumpy, None, 0.0).passed
    assert rate_report(T, np.zeros(5), None, 1.0).passed


def test_report_validation():
    with pytest.raises(ValueError):
        ConvergenceReport(np.array([2.0, 1.0]), np.array([1.0, 1.0]), None, np.nan, 0.0, False)
    with pytest.raises(ValueError):
        ConvergenceReport(T, -np.ones(5), None, np.nan, 0.0, False)


def test_outputs(tmp_path):
    rep = rate_report(T, 1.0 / T, 2.0 + 1.0 / T, 2.0)
    rep.write_csv(tmp_path / "r.csv")
    rep.write_json(tmp_path / "r.json")
    rows = list(csv.reader(open(tmp_path / "r.csv")))
    assert rows[0] == ["t", "error", "estimate"] and len(rows) == 6
    assert float(rows[1][1]) == 1.0 / 50
    data = json.loads((tmp_path / "r.json").read_text())
    assert data["passed"] is True
