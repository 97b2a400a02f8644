"""Convergence reports shared by the limit checks."""

import csv
import json
from dataclasses import dataclass, field

import numpy as np

# Errors at or below this are treated as exact zeros and excluded from fits.
NOISE_FLOOR = 1e-12


def fit_loglog_slope(t, errors, floor=NOISE_FLOOR):
    """Least-squares slope of log(error) against log(t).

    Only points with error > ``floor`` take part; with fewer than three
    such points the slope is nan.
    """
    t = np.asarray(t, dtype=float)
    e = np.asarray(errors, dtype=float)
    keep = e > floor
    if keep.sum() < 3:
        return float("nan")
    return float(np.polyfit(np.log(t[keep]), np.log(e[keep]), 1)[0])


@dataclass
class ConvergenceReport:
    t: np.ndarray
    errors: np.ndarray
    estimates: np.ndarray
    slope: float
    limit: float
    passed: bool
    tolerance: float = float("nan")
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.errors = np.asarray(self.errors, dtype=float)
        self.estimates = np.asarray(self.estimates, dtype=float)
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("t values must be strictly increasing")
        if np.any(self.errors < 0):
            raise ValueError("errors must be nonnegative")

    @property
    def strictly_decreasing(self):
        return bool(np.all(np.diff(self.errors) < 0))

    def summary(self):
        return {
            "slope": None if np.isnan(self.slope) else self.slope,
            "limit": self.limit,
            "max_error": float(self.errors.max()) if self.errors.size else 0.0,
            "final_error": float(self.errors[-1]) if self.errors.size else 0.0,
            "strictly_decreasing": self.strictly_decreasing,
            "passed": bool(self.passed),
            "tolerance": None if np.isnan(self.tolerance) else self.tolerance,
            **self.notes,
        }

    def rows(self):
        return [(float(t), float(e), float(v))
                for t, e, v in zip(self.t, self.errors, self.estimates)]

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t", "error", "estimate"])
            for row in self.rows():
                writer.writerow([repr(x) for x in row])

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.summary(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def rate_report(t, errors, estimates, limit, slope_band=(-1.3, -0.7),
                require_decrease=True, tolerance=NOISE_FLOOR):
    """Build a report whose pass flag is the slope-band criterion.

    An all-zero error sequence (within ``tolerance``) passes outright.
    """
    errors = np.asarray(errors, dtype=float)
    slope = fit_loglog_slope(t, errors)
    if np.all(errors <= tolerance):
        passed = True
    else:
        in_band = bool(slope_band[0] <= slope <= slope_band[1])
        decreasing = bool(np.all(np.diff(errors) < 0))
        passed = in_band and (decreasing or not require_decrease)
    return ConvergenceReport(t, errors, estimates, slope, float(limit), passed,
                             tolerance=tolerance,
                             notes={"slope_band": list(slope_band)})
