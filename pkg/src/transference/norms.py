"""Multiplier norm diagnostics on both sides of the transference.

At p = 2 the operator norm is the supremum of the symbol.  For other p only
lower bounds are computed, as ratios ||T f||_p / ||f||_p over explicit
invariant (zonal) test functions.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from .fourier import (RadialFunction, fourier_transform, gaussian_profile, inverse_transform,
                      transform_profile)
from .model import density, weyl_dim
from .spherical import factor_phi
from .special import DEFAULT_QUAD_ORDER, gauss_legendre, tensor_nodes
from .transfer import BackwardQuadrature, backward_mt


@dataclass(frozen=True)
class NormEstimate:
    p: float
    value: float
    kind: str               # "exact" or "lower_bound"
    witness: str = ""

    def __post_init__(self):
        if self.kind not in ("exact", "lower_bound"):
            raise ValueError(f"unknown estimate kind {self.kind!r}")
        if self.kind == "exact" and self.p != 2:
            raise ValueError("only p = 2 norms are exact")
        if self.value < 0:
            raise ValueError("norm estimates are nonnegative")


def l2_norm(symbol, points=None):
    """Exact L^2 multiplier norm: sup |symbol| over a table or a point set."""
    values = np.asarray(symbol(points) if callable(symbol) else symbol, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("empty symbol table")
    return NormEstimate(2.0, float(np.max(np.abs(values))), "exact")


def _lp(values, weights, p):
    return float(np.sum(weights * np.abs(values) ** p) ** (1.0 / p))


def _check_p(p):
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")


def default_flat_trials(model):
    """8 Gaussians of varied width plus 4 cosine-modulated Gaussians."""
    trials = [gaussian_profile(model, sigma) for sigma in np.geomspace(0.25, 2.0, 8)]
    trials += [gaussian_profile(model, 1.0, frequency=k) for k in (1.0, 2.0, 3.0, 4.0)]
    return trials


def apply_flat_multiplier(model, m, f, points, quad_order=DEFAULT_QUAD_ORDER):
    """T_m f at chamber points: inverse transform of m * f_hat."""
    fhat = transform_profile(model, f, quad_order=quad_order)
    product = RadialFunction(model, lambda z: np.asarray(m(z), dtype=float) * fhat.profile(z),
                             fhat.support_radius, bandwidth=fhat.bandwidth)
    return inverse_transform(model, product, points, quad_order=quad_order)


def lp_lower_bound_flat(model, m, p, trials=None, output_factor=2.0,
                        quad_order=DEFAULT_QUAD_ORDER):
    """Lower bound for ||T_m||_{p,p} on the flat space from invariant test functions.

    ``m`` maps chamber points z[..., r] to symbol values.  ||T_m f||_p is
    measured on the box [0, output_factor * support]^r only, which keeps
    the ratio a valid lower bound.
    """
    _check_p(p)
    trials = default_flat_trials(model) if trials is None else list(trials)
    best, witness, any_nonzero = 0.0, "", False
    for i, f in enumerate(trials):
        # Both norms on the same output nodes, so quadrature error in |.|^p cancels.
        out_rule = gauss_legendre(quad_order, 0.0, output_factor * f.support_radius)
        ho, wo = tensor_nodes(out_rule, model.rank)
        wo = wo * density(model, ho)
        norm_f = _lp(f(ho), wo, p)
        if norm_f == 0.0:
            continue
        any_nonzero = True
        ratio = _lp(apply_flat_multiplier(model, m, f, ho, quad_order), wo, p) / norm_f
        if ratio > best:
            best, witness = ratio, f"trial {i}: {f.label}"
    if not any_nonzero:
        raise ValueError("all trial functions vanish")
    return NormEstimate(float(p), best, "lower_bound", witness)


def _zonal_rule(factor, order):
    # sin^(D-1) theta d theta = (1 - x^2)^((D-2)/2) dx with x = cos theta
    beta = (factor.dim - 2) / 2.0
    x, w = roots_jacobi(order, beta, beta)
    return np.arccos(np.clip(x, -1.0, 1.0)), w


def default_spherical_trials(model, seed=0):
    """Heat-type coefficient profiles plus randomly modulated ones (seeded)."""
    delta = np.asarray(model.delta)
    trials = []
    for s in np.geomspace(0.02, 1.0, 8):
        trials.append(lambda n, s=s: np.exp(-s * float(np.sum(n * (n + 2 * delta)))))
    rng = np.random.default_rng(seed)
    for freq in rng.uniform(0.3, 2.5, size=4):
        trials.append(lambda n, f=freq: np.exp(-0.05 * float(n @ n)) * np.cos(f * float(n.sum())))
    return trials


def lp_lower_bound_spherical(model, m, p, degree_cut, trials=None, quad_order=None):
    """Lower bound for a spherical multiplier norm from zonal test functions.

    Each trial maps a weight vector n to a coefficient a_n; the test
    function is f = sum_{n <= cut} a_n d_n phi_n and T f = sum a_n d_n m(n) phi_n.
    Norms use the zonal surface measure of each factor.
    """
    _check_p(p)
    if degree_cut < 1:
        raise ValueError("degree_cut must be >= 1")
    trials = default_spherical_trials(model) if trials is None else list(trials)
    order = quad_order or max(DEFAULT_QUAD_ORDER, 4 * degree_cut)
    rules = [_zonal_rule(f, order) for f in model.factors]
    weights = rules[0][1]
    for _, w in rules[1:]:
        weights = np.multiply.outer(weights, w)
    weights = weights.ravel()

    weights_list = [np.array(n) for n in
                    itertools.product(range(degree_cut + 1), repeat=model.rank)]
    basis = []
    for n in weights_list:
        vals = factor_phi(model.factors[0], int(n[0]), rules[0][0])
        for j in range(1, model.rank):
            vals = np.multiply.outer(vals, factor_phi(model.factors[j], int(n[j]), rules[j][0]))
        basis.append(np.ravel(vals) * weyl_dim(model, tuple(n)))
    basis = np.array(basis)
    symbol = np.array([float(m(tuple(n))) for n in weights_list])

    best, witness, any_nonzero = 0.0, "", False
    for i, trial in enumerate(trials):
        coeffs = np.array([float(trial(n)) for n in weights_list])
        f = coeffs @ basis
        norm_f = _lp(f, weights, p)
        if norm_f == 0.0:
            continue
        any_nonzero = True
        ratio = _lp((coeffs * symbol) @ basis, weights, p) / norm_f
        if ratio > best:
            best, witness = ratio, f"trial {i}"
    if not any_nonzero:
        raise ValueError("all trial functions vanish")
    return NormEstimate(float(p), best, "lower_bound", witness)


def transference_norm_report(model, xi, p, t_grid, z_grid, trials=None, degree_cut=8,
                             quad=None, tol=1e-2):
    """Flat-side and spherical-side norm diagnostics for the multipliers built from ``xi``.

    At p = 2 the report carries a pass flag for
    |sup_z |xi_hat(z)| - sup_z |m_t([tz])|| < tol at the largest t.
    For other p it only records lower bounds.
    """
    quad = quad or BackwardQuadrature()
    z_grid = np.asarray(z_grid, dtype=float).reshape(-1, model.rank)
    t_grid = [float(t) for t in t_grid]
    xi_hat = fourier_transform(model, xi, z_grid, quad_order=quad.radial)
    flat_exact = l2_norm(xi_hat)
    symbol = lambda z: fourier_transform(model, xi, z, quad_order=quad.radial)
    if p == 2:
        flat_bound = flat_exact
    elif np.max(np.abs(xi_hat)) == 0.0:
        flat_bound = NormEstimate(float(p), 0.0, "lower_bound", "zero symbol")
    else:
        flat_bound = lp_lower_bound_flat(model, symbol, p, trials)

    rows = []
    for t in t_grid:
        sampled = np.array([backward_mt(model, xi, t, z, quad) for z in z_grid])
        sup_floor = float(np.max(np.abs(sampled)))
        mt = lambda n, t=t: backward_mt(model, xi, t, np.asarray(n, dtype=float) / t, quad)
        sph = (NormEstimate(2.0, sup_floor, "exact") if p == 2 else
               lp_lower_bound_spherical(model, mt, p, degree_cut))
        rows.append({
            "t": t,
            "sup_floored_mt": sup_floor,
            "spherical_estimate": sph.value,
            "spherical_kind": sph.kind,
            "ratio_flat_over_spherical": (flat_bound.value / sph.value if sph.value else None),
        })
    report = {
        "model": model.name,
        "p": float(p),
        "flat_sup": flat_exact.value,
        "flat_estimate": flat_bound.value,
        "flat_kind": flat_bound.kind,
        "rows": rows,
    }
    if p == 2:
        gap = abs(flat_exact.value - rows[-1]["sup_floored_mt"])
        report["p2_gap"] = gap
        report["passed"] = bool(gap < tol)
    else:
        report["passed"] = None
    return report
