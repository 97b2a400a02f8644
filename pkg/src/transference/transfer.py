"""Both directions of multiplier transference.

Forward: a family of spherical multipliers m_t sampled along floored weights
[tZ] converges to a flat multiplier m(Z).  Backward: an invariant kernel xi
supported near the origin produces spherical multipliers m_t whose values at
[tZ] converge to the transform of xi.
"""

from dataclasses import dataclass, field

import numpy as np

from .contraction import floor_weight, small_ball_radius
from .convergence import ConvergenceReport, fit_loglog_slope, rate_report
from .fourier import fourier_transform
from .model import as_cartan, as_weight, density
from .spherical import factor_pair_angle, factor_phi
from .special import DEFAULT_QUAD_ORDER, gauss_legendre, tensor_nodes


@dataclass
class MultiplierFamily:
    """A family t -> m_t of spherical multipliers, evaluated at class-1 weights."""
    evaluator: object
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __call__(self, t, w):
        return float(self.evaluator(float(t), as_weight(w)))


def _weight_vector(w):
    return np.asarray(as_weight(w).coords, dtype=float)


def dilation_family(model, m, name=None):
    """m_t(lambda) = m(H_lambda / t) for a function ``m`` on chamber coordinates."""
    def evaluator(t, w):
        return np.asarray(m(_weight_vector(w) / t), dtype=float).reshape(-1)[0]
    return MultiplierFamily(evaluator, name or f"dilation of {getattr(m, '__name__', 'm')}",
                            {"model": model.name})


def gaussian_regularize(fam, eps):
    """Multiply by n_{t,eps}(lambda) = exp(-eps |lambda|^2 / t^2).

    If |m_t| <= M, then along floored arguments
        |m_{t,eps}([tZ])| <= M exp(eps r / t0^2) exp(-(eps/2) |Z|^2)
    for all t >= t0, since (a - b)^2 >= a^2/2 - b^2 and |[tZ]/t - Z| <= sqrt(r)/t.
    The constants are returned through ``decay_constants``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")

    def evaluator(t, w):
        v = _weight_vector(w)
        return fam(t, w) * np.exp(-eps * float(v @ v) / t ** 2)

    meta = dict(fam.meta, eps=eps)
    return MultiplierFamily(evaluator, f"{fam.name} * gaussian(eps={eps})", meta)


def decay_constants(eps, rank, sup_bound=1.0, t0=None):
    """(C1, C2) in |m_{t,eps}([tZ])| <= C1 exp(-C2 |Z|^2), valid for t >= t0 (default 2/eps)."""
    t0 = max(1.0, 2.0 / eps) if t0 is None else t0
    return sup_bound * np.exp(eps * rank / t0 ** 2), eps / 2.0


def forward_limit(model, fam, z, t_grid, reference=None, tol=1e-6):
    """Evaluate m_t([tZ]) along ``t_grid``.

    Without ``reference`` the errors are successive deviations
    |v_i - v_{i-1}| reported at t_grid[1:], and the report fails when they
    do not decrease or the last exceeds ``tol``.  With a reference value the
    errors are |v_i - reference| at every t and the last must be <= tol.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 3 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t grid must be increasing with at least 3 points")
    zc = as_cartan(z)
    values = np.array([fam(t, floor_weight(t, zc).weight) for t in t_grid])
    limit = float(values[-1])
    if reference is None:
        errors = np.abs(np.diff(values))
        t_rep, est = t_grid[1:], values[1:]
        passed = bool(np.all(np.diff(errors) <= 0) and errors[-1] <= tol)
    else:
        errors = np.abs(values - reference)
        t_rep, est = t_grid, values
        passed = bool(errors[-1] <= tol)
    return ConvergenceReport(t_rep, errors, est, fit_loglog_slope(t_rep, errors), limit,
                             passed, tolerance=tol,
                             notes={"family": fam.name, "z": list(zc.coords)})


@dataclass(frozen=True)
class BackwardQuadrature:
    """Node counts for the backward double integral.

    ``radial``: chamber axis of the kernel xi; ``shell`` and ``angle``: the
    radius and relative polar angle of the translation variable W.
    """
    radial: int = DEFAULT_QUAD_ORDER
    shell: int = 24
    angle: int = 24


def _factor_kernel(factor, n, t, r, quad):
    """(1/mu(O)) int_O phi_n(exp(-(X+W)/t) exp(W/t)) dW for |X| = r on one factor.

    X = r e1, W = s (cos psi e1 + sin psi e2); the W-average uses the same
    rule as mu(O), so the constant kernel integrates to exactly 1.
    """
    rho = small_ball_radius(factor)
    srule = gauss_legendre(quad.shell, 0.0, rho)
    arule = gauss_legendre(quad.angle, 0.0, np.pi)
    ws = srule.weights * srule.nodes ** (factor.dim - 1)
    wa = arule.weights * np.sin(arule.nodes) ** (factor.dim - 2)
    ws, wa = ws / ws.sum(), wa / wa.sum()
    if n == 0:
        return np.ones_like(r)

    R, S, P = np.meshgrid(r, srule.nodes, arule.nodes, indexing="ij")
    w_vec = np.zeros(R.shape + (factor.dim,))
    w_vec[..., 0] = S * np.cos(P)
    w_vec[..., 1] = S * np.sin(P)
    x_vec = w_vec.copy()
    x_vec[..., 0] += R
    # phi(exp(Y') exp(X')) with X' = W/t and Y' = -(X+W)/t
    angle = factor_pair_angle(factor, w_vec / t, -x_vec / t)
    vals = factor_phi(factor, n, angle)
    return np.einsum("isp,s,p->i", vals, ws, wa)


def backward_mt(model, xi, t, z, quad=None):
    """m_t at the floored weight [tZ] for the multiplier built from ``xi``.

    m_t(lambda_[tZ]) = (1/mu(O)) int_O int_O phi(exp(-(X+W)/t) exp(W/t)) xi(X) dX dW,
    with O the product of the factor balls of half the chart radius.
    """
    quad = quad or BackwardQuadrature()
    if t < 1:
        raise ValueError("t must be >= 1")
    for f in model.factors:
        if xi.support_radius > small_ball_radius(f) + 1e-12:
            raise ValueError(f"xi support {xi.support_radius} exceeds the neighbourhood "
                             f"radius {small_ball_radius(f)} of {f.label}")
    n = floor_weight(t, as_cartan(z)).weight.coords
    rule = gauss_legendre(quad.radial, 0.0, xi.support_radius)
    h, w = tensor_nodes(rule, model.rank)
    total = w * xi(h) * density(model, h)
    for j, f in enumerate(model.factors):
        a = _factor_kernel(f, n[j], float(t), rule.nodes, quad)
        total = total * a[np.searchsorted(rule.nodes, h[:, j])]
    return float(np.sum(total))


def backward_limit_check(model, xi, z, t_grid, quad=None, slope_band=(-1.3, -0.7)):
    """|m_t([tZ]) - xi_hat(Z)| along ``t_grid`` with a log-log rate fit."""
    quad = quad or BackwardQuadrature()
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t grid must be nonempty and increasing")
    zc = as_cartan(z)
    target = fourier_transform(model, xi, zc, quad_order=quad.radial)
    values = np.array([backward_mt(model, xi, t, zc, quad) for t in t_grid])
    errors = np.abs(values - target)
    report = rate_report(t_grid, errors, values, target, slope_band=slope_band,
                         tolerance=1e-8)
    report.notes["z"] = list(zc.coords)
    return report
