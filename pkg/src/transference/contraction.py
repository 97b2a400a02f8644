"""Contraction bookkeeping between the flat space and the chart of U/K."""

from dataclasses import dataclass

import numpy as np

from scipy.special import roots_jacobi

from .model import ChartError, WeightPoint, as_cartan, density
from .special import DEFAULT_QUAD_ORDER, gauss_legendre, sinc, sphere_area, tensor_nodes


@dataclass(frozen=True)
class FlooredWeight:
    weight: WeightPoint
    frac: tuple


def floor_weight(t, z):
    """Componentwise integer part of t*Z and the fractional remainder."""
    if t < 1:
        raise ValueError("t must be >= 1")
    tz = float(t) * np.asarray(as_cartan(z).coords)
    n = np.floor(tz)
    return FlooredWeight(WeightPoint(tuple(int(v) for v in n)), tuple((tz - n).tolist()))


def small_ball_radius(factor):
    """Radius of the neighbourhood O: half the chart radius, so O + O lies in the chart."""
    return 0.5 * factor.chamber_radius


def radial_parts(model, x):
    """Per-factor Euclidean norms of full coordinates x[..., D] -> [..., r]."""
    x = np.asarray(x, dtype=float)
    return np.stack([np.linalg.norm(x[..., s], axis=-1) for s in model.factor_slices], axis=-1)


def _chamber_jacobian(model, h):
    h = np.asarray(h, dtype=float)
    out = np.ones(h.shape[:-1])
    for j, f in enumerate(model.factors):
        out = out * sinc(h[..., j]) ** f.multiplicity
    return out


def jacobian(model, x):
    """Jacobian of the exponential chart at full coordinates ``x``."""
    x = np.asarray(x, dtype=float)
    theta = radial_parts(model, x)
    if np.any(theta > np.pi + 1e-12):
        raise ChartError("point outside the exponential chart")
    out = _chamber_jacobian(model, theta)
    return float(out) if out.ndim == 0 else out


def chamber_jacobian(model, h):
    """Jacobian evaluated on chamber coordinates h[..., r]."""
    h = np.asarray(h, dtype=float)
    out = _chamber_jacobian(model, h.reshape(-1, model.rank) if h.ndim <= 1 else h)
    return float(out[0]) if h.ndim <= 1 else out


def measure_normalization(model):
    """Ratio of surface measure on U/K to the measure fixed by change of variables.

    The chart measure is Lebesgue measure divided by the area of the unit
    direction sphere of each factor, so this is prod_f |S^(D_f - 1)|.
    """
    return float(np.prod([sphere_area(f.dim - 1) for f in model.factors]))


def change_of_variable_check(model, f, quad=None):
    """Both sides of the change-of-variable identity for a radial function.

    Returns ``(on_space, on_chart)``.  ``on_space`` integrates ``f`` over the
    embedded space in the height coordinate x0 = cos(theta) of each factor
    (surface measure divided by ``measure_normalization``); ``on_chart`` is
    the chart integral of f * J against the polar density.
    """
    radius = f.support_radius
    for fac in model.factors:
        if radius > fac.chamber_radius + 1e-12:
            raise ChartError("function support leaves the chart")
    if quad is None:
        quad = gauss_legendre(DEFAULT_QUAD_ORDER, 0.0, radius)
    r = model.rank
    h, w = tensor_nodes(quad, r)
    on_chart = float(np.sum(w * f(h) * _chamber_jacobian(model, h) * density(model, h)))

    # Height x0 = cos(theta) in [cos R, 1], surface weight (1 - x0^2)^beta with
    # beta = (D - 2)/2.  Gauss-Jacobi absorbs the (1 - x0)^beta endpoint factor.
    n = len(quad.nodes)
    lo = float(np.cos(radius))
    half = 0.5 * (1.0 - lo)
    axes, weights = [], []
    for fac in model.factors:
        beta = (fac.dim - 2) / 2.0
        u, wu = roots_jacobi(n, beta, 0.0)
        x0 = lo + half * (u + 1.0)
        axes.append(np.arccos(np.clip(x0, -1.0, 1.0)))
        weights.append(wu * half ** (beta + 1.0) * (1.0 + x0) ** beta)
    grids = np.meshgrid(*axes, indexing="ij")
    wgrid = np.meshgrid(*weights, indexing="ij")
    theta = np.stack([g.ravel() for g in grids], axis=-1)
    wt = np.prod([g.ravel() for g in wgrid], axis=0)
    on_space = float(np.sum(wt * f(theta)))
    return on_space, on_chart
