"""Spherical functions, two-point evaluation and the generalized Bessel kernel."""

from dataclasses import dataclass

import numpy as np

from .contraction import floor_weight, radial_parts
from .convergence import rate_report
from .model import CartanPoint, ChartError, as_cartan, as_weight
from .special import (DEFAULT_QUAD_ORDER, bessel_j_normalized, gauss_legendre,
                      gegenbauer_normalized, sinc)

_CHART_SLACK = 1e-12


@dataclass(frozen=True)
class SpacePoint:
    """A point of U/K, one unit vector (or unit quaternion) per factor."""
    model: object
    embedding: tuple

    def inner(self, other):
        return tuple(float(np.dot(a, b)) for a, b in zip(self.embedding, other.embedding))


def _full_coords(model, x):
    """Accept full coordinates or a CartanPoint (placed on the first axis of each factor)."""
    if isinstance(x, CartanPoint):
        out = np.zeros(model.dim)
        for s, theta in zip(model.factor_slices, x.coords):
            out[s.start] = theta
        return out
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != model.dim:
        raise ValueError(f"expected {model.dim} full coordinates, got shape {x.shape}")
    return x


def _exp_embed(v):
    """(cos|v|, sin|v| v/|v|) for v[..., D]."""
    a = np.linalg.norm(v, axis=-1)
    # sin|v| v/|v| = sinc(|v|) v stays smooth through v = 0
    return np.concatenate([np.cos(a)[..., None], np.asarray(sinc(a))[..., None] * v], axis=-1)


def _check_chart(theta):
    if np.any(np.asarray(theta) > np.pi + _CHART_SLACK):
        raise ChartError("point outside the exponential chart (|X| > pi)")


def exp_point(model, x):
    x = _full_coords(model, x)
    if x.ndim != 1:
        raise ValueError("exp_point takes a single point")
    _check_chart(radial_parts(model, x))
    return SpacePoint(model, tuple(_exp_embed(x[s]) for s in model.factor_slices))


def _quat_mul(p, q):
    a1, v1 = p[..., 0], p[..., 1:]
    a2, v2 = q[..., 0], q[..., 1:]
    scalar = a1 * a2 - np.sum(v1 * v2, axis=-1)
    vec = a1[..., None] * v2 + a2[..., None] * v1 + np.cross(v1, v2)
    return np.concatenate([scalar[..., None], vec], axis=-1)


def factor_pair_angle(factor, x, y):
    """Invariant angle of exp(Y) exp(X) for one rank-one factor.

    Spheres use the geodesic distance between exp(-Y).o and exp(X).o;
    SU(2) uses the conjugacy angle of the quaternion product.
    """
    _check_chart(np.linalg.norm(x, axis=-1))
    _check_chart(np.linalg.norm(y, axis=-1))
    if factor.kind == "su2":
        q = _quat_mul(_exp_embed(y), _exp_embed(x))
        return np.arctan2(np.linalg.norm(q[..., 1:], axis=-1), q[..., 0])
    chord = np.linalg.norm(_exp_embed(x) - _exp_embed(-y), axis=-1)
    return 2.0 * np.arcsin(np.clip(0.5 * chord, 0.0, 1.0))


def factor_phi(factor, n, theta):
    """Spherical function of degree n of one factor at angle theta."""
    theta = np.abs(np.asarray(theta, dtype=float))
    _check_chart(theta)
    theta = np.minimum(theta, np.pi)
    if factor.kind == "su2":
        # sin((n+1)t) / ((n+1) sin t), reflected through pi/2 to avoid sin t -> 0 at pi
        far = theta > 0.5 * np.pi
        t = np.where(far, np.pi - theta, theta)
        val = sinc((n + 1) * t) / sinc(t)
        return np.where(far, (-1) ** n * val, val)
    return gegenbauer_normalized(n, factor.gegenbauer_index, np.cos(theta))


def phi(model, w, h):
    """phi_lambda at the chamber point(s) h[..., r]."""
    n = as_weight(w).coords
    h = np.asarray(as_cartan(h).coords if isinstance(h, CartanPoint) else h, dtype=float)
    scalar = h.ndim <= 1
    h = h.reshape(-1, model.rank) if scalar else h
    out = np.ones(h.shape[:-1])
    for j, f in enumerate(model.factors):
        out = out * factor_phi(f, n[j], h[..., j])
    return float(out[0]) if scalar else out


def phi_pair(model, w, x, y):
    """phi_lambda(exp(Y) exp(X)) for full coordinates x, y (batched over leading axes)."""
    n = as_weight(w).coords
    x = _full_coords(model, x)
    y = _full_coords(model, y)
    out = 1.0
    for j, (f, s) in enumerate(zip(model.factors, model.factor_slices)):
        out = out * factor_phi(f, n[j], factor_pair_angle(f, x[..., s], y[..., s]))
    return float(out) if np.ndim(out) == 0 else out


def gen_bessel(model, z, x):
    """Generalized Bessel kernel J(Z, X): the K-orbit average of exp(i B(Z, Ad(k) X)).

    Closed form per factor: the normalized Bessel function of order
    (D - 2)/2 at z*|X|.
    """
    zc = np.asarray(as_cartan(z).coords)
    theta = radial_parts(model, _full_coords(model, x))
    return chamber_kernel(model, zc, theta)


def chamber_kernel(model, z, h):
    """J(Z, H) for chamber points; broadcasts z[..., r] against h[..., r]."""
    z = np.asarray(z, dtype=float)
    h = np.asarray(h, dtype=float)
    out = 1.0
    for j, f in enumerate(model.factors):
        out = out * bessel_j_normalized(f.bessel_order, z[..., j] * h[..., j])
    return float(out) if np.ndim(out) == 0 else out


def gen_bessel_orbit(model, z, x, order=DEFAULT_QUAD_ORDER):
    """J(Z, X) by direct quadrature over the K-orbit of X.

    For a factor of dimension D the orbit of X is the sphere of radius |X|
    in R^D, and B(Z, Ad(k)X) = z |X| cos(psi) with psi the polar angle.
    """
    zc = np.asarray(as_cartan(z).coords)
    theta = radial_parts(model, _full_coords(model, x))
    out = 1.0
    for j, f in enumerate(model.factors):
        rule = gauss_legendre(order, 0.0, np.pi)
        wgt = rule.weights * np.sin(rule.nodes) ** (f.dim - 2)
        phase = zc[j] * np.asarray(theta)[..., j, None] * np.cos(rule.nodes)
        avg = np.sum(np.exp(1j * phase) * wgt, axis=-1) / wgt.sum()
        out = out * avg
    out = np.asarray(out)
    return complex(out) if out.ndim == 0 else out


def lemma_limit_check(model, z, x, y, t_grid, sign=1, slope_band=(-1.3, -0.7)):
    """Contraction limit of spherical functions along floored weights.

    For each t, compares phi_{[tZ]}(exp(sign*Y/t) exp(X/t)) with
    J(Z, X + sign*Y).  ``sign=-1`` gives the ordering used for the
    transference operator.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0 or np.any(np.diff(t_grid) <= 0) or np.any(t_grid < 1):
        raise ValueError("t grid must be nonempty, increasing and >= 1")
    zc = as_cartan(z)
    x = _full_coords(model, x)
    y = _full_coords(model, y)
    target = gen_bessel(model, zc, x + sign * y)
    values = np.array([
        phi_pair(model, floor_weight(t, zc).weight, x / t, sign * y / t) for t in t_grid
    ])
    errors = np.abs(values - target)
    return rate_report(t_grid, errors, values, target, slope_band=slope_band)
