"""Fourier transform and inversion of Ad(K)-invariant functions on the flat space.

Invariant functions are handled through their chamber profiles.  The flat
measure is Lebesgue measure divided by prod_f |S^(D_f - 1)|, which makes the
polar formula  int f = int_chamber f(H) density(H) dH  hold with a
normalized K-average.  The forward transform carries no constant, so the
transform at zero is the total mass; the inversion constant is calibrated
once per factor from a Gaussian round trip.
"""

import csv
from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil

import numpy as np
from scipy.interpolate import CubicSpline, RegularGridInterpolator

from .contraction import measure_normalization
from .model import CartanPoint, as_cartan, density, make_sphere
from .spherical import chamber_kernel
from .special import DEFAULT_QUAD_ORDER, gauss_legendre, sphere_area, tensor_nodes

TRUNCATION_THRESHOLD = 1e-10
# Upper bound on the frequency scan, in units of 1/support radius.
SCAN_CAP = 2000.0
# Nodes per unit of (frequency x radius); keeps oscillatory kernels resolved.
NODES_PER_OSCILLATION = 1.5
_CHUNK = 2_000_000


@dataclass
class RadialFunction:
    """Chamber profile of an Ad(K)-invariant function.

    ``profile`` maps chamber coordinates h[..., r] to values; it is assumed
    to vanish outside the box [0, support_radius]^r.  ``bandwidth`` is the
    support radius of the function whose transform this is, when known.
    """
    model: object
    profile: object
    support_radius: float
    bandwidth: float = None
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __call__(self, h):
        h = np.asarray(h, dtype=float)
        scalar = h.ndim <= 1
        hh = h.reshape(-1, self.model.rank) if scalar else h
        vals = np.asarray(self.profile(hh), dtype=float)
        inside = np.all((hh >= 0) & (hh <= self.support_radius), axis=-1)
        vals = np.where(inside, vals, 0.0)
        return float(vals[0]) if scalar else vals

    def scaled(self, c):
        return RadialFunction(self.model, lambda h: c * self.profile(h), self.support_radius,
                              self.bandwidth, self.label, dict(self.meta))

    @classmethod
    def from_samples(cls, model, radii, values, label="samples"):
        """Cubic interpolation of samples on a uniform grid.

        Rank one takes 1-D ``values``; higher rank takes an array with one
        axis per chamber coordinate, all sampled on ``radii``.
        """
        radii = np.asarray(radii, dtype=float)
        values = np.asarray(values, dtype=float)
        if model.rank == 1:
            spline = CubicSpline(radii, values)
            prof = lambda h: spline(h[..., 0])
        else:
            interp = RegularGridInterpolator([radii] * model.rank, values, method="cubic",
                                             bounds_error=False, fill_value=0.0)
            prof = lambda h: interp(h)
        return cls(model, prof, float(radii[-1]), label=label)

    @classmethod
    def from_csv(cls, model, path):
        """Load a rank-one profile from a two-column CSV (radius, value) with header."""
        if model.rank != 1:
            raise ValueError("CSV profiles are rank-one only")
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if len(rows) < 2:
            raise ValueError(f"{path}: need a header row and data")
        try:
            data = np.array([[float(a), float(b)] for a, b in rows[1:]])
        except ValueError as exc:
            raise ValueError(f"{path}: malformed row ({exc})") from None
        return cls.from_samples(model, data[:, 0], data[:, 1], label=str(path))


def _bump1(r, radius):
    u = (np.asarray(r) / radius) ** 2
    out = np.zeros_like(u, dtype=float)
    m = u < 1.0
    out[m] = np.exp(-1.0 / (1.0 - u[m]))
    return out


def radial_mass(model, f, quad_order=DEFAULT_QUAD_ORDER):
    """Integral of an invariant function against the flat measure."""
    h, w = tensor_nodes(gauss_legendre(quad_order, 0.0, f.support_radius), model.rank)
    return float(np.sum(w * f(h) * density(model, h)))


def smooth_bump(model, radius, mass=1.0):
    """C-infinity bump exp(-1/(1-(r/radius)^2)) on each factor, scaled to the given mass."""
    factors = []
    for f in model.factors:
        rule = gauss_legendre(DEFAULT_QUAD_ORDER, 0.0, radius)
        factors.append(np.sum(rule.weights * _bump1(rule.nodes, radius)
                              * rule.nodes ** f.multiplicity))
    norm = mass / float(np.prod(factors))
    prof = lambda h: norm * np.prod(_bump1(h, radius), axis=-1)
    return RadialFunction(model, prof, float(radius), label=f"bump(radius={radius})")


def gaussian_profile(model, sigma=1.0, cutoff=8.0, amplitude=1.0, frequency=0.0):
    """amplitude * exp(-|h|^2 / (2 sigma^2)) * prod cos(frequency h_j), cut at cutoff*sigma."""
    def prof(h):
        out = amplitude * np.exp(-np.sum(h * h, axis=-1) / (2.0 * sigma ** 2))
        if frequency:
            out = out * np.prod(np.cos(frequency * h), axis=-1)
        return out
    label = f"gaussian(sigma={sigma}, frequency={frequency})"
    return RadialFunction(model, prof, float(cutoff * sigma), label=label)


def gaussian_transform_exact(model, sigma, z):
    """Closed-form transform of the untruncated Gaussian exp(-|x|^2/(2 sigma^2))."""
    z = np.atleast_2d(np.asarray(z, dtype=float))
    lebesgue = (2.0 * np.pi) ** (model.dim / 2.0) * sigma ** model.dim
    return lebesgue / measure_normalization(model) * np.exp(-0.5 * sigma ** 2 * np.sum(z * z, -1))


def _as_points(model, z):
    if isinstance(z, CartanPoint):
        return np.asarray(z.coords)[None, :], True
    z = np.asarray(z, dtype=float)
    if z.ndim == 0 or (z.ndim == 1 and model.rank != 1):
        return np.asarray(as_cartan(z).coords)[None, :], True
    if z.ndim == 1:
        return z[:, None], False
    return z, False


def _node_count(base, freq, radius):
    return max(int(base), int(ceil(NODES_PER_OSCILLATION * freq * radius)))


def _kernel_integral(model, points, values, nodes, weights, const):
    out = np.empty(len(points))
    step = max(1, _CHUNK // max(1, len(nodes)))
    wv = weights * values * density(model, nodes)
    for i in range(0, len(points), step):
        block = points[i:i + step]
        ker = chamber_kernel(model, block[:, None, :], nodes[None, :, :])
        out[i:i + step] = const * (ker @ wv)
    return out


def fourier_transform(model, xi, z, quad_order=DEFAULT_QUAD_ORDER):
    """Transform of the invariant function ``xi`` at chamber point(s) ``z``.

    Tensor Gauss-Legendre on [0, R]^r with at least ``quad_order`` nodes per
    axis, more when |z| R calls for it.
    """
    pts, scalar = _as_points(model, z)
    zmax = float(np.max(pts)) if pts.size else 0.0
    n = _node_count(quad_order, zmax, xi.support_radius)
    nodes, weights = tensor_nodes(gauss_legendre(n, 0.0, xi.support_radius), model.rank)
    out = _kernel_integral(model, pts, xi(nodes), nodes, weights, 1.0)
    return float(out[0]) if scalar else out


@lru_cache(maxsize=None)
def _factor_inverse_constant(dim, order=DEFAULT_QUAD_ORDER):
    # Gaussian round trip on one factor: c * int ghat(z) z^(D-1) dz = g(0) = 1.
    model = make_sphere(dim)
    g = gaussian_profile(model, 1.0, cutoff=9.0)
    zrule = gauss_legendre(order, 0.0, 9.0)
    ghat = fourier_transform(model, g, zrule.nodes, quad_order=order)
    raw = np.sum(zrule.weights * ghat * zrule.nodes ** (dim - 1))
    return float(1.0 / raw)


def inverse_constant(model):
    """Inversion constant of the model, calibrated by Gaussian round trips per factor."""
    return float(np.prod([_factor_inverse_constant(f.dim) for f in model.factors]))


def inverse_constant_exact(model):
    """Closed-form counterpart: prod_f |S^(D_f-1)|^2 / (2 pi)^D_f."""
    return float(np.prod([sphere_area(f.dim - 1) ** 2 / (2 * np.pi) ** f.dim
                          for f in model.factors]))


def inverse_transform(model, xhat, x, quad_order=DEFAULT_QUAD_ORDER):
    """Inverse transform of ``xhat`` (truncated at its support radius) at point(s) ``x``."""
    pts, scalar = _as_points(model, x)
    zmax = xhat.support_radius
    freq = max(float(np.max(pts)) if pts.size else 0.0, xhat.bandwidth or 0.0)
    n = _node_count(quad_order, zmax, freq)
    nodes, weights = tensor_nodes(gauss_legendre(n, 0.0, zmax), model.rank)
    out = _kernel_integral(model, pts, xhat(nodes), nodes, weights, inverse_constant(model))
    return float(out[0]) if scalar else out


def truncation_radius(model, xi, threshold=TRUNCATION_THRESHOLD, quad_order=DEFAULT_QUAD_ORDER):
    """Frequency beyond which |xi_hat| * density stays below ``threshold``.

    Scanned along each chamber axis (other coordinates zero) on a grid of
    step pi / (4 R) in blocks; the scan stops once a block lies wholly below
    the threshold and past twice the last exceedance, or at ``SCAN_CAP / R``.
    """
    radius = xi.support_radius
    step = np.pi / (4.0 * radius)
    zs = np.arange(0.0, SCAN_CAP / radius + step, step)
    block = 64
    last = 0.0
    for j in range(model.rank):
        last_j = 0.0
        for start in range(0, len(zs), block):
            zb = zs[start:start + block]
            pts = np.zeros((len(zb), model.rank))
            pts[:, j] = zb
            vals = np.abs(fourier_transform(model, xi, pts, quad_order=quad_order))
            above = np.nonzero(vals * zb ** model.factors[j].multiplicity >= threshold)[0]
            if above.size:
                last_j = zb[above[-1]] + step
            elif zb[0] > 2.0 * last_j:
                break
        last = max(last, last_j)
    return float(max(last, step))


def transform_profile(model, xi, threshold=TRUNCATION_THRESHOLD, quad_order=DEFAULT_QUAD_ORDER):
    """The transform of ``xi`` as a RadialFunction, truncated per ``truncation_radius``."""
    zmax = truncation_radius(model, xi, threshold, quad_order)
    prof = lambda z: fourier_transform(model, xi, z, quad_order=quad_order)
    return RadialFunction(model, prof, zmax, bandwidth=xi.support_radius,
                          label=f"transform of {xi.label}")


def round_trip(model, xi, points, quad_order=DEFAULT_QUAD_ORDER):
    """inverse(transform(xi)) at ``points``."""
    return inverse_transform(model, transform_profile(model, xi, quad_order=quad_order),
                             points, quad_order=quad_order)
