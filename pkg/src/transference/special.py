"""Scalar special functions and quadrature rules."""

from dataclasses import dataclass
from functools import lru_cache
from math import lgamma

import numpy as np
from scipy import special as _sp

# Below this argument the Bessel power series is used; above it scipy's jv.
BESSEL_SERIES_CUTOFF = 12.0
_BESSEL_SERIES_TERMS = 60

DEFAULT_QUAD_ORDER = 200


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple

    def integrate(self, f):
        """Apply the rule to a callable evaluated on the nodes."""
        return float(np.dot(self.weights, f(self.nodes)))


@lru_cache(maxsize=256)
def _legendre_nodes(n):
    x, w = _sp.roots_legendre(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_legendre(n, lo, hi):
    """n-point Gauss-Legendre rule on (lo, hi), exact to degree 2n-1."""
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    x, w = _legendre_nodes(int(n))
    half = 0.5 * (hi - lo)
    return QuadratureRule(nodes=half * x + 0.5 * (hi + lo), weights=half * w,
                          interval=(float(lo), float(hi)))


def gegenbauer_normalized(n, alpha, x):
    """C_n^alpha(x) / C_n^alpha(1) by the normalized three-term recurrence.

    ``alpha = 0`` is the Chebyshev limit cos(n arccos x).  Accepts scalar
    or array ``x``; returns the same shape.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if alpha <= -0.5:
        raise ValueError("alpha must exceed -1/2")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-14):
        raise ValueError("argument outside [-1, 1]")
    x = np.clip(x, -1.0, 1.0)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = x.copy()
    # g_{k+1} = (2(k+alpha) x g_k - k g_{k-1}) / (k + 2 alpha)
    for k in range(1, n):
        prev, cur = cur, (2.0 * (k + alpha) * x * cur - k * prev) / (k + 2.0 * alpha)
    return cur if cur.ndim else float(cur)


def _bessel_series(nu, x):
    # sum_k (-x^2/4)^k Gamma(nu+1) / (k! Gamma(k+nu+1))
    q = -0.25 * x * x
    term = np.ones_like(x)
    total = term.copy()
    for k in range(1, _BESSEL_SERIES_TERMS):
        term = term * q / (k * (k + nu))
        total += term
    return total


def bessel_j_normalized(nu, x):
    """Gamma(nu+1) (2/x)^nu J_nu(x), equal to 1 at the origin.

    Even in x.  Power series below ``BESSEL_SERIES_CUTOFF``, scipy's
    ``jv`` above it.
    """
    if nu < 0:
        raise ValueError("order must be nonnegative")
    x = np.abs(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    small = x < BESSEL_SERIES_CUTOFF
    out[small] = _bessel_series(nu, x[small])
    big = ~small
    if np.any(big):
        xb = x[big]
        log_scale = lgamma(nu + 1.0) + nu * np.log(2.0 / xb)
        out[big] = np.exp(log_scale) * _sp.jv(nu, xb)
    return out if out.ndim else float(out)


def sinc(x):
    """sin(x)/x with a Taylor branch near zero."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-4
    xs = x[small] ** 2
    out[small] = 1.0 - xs / 6.0 + xs * xs / 120.0
    xb = x[~small]
    out[~small] = np.sin(xb) / xb
    return out if out.ndim else float(out)


def sphere_area(k):
    """Surface area of the unit sphere S^k in R^(k+1)."""
    return 2.0 * np.pi ** ((k + 1) / 2.0) / _sp.gamma((k + 1) / 2.0)


def tensor_nodes(rule, rank):
    """Tensor-product nodes [N, rank] and weights [N] of a 1-D rule."""
    grids = np.meshgrid(*([rule.nodes] * rank), indexing="ij")
    wgrids = np.meshgrid(*([rule.weights] * rank), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    weights = np.prod([g.ravel() for g in wgrids], axis=0)
    return nodes, weights
