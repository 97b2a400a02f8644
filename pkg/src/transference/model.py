"""Structural data of the built-in compact symmetric spaces.

Every built-in model is a product of rank-one factors (spheres S^d and the
group SU(2)).  Chamber and weight coordinates are real vectors in the dual
basis H_1, ..., H_r; the pairing is calibrated so the chamber coordinate of
each factor is its geodesic angle.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

import numpy as np

from .special import sinc

DEFAULT_RADIUS_FRACTION = 0.45


class InvalidModelError(ValueError):
    pass


class ChartError(ValueError):
    """A point lies outside the exponential chart."""


@dataclass(frozen=True)
class WeightPoint:
    coords: tuple

    def __post_init__(self):
        c = tuple(self.coords)
        for v in c:
            if int(v) != v or v < 0:
                raise ValueError(f"weight coordinates must be nonnegative integers: {c}")
        object.__setattr__(self, "coords", tuple(int(v) for v in c))

    @property
    def cartan(self):
        """The Cartan point H_lambda with the same coordinates."""
        return CartanPoint(tuple(float(v) for v in self.coords))


@dataclass(frozen=True)
class CartanPoint:
    coords: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.coords))
        if any(v < 0 or not np.isfinite(v) for v in c):
            raise ValueError(f"chamber coordinates must be finite and >= 0: {c}")
        object.__setattr__(self, "coords", c)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)


def as_weight(w):
    if isinstance(w, WeightPoint):
        return w
    return WeightPoint(tuple(np.atleast_1d(w).tolist()))


def as_cartan(z):
    if isinstance(z, CartanPoint):
        return z
    return CartanPoint(tuple(np.atleast_1d(np.asarray(z, dtype=float)).tolist()))


@dataclass(frozen=True)
class Root:
    """A positive restricted root with its multiplicity.

    ``delta_pairings`` lists <beta, delta> for the ``multiplicity`` roots
    beta of the complexified algebra that restrict to this one.  They
    enter the Weyl dimension formula individually.
    """
    coeffs: tuple
    multiplicity: int
    delta_pairings: tuple

    def __call__(self, h):
        return float(np.dot(self.coeffs, h))


@dataclass(frozen=True)
class RankOneFactor:
    kind: str           # "sphere" or "su2"
    dim: int            # D of the factor
    multiplicity: int
    delta_pairings: tuple
    chamber_radius: float

    @property
    def gegenbauer_index(self):
        return (self.dim - 1) / 2.0

    @property
    def bessel_order(self):
        return (self.dim - 2) / 2.0

    @property
    def label(self):
        return "su2" if self.kind == "su2" else f"sphere:{self.dim}"


@dataclass(frozen=True)
class SymmetricSpaceModel:
    name: str
    factors: tuple
    roots: tuple = field(init=False)

    def __post_init__(self):
        r = len(self.factors)
        roots = []
        for j, f in enumerate(self.factors):
            coeffs = tuple(1 if i == j else 0 for i in range(r))
            roots.append(Root(coeffs, f.multiplicity, f.delta_pairings))
        object.__setattr__(self, "roots", tuple(roots))
        self._check()

    def _check(self):
        if self.dim != self.rank + sum(a.multiplicity for a in self.roots):
            raise InvalidModelError("D != r + |Phi+|")
        for f in self.factors:
            if f.chamber_radius <= 0:
                raise InvalidModelError("chamber radius must be positive")
            theta = np.linspace(0.0, f.chamber_radius, 257)
            jac = sinc(theta) ** f.multiplicity
            if not (np.all(jac > 0) and np.all(jac <= 1.0)):
                raise InvalidModelError(f"Jacobian leaves (0, 1] on the chart of {f.label}")

    @property
    def rank(self):
        return len(self.factors)

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    @property
    def positive_root_count(self):
        """|Phi+| counted with multiplicity."""
        return sum(a.multiplicity for a in self.roots)

    @property
    def delta(self):
        """Half-sum of the positive restricted roots, with multiplicity."""
        vec = np.zeros(self.rank)
        for a in self.roots:
            vec += 0.5 * a.multiplicity * np.asarray(a.coeffs, dtype=float)
        return tuple(vec.tolist())

    @property
    def chamber_radius(self):
        return min(f.chamber_radius for f in self.factors)

    @property
    def calibration(self):
        return (1.0,) * self.rank

    @property
    def factor_slices(self):
        """Slices of the full coordinate vector belonging to each factor."""
        out, start = [], 0
        for f in self.factors:
            out.append(slice(start, start + f.dim))
            start += f.dim
        return tuple(out)


def _sphere_pairings(d):
    # so(d+1) positive roots not vanishing on a = R e_1, paired with delta.
    if d % 2 == 0:
        k = d // 2  # B_k
        vals = [Fraction(j - 1) for j in range(2, k + 1)]
        vals += [Fraction(2 * k - j) for j in range(2, k + 1)]
        vals.append(Fraction(2 * k - 1, 2))
    else:
        k = (d + 1) // 2  # D_k
        vals = [Fraction(j - 1) for j in range(2, k + 1)]
        vals += [Fraction(2 * k - 1 - j) for j in range(2, k + 1)]
    return tuple(sorted(vals))


def make_sphere(d, chamber_radius=None):
    """S^d = SO(d+1)/SO(d): rank one, one root of multiplicity d-1."""
    if int(d) != d or d < 2:
        raise InvalidModelError(f"sphere dimension must be an integer >= 2, got {d}")
    d = int(d)
    radius = DEFAULT_RADIUS_FRACTION * np.pi if chamber_radius is None else chamber_radius
    factor = RankOneFactor("sphere", d, d - 1, _sphere_pairings(d), float(radius))
    return SymmetricSpaceModel(f"sphere:{d}", (factor,))


def make_su2(chamber_radius=None):
    """The group case (SU(2) x SU(2)) / diag, realized on unit quaternions."""
    radius = DEFAULT_RADIUS_FRACTION * np.pi if chamber_radius is None else chamber_radius
    factor = RankOneFactor("su2", 3, 2, (Fraction(1), Fraction(1)), float(radius))
    return SymmetricSpaceModel("su2", (factor,))


def make_product(a, b):
    return SymmetricSpaceModel(f"product:{a.name},{b.name}", a.factors + b.factors)


def model_from_name(name):
    """Parse ``sphere:d``, ``su2`` or ``product:<a>,<b>``."""
    name = name.strip()
    if name.startswith("product:"):
        parts = name[len("product:"):].split(",")
        if len(parts) != 2:
            raise InvalidModelError(f"product needs exactly two factors: {name!r}")
        return make_product(model_from_name(parts[0]), model_from_name(parts[1]))
    if name == "su2":
        return make_su2()
    if name.startswith("sphere:"):
        try:
            d = int(name[len("sphere:"):])
        except ValueError:
            raise InvalidModelError(f"bad sphere dimension in {name!r}") from None
        return make_sphere(d)
    raise InvalidModelError(f"unknown model {name!r}")


def weyl_dim(model, w):
    """Degree of the class-1 representation with highest weight ``w``.

    Exact rational arithmetic; returns an int whenever the product is
    integral (always, for the built-in models).
    """
    n = as_weight(w).coords
    if len(n) != model.rank:
        raise ValueError("weight rank does not match model")
    value = Fraction(1)
    for a in model.roots:
        lam = sum(Fraction(c) * k for c, k in zip(a.coeffs, n))
        for c in a.delta_pairings:
            value *= (lam + c) / c
    return int(value) if value.denominator == 1 else float(value)


def density(model, h):
    """Polar density prod_alpha alpha(H)^m_alpha; vectorized over h[..., r]."""
    h = np.asarray(h, dtype=float)
    scalar = h.ndim <= 1 and model.rank == h.size
    h = h.reshape(-1, model.rank) if scalar else h
    out = np.ones(h.shape[:-1])
    for a in model.roots:
        out = out * np.abs(h @ np.asarray(a.coeffs, dtype=float)) ** a.multiplicity
    return float(out[0]) if scalar else out


def dim_scaling_limit(model, z):
    """lim_t d_{[tZ]} / t^{|Phi+|}; zero on the chamber walls."""
    z = np.asarray(as_cartan(z).coords)
    value = 1.0
    for a in model.roots:
        az = a(z)
        for c in a.delta_pairings:
            value *= az / float(c)
    return value
