import numpy as np
import pytest

from transference.fourier import (RadialFunction, fourier_transform, gaussian_profile,
                                  gaussian_transform_exact, inverse_constant,
                                  inverse_constant_exact, inverse_transform, radial_mass,
                                  round_trip, smooth_bump, transform_profile, truncation_radius)
from transference.model import make_product, make_sphere, make_su2
from transference.special import gauss_legendre


def cartesian_transform_2d(profile, radius, z, n=320):
    """Brute-force transform on R^2 with the measure dx / (2 pi)."""
    rule = gauss_legendre(n, -radius, radius)
    x1, x2 = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    w = np.outer(rule.weights, rule.weights)
    r = np.hypot(x1, x2)
    vals = np.where(r < radius, profile(r[..., None]), 0.0)
    return np.array([np.sum(w * vals * np.cos(zz * x1)) for zz in np.atleast_1d(z)]) / (2 * np.pi)


@pytest.mark.parametrize("model", [make_sphere(2), make_su2(), make_sphere(4),
                                   make_product(make_sphere(2), make_su2())],
                         ids=["s2", "su2", "s4", "s2xsu2"])
def test_unit_mass_bump(model):
    bump = smooth_bump(model, 0.5)
    assert radial_mass(model, bump) == pytest.approx(1.0, abs=1e-12)
    assert fourier_transform(model, bump, np.zeros(model.rank)) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_closed_form_su2(su2):
    g = gaussian_profile(su2)
    z = np.linspace(0, 6, 61)
    err = np.abs(fourier_transform(su2, g, z) - gaussian_transform_exact(su2, 1.0, z[:, None]))
    assert err.max() < 1e-6


def test_gaussian_closed_form_other_models():
    for model in (make_sphere(2), make_sphere(5), make_product(make_sphere(2), make_su2())):
        g = gaussian_profile(model, sigma=0.7)
        z = np.random.default_rng(0).uniform(0, 4, size=(20, model.rank))
        err = np.abs(fourier_transform(model, g, z) - gaussian_transform_exact(model, 0.7, z))
        assert err.max() < 1e-6


def test_four_sigma_truncation_is_not_closed_form(su2):
    # the 4 sigma cut loses about 1e-3 of the mass, far above 1e-6
    g4 = gaussian_profile(su2, cutoff=4.0)
    err = abs(fourier_transform(su2, g4, 0.0) - gaussian_transform_exact(su2, 1.0, [[0.0]])[0])
    assert 1e-4 < err < 1e-2


def test_matches_cartesian_oracle(s2):
    bump = smooth_bump(s2, 0.6)
    z = np.array([0.0, 0.7, 2.0, 5.0, 11.0])
    oracle = cartesian_transform_2d(bump.profile, 0.6, z)
    assert np.max(np.abs(fourier_transform(s2, bump, z) - oracle)) < 1e-6
    g = gaussian_profile(s2, 0.5, frequency=3.0)
    oracle = cartesian_transform_2d(g.profile, g.support_radius, z, n=400)
    assert np.max(np.abs(fourier_transform(s2, g, z) - oracle)) < 1e-6


def test_inverse_constants():
    for model in (make_sphere(2), make_su2(), make_sphere(5),
                  make_product(make_sphere(2), make_su2())):
        assert inverse_constant(model) == pytest.approx(inverse_constant_exact(model), rel=1e-10)
    assert inverse_constant(make_su2()) == pytest.approx(2 / np.pi, rel=1e-10)
    assert inverse_constant(make_sphere(2)) == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("model", [make_sphere(2), make_su2()], ids=["s2", "su2"])
def test_bump_round_trip(model):
    bump = smooth_bump(model, 0.5)
    pts = np.linspace(0, 0.5, 41)[:, None]
    assert np.max(np.abs(round_trip(model, bump, pts) - bump(pts))) < 1e-5


def test_gaussian_round_trip_su2(su2):
    g = gaussian_profile(su2)
    ghat = RadialFunction(su2, lambda z: gaussian_transform_exact(su2, 1.0, z), 9.0)
    pts = np.linspace(0, 4, 21)[:, None]
    assert np.max(np.abs(inverse_transform(su2, ghat, pts) - g(pts))) < 1e-6


def test_zero_inverse(su2):
    zero = RadialFunction(su2, lambda z: np.zeros(z.shape[:-1]), 10.0)
    assert np.all(inverse_transform(su2, zero, np.linspace(0, 1, 5)[:, None]) == 0)


@pytest.mark.parametrize("model", [make_sphere(2), make_su2(), make_sphere(4)],
                         ids=["s2", "su2", "s4"])
def test_dilation_homogeneity(model):
    bump = smooth_bump(model, 0.5)
    z = np.linspace(0, 12, 25)
    for s in (0.5, 1.7):
        dilated = RadialFunction(model, lambda h, s=s: bump.profile(h / s), 0.5 * s)
        lhs = fourier_transform(model, dilated, z)
        rhs = s ** model.dim * fourier_transform(model, bump, s * z)
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_positive_profile_bounded_by_mass():
    for model in (make_sphere(2), make_su2(), make_product(make_sphere(2), make_sphere(2))):
        bump = smooth_bump(model, 0.5)
        z = np.random.default_rng(2).uniform(0, 40, size=(60, model.rank))
        assert np.all(np.abs(fourier_transform(model, bump, z)) <= 1.0 + 1e-12)


def test_truncation_radius(s2):
    bump = smooth_bump(s2, 0.5)
    zmax = truncation_radius(s2, bump)
    far = np.linspace(zmax, 2 * zmax, 50)
    assert np.all(np.abs(fourier_transform(s2, bump, far)) * far < 1e-10)
    prof = transform_profile(s2, bump)
    assert prof.support_radius == zmax and prof.bandwidth == 0.5


def test_from_csv(tmp_path, s2):
    bump = smooth_bump(s2, 0.5)
    r = np.linspace(0, 0.5, 401)
    path = tmp_path / "bump.csv"
    path.write_text("radius,value\n" + "".join(f"{float(a)!r},{float(b)!r}\n" for a, b in
                                               zip(r, bump(r[:, None]))))
    loaded = RadialFunction.from_csv(s2, path)
    assert loaded.support_radius == 0.5
    z = np.array([0.0, 1.0, 4.0])
    assert np.max(np.abs(fourier_transform(s2, loaded, z) - fourier_transform(s2, bump, z))) < 1e-6


def test_from_csv_errors(tmp_path, s2, s2xs2):
    bad = tmp_path / "bad.csv"
    bad.write_text("radius,value\n0.0,abc\n")
    with pytest.raises(ValueError):
        RadialFunction.from_csv(s2, bad)
    empty = tmp_path / "empty.csv"
    empty.write_text("radius,value\n")
    with pytest.raises(ValueError):
        RadialFunction.from_csv(s2, empty)
    with pytest.raises(ValueError):
        RadialFunction.from_csv(s2xs2, bad)


def test_from_samples_rank_two(s2xs2):
    g = gaussian_profile(s2xs2, 0.3, cutoff=4.0)
    r = np.linspace(0, 1.2, 121)
    grid = np.stack(np.meshgrid(r, r, indexing="ij"), axis=-1)
    sampled = RadialFunction.from_samples(s2xs2, r, g(grid))
    pts = np.random.default_rng(4).uniform(0, 1.2, size=(50, 2))
    assert np.max(np.abs(sampled(pts) - g(pts))) < 1e-4
