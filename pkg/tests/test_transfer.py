import numpy as np
import pytest

from transference.contraction import floor_weight
from transference.fourier import RadialFunction, fourier_transform, gaussian_profile, smooth_bump
from transference.model import make_product, make_sphere, make_su2
from transference.transfer import (BackwardQuadrature, MultiplierFamily, backward_limit_check,
                                   backward_mt, decay_constants, dilation_family, forward_limit,
                                   gaussian_regularize)

T_GRID = [20, 40, 80, 160, 320]


def gauss(z):
    z = np.asarray(z, dtype=float)
    return np.exp(-np.sum(z * z, axis=-1))


def test_family_examples(su2):
    fam = dilation_family(su2, gauss)
    assert fam(10, 20) == pytest.approx(0.0183156389, abs=1e-10)
    const = dilation_family(su2, lambda z: 2.5)
    assert const(3.0, 17) == 2.5
    one = MultiplierFamily(lambda t, w: 1.0, "one")
    reg = gaussian_regularize(one, 1.0)
    assert reg(10, 10) == pytest.approx(np.exp(-1), abs=1e-15)
    assert reg(10, 0) == 1.0
    with pytest.raises(ValueError):
        gaussian_regularize(one, 0.0)


def test_forward_limit_constant(su2):
    rep = forward_limit(su2, MultiplierFamily(lambda t, w: 1.0), 1.3, [10, 100, 1000])
    assert rep.limit == 1.0 and np.all(rep.errors == 0) and rep.passed


def test_forward_limit_gaussian_weights(su2):
    fam = MultiplierFamily(lambda t, w: np.exp(-sum(n * n for n in w.coords) / t ** 2))
    rep = forward_limit(su2, fam, 1.0, [10.5, 100.5, 1000.5, 10000.5], reference=np.exp(-1))
    assert rep.limit == pytest.approx(0.3678794412, abs=1e-4)
    assert rep.strictly_decreasing


def test_dilation_recovers_m():
    model = make_product(make_sphere(2), make_su2())
    fam = dilation_family(model, gauss)
    grad = np.sqrt(2 / np.e)  # sup |grad exp(-|Z|^2)|
    t_grid = np.geomspace(10, 1e6, 6)
    for z in [(0.25, 1.0), (1.5, 0.5), (0.0, 2.0)]:
        rep = forward_limit(model, fam, z, t_grid, reference=gauss(z))
        assert np.all(rep.errors <= 2 * grad / t_grid)
        assert rep.errors[-1] <= 1e-6 and rep.passed


def test_regularized_limit(su2):
    eps = 0.3
    base = dilation_family(su2, lambda z: np.cos(np.sum(z)))
    reg = gaussian_regularize(base, eps)
    t_grid = np.geomspace(10, 1e6, 6)
    for z in (0.4, 1.1, 2.0):
        ref = np.exp(-eps * z * z) * np.cos(z)
        rep = forward_limit(su2, reg, z, t_grid, reference=ref)
        assert rep.errors[-1] <= 1e-6


def test_regularized_decay_bound():
    model = make_product(make_sphere(2), make_su2())
    eps = 0.5
    fam = gaussian_regularize(dilation_family(model, lambda z: 1.0), eps)
    c1, c2 = decay_constants(eps, model.rank)
    rng = np.random.default_rng(5)
    for t in (2 / eps, 7.3, 40.0, 1e3):
        for z in rng.uniform(0, 8, size=(50, 2)):
            val = fam(t, floor_weight(t, z).weight)
            assert abs(val) <= c1 * np.exp(-c2 * float(z @ z)) * (1 + 1e-12)


def test_forward_limit_grid_errors(su2):
    fam = dilation_family(su2, gauss)
    with pytest.raises(ValueError):
        forward_limit(su2, fam, 1.0, [10, 100])
    with pytest.raises(ValueError):
        forward_limit(su2, fam, 1.0, [10, 100, 50])


@pytest.mark.parametrize("model", [make_su2(), make_sphere(2),
                                   make_product(make_sphere(2), make_su2())],
                         ids=["su2", "s2", "s2xsu2"])
def test_backward_zero_frequency_exact(model):
    bump = smooth_bump(model, 0.5)
    target = fourier_transform(model, bump, np.zeros(model.rank))
    for t in (1, 20, 320):
        assert abs(backward_mt(model, bump, t, np.zeros(model.rank)) - target) <= 1e-8


def test_backward_zero_kernel(su2):
    zero = RadialFunction(su2, lambda h: np.zeros(h.shape[:-1]), 0.5)
    assert backward_mt(su2, zero, 50, 1.0) == 0.0


def test_backward_linearity(su2):
    a = smooth_bump(su2, 0.5)
    b = gaussian_profile(su2, sigma=0.1, cutoff=5.0)
    rng = np.random.default_rng(11)
    for _ in range(3):
        s, u = rng.normal(size=2)
        combo = RadialFunction(su2, lambda h: s * a.profile(h) + u * b.profile(h), 0.5)
        for t, z in ((20, 1.0), (75, 2.3)):
            lhs = backward_mt(su2, combo, t, z)
            rhs = s * backward_mt(su2, a, t, z) + u * backward_mt(su2, b, t, z)
            assert abs(lhs - rhs) < 1e-10


def test_backward_bounded_by_l1(su2, s2):
    for model in (su2, s2):
        bump = smooth_bump(model, 0.5)  # positive, so ||xi||_1 = mass = 1
        for t in (20, 80):
            for z in (0.0, 0.5, 1.0, 2.0, 5.0):
                assert abs(backward_mt(model, bump, t, z)) <= 1.0 + 1e-12


def test_backward_support_checked(su2):
    with pytest.raises(ValueError):
        backward_mt(su2, smooth_bump(su2, 1.0), 20, 1.0)
    with pytest.raises(ValueError):
        backward_mt(su2, smooth_bump(su2, 0.5), 0.5, 1.0)


@pytest.mark.parametrize("model", [make_su2(), make_sphere(2)], ids=["su2", "s2"])
def test_backward_rate(model):
    bump = smooth_bump(model, 0.5)
    for z in (0.5, 1.0, 2.0):
        rep = backward_limit_check(model, bump, z, T_GRID)
        assert rep.passed, rep.summary()


def test_backward_product_factorizes():
    s2, su2 = make_sphere(2), make_su2()
    prod = make_product(s2, su2)
    xi = smooth_bump(prod, 0.5)
    xi1, xi2 = smooth_bump(s2, 0.5), smooth_bump(su2, 0.5)
    z = np.array([1.0, 0.5])
    for t in (20, 80, 320):
        whole = backward_mt(prod, xi, t, z)
        a, b = backward_mt(s2, xi1, t, z[0]), backward_mt(su2, xi2, t, z[1])
        assert abs(whole - a * b) < 1e-12
        ta = fourier_transform(s2, xi1, z[0])
        tb = fourier_transform(su2, xi2, z[1])
        err = abs(whole - fourier_transform(prod, xi, z))
        assert err <= abs(a - ta) + abs(b - tb) + 1e-6


def test_backward_quadrature_refinement(su2):
    bump = smooth_bump(su2, 0.5)
    coarse = backward_mt(su2, bump, 80, 1.0)
    fine = backward_mt(su2, bump, 80, 1.0, BackwardQuadrature(radial=300, shell=40, angle=40))
    assert abs(coarse - fine) < 1e-8
