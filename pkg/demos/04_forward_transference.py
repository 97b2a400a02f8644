# From spherical multipliers to a flat one: sample m_t at [tZ] and let t grow.
import numpy as np

from transference import dilation_family, forward_limit, gaussian_regularize, make_su2

su2 = make_su2()


def m(z):
    z = np.asarray(z, dtype=float)
    return np.exp(-np.sum(z * z, axis=-1))


fam = dilation_family(su2, m)
t_grid = np.geomspace(10, 1e6, 6)
z = np.pi / 3
rep = forward_limit(su2, fam, z, t_grid, reference=m(z))
for t, err, val in rep.rows():
    print(f"t={t:10.0f}  m_t([tZ])={val:.9f}  error={err:.2e}")
print("slope", rep.slope)

# The Gaussian regularization multiplies the limit by exp(-eps |Z|^2)
reg = gaussian_regularize(fam, 0.5)
rep = forward_limit(su2, reg, z, t_grid, reference=np.exp(-1.5 * z * z))
print("regularized limit", rep.limit, "expected", np.exp(-1.5 * z * z))
