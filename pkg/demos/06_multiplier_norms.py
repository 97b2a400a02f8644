# Norms of multipliers on both sides.  p = 2 is exact; other p are lower bounds.
import numpy as np

from transference import (l2_norm, lp_lower_bound_flat, lp_lower_bound_spherical,
                          make_sphere, make_su2, smooth_bump, transference_norm_report)

s2 = make_sphere(2)


def cutoff(z):
    r = np.sqrt(np.sum(np.asarray(z, dtype=float) ** 2, axis=-1))
    return 1.0 / (1.0 + np.exp((r - 2.0) / 0.25))


print("sup of the cutoff:", l2_norm(cutoff, np.linspace(0, 10, 101)[:, None]).value)
for p in (1.5, 2.0, 3.0):
    est = lp_lower_bound_flat(s2, cutoff, p)
    print(f"flat p={p}: >= {est.value:.6f}  ({est.witness})")

# A sign-alternating multiplier on the sphere: the constant function is an eigenfunction
alt = lambda n: (-1.0) ** n[0]
print("spherical (-1)^n, p=3:", lp_lower_bound_spherical(s2, alt, 3.0, 10).value)

su2 = make_su2()
rep = transference_norm_report(su2, smooth_bump(su2, 0.5), 2.0, [20, 80, 320],
                               [0.0, 0.5, 1.0, 2.0])
print("sup |xi_hat| =", rep["flat_sup"])
for row in rep["rows"]:
    print(f"t={row['t']:5.0f}  sup |m_t| = {row['sup_floored_mt']:.10f}")
