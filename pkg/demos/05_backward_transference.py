# From a flat kernel to spherical multipliers: m_t([tZ]) tends to xi_hat(Z).
import numpy as np

from transference import backward_limit_check, make_su2, smooth_bump

su2 = make_su2()
xi = smooth_bump(su2, 0.5)       # supported in the half-radius neighbourhood

for z in (0.0, 0.5, 1.0, 2.0):
    rep = backward_limit_check(su2, xi, z, [20, 40, 80, 160, 320])
    errs = " ".join(f"{e:.2e}" for e in rep.errors)
    print(f"z={z}: target {rep.limit:.8f}  errors {errs}  slope {rep.slope:.3f}")

# At z = 0 the spherical function is constant, so m_t equals the mass exactly.
