# Spherical functions on the two rank-one models and their flat limits.
import numpy as np
from scipy.special import j0

from transference import floor_weight, make_sphere, make_su2, phi

s2 = make_sphere(2)
su2 = make_su2()

# On S^2 the spherical functions are Legendre polynomials of cos(theta)
print("P_2(cos(pi/3)) =", phi(s2, 2, [np.pi / 3]))

# On SU(2) they are normalized characters sin((n+1)t) / ((n+1) sin t)
print("su2, n=1 at pi/2 =", phi(su2, 1, [np.pi / 2]))

# Contracting the chart: phi along the floored weight [tz] at theta/t
# tends to the Bessel kernel J_0(z theta).  The error halves when t doubles.
z, theta = 1.0, 0.8
for t in (50, 100, 200, 400, 800):
    n = floor_weight(t, z).weight
    val = phi(s2, n, [theta / t])
    print(f"t={t:4d}  n={n.coords[0]:4d}  P_n={val:.10f}  error={abs(val - j0(z * theta)):.2e}")

# The same limit on SU(2) is sin(z theta)/(z theta)
target = np.sin(z * theta) / (z * theta)
errs = [abs(phi(su2, floor_weight(t, z).weight, [theta / t]) - target) for t in (100, 1000, 10000)]
print("su2 errors:", ["%.2e" % e for e in errs])
