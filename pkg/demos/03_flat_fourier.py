# Fourier analysis of invariant functions on the flat model space.
import numpy as np

from transference import (fourier_transform, gaussian_profile, gaussian_transform_exact,
                          inverse_constant, make_sphere, make_su2, round_trip, smooth_bump,
                          truncation_radius)

su2 = make_su2()

# A unit-mass bump: its transform at the origin is its mass
bump = smooth_bump(su2, 0.5)
print("bump transform at 0:", fourier_transform(su2, bump, 0.0))

# Gaussians have closed-form transforms
g = gaussian_profile(su2)
z = np.linspace(0, 4, 5)
print("Gaussian, numerical:", fourier_transform(su2, g, z))
print("Gaussian, exact:    ", gaussian_transform_exact(su2, 1.0, z[:, None]))

# The inversion constant, calibrated from a Gaussian round trip
print("inverse constant su2 =", inverse_constant(su2), " (2/pi =", 2 / np.pi, ")")

# Round trip of the bump on the sphere model
s2 = make_sphere(2)
b2 = smooth_bump(s2, 0.5)
print("truncation radius:", truncation_radius(s2, b2))
pts = np.linspace(0, 0.5, 6)[:, None]
print("round-trip error:", np.abs(round_trip(s2, b2, pts) - b2(pts)).max())
