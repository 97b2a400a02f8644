"""Numerical transference of spherical multipliers on compact symmetric spaces.

Spheres S^d, the group SU(2) and their products are realized concretely;
spherical functions contract to generalized Bessel kernels, and multipliers
pass between the compact space and its flat tangent model.
"""

from .contraction import change_of_variable_check, floor_weight, jacobian
from .convergence import ConvergenceReport, fit_loglog_slope
from .fourier import (RadialFunction, fourier_transform, gaussian_profile,
                      gaussian_transform_exact, inverse_constant, inverse_transform, round_trip,
                      smooth_bump, transform_profile, truncation_radius)
from .model import (CartanPoint, SymmetricSpaceModel, WeightPoint, density, dim_scaling_limit,
                    make_product, make_sphere, make_su2, model_from_name, weyl_dim)
from .norms import (NormEstimate, l2_norm, lp_lower_bound_flat, lp_lower_bound_spherical,
                    transference_norm_report)
from .spherical import exp_point, gen_bessel, lemma_limit_check, phi, phi_pair
from .transfer import (MultiplierFamily, backward_limit_check, backward_mt, dilation_family,
                       forward_limit, gaussian_regularize)

__version__ = "0.1.0"
