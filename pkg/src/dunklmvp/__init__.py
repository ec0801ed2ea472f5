"""Dunkl analysis on the reflection group Z_2^d.

Exact polynomial algebra for Dunkl operators, the intertwining operator and
the Dunkl translation; numerical translations and spherical means for
black-box functions; tools around the mean value characterisation of
Δ_k-harmonic functions (mollifiers, fundamental solution, a counterexample
on a non-symmetric domain).
"""

from .core import (BlackBoxFunction, RootSystemConfig, dunkl_laplacian_numeric,
                   dunkl_laplacian_poly, dunkl_op, green_check, load_config, make_config, weight)
from .errors import (ConfigError, DunklError, GeometryError, PolynomialSyntaxError,
                     QuadratureError, SingularityError)
from .functions import RadialProfile, bump, bump_profile, gaussian_profile, indicator, plateau
from .harmonic import (CounterexampleReport, FundamentalSolution, build_counterexample,
                       fundamental_check, gen_dunkl_harmonic, newton_potential_1d)
from .intertwining import (dunkl_kernel, sphere_moment, translate_poly, translate_poly_at,
                           vk_coefficient_closed_form, vk_inverse_poly, vk_poly)
from .meanvalue import (DomainSpec, MeanValueReport, ddt_identity_residual, mollify,
                        parse_domain, radial_lemma_residual, spherical_mean_numeric,
                        spherical_mean_poly, verify_mvp)
from .polyalg import Polynomial, format_poly, parse_poly
from .rank1 import spherical_mean_1d, translate_1d

__all__ = [
    "BlackBoxFunction", "ConfigError", "CounterexampleReport", "DomainSpec", "DunklError",
    "FundamentalSolution", "GeometryError", "MeanValueReport", "Polynomial",
    "PolynomialSyntaxError", "QuadratureError", "RadialProfile", "RootSystemConfig",
    "SingularityError", "build_counterexample", "bump", "bump_profile", "ddt_identity_residual",
    "dunkl_kernel", "dunkl_laplacian_numeric", "dunkl_laplacian_poly", "dunkl_op",
    "format_poly", "fundamental_check", "gaussian_profile", "gen_dunkl_harmonic", "green_check",
    "indicator", "load_config", "make_config", "mollify", "newton_potential_1d",
    "parse_domain", "parse_poly", "plateau", "radial_lemma_residual", "sphere_moment",
    "spherical_mean_1d", "spherical_mean_numeric", "spherical_mean_poly", "translate_1d",
    "translate_poly", "translate_poly_at", "verify_mvp", "vk_coefficient_closed_form",
    "vk_inverse_poly", "vk_poly", "weight",
]
