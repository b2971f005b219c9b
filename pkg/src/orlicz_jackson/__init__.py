"""Norms, best approximations, moduli of smoothness and sharp Jackson-type
constants in Musielak-Orlicz sequence spaces of Fourier coefficients."""

from .approx import best_approx, best_approx_sequence, direct_best_approx
from .config import RunConfig, load_config
from .errors import (AliasingError, ConfigError, DegenerateMeasureError, DomainError, HypothesisError,
                     NonConvergenceError, OrliczJacksonError, SolverError, WindowError)
from .inverse import (ConditionB, InverseReport, Majorant, Membership, RateReport, check_condition_B,
                      class_membership, classify_rates, inverse_bound_alpha, inverse_bound_general, inverse_bounds)
from .jackson import (DirectReport, DiscreteMeasure, IFunctional, SharpConstantResult, SharpnessResult,
                      i_functional, lp_witness, ratio_upper_bound, sharp_constant_lp, sharpness_search,
                      tabulated_constant, verify_direct)
from .orlicz import (INFINITY, NormKind, OrliczFamily, conjugate, dual_ascent, dual_feasible_value,
                     luxemburg_norm, modular, norm, norms, orlicz_norm)
from .smoothness import Multiplier, generalized_difference, modulus, modulus_curve, validate_multiplier
from .spectra import Spectrum, partial_sum, read_samples, spectrum_from_rule, spectrum_from_samples, tail

__version__ = "0.1.0"
