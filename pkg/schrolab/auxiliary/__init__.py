from .ball import (
    BallIntegralSpec, ball_integral_radial, ball_integrals, cap_fraction)
from .mfunction import (
    MEstimate, m_function, m_function_oracle, normalized_mass,
    oracle_normalized_mass, fit_m_exponent, sample_m_profile)
from .reverse_holder import (
    RHConstantReport, RHRefinementStudy, estimate_rh_constant,
    rh_refinement_study, default_samples)
