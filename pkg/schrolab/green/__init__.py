from .kernel import (
    GreenSolution, GreenBoundReport, green_at_origin, verify_green_bound)
from .resolvent import (
    solve_resolvent, resolvent_positivity, resolvent_identity_error,
    nearest_eigenvalue, eigenvalues)
from .estimates import (
    WeightedEstimateSpec, WeightedEstimateReport, weighted_estimate_report,
    estimate_ratios, default_f_family, estimate_names)
