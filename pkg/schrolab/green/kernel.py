import logging
import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import solveh_banded
from schrolab.exceptions import (
    SchrolabUsageError, SchrolabNumericError, SchrolabPropertyError)
from schrolab.discretization import assemble_operator, rescale_grid

logger = logging.getLogger('schrolab')


# Grading needed to resolve the r^(2-N) singularity at the origin
MIN_GRADING = 2.0

# Domain-doubling growth below which a constant is reported as bounded
GROWTH_TOL = 0.1


class GreenSolution(object):
    """
    The radial Green function G(r, 0) of -(Lap - Vtilde) with a Dirichlet
    condition at the truncation radius

    Parameters
    ----------
    op : DiscreteOperator
        The Lebesgue-measure ell = 0 operator the solution was computed with
    G0 : np.ndarray
        G(r_i, 0) at the grid nodes
    flux_normalization_residual : float
        |sigma (total outgoing flux) - 1|, the error in the unit point load
    """

    def __init__(self, op, G0, flux_normalization_residual):
        self._op = op
        self._G0 = G0
        self._flux_normalization_residual = flux_normalization_residual
        self.fitted_Ck = {}

    def __repr__(self):
        return "{}(params={}, grid={})".format(
            type(self).__name__, self.params, self.grid)

    @property
    def op(self):
        return self._op

    @property
    def params(self):
        return self._op.params

    @property
    def grid(self):
        return self._op.grid

    @property
    def grid_ref(self):
        return self._op.provenance()

    @property
    def nodes(self):
        return self._op.nodes

    @property
    def G0(self):
        return self._G0

    @property
    def flux_normalization_residual(self):
        return self._flux_normalization_residual

    @property
    def newtonian_constant(self):
        "1 / ((N - 2) sigma_{N-1}), the limit of G r^(N-2) at the origin"
        N = self.params.N
        return 1.0 / ((N - 2) * self.params.sigma)

    def newtonian_kernel(self, r=None):
        if r is None:
            r = self.nodes
        return self.newtonian_constant * r ** (2.0 - self.params.N)

    def newtonian_error(self, lower=None, upper=None):
        """
        Largest relative deviation from the Newtonian kernel over the nodes
        in [lower, upper], by default the interior r <= R / 200 where the
        Dirichlet correction (r / R)^(N-2) stays below 1e-2
        """
        r = self.nodes
        if lower is None:
            lower = r[0]
        if upper is None:
            upper = 5e-3 * self.grid.R
        mask = (r >= lower) & (r <= upper)
        if not mask.any():
            raise SchrolabUsageError(
                "No grid nodes in [{}, {}]".format(lower, upper))
        return float(np.max(np.abs(self._G0[mask] /
                                   self.newtonian_kernel(r[mask]) - 1.0)))

    def near_origin_error(self):
        "Newtonian deviation over the innermost decade [r_1, 10 r_1]"
        r1 = self.nodes[0]
        return self.newtonian_error(r1, 10.0 * r1)

    @property
    def positive(self):
        return bool(np.all(self._G0 > 0.0))

    @property
    def decreasing(self):
        return bool(np.all(np.diff(self._G0) < 0.0))


def green_at_origin(params, grid):
    """
    Computes G(r, 0) by solving the Lebesgue-measure discretisation of
    -(r^(N-1) G')' + r^(N-1) Vtilde G = 0 with a unit point load
    1 / sigma_{N-1} in the innermost control volume (the flux condition
    r^(N-1) G' -> -1 / sigma_{N-1} at the origin) and G(R) = 0

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    grid : RadialGrid
        A grid with grading >= 2

    Returns
    -------
    solution : GreenSolution
        The Green function at the grid nodes
    """
    if grid.grading < MIN_GRADING:
        raise SchrolabUsageError(
            "Green function needs a grid grading of at least {} to resolve "
            "the origin ({})".format(MIN_GRADING, grid))
    op = assemble_operator(grid, params, ell=0, weighted=False)
    load = np.zeros(len(op))
    load[0] = 1.0 / params.sigma
    try:
        G0 = solveh_banded(op.negated_upper_band(0.0), load)
    except LinAlgError as e:
        raise SchrolabNumericError(
            "Green function system of {} is not positive definite: {}"
            .format(op, e), diagnostics={'grid': grid.to_dict()})
    residual = abs(params.sigma * float(np.sum(-op.matvec(G0))) - 1.0)
    if not np.all(G0 > 0.0):
        worst = int(np.argmin(G0))
        raise SchrolabPropertyError(
            worst, "Green function of {} is not positive ({} at node {})"
            .format(op, G0[worst], worst))
    logger.debug("Green function on %s, flux residual %g", grid, residual)
    return GreenSolution(op, G0, residual)


class GreenBoundReport(object):
    """
    Constants of the decay bound G(r, 0) <= C_k / ((1 + m(r) r)^k r^(N-2))
    and of its closed-form variant C_k / ((1 + r^k) r^(N-2)) on a domain
    and on the doubled domain. The constants are existential, so stability
    under doubling is the (surrogate) evidence that they are bounded
    """

    label = 'bounded-surrogate'

    def __init__(self, k_list, constants, doubled_constants, closed_form,
                 doubled_closed_form):
        self.k_list = list(k_list)
        self.constants = constants
        self.doubled_constants = doubled_constants
        self.closed_form = closed_form
        self.doubled_closed_form = doubled_closed_form

    def __repr__(self):
        return "{}(constants={}, growth={})".format(
            type(self).__name__, self.constants, self.growth)

    @property
    def growth(self):
        return {k: self.doubled_constants[k] / self.constants[k] - 1.0
                for k in self.k_list}

    @property
    def finite(self):
        return all(np.isfinite(self.constants[k]) and
                   np.isfinite(self.doubled_constants[k])
                   for k in self.k_list)

    @property
    def stable(self):
        return self.finite and all(abs(g) < GROWTH_TOL
                                   for g in self.growth.values())

    def table(self):
        return [(k, self.constants[k], self.doubled_constants[k],
                 self.growth[k], self.closed_form[k],
                 self.doubled_closed_form[k]) for k in self.k_list]


def _weighted_sups(gs, m_profile, k_list):
    r = gs.nodes
    scaled = gs.G0 * r ** (gs.params.N - 2.0)
    mr = m_profile.interpolate(r) * r
    m_form = {k: float(np.max(scaled * (1.0 + mr) ** k)) for k in k_list}
    closed = {k: float(np.max(scaled * (1.0 + r ** k))) for k in k_list}
    return m_form, closed


def verify_green_bound(gs, m_profile, k_list, doubled=None):
    """
    Fits C_k = sup_r G(r, 0) (1 + m(r) r)^k r^(N-2) for every k and
    recomputes it on the doubled domain

    Parameters
    ----------
    gs : GreenSolution
        The Green function on the base domain
    m_profile : MEstimate
        Sampled auxiliary function covering radii up to twice the domain
    k_list : list[int]
        Decay orders
    doubled : GreenSolution | None
        The Green function on the doubled domain, computed on the rescaled
        grid if not provided

    Returns
    -------
    report : GreenBoundReport
        The constants on both domains and their growth
    """
    if doubled is None:
        doubled = green_at_origin(gs.params, rescale_grid(gs.grid, 2.0))
    reach = doubled.grid.R
    if m_profile.radii[-1] < reach * (1.0 - 1e-12):
        raise SchrolabUsageError(
            "m-function profile only reaches r={}, the doubled Green domain "
            "extends to {}".format(m_profile.radii[-1], reach))
    constants, closed = _weighted_sups(gs, m_profile, k_list)
    doubled_constants, doubled_closed = _weighted_sups(doubled, m_profile,
                                                      k_list)
    gs.fitted_Ck.update(constants)
    doubled.fitted_Ck.update(doubled_constants)
    report = GreenBoundReport(k_list, constants, doubled_constants, closed,
                              doubled_closed)
    logger.info("Green bound constants %s (growth %s)", constants,
                report.growth)
    return report
