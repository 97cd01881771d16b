import logging
from collections import OrderedDict
import numpy as np
from scipy.special import expit
from schrolab.exceptions import SchrolabParameterError
from schrolab.discretization import (
    build_grid, rescale_grid, assemble_operator)
from schrolab.spectrum import solve_spectrum
from schrolab.utils import lp_norm, parallel_map
from .resolvent import solve_resolvent
from .kernel import GROWTH_TOL

logger = logging.getLogger('schrolab')


def default_f_family():
    """
    The radial test profiles of the weighted estimates: Gaussian bumps at
    shifted radii, a decaying oscillation and a smoothed plateau
    """
    return OrderedDict([
        ('bump-0', lambda r: np.exp(-r ** 2)),
        ('bump-2', lambda r: np.exp(-(r - 2.0) ** 2)),
        ('bump-5', lambda r: np.exp(-(r - 5.0) ** 2)),
        ('oscillatory', lambda r: np.cos(2.0 * np.pi * r / 3.0) *
         np.exp(-r / 3.0)),
        ('plateau', lambda r: expit(4.0 * (3.0 - r)))])


class WeightedEstimateSpec(object):
    """
    Settings of the weighted a-priori estimate study

    Parameters
    ----------
    gammas : list[float] | None
        Exponents of the |x|^gamma weight, within [0, beta]. Defaults to
        (0, beta / 2, beta)
    p : float | None
        Lebesgue index of the norms, by default the operator's
    f_family : dict[str, callable] | None
        Named radial right-hand sides, see default_f_family
    domains : list[float]
        Truncation radii, each compared with the previous one
    n : int
        Interior nodes of the grid on the first domain, later domains keep
        its local spacing
    grading : float
        Grading of the grids
    """

    def __init__(self, gammas=None, p=None, f_family=None,
                 domains=(40.0, 80.0), n=400, grading=2.0):
        if f_family is None:
            f_family = default_f_family()
        if not len(f_family):
            raise SchrolabParameterError(
                "Weighted estimates need at least one right-hand side")
        if len(domains) < 2:
            raise SchrolabParameterError(
                "Weighted estimates need at least two domains to measure "
                "growth ({})".format(domains))
        if p is not None and not p > 1.0:
            raise SchrolabParameterError(
                "Lebesgue index must be greater than 1 ({})".format(p))
        self.gammas = None if gammas is None else list(gammas)
        self.p = p
        self.f_family = OrderedDict(f_family)
        self.domains = sorted(domains)
        self.n = n
        self.grading = grading

    def __repr__(self):
        return "{}(gammas={}, p={}, f_family={}, domains={})".format(
            type(self).__name__, self.gammas, self.p,
            list(self.f_family), self.domains)

    def resolve(self, params):
        """
        Returns the exponents and Lebesgue index for 'params', checking the
        exponents lie in [0, beta]
        """
        gammas = self.gammas
        if gammas is None:
            gammas = [0.0, 0.5 * params.beta, params.beta]
        for gamma in gammas:
            if not 0.0 <= gamma <= params.beta:
                raise SchrolabParameterError(
                    "Weight exponent {} outside [0, beta={}]".format(
                        gamma, params.beta))
        return gammas, self.p if self.p is not None else params.p


def estimate_names(gammas):
    return (['weight-{:g}'.format(g) for g in gammas] +
            ['potential', 'gradient', 'lower-order'])


def estimate_ratios(op, f, gammas, p):
    """
    Solves A u = f and returns the ratios of the weighted estimates in
    L^p(r^(N-1) dr)

    Parameters
    ----------
    op : DiscreteOperator
        The operator A (weighted measure)
    f : np.ndarray
        Right-hand side at the grid nodes
    gammas : list[float]
        Exponents of the |x|^gamma weights
    p : float
        Lebesgue index

    Returns
    -------
    ratios : OrderedDict[str, float]
        |r^gamma u| / |f| per gamma, |V u| / |A u|, and
        |(1 + r^(alpha-1)) u'| and |(1 + r^(alpha-2)) u| over
        |A u| + |u|
    """
    params = op.params
    r = op.nodes
    weights = op.grid.control_volumes
    u = solve_resolvent(op, 0.0, -f)

    def norm(values):
        return lp_norm(values, weights, p)

    f_norm = norm(f)
    u_norm = norm(u)
    ratios = OrderedDict()
    for gamma in gammas:
        ratios['weight-{:g}'.format(gamma)] = norm(r ** gamma * u) / f_norm
    ratios['potential'] = norm(params.V(r) * u) / f_norm
    du = np.gradient(u, r)
    ratios['gradient'] = (norm((1.0 + r ** (params.alpha - 1.0)) * du) /
                          (f_norm + u_norm))
    ratios['lower-order'] = (norm((1.0 + r ** (params.alpha - 2.0)) * u) /
                             (f_norm + u_norm))
    return ratios


class WeightedEstimateReport(object):
    """
    Ratios of the weighted estimates for every right-hand side and domain.
    The constants are existential, so the sup ratios are only reported as
    bounded (surrogate) when they stop growing under domain doubling

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    gammas : list[float]
        Weight exponents
    p : float
        Lebesgue index
    ratios : dict[float, dict[str, dict[str, float]]]
        Ratio per domain, estimate and right-hand side
    spectral_bounds : dict[float, dict[str, tuple(float, float)]]
        For p = 2, the gamma = 0 ratio and its bound 1 / |lambda_0| in the
        weighted and in the Lebesgue measure, per domain
    """

    label = 'bounded-surrogate'

    def __init__(self, params, gammas, p, ratios, spectral_bounds):
        self.params = params
        self.gammas = gammas
        self.p = p
        self.ratios = ratios
        self.spectral_bounds = spectral_bounds

    def __repr__(self):
        return "{}(p={}, growth={})".format(type(self).__name__, self.p,
                                           self.growth)

    @property
    def domains(self):
        return sorted(self.ratios)

    @property
    def estimates(self):
        return estimate_names(self.gammas)

    def sup_ratios(self, R):
        return OrderedDict((e, max(self.ratios[R][e].values()))
                           for e in self.estimates)

    @property
    def growth(self):
        """
        Largest relative growth of each sup ratio between consecutive
        domains
        """
        domains = self.domains
        growth = OrderedDict()
        for e in self.estimates:
            sups = [self.sup_ratios(R)[e] for R in domains]
            growth[e] = max(b / a - 1.0 for a, b in zip(sups[:-1], sups[1:]))
        return growth

    @property
    def bounded(self):
        return all(g < GROWTH_TOL for g in self.growth.values())

    @property
    def spectral_bound_holds(self):
        return all(ratio <= bound * (1.0 + 1e-10)
                   for bounds in self.spectral_bounds.values()
                   for ratio, bound in bounds.values())

    def table(self):
        "Rows (R, estimate, f, ratio)"
        return [(R, e, name, value)
                for R in self.domains
                for e in self.estimates
                for name, value in self.ratios[R][e].items()]


def _spectral_bounds(op, f_values):
    params = op.params
    lebesgue = assemble_operator(op.grid, params, weighted=False)
    bounds = {}
    for name, o in (('weighted', op), ('lebesgue', lebesgue)):
        lambda0 = float(solve_spectrum(o, k=1).eigenvalues[0])
        worst = 0.0
        for f in f_values:
            u = solve_resolvent(op, 0.0, -f)
            worst = max(worst, np.sqrt(np.dot(o.mass, u ** 2) /
                                       np.dot(o.mass, f ** 2)))
        bounds[name] = (float(worst), 1.0 / abs(lambda0))
    return bounds


def weighted_estimate_report(params, spec, jobs=1):
    """
    Evaluates the weighted estimates for every right-hand side of the
    family on every domain of 'spec'

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    spec : WeightedEstimateSpec
        Exponents, index, family and domains
    jobs : int
        Worker threads the (domain, right-hand side) cells are distributed
        over

    Returns
    -------
    report : WeightedEstimateReport
        Ratios per domain, their growth and, for p = 2, the spectral bound
        of the gamma = 0 ratio
    """
    gammas, p = spec.resolve(params)
    base = build_grid(spec.domains[0], spec.n, spec.grading, N=params.N)
    ops = OrderedDict()
    for R in spec.domains:
        grid = (base if R == spec.domains[0]
                else rescale_grid(base, R / spec.domains[0]))
        ops[R] = assemble_operator(grid, params)
    cells = [(R, name) for R in spec.domains for name in spec.f_family]

    def evaluate(cell):
        R, name = cell
        op = ops[R]
        return estimate_ratios(op, spec.f_family[name](op.nodes), gammas, p)

    results = dict(zip(cells, parallel_map(evaluate, cells, jobs=jobs)))
    ratios = OrderedDict()
    for R in spec.domains:
        ratios[R] = OrderedDict(
            (e, OrderedDict((name, results[(R, name)][e])
                            for name in spec.f_family))
            for e in estimate_names(gammas))
    spectral_bounds = {}
    if p == 2.0:
        for R, op in ops.items():
            spectral_bounds[R] = _spectral_bounds(
                op, [f(op.nodes) for f in spec.f_family.values()])
    report = WeightedEstimateReport(params, gammas, p, ratios,
                                    spectral_bounds)
    logger.info("Weighted estimate growth for %s (p=%g): %s", params, p,
                dict(report.growth))
    return report
