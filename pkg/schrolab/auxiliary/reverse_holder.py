import math
import logging
import numpy as np
from schrolab.exceptions import SchrolabParameterError
from schrolab.utils import composite_gauss_nodes
from .ball import ball_integrals, PANEL_LEVELS

logger = logging.getLogger('schrolab')


# Per-panel Gauss order of the sampled ball integrals
RH_ORDER = 16

DEFAULT_CENTER_WINDOW = (1e-2, 1e3)
DEFAULT_RADIUS_WINDOW = (1e-2, 1e3)
DEFAULT_SAMPLES = 24


class RHConstantReport(object):
    """
    Largest reverse Hoelder ratio (mean of V^q)^(1/q) / mean of V over a
    set of sampled balls, a lower bound of the class constant

    Parameters
    ----------
    q_index : float
        The index q in (1, inf]
    constant_estimate : float
        The largest sampled ratio
    sample_count : int
        Number of balls sampled
    worst_ball : tuple(float, float)
        (center radius, radius) of the ball attaining the estimate
    min_ratio : float
        The smallest sampled ratio (>= 1 by Hoelder's inequality)
    """

    def __init__(self, q_index, constant_estimate, sample_count, worst_ball,
                 min_ratio):
        self.q_index = q_index
        self.constant_estimate = constant_estimate
        self.sample_count = sample_count
        self.worst_ball = worst_ball
        self.min_ratio = min_ratio

    def __repr__(self):
        return "{}(q={}, constant_estimate={}, worst_ball={})".format(
            type(self).__name__, self.q_index, self.constant_estimate,
            self.worst_ball)


def default_samples(count=DEFAULT_SAMPLES, center_window=None,
                    radius_window=None):
    """
    Ball centers (the origin plus log-spaced radii) and log-spaced ball
    radii
    """
    clo, chi = center_window or DEFAULT_CENTER_WINDOW
    rlo, rhi = radius_window or DEFAULT_RADIUS_WINDOW
    centers = np.concatenate(([0.0], np.geomspace(clo, chi, count - 1)))
    radii = np.geomspace(rlo, rhi, count)
    return centers, radii


def estimate_rh_constant(params, q_index, centers=None, radii=None,
                         field=None, field_sup=None):
    """
    Estimates the reverse Hoelder constant of the reduced potential (or a
    radial 'field') for the index q as the largest ratio over all sampled
    balls B(x, r), |x| in 'centers', r in 'radii'. Means are taken with
    respect to the quadrature of the constant field so that constant fields
    have ratio exactly 1

    Parameters
    ----------
    params : OperatorParams
        The operator parameters (dimension and default field)
    q_index : float
        Index q > 1, math.inf for the L^inf norm over the ball
    centers : list[float] | None
        Center radii |x|, see default_samples
    radii : list[float] | None
        Ball radii, see default_samples
    field : callable | None
        Radial field replacing the reduced potential
    field_sup : callable | None
        Map (lo, hi) -> sup of the field over radii in [lo, hi], used for
        q = inf. Defaults to the closed form for the reduced potential or
        to a dense sample of 'field'

    Returns
    -------
    report : RHConstantReport
        The estimate and the ball attaining it
    """
    if not q_index > 1.0:
        raise SchrolabParameterError(
            "Reverse Hoelder index must be greater than 1 ({})"
            .format(q_index))
    default_centers, default_radii = default_samples()
    centers = default_centers if centers is None else np.asarray(centers)
    radii = default_radii if radii is None else np.asarray(radii)
    if not len(centers) or not len(radii):
        raise SchrolabParameterError(
            "Reverse Hoelder estimate needs non-empty center and radius "
            "samples")
    if field is None:
        field = params.Vtilde
        if field_sup is None:
            field_sup = params.Vtilde_sup
    elif field_sup is None:
        def field_sup(lo, hi):
            return float(np.max(field(np.linspace(lo, hi, 1025))))
    infinite = math.isinf(q_index)
    nodes, weights = composite_gauss_nodes(RH_ORDER, PANEL_LEVELS)
    fields = [lambda t: np.ones_like(t), field]
    if not infinite:
        fields.append(lambda t: field(t) ** q_index)
    best = (-np.inf, None)
    smallest = np.inf
    for s in centers:
        integrals = ball_integrals(fields, params.N, s, radii, nodes,
                                   weights)
        mean = integrals[1] / integrals[0]
        if infinite:
            top = np.array([field_sup(max(0.0, s - r), s + r)
                            for r in radii])
        else:
            top = (integrals[2] / integrals[0]) ** (1.0 / q_index)
        ratios = top / mean
        i = int(np.argmax(ratios))
        if ratios[i] > best[0]:
            best = (float(ratios[i]), (float(s), float(radii[i])))
        smallest = min(smallest, float(ratios.min()))
    logger.debug("Reverse Hoelder estimate for q=%g: %g at %s", q_index,
                 best[0], best[1])
    return RHConstantReport(q_index, best[0], len(centers) * len(radii),
                            best[1], smallest)


class RHRefinementStudy(object):
    """
    Reverse Hoelder estimates on a base sample, a refined sample and an
    extended radius window. Both growths stay small when the potential is
    in the class and keep growing when it is not
    """

    def __init__(self, base, refined, extended, tolerance=0.05):
        self.base = base
        self.refined = refined
        self.extended = extended
        self.tolerance = tolerance

    def __repr__(self):
        return "{}(base={}, refinement_growth={}, window_growth={})".format(
            type(self).__name__, self.base.constant_estimate,
            self.refinement_growth, self.window_growth)

    @property
    def refinement_growth(self):
        return (self.refined.constant_estimate /
                self.base.constant_estimate - 1.0)

    @property
    def window_growth(self):
        return (self.extended.constant_estimate /
                self.base.constant_estimate - 1.0)

    @property
    def stable(self):
        return (self.refinement_growth < self.tolerance and
                self.window_growth < self.tolerance)


def rh_refinement_study(params, q_index, count=DEFAULT_SAMPLES, refine=10,
                        extend=10.0, tolerance=0.05):
    """
    Compares the reverse Hoelder estimate on the default sample with a
    sample 'refine' times denser in both centers and radii and with the
    center and radius windows extended by the factor 'extend'
    """
    base = estimate_rh_constant(params, q_index, *default_samples(count))
    refined = estimate_rh_constant(
        params, q_index, *default_samples((count - 1) * refine + 1))
    clo, chi = DEFAULT_CENTER_WINDOW
    rlo, rhi = DEFAULT_RADIUS_WINDOW
    per_decade = (count - 1) / math.log10(chi / clo)
    extra = int(round(per_decade * math.log10(extend)))
    extended = estimate_rh_constant(params, q_index, *default_samples(
        count + extra, center_window=(clo, chi * extend),
        radius_window=(rlo, rhi * extend)))
    return RHRefinementStudy(base, refined, extended, tolerance=tolerance)
