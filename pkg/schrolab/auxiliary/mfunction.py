import math
import logging
import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from schrolab.exceptions import (
    SchrolabRangeError, SchrolabParameterError)
from schrolab.utils import composite_gauss_nodes, parallel_map
from .ball import (
    BallIntegralSpec, ball_integral_radial, ball_integrals, PANEL_LEVELS)

logger = logging.getLogger('schrolab')


SCAN_RATIO = 1.001
SCAN_WINDOW = (1e-6, 1e6)
SCAN_ORDER = 10
SCAN_CHUNK = 1024
BISECTION_RTOL = 1e-6

# Exponent tolerance of the lower-bound fit
EXPONENT_TOL = 0.1


def normalized_mass(params, s, radii, field=None, accurate=False):
    """
    f_x(r) = r^(2-N) times the integral of the reduced potential (or
    'field') over B(x, r), |x| = s, for every r in 'radii'
    """
    if field is None:
        field = params.Vtilde
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    N = params.N
    if accurate:
        integrals = np.array([
            ball_integral_radial(field, BallIntegralSpec(s, r, N=N))
            for r in radii])
    else:
        nodes, weights = composite_gauss_nodes(SCAN_ORDER, PANEL_LEVELS)
        integrals = np.concatenate([
            ball_integrals([field], N, s, radii[i:i + SCAN_CHUNK], nodes,
                           weights)[0]
            for i in range(0, len(radii), SCAN_CHUNK)])
    return radii ** (2.0 - N) * integrals


def _scan_radii(s, ratio=SCAN_RATIO):
    lo, hi = SCAN_WINDOW
    count = int(math.ceil(math.log(hi / lo) / math.log(ratio))) + 1
    return lo * (1.0 + s) * ratio ** np.arange(count)


def _last_crossing(radii, values):
    below = values <= 1.0
    crossings = np.flatnonzero(below[:-1] & ~below[1:])
    if not len(crossings):
        return None
    return crossings[-1]


def m_function(params, s, field=None):
    """
    Computes the auxiliary function m(x) = 1 / sup{r > 0 : f_x(r) <= 1} at
    |x| = s, where f_x(r) is the normalised mass r^(2-N) of the reduced
    potential over B(x, r)

    The last crossing of the level 1 is located by a geometric scan with
    ratio 1.001 over [1e-6, 1e6] (1 + s) and refined by bisection on the
    accurate ball integral to a relative tolerance of 1e-6

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    s : float
        Radius |x| >= 0
    field : callable | None
        Radial potential replacing the reduced potential

    Returns
    -------
    m : float
        The auxiliary function at |x| = s
    """
    radii = _scan_radii(s)
    values = normalized_mass(params, s, radii, field=field)
    k = _last_crossing(radii, values)
    if k is None:
        raise SchrolabRangeError(
            "Normalised potential mass does not cross 1 for r in [{}, {}] "
            "at s={} ({})".format(radii[0], radii[-1], s, params))

    def f(r):
        return float(normalized_mass(params, s, r, field=field,
                                     accurate=True)[0])

    lo, hi = radii[k], radii[k + 1]
    # The scan and accurate rules may disagree right at the bracket ends
    while f(lo) > 1.0:
        lo /= SCAN_RATIO
        logger.debug("Widening m-function bracket down to %g", lo)
    while f(hi) <= 1.0:
        hi *= SCAN_RATIO
        logger.debug("Widening m-function bracket up to %g", hi)
    while hi / lo - 1.0 > BISECTION_RTOL:
        mid = math.sqrt(lo * hi)
        if f(mid) <= 1.0:
            lo = mid
        else:
            hi = mid
    return 2.0 / (lo + hi)


def _oracle_cap_fraction(N, s, r, t):
    c = (s ** 2 + t ** 2 - r ** 2) / (2.0 * s * t)
    c = min(max(c, -1.0), 1.0)
    if N == 3:
        return 0.5 * (1.0 - c)
    theta = math.acos(c)
    if N == 4:
        return (theta - math.sin(theta) * c) / math.pi
    full = quad(lambda a: math.sin(a) ** (N - 2), 0.0, math.pi)[0]
    return quad(lambda a: math.sin(a) ** (N - 2), 0.0, theta)[0] / full


def oracle_normalized_mass(params, s, r):
    """
    f_x(r) by adaptive quadrature, independently of the panel rules
    """
    N = params.N

    def integrand(t):
        return float(params.Vtilde(t)) * t ** (N - 1)

    inner = quad(integrand, 0.0, max(r - s, 0.0), epsabs=0.0,
                 epsrel=1e-12, limit=200)[0] if r > s else 0.0
    outer = 0.0
    if s > 0.0:
        outer = quad(lambda t: integrand(t) * _oracle_cap_fraction(
            N, s, r, t), abs(s - r), s + r, epsabs=0.0, epsrel=1e-12,
            limit=200)[0]
    return params.sigma * r ** (2.0 - N) * (inner + outer)


def m_function_oracle(params, s, coarse_ratio=1.05):
    """
    Independent evaluation of m(x) at |x| = s: a coarse geometric scan of
    the adaptive-quadrature f_x, a dense scan with ratio 1.001 inside its
    last bracket and a final Brent root solve
    """
    def f(r):
        return oracle_normalized_mass(params, s, r)

    radii = _scan_radii(s, ratio=coarse_ratio)
    values = np.array([f(r) for r in radii])
    k = _last_crossing(radii, values)
    if k is None:
        raise SchrolabRangeError(
            "Oracle scan found no crossing at s={} ({})".format(s, params))
    dense = radii[k] * SCAN_RATIO ** np.arange(
        int(math.ceil(math.log(coarse_ratio) / math.log(SCAN_RATIO))) + 1)
    dense = np.append(dense[dense < radii[k + 1]], radii[k + 1])
    dense_values = np.array([f(r) for r in dense])
    j = _last_crossing(dense, dense_values)
    if j is None:
        raise SchrolabRangeError(
            "Oracle refinement lost the crossing in [{}, {}] at s={} ({})"
            .format(radii[k], radii[k + 1], s, params))
    root = brentq(lambda r: f(r) - 1.0, dense[j], dense[j + 1], xtol=np.finfo(float).tiny,
                  rtol=1e-12)
    return 1.0 / root


class MEstimate(object):
    """
    Sampled auxiliary function m(x) with the least-squares power law fitted
    to it against 1 + |x|

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    radii : np.ndarray
        Radii |x| the function was sampled at
    m_values : np.ndarray
        m at each radius
    fitted_exponent : float
        Slope of log m against log(1 + |x|)
    fitted_constant : float
        exp of the fitted intercept
    """

    def __init__(self, params, radii, m_values, fitted_exponent,
                 fitted_constant):
        self._params = params
        self._radii = radii
        self._m_values = m_values
        self._fitted_exponent = fitted_exponent
        self._fitted_constant = fitted_constant

    def __repr__(self):
        return "{}(fitted_exponent={}, expected={})".format(
            type(self).__name__, self.fitted_exponent,
            self.expected_exponent)

    @property
    def params(self):
        return self._params

    @property
    def radii(self):
        return self._radii

    @property
    def m_values(self):
        return self._m_values

    @property
    def fitted_exponent(self):
        return self._fitted_exponent

    @property
    def fitted_constant(self):
        return self._fitted_constant

    @property
    def expected_exponent(self):
        return 0.5 * (self._params.beta - self._params.alpha)

    @property
    def success(self):
        """
        Whether m decays no faster than the lower bound
        (1 + |x|)^((beta - alpha) / 2), up to the fit tolerance
        """
        return self.fitted_exponent >= self.expected_exponent - EXPONENT_TOL

    @property
    def vtilde_ratio(self):
        """
        m / sqrt(V/a) at every radius, bounded below when beta >= alpha
        (None otherwise)
        """
        if self._params.beta < self._params.alpha:
            return None
        return self._m_values / np.sqrt(self._params.Vtilde(self._radii))

    def interpolate(self, r):
        """
        m at radii 'r' by linear interpolation of log m against
        log(1 + |x|), extrapolated with the end slopes
        """
        x = np.log1p(self._radii)
        y = np.log(self._m_values)
        xr = np.log1p(np.asarray(r, dtype=float))
        inside = np.interp(xr, x, y)
        if len(x) > 1:
            left = y[0] + (xr - x[0]) * (y[1] - y[0]) / (x[1] - x[0])
            right = y[-1] + (xr - x[-1]) * (y[-1] - y[-2]) / (x[-1] - x[-2])
            inside = np.where(xr < x[0], left,
                              np.where(xr > x[-1], right, inside))
        return np.exp(inside)


def fit_m_exponent(params, radii=None, jobs=1):
    """
    Samples m at 'radii' and fits log m = c + e log(1 + |x|) by least
    squares

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    radii : list[float] | None
        At least 4 radii spanning two decades, by default 9 log-spaced radii
        in [10, 1000]
    jobs : int
        Worker threads the radii are distributed over

    Returns
    -------
    estimate : MEstimate
        The sampled profile and the fitted power law
    """
    if radii is None:
        radii = np.geomspace(10.0, 1e3, 9)
    radii = np.sort(np.asarray(radii, dtype=float))
    if len(radii) < 4:
        raise SchrolabParameterError(
            "Exponent fit needs at least 4 radii ({})".format(len(radii)))
    if not radii[0] > 0.0 or radii[-1] / radii[0] < 100.0:
        raise SchrolabParameterError(
            "Exponent fit radii must span at least two decades ({})"
            .format(radii))
    estimate = sample_m_profile(params, radii, jobs=jobs)
    logger.info("Fitted m-function exponent %g for %s (bound %g)",
                estimate.fitted_exponent, params, estimate.expected_exponent)
    return estimate


def sample_m_profile(params, radii, jobs=1):
    """
    Samples m at the (sorted) radii, which may include the origin, and fits
    the power law without the span requirements of fit_m_exponent
    """
    radii = np.sort(np.asarray(radii, dtype=float))
    m_values = np.array(parallel_map(lambda s: m_function(params, s),
                                     radii, jobs=jobs))
    if len(radii) > 1:
        slope, intercept = np.polyfit(np.log1p(radii), np.log(m_values), 1)
    else:
        slope, intercept = 0.0, np.log(m_values[0])
    return MEstimate(params, radii, m_values, float(slope),
                     float(np.exp(intercept)))
