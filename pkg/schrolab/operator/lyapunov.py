import logging
import numpy as np
from scipy.optimize import minimize_scalar
from schrolab.exceptions import SchrolabParameterError, SchrolabAccuracyError

logger = logging.getLogger('schrolab')


# Windows beyond which the scan is abandoned
MAX_WINDOW = 1e8


class LyapunovProbe(object):
    """
    Result of the Lyapunov constant computation for phi = 1 + r^gamma

    Parameters
    ----------
    params : OperatorParams
        The operator the constant was computed for
    gamma : float
        Exponent of the Lyapunov function
    C : float
        The smallest constant with A phi <= C phi
    r_star : float
        Location of the supremum (0 when C = 0)
    window : float
        Upper end of the radius window that was scanned
    """

    def __init__(self, params, gamma, C, r_star, window):
        self._params = params
        self._gamma = gamma
        self._C = C
        self._r_star = r_star
        self._window = window

    def __repr__(self):
        return "{}(gamma={}, C={}, r_star={})".format(
            type(self).__name__, self.gamma, self.C, self.r_star)

    @property
    def params(self):
        return self._params

    @property
    def gamma(self):
        return self._gamma

    @property
    def C(self):
        return self._C

    @property
    def r_star(self):
        return self._r_star

    @property
    def window(self):
        return self._window

    def slack(self, r):
        """
        Returns (A phi - C phi) / phi at the radii 'r', non-positive where
        the Lyapunov inequality holds
        """
        return lyapunov_ratio(self.params, self.gamma, r) - self.C


def apply_to_phi(params, gamma, r):
    """
    A phi at radii 'r' for phi = 1 + r^gamma, from Lap phi =
    gamma (N + gamma - 2) r^(gamma - 2)
    """
    r = np.asarray(r, dtype=float)
    lap = gamma * (params.N + gamma - 2.0) * r ** (gamma - 2.0)
    return params.a(r) * lap - params.V(r) * (1.0 + r ** gamma)


def lyapunov_ratio(params, gamma, r):
    r = np.asarray(r, dtype=float)
    return apply_to_phi(params, gamma, r) / (1.0 + r ** gamma)


def _scan_radii(window):
    return np.unique(np.concatenate((
        np.geomspace(1e-8, window, 4000),
        np.linspace(0.0, window, 4001)[1:])))


def _refine_max(func, radii, i):
    lo = radii[max(i - 1, 0)]
    hi = radii[min(i + 1, len(radii) - 1)]
    if 0 < i < len(radii) - 1:
        try:
            return minimize_scalar(
                lambda r: -func(r), method='golden',
                bracket=(lo, radii[i], hi), options={'xtol': 1e-12})
        except ValueError:
            # Flat maximum, not a strict bracket
            pass
    return minimize_scalar(lambda r: -func(r), method='bounded',
                           bounds=(lo, hi), options={'xatol': 1e-14})


def lyapunov_constant(params, gamma, window=1e3):
    """
    Computes the smallest C >= 0 such that A phi <= C phi for the Lyapunov
    function phi = 1 + r^gamma, as the supremum of A phi / phi over r > 0

    The supremum is located by a combined logarithmic/linear scan of
    (0, window] and refined by golden-section search. The window is widened
    by decades while the ratio is not yet decreasing at its right end.

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    gamma : float
        Exponent of the Lyapunov function (> 2)
    window : float
        Initial right end of the scanned radius window

    Returns
    -------
    probe : LyapunovProbe
        The computed constant and its maximiser
    """
    if not gamma > 2.0:
        raise SchrolabParameterError(
            "Lyapunov exponent gamma must be greater than 2 ({})"
            .format(gamma))

    def ratio(r):
        return lyapunov_ratio(params, gamma, r)

    while True:
        radii = _scan_radii(window)
        values = ratio(radii)
        i = int(np.argmax(values))
        scan_max = float(values[i])
        end_value = float(values[-1])
        if end_value < 0.0 or end_value <= 1e-3 * max(scan_max, 0.0):
            break
        if window >= MAX_WINDOW:
            raise SchrolabAccuracyError(
                "Lyapunov ratio for {} (gamma={}) is still not decreasing "
                "at r={}".format(params, gamma, window))
        window *= 10.0
        logger.info("Extending Lyapunov scan window to %g", window)
    res = _refine_max(ratio, radii, i)
    refined = float(-res.fun)
    if refined >= scan_max:
        C, r_star = refined, float(res.x)
    else:
        C, r_star = scan_max, float(radii[i])
    if C <= 0.0:
        C, r_star = 0.0, 0.0
    logger.debug("Lyapunov constant for %s, gamma=%g: C=%g at r=%g",
                 params, gamma, C, r_star)
    return LyapunovProbe(params, gamma, C, r_star, window)
