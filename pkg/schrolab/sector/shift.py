import math
import logging
from collections import namedtuple
import numpy as np
from schrolab.exceptions import SchrolabParameterError

logger = logging.getLogger('schrolab')


# Step of the dense cross-check scan of the shift
SCAN_STEP = 1e-4

# Log grid the default c_tilde is picked from
C_TILDE_GRID = (1e-2, 1e2, 401)

# Penalties added to omega(c_tilde) by the selection objectives
C_TILDE_OBJECTIVES = {
    'shift': lambda params, c: c,
    'balanced': lambda params, c: params.alpha ** 2 / (4.0 * c)}


ShiftCheck = namedtuple('ShiftCheck', ('closed_form', 'scan', 'rel_error'))


def _check(params, c_tilde):
    if params.mode != 'power':
        raise SchrolabParameterError(
            "Sector constants are only defined for the power operator "
            "({})".format(params))
    if not c_tilde > 0.0:
        raise SchrolabParameterError(
            "c_tilde must be positive ({})".format(c_tilde))


def _drift(params, c_tilde):
    "(alpha (N - 2 + alpha) / p + c_tilde), the coefficient of r^(alpha-2)"
    alpha = params.alpha
    return alpha * (params.N - 2.0 + alpha) / params.p + c_tilde


def _excess(params, c_tilde, r):
    return (_drift(params, c_tilde) * r ** (params.alpha - 2.0) -
            r ** params.beta)


def feasible_shift(params, c_tilde):
    """
    The smallest omega >= 0 with

        alpha (N - 2 + alpha) / p r^(alpha-2) - r^beta - omega
            <= -c_tilde r^(alpha-2)

    for all r > 0. With K = alpha (N - 2 + alpha) / p + c_tilde the
    supremum of K r^(alpha-2) - r^beta is attained at
    r* = (K (alpha - 2) / beta)^(1 / (beta - alpha + 2))

    Parameters
    ----------
    params : OperatorParams
        The (power mode) operator parameters
    c_tilde : float
        Positive margin

    Returns
    -------
    omega : float
        The shift
    """
    _check(params, c_tilde)
    K = _drift(params, c_tilde)
    r_star = (K * (params.alpha - 2.0) / params.beta) ** (
        1.0 / (params.beta - params.alpha + 2.0))
    return max(0.0, float(_excess(params, c_tilde, r_star)))


def _zero_radius(params, c_tilde):
    "Radius beyond which K r^(alpha-2) - r^beta is negative"
    return _drift(params, c_tilde) ** (
        1.0 / (params.beta - params.alpha + 2.0))


def shift_scan(params, c_tilde, step=SCAN_STEP):
    """
    Cross-checks feasible_shift by a uniform scan of step 'step' over
    (0, 2 r0], r0 being the positive zero of K r^(alpha-2) - r^beta
    """
    _check(params, c_tilde)
    closed = feasible_shift(params, c_tilde)
    upper = 2.0 * _zero_radius(params, c_tilde)
    r = np.arange(1, int(math.ceil(upper / step)) + 1) * step
    scan = max(0.0, float(_excess(params, c_tilde, r).max()))
    rel = abs(closed - scan) / max(abs(closed), np.finfo(float).tiny)
    return ShiftCheck(closed, scan, rel)


def dissipativity_slack(params, c_tilde, omega, radii=None):
    """
    Smallest value over 'radii' of

        -c_tilde r^(alpha-2) - (alpha (N - 2 + alpha) / p r^(alpha-2)
            - r^beta - omega)

    relative to max(1, omega), non-negative where the dissipativity
    inequality holds. Defaults to a dense logarithmic and linear grid
    around the zero of the left hand side
    """
    _check(params, c_tilde)
    if radii is None:
        upper = 10.0 * _zero_radius(params, c_tilde)
        radii = np.union1d(np.geomspace(1e-6, upper, 100001),
                           np.linspace(0.0, upper, 100001)[1:])
    radii = np.asarray(radii, dtype=float)
    slack = omega - _excess(params, c_tilde, radii)
    return float(slack.min() / max(1.0, omega))


def sector_angle(params, c_tilde):
    """
    The angle constant delta with

        delta^2 = |p - 2|^2 / (4 (p - 1)) + alpha^2 / (4 c_tilde)

    and theta_alpha with tan(theta_alpha) = delta

    Returns
    -------
    delta : float
        The angle constant
    theta_alpha : float
        arctan(delta). The complementary arctan(1 / delta) is returned by
        dual_angle
    """
    _check(params, c_tilde)
    p = params.p
    delta = math.sqrt((p - 2.0) ** 2 / (4.0 * (p - 1.0)) +
                      params.alpha ** 2 / (4.0 * c_tilde))
    return delta, math.atan(delta)


def dual_angle(delta):
    "arctan(1 / delta), the rotation for which |Im| <= delta (-Re) holds"
    return math.atan2(1.0, delta)


def default_c_tilde(params, objective='shift', grid=C_TILDE_GRID):
    """
    Picks c_tilde from a log grid by minimising one of

        'shift'     omega(c_tilde) + c_tilde
        'balanced'  omega(c_tilde) + alpha^2 / (4 c_tilde)

    Since omega is nondecreasing in c_tilde, the 'shift' objective picks
    the lower end of the grid. 'balanced' trades the shift against the
    angle term of delta^2

    Parameters
    ----------
    params : OperatorParams
        The (power mode) operator parameters
    objective : str
        Name of the objective, see above
    grid : tuple(float, float, int)
        Lower and upper end and size of the log grid

    Returns
    -------
    c_tilde : float
        The minimiser over the grid
    """
    try:
        penalty = C_TILDE_OBJECTIVES[objective]
    except KeyError:
        raise SchrolabParameterError(
            "Unrecognised c_tilde objective '{}', can be one of {}"
            .format(objective, list(C_TILDE_OBJECTIVES)))
    lower, upper, num = grid
    candidates = np.geomspace(lower, upper, num)
    costs = [feasible_shift(params, c) + penalty(params, c)
             for c in candidates]
    c_tilde = float(candidates[int(np.argmin(costs))])
    logger.info("Chose c_tilde=%g (omega=%g, %s objective) for %s", c_tilde,
                feasible_shift(params, c_tilde), objective, params)
    return c_tilde
