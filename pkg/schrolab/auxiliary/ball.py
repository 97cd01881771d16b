import logging
import numpy as np
from scipy.special import betainc
from schrolab.exceptions import SchrolabUsageError, SchrolabAccuracyError
from schrolab.utils import sphere_area, composite_gauss_nodes

logger = logging.getLogger('schrolab')


QUAD_RTOL = 1e-9
QUAD_FAIL_RTOL = 1e-4
MAX_ORDER = 256

# Halvings of the quadrature panels towards each end of a radial piece
PANEL_LEVELS = 12


class BallIntegralSpec(object):
    """
    A ball B(x, r) with |x| = s in R^N and the initial per-panel Gauss order
    used to integrate radial fields over it

    Parameters
    ----------
    center_radius : float
        Distance s >= 0 of the ball's center from the origin
    radius : float
        Ball radius r > 0
    quadrature_nodes : int
        Initial Gauss-Legendre order per panel
    N : int
        Spatial dimension
    """

    def __init__(self, center_radius, radius, quadrature_nodes=8, N=3):
        if not center_radius >= 0.0:
            raise SchrolabUsageError(
                "Ball center radius must be non-negative ({})"
                .format(center_radius))
        if not radius > 0.0:
            raise SchrolabUsageError(
                "Ball radius must be positive ({})".format(radius))
        if quadrature_nodes < 1:
            raise SchrolabUsageError(
                "Need at least one quadrature node per panel ({})"
                .format(quadrature_nodes))
        self.center_radius = float(center_radius)
        self.radius = float(radius)
        self.quadrature_nodes = int(quadrature_nodes)
        self.N = int(N)

    def __repr__(self):
        return "{}(center_radius={}, radius={}, N={})".format(
            type(self).__name__, self.center_radius, self.radius, self.N)

    @property
    def volume(self):
        return sphere_area(self.N) * self.radius ** self.N / self.N


def cap_fraction(N, s, r, t):
    """
    Fraction of the sphere |y| = t lying inside the ball B(x, r), |x| = s,
    i.e. of the polar cap cos(theta) >= (s^2 + t^2 - r^2) / (2 s t), from
    the regularised incomplete beta function
    """
    # 1 - cos^2 in factored form, exact for thin shells far from the origin
    sin2 = ((r - s + t) * (r + s - t) * (s + t - r) * (s + t + r) /
            (2.0 * s * t) ** 2)
    half = 0.5 * betainc(0.5 * (N - 1), 0.5, np.clip(sin2, 0.0, 1.0))
    return np.where(s ** 2 + t ** 2 >= r ** 2, half, 1.0 - half)


def ball_integrals(fields, N, s, radii, nodes, weights):
    """
    Integrals of radial 'fields' over the balls B(x, r), |x| = s, for every
    r in 'radii', with the fixed rule (nodes, weights) on [0, 1] applied to
    the concentric piece [0, max(r - s, 0)] (fully inside the ball) and to
    the piece [|s - r|, s + r] weighted by the cap fraction

    Returns
    -------
    integrals : np.ndarray
        Array of shape (len(fields), len(radii))
    """
    radii = np.asarray(radii, dtype=float)[:, None]
    inner_hi = np.maximum(radii - s, 0.0)
    t = inner_hi * nodes[None, :]
    measure = t ** (N - 1)
    results = [inner_hi[:, 0] * ((f(t) * measure) @ weights)
               for f in fields]
    if s > 0.0:
        lo = np.abs(s - radii)
        width = s + radii - lo
        t = lo + width * nodes[None, :]
        measure = t ** (N - 1) * cap_fraction(N, s, radii, t)
        results = [res + width[:, 0] * ((f(t) * measure) @ weights)
                   for res, f in zip(results, fields)]
    return sphere_area(N) * np.array(results)


def ball_integral_radial(field, spec):
    """
    Integral of the radial 'field' over the ball described by 'spec',
    doubling the Gauss order until successive values agree to 1e-9

    Parameters
    ----------
    field : callable
        Vectorised radial map t -> field(t)
    spec : BallIntegralSpec
        The ball and initial quadrature order

    Returns
    -------
    integral : float
        The integral of field(|y|) over B(x, r)
    """
    order = spec.quadrature_nodes

    def integrate(order):
        nodes, weights = composite_gauss_nodes(order, PANEL_LEVELS)
        return float(ball_integrals([field], spec.N, spec.center_radius,
                                    [spec.radius], nodes, weights)[0, 0])

    previous = integrate(order)
    while True:
        order *= 2
        current = integrate(order)
        change = abs(current - previous)
        scale = abs(current)
        if change <= QUAD_RTOL * scale:
            return current
        if order >= MAX_ORDER:
            break
        logger.debug("Doubling ball quadrature order to %d for %s",
                     order * 2, spec)
        previous = current
    if change > QUAD_FAIL_RTOL * scale:
        raise SchrolabAccuracyError(
            "Ball integral over {} did not converge (relative change {} at "
            "order {})".format(spec, change / max(scale, 1e-300), order))
    logger.warning("Ball integral over %s only converged to %g", spec,
                   change / scale)
    return current
