import math
import logging
import numpy as np
from schrolab.exceptions import (
    SchrolabParameterError, SchrolabSpectralProximityError)
from schrolab.green import solve_resolvent, eigenvalues
from schrolab.utils import lp_norm, parallel_map

logger = logging.getLogger('schrolab')


PROXIMITY_TOL = 1e-12

# Slack of the p = 2 ray bound
RAY_TOL = 1e-8


class RayScan(object):
    """
    Resolvent norms along the ray lambda = |lambda| e^(i angle)

    Parameters
    ----------
    angle : float
        Argument of the ray in [pi/2, pi)
    moduli : np.ndarray
        Sampled |lambda|
    norms : np.ndarray
        Resolvent norm (exact, p = 2) or sampled lower bound (p != 2) at
        each modulus
    exact : bool
        Whether the norms are exact
    """

    def __init__(self, angle, moduli, norms, exact):
        self.angle = angle
        self.moduli = np.asarray(moduli)
        self.norms = np.asarray(norms)
        self.exact = exact

    def __repr__(self):
        return "{}(angle={}, C_theta={}, exact={})".format(
            type(self).__name__, self.angle, self.C_theta, self.exact)

    @property
    def scaled(self):
        "|lambda| times the resolvent norm"
        return self.moduli * self.norms

    @property
    def C_theta(self):
        return float(self.scaled.max())

    @property
    def geometric_bound(self):
        "1 / sin(pi - angle), the bound for a spectrum on (-inf, 0]"
        return 1.0 / math.sin(math.pi - self.angle)

    @property
    def holds(self):
        return self.C_theta <= self.geometric_bound + RAY_TOL

    def table(self):
        return [(self.angle, m, n, m * n)
                for m, n in zip(self.moduli, self.norms)]


def _exact_norm(spectrum, lam):
    distance = np.abs(lam - spectrum)
    k = int(np.argmin(distance))
    if distance[k] <= PROXIMITY_TOL * max(1.0, abs(lam)):
        raise SchrolabSpectralProximityError(
            "Resolvent parameter {} is on the spectrum (nearest eigenvalue "
            "{})".format(lam, spectrum[k]), nearest=float(spectrum[k]))
    return 1.0 / float(distance[k])


def _sampled_norm(op, lam, vectors, p):
    # Lebesgue L^p(R^N) of radial functions
    weights = op.grid.control_volumes
    best = 0.0
    for v in vectors:
        u = solve_resolvent(op, lam, v)
        best = max(best, lp_norm(u, weights, p) / lp_norm(v, weights, p))
    return best


def sample_vectors(op, count=16, seed=0):
    """
    Real random vectors and decaying profiles the p != 2 lower bounds are
    evaluated on
    """
    rng = np.random.default_rng(seed)
    r = op.nodes
    vectors = [rng.standard_normal(len(op)) for _ in range(count)]
    vectors += [np.exp(-r ** 2), np.exp(-r), np.ones(len(op))]
    return vectors


def resolvent_norm_scan(op, angles, moduli, p=None, samples=16, seed=0,
                        jobs=1):
    """
    Scans the resolvent norm |R(lambda)| along the rays of 'angles' at the
    moduli 'moduli'. For p = 2 the operator is self-adjoint in the
    M-weighted inner product and the norm is max_k 1 / |lambda - lambda_k|
    over the full discrete spectrum; for other p the ratios
    |R(lambda) v|_p / |v|_p over a seeded family of vectors, in the
    Lebesgue measure of R^N (the radial control volumes), are reported as
    lower bounds

    Parameters
    ----------
    op : DiscreteOperator
        The operator
    angles : list[float]
        Ray arguments in [pi/2, pi)
    moduli : list[float]
        Positive moduli |lambda|
    p : float | None
        Lebesgue index, by default the operator's
    samples : int
        Number of random vectors for p != 2
    seed : int
        Seed of the random vectors
    jobs : int
        Worker threads the rays are distributed over

    Returns
    -------
    rays : list[RayScan]
        One scan per angle
    """
    if p is None:
        p = op.params.p
    for angle in angles:
        if not 0.5 * math.pi <= angle < math.pi:
            raise SchrolabParameterError(
                "Ray angles must lie in [pi/2, pi) ({})".format(angle))
    moduli = np.asarray(moduli, dtype=float)
    if not len(moduli) or np.any(moduli <= 0.0):
        raise SchrolabParameterError(
            "Ray moduli must be positive ({})".format(moduli))
    exact = p == 2.0
    if exact:
        spectrum = eigenvalues(op)
    else:
        vectors = sample_vectors(op, count=samples, seed=seed)

    def scan(angle):
        lams = moduli * np.exp(1j * angle)
        if exact:
            norms = [_exact_norm(spectrum, lam) for lam in lams]
        else:
            norms = [_sampled_norm(op, lam, vectors, p) for lam in lams]
        return RayScan(angle, moduli, norms, exact)

    rays = parallel_map(scan, angles, jobs=jobs)
    for ray in rays:
        logger.debug("Ray at angle %g: C_theta=%g (bound %g)", ray.angle,
                     ray.C_theta, ray.geometric_bound)
    return rays
