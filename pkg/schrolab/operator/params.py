import math
import logging
from collections import namedtuple
import numpy as np
from schrolab.exceptions import SchrolabParameterError, SchrolabDomainError
from schrolab.utils import sphere_area

logger = logging.getLogger('schrolab')


Coefficients = namedtuple('Coefficients', ('a', 'V', 'Vtilde', 'q'))


class OperatorParams(object):
    """
    The parameters of the operator A = (1 + |x|^alpha) Lap - |x|^beta on
    R^N, together with the L^p index it is realised in

    Parameters
    ----------
    N : int
        Spatial dimension (>= 3)
    alpha : float
        Exponent of the diffusion coefficient a(r) = 1 + r^alpha
    beta : float
        Exponent of the potential V(r) = r^beta
    p : float
        Lebesgue index in (1, inf)
    mode : str
        One of 'power' (the operator above), 'harmonic' (a = 1, V = r^2)
        or 'free' (a = 1, V = 0). The last two are analytic validation
        modes, for which the hypotheses on alpha and beta are reported
        but not enforced
    """

    MODES = ('power', 'harmonic', 'free')

    def __init__(self, N, alpha, beta, p=2.0, mode='power'):
        if mode not in self.MODES:
            raise SchrolabParameterError(
                "Unrecognised operator mode '{}', can be one of {}"
                .format(mode, self.MODES))
        if int(N) != N:
            raise SchrolabParameterError(
                "Dimension must be an integer ({})".format(N))
        self._N = int(N)
        self._alpha = float(alpha)
        self._beta = float(beta)
        self._p = float(p)
        self._mode = mode
        self._sigma = sphere_area(self._N)
        if self._N < 3:
            raise SchrolabParameterError(
                "Dimension must be at least 3 ({})".format(N))
        if not (1.0 < self._p < math.inf):
            raise SchrolabParameterError(
                "Lebesgue index p must lie in (1, inf) ({})".format(p))
        if mode == 'power':
            failed = [k for k, v in self.validity.items() if not v]
            if failed:
                raise SchrolabParameterError(
                    "Invalid operator parameters {}, failed hypotheses: {}"
                    .format(self, ', '.join(failed)))

    def __repr__(self):
        return ("{}(N={}, alpha={}, beta={}, p={}, mode='{}')".format(
            type(self).__name__, self.N, self.alpha, self.beta, self.p,
            self.mode))

    def __eq__(self, other):
        return (self.N == other.N and
                self.alpha == other.alpha and
                self.beta == other.beta and
                self.p == other.p and
                self.mode == other.mode)

    def __hash__(self):
        return hash((self.N, self.alpha, self.beta, self.p, self.mode))

    @property
    def N(self):
        return self._N

    @property
    def alpha(self):
        return self._alpha

    @property
    def beta(self):
        return self._beta

    @property
    def p(self):
        return self._p

    @property
    def mode(self):
        return self._mode

    @property
    def sigma(self):
        "Surface area of the unit sphere in R^N"
        return self._sigma

    @property
    def validity(self):
        return {'N>2': self.N > 2,
                'alpha>2': self.alpha > 2.0,
                'beta>alpha-2': self.beta > self.alpha - 2.0,
                '1<p<inf': 1.0 < self.p < math.inf}

    @property
    def vtilde_exponent(self):
        """
        Growth exponent of the reduced potential V/a at infinity, None when
        the potential vanishes
        """
        if self.mode == 'power':
            return self.beta - self.alpha
        elif self.mode == 'harmonic':
            return 2.0
        return None

    def with_(self, **kwargs):
        """
        Returns a copy with the given fields replaced
        """
        fields = {'N': self.N, 'alpha': self.alpha, 'beta': self.beta,
                  'p': self.p, 'mode': self.mode}
        fields.update(kwargs)
        return type(self)(**fields)

    def a(self, r):
        r = np.asarray(r, dtype=float)
        if self.mode == 'power':
            return 1.0 + r ** self.alpha
        return np.ones_like(r)

    def V(self, r):
        r = np.asarray(r, dtype=float)
        if self.mode == 'power':
            return r ** self.beta
        elif self.mode == 'harmonic':
            return r ** 2
        return np.zeros_like(r)

    def q(self, r):
        return 1.0 / self.a(r)

    def Vtilde(self, r):
        return self.V(r) * self.q(r)

    def Vtilde_sup(self, lower, upper):
        """
        Supremum of the reduced potential over the radial interval
        [lower, upper], from its end points and its interior maximiser
        """
        candidates = [lower, upper]
        if self.mode == 'power' and self.beta < self.alpha:
            t_star = (self.beta / (self.alpha - self.beta)) ** (
                1.0 / self.alpha)
            if lower < t_star < upper:
                candidates.append(t_star)
        return float(np.max(self.Vtilde(np.array(candidates))))


def eval_coefficients(params, r):
    """
    Evaluates the closed-form coefficients at radius (or radii) 'r'

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    r : float | array-like
        Non-negative radii

    Returns
    -------
    coefficients : Coefficients
        Named tuple of a(r), V(r), Vtilde(r) = V(r) q(r) and q(r) = 1/a(r)
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0.0) or np.any(np.isnan(r_arr)):
        raise SchrolabDomainError(
            "Coefficients are only defined for non-negative radii ({})"
            .format(r))
    a = params.a(r_arr)
    V = params.V(r_arr)
    q = 1.0 / a
    coeffs = Coefficients(a=a, V=V, Vtilde=V * q, q=q)
    if r_arr.ndim == 0:
        coeffs = Coefficients(*(float(c) for c in coeffs))
    return coeffs
