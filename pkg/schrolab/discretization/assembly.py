import logging
import numpy as np
from schrolab.exceptions import SchrolabAccuracyError, SchrolabUsageError
from schrolab.utils import leggauss

logger = logging.getLogger('schrolab')


QUAD_RTOL = 1e-13
QUAD_FAIL_RTOL = 1e-10
QUAD_MAX_ORDER = 512

BOUNDARIES = ('dirichlet', 'neumann')


class DiscreteOperator(object):
    """
    Symmetric tridiagonal stiffness K and positive diagonal mass M of the
    finite-volume discretisation of one angular channel, so that the
    operator acts as M^-1 K

    Parameters
    ----------
    grid : RadialGrid
        The grid the operator was assembled on
    params : OperatorParams
        The operator parameters
    diag : np.ndarray
        Main diagonal of K
    offdiag : np.ndarray
        Super- (and sub-) diagonal of K
    mass : np.ndarray
        Diagonal of M
    ell : int
        Angular momentum channel
    boundary : tuple(str, str)
        Inner and outer boundary conditions
    include_potential : bool
        Whether the reduced and centrifugal potentials are in K
    weighted : bool
        Whether M carries the weighted measure r^(N-1)/a dr (otherwise the
        Lebesgue radial measure r^(N-1) dr)
    """

    def __init__(self, grid, params, diag, offdiag, mass, ell, boundary,
                 include_potential=True, weighted=True):
        self._grid = grid
        self._params = params
        self._diag = diag
        self._offdiag = offdiag
        self._mass = mass
        self._ell = ell
        self._boundary = tuple(boundary)
        self._include_potential = include_potential
        self._weighted = weighted
        for array in (diag, offdiag, mass):
            array.setflags(write=False)

    def __repr__(self):
        return ("{}(grid={}, params={}, ell={}, boundary={}, "
                "include_potential={}, weighted={})".format(
                    type(self).__name__, self.grid, self.params, self.ell,
                    self.boundary, self.include_potential, self.weighted))

    def __len__(self):
        return len(self._diag)

    @property
    def grid(self):
        return self._grid

    @property
    def params(self):
        return self._params

    @property
    def diag(self):
        return self._diag

    @property
    def offdiag(self):
        return self._offdiag

    @property
    def mass(self):
        return self._mass

    @property
    def ell(self):
        return self._ell

    @property
    def boundary(self):
        return self._boundary

    @property
    def include_potential(self):
        return self._include_potential

    @property
    def weighted(self):
        return self._weighted

    @property
    def nodes(self):
        return self._grid.nodes

    def K_dense(self):
        K = np.diag(self._diag)
        K += np.diag(self._offdiag, 1)
        K += np.diag(self._offdiag, -1)
        return K

    def negated_upper_band(self, shift=0.0):
        """
        Upper banded storage of shift * M - K, the positive definite form
        consumed by scipy.linalg.solveh_banded and cholesky_banded
        """
        ab = np.zeros((2, len(self)))
        ab[0, 1:] = -self._offdiag
        ab[1] = shift * self._mass - self._diag
        return ab

    def matvec(self, u):
        "K u"
        Ku = self._diag * u
        Ku[:-1] += self._offdiag * u[1:]
        Ku[1:] += self._offdiag * u[:-1]
        return Ku

    def stiffness_inf_norm(self):
        row = np.abs(self._diag).copy()
        row[:-1] += np.abs(self._offdiag)
        row[1:] += np.abs(self._offdiag)
        return float(row.max())

    def provenance(self):
        return {'grid': self.grid.to_dict(), 'ell': self.ell,
                'boundary': list(self.boundary),
                'include_potential': self.include_potential,
                'weighted': self.weighted}


def cell_integrals(func, edges, rtol=QUAD_RTOL, what='integrand'):
    """
    Integrates the vectorised 'func' over every interval between
    consecutive 'edges' by Gauss-Legendre quadrature, doubling the order
    until all cells agree to 'rtol'
    """
    lo = edges[:-1, None]
    half = 0.5 * np.diff(edges)[:, None]

    def integrate(order):
        x, w = leggauss(order)
        return (half[:, 0] *
                np.dot(func(lo + half * (x[None, :] + 1.0)), w))

    order = 4
    previous = integrate(order)
    while True:
        order *= 2
        current = integrate(order)
        change = np.abs(current - previous)
        scale = np.maximum(np.abs(current), np.finfo(float).tiny)
        worst = float(np.max(change / scale)) if len(change) else 0.0
        if worst <= rtol:
            return current
        if order >= QUAD_MAX_ORDER:
            if worst > QUAD_FAIL_RTOL:
                raise SchrolabAccuracyError(
                    "Cell quadrature of {} did not converge (relative "
                    "change {} at order {})".format(what, worst, order))
            logger.debug("Cell quadrature of %s stopped at relative "
                         "change %g", what, worst)
            return current
        previous = current


def face_conductances(left, right, N):
    """
    Exact radial flux conductances 1 / int_left^right t^(1-N) dt, evaluated
    without cancellation for close neighbours
    """
    width = right - left
    if N == 2:
        return 1.0 / np.log1p(width / left)
    integral = (left ** (2.0 - N) *
                -np.expm1((2.0 - N) * np.log1p(width / left)) / (N - 2.0))
    return 1.0 / integral


def assemble_operator(grid, params, ell=0, include_potential=True,
                      outer='dirichlet', weighted=True):
    """
    Assembles the finite-volume discretisation of the radial operator
    r^(1-N) (r^(N-1) u')' - l(l+N-2)/r^2 - V/a for the angular channel 'ell'
    in the measure r^(N-1)/a dr, in which A = a Lap - V is symmetric

    Parameters
    ----------
    grid : RadialGrid
        The radial grid (its dimension must match params)
    params : OperatorParams
        The operator parameters
    ell : int
        Angular momentum channel (>= 0). The inner boundary is zero flux
        for ell = 0 and Dirichlet otherwise
    include_potential : bool
        Whether to add the reduced and centrifugal potentials to K
    outer : str
        Outer boundary condition at R, 'dirichlet' or 'neumann'
    weighted : bool
        Use the weighted mass r^(N-1)/a dr (A) or the Lebesgue radial mass
        r^(N-1) dr (Lap - V/a)

    Returns
    -------
    op : DiscreteOperator
        The assembled (K, M) pair
    """
    if grid.N != params.N:
        raise SchrolabUsageError(
            "Grid dimension ({}) does not match operator dimension ({})"
            .format(grid.N, params.N))
    if int(ell) != ell or ell < 0:
        raise SchrolabUsageError(
            "Angular momentum channel must be a non-negative integer ({})"
            .format(ell))
    if outer not in BOUNDARIES:
        raise SchrolabUsageError(
            "Unrecognised outer boundary '{}', can be one of {}"
            .format(outer, BOUNDARIES))
    N = grid.N
    r = grid.nodes
    n = grid.n
    cond = face_conductances(r[:-1], r[1:], N)
    diag = np.zeros(n)
    diag[:-1] -= cond
    diag[1:] -= cond
    offdiag = cond.copy()
    if outer == 'dirichlet':
        diag[-1] -= face_conductances(r[-1], grid.R, N)
    if ell > 0:
        # Dirichlet at the origin through the half-cell face
        diag[0] -= (0.5 * r[0]) ** (N - 1) / r[0]
    dual = grid.dual_edges(outer)
    if include_potential:
        diag -= cell_integrals(
            lambda t: params.Vtilde(t) * t ** (N - 1), dual,
            what='reduced potential')
        if ell > 0:
            diag -= (ell * (ell + N - 2) *
                     np.diff(dual ** (N - 2)) / (N - 2))
    if weighted:
        mass = cell_integrals(lambda t: t ** (N - 1) / params.a(t), dual,
                              what='weighted mass')
    else:
        mass = np.diff(dual ** N) / N
    inner = 'neumann' if ell == 0 else 'dirichlet'
    logger.debug("Assembled channel %d on %s (%s/%s boundaries)", ell, grid,
                 inner, outer)
    return DiscreteOperator(grid, params, diag, offdiag, mass, ell,
                            (inner, outer),
                            include_potential=include_potential,
                            weighted=weighted)


def apply_operator(op, u):
    """
    Discrete action M^-1 K u of the operator (A, or A_0 when the potential
    is excluded)
    """
    u = np.asarray(u)
    if u.shape != (len(op),):
        raise SchrolabUsageError(
            "Vector of shape {} does not match operator dimension {}"
            .format(u.shape, len(op)))
    return op.matvec(u) / op.mass
