import logging
import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import eigh_tridiagonal, solveh_banded
from schrolab.exceptions import (
    SchrolabUsageError, SchrolabNumericError, SchrolabDegeneracyError,
    SchrolabPropertyError)
from schrolab.utils import sign_changes

logger = logging.getLogger('schrolab')


# Ground levels closer than this (relative) are treated as degenerate
DEGENERACY_RTOL = 1e-10

# Shift of the inverse iteration used to polish the ground state, as a
# fraction of the spectral gap
POLISH_SHIFT = 1e-3


class SpectrumResult(object):
    """
    The largest eigenpairs of the generalised problem K psi = lambda M psi
    for one angular channel

    Parameters
    ----------
    op : DiscreteOperator
        The operator the spectrum was computed for
    eigenvalues : np.ndarray
        Eigenvalues in decreasing order
    eigenvectors : np.ndarray
        M-orthonormal eigenvectors, one per column
    """

    def __init__(self, op, eigenvalues, eigenvectors):
        self._op = op
        self._eigenvalues = eigenvalues
        self._eigenvectors = eigenvectors
        self._residuals = None

    def __repr__(self):
        return "{}(ell={}, k={}, top={})".format(
            type(self).__name__, self.ell, len(self),
            self._eigenvalues[:1])

    def __len__(self):
        return len(self._eigenvalues)

    @property
    def op(self):
        return self._op

    @property
    def ell(self):
        return self._op.ell

    @property
    def grid_ref(self):
        return self._op.provenance()

    @property
    def eigenvalues(self):
        return self._eigenvalues

    @property
    def eigenvectors(self):
        return self._eigenvectors

    @property
    def residuals(self):
        """
        Normwise backward errors |K psi - lambda M psi|_inf /
        ((|K|_inf + |lambda| |M|_inf) |psi|_inf) of every pair
        """
        if self._residuals is None:
            K_norm = self._op.stiffness_inf_norm()
            M_norm = float(self._op.mass.max())
            residuals = []
            for lam, psi in zip(self._eigenvalues, self._eigenvectors.T):
                r = self._op.matvec(psi) - lam * self._op.mass * psi
                residuals.append(
                    np.abs(r).max() / ((K_norm + abs(lam) * M_norm) *
                                       np.abs(psi).max()))
            self._residuals = np.array(residuals)
        return self._residuals

    def orthonormality_error(self):
        gram = self._eigenvectors.T @ (self._op.mass[:, None] *
                                       self._eigenvectors)
        return float(np.abs(gram - np.eye(len(self))).max())


class GroundState(object):
    """
    The top eigenpair of the ell = 0 channel with a strictly positive,
    M-normalised eigenvector
    """

    def __init__(self, op, lambda0, psi, lambda1):
        self._op = op
        self._lambda0 = lambda0
        self._psi = psi
        self._lambda1 = lambda1

    def __repr__(self):
        return "{}(lambda0={}, simplicity_gap={})".format(
            type(self).__name__, self.lambda0, self.simplicity_gap)

    @property
    def op(self):
        return self._op

    @property
    def lambda0(self):
        return self._lambda0

    @property
    def lambda1(self):
        return self._lambda1

    @property
    def psi(self):
        return self._psi

    @property
    def simplicity_gap(self):
        return self._lambda0 - self._lambda1

    @property
    def sign_changes(self):
        return sign_changes(self._psi)

    @property
    def boundary_ratio(self):
        "psi at the outermost node relative to its maximum"
        return float(self._psi[-1] / self._psi.max())


def solve_spectrum(op, k=1, lower=None):
    """
    Computes the k largest eigenpairs of (K, M) by reducing to the symmetric
    tridiagonal matrix M^-1/2 K M^-1/2 (M is diagonal) and calling a banded
    symmetric eigensolver

    Parameters
    ----------
    op : DiscreteOperator
        The operator to solve
    k : int
        Number of eigenpairs from the top of the spectrum
    lower : float | None
        If provided, 'k' is ignored and all eigenpairs with eigenvalue above
        'lower' are returned instead

    Returns
    -------
    spectrum : SpectrumResult
        Eigenvalues in decreasing order with M-orthonormal eigenvectors
    """
    n = len(op)
    scale = 1.0 / np.sqrt(op.mass)
    d = op.diag * scale ** 2
    e = op.offdiag * scale[:-1] * scale[1:]
    try:
        if lower is not None:
            # Eigenvalues of the reduced matrix are bounded above by its
            # largest Gershgorin radius
            upper = float(np.max(d + np.abs(np.concatenate(([0.0], e))) +
                                 np.abs(np.concatenate((e, [0.0])))))
            if not lower < upper:
                values = np.zeros(0)
                vectors = np.zeros((n, 0))
            else:
                values, vectors = eigh_tridiagonal(
                    d, e, select='v', select_range=(lower, upper))
        else:
            if int(k) != k or not 1 <= k <= n:
                raise SchrolabUsageError(
                    "Number of eigenpairs must lie in [1, {}] ({})"
                    .format(n, k))
            values, vectors = eigh_tridiagonal(
                d, e, select='i', select_range=(n - k, n - 1))
    except (LinAlgError, ValueError) as e:
        raise SchrolabNumericError(
            "Tridiagonal eigensolver failed on {}: {}".format(op, e),
            diagnostics={'n': n, 'k': k, 'lower': lower, 'ell': op.ell,
                         'error': str(e)})
    values = values[::-1]
    vectors = scale[:, None] * vectors[:, ::-1]
    logger.debug("Solved %d eigenpairs of channel %d (n=%d)", len(values),
                 op.ell, n)
    return SpectrumResult(op, values, vectors)


def ground_state(op):
    """
    Extracts the ground state of the ell = 0 channel, checking that it is
    simple, and polishes its eigenvector by shifted inverse iteration

    sigma M - K is a Stieltjes matrix for sigma above the top eigenvalue, so
    its Cholesky solve maps positive vectors to strictly positive vectors
    and the polished ground state has no spurious sign changes in its
    decaying tail

    Parameters
    ----------
    op : DiscreteOperator
        Operator of the ell = 0 channel

    Returns
    -------
    ground : GroundState
        The (lambda0, psi) pair and the simplicity gap
    """
    if op.ell != 0:
        raise SchrolabUsageError(
            "Ground state is extracted from the ell = 0 channel only "
            "(ell={})".format(op.ell))
    if len(op) < 2:
        raise SchrolabUsageError(
            "Ground state simplicity needs at least two nodes")
    spectrum = solve_spectrum(op, k=2)
    lambda0, lambda1 = spectrum.eigenvalues
    gap = lambda0 - lambda1
    if gap < DEGENERACY_RTOL * abs(lambda0):
        raise SchrolabDegeneracyError(
            "Ground level {} of {} is not simple (gap {})".format(
                lambda0, op, gap),
            diagnostics={'lambda0': lambda0, 'lambda1': lambda1})
    psi = spectrum.eigenvectors[:, 0]
    if np.dot(op.mass, psi) < 0.0:
        psi = -psi
    shifted = op.negated_upper_band(lambda0 + POLISH_SHIFT * gap)
    x = np.abs(psi)
    for _ in range(2):
        try:
            x = solveh_banded(shifted, op.mass * x)
        except LinAlgError as e:
            raise SchrolabNumericError(
                "Shifted solve failed while polishing ground state of {}: "
                "{}".format(op, e), diagnostics={'lambda0': lambda0})
        x /= np.sqrt(np.dot(op.mass, x ** 2))
    if not np.all(x > 0.0):
        worst = int(np.argmin(x))
        raise SchrolabPropertyError(
            worst, "Ground state of {} is not strictly positive ({} at node "
            "{})".format(op, x[worst], worst))
    return GroundState(op, float(lambda0), x, float(lambda1))


class AccumulationReport(object):
    """
    Gap sequence of the computed eigenvalues. A strictly decreasing
    sequence with gaps bounded away from zero is the discrete stand-in for
    accumulation at -infinity, so the verdict is labelled a surrogate
    """

    label = 'surrogate'

    def __init__(self, eigenvalues):
        self._eigenvalues = np.asarray(eigenvalues)
        self._gaps = -np.diff(self._eigenvalues)

    def __repr__(self):
        return "{}(gaps={})".format(type(self).__name__, self.gaps)

    @property
    def gaps(self):
        return self._gaps

    @property
    def strictly_decreasing(self):
        return bool(np.all(self._gaps > 0.0))

    @property
    def min_gap(self):
        return float(self._gaps.min()) if len(self._gaps) else None

    @property
    def gaps_growing(self):
        "Whether the gaps are non-decreasing beyond the first few levels"
        return bool(np.all(np.diff(self._gaps) >= -1e-8 * self._gaps[1:]))

    def holds(self):
        return self.strictly_decreasing and (not len(self._gaps) or
                                             self.min_gap > 0.0)


def accumulation_check(spectrum):
    """
    Reports the gap sequence of a spectrum (empty for a single level)
    """
    if len(spectrum) < 10:
        logger.info("Accumulation check on only %d levels", len(spectrum))
    return AccumulationReport(spectrum.eigenvalues)
