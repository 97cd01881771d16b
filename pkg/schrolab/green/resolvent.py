import logging
import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import solveh_banded, solve_banded, eigvalsh_tridiagonal
from schrolab.exceptions import (
    SchrolabUsageError, SchrolabNumericError, SchrolabSpectralProximityError)

logger = logging.getLogger('schrolab')


# Relative distance to the spectrum treated as a collision
PROXIMITY_TOL = 1e-12


def eigenvalues(op):
    "All eigenvalues of M^-1 K in decreasing order"
    scale = 1.0 / np.sqrt(op.mass)
    d = op.diag * scale ** 2
    e = op.offdiag * scale[:-1] * scale[1:]
    return eigvalsh_tridiagonal(d, e)[::-1]


def nearest_eigenvalue(op, lam):
    values = eigenvalues(op)
    return float(values[int(np.argmin(np.abs(values - lam)))])


def _check_proximity(op, lam):
    nearest = nearest_eigenvalue(op, lam.real)
    if abs(lam - nearest) <= PROXIMITY_TOL * max(1.0, abs(lam)):
        raise SchrolabSpectralProximityError(
            "Resolvent parameter {} lies on the spectrum of {} (nearest "
            "eigenvalue {})".format(lam, op, nearest), nearest=nearest)


def solve_resolvent(op, lam, f):
    """
    Solves lam u - A u = f, i.e. (lam M - K) u = M f. For lam = 0 this is
    u = (-A)^-1 f

    Real lam >= 0 is always in the resolvent set (the spectrum is negative)
    and is solved by a banded Cholesky factorisation, any other lam by a
    banded LU solve after checking its distance to the spectrum

    Parameters
    ----------
    op : DiscreteOperator
        The operator A
    lam : float | complex
        The resolvent parameter
    f : np.ndarray
        Right-hand side at the grid nodes

    Returns
    -------
    u : np.ndarray
        The solution, complex when lam is
    """
    f = np.asarray(f)
    if f.shape != (len(op),):
        raise SchrolabUsageError(
            "Right-hand side of shape {} does not match operator dimension "
            "{}".format(f.shape, len(op)))
    lam = complex(lam)
    rhs = op.mass * f
    if lam.imag == 0.0 and lam.real >= 0.0:
        try:
            return solveh_banded(op.negated_upper_band(lam.real), rhs)
        except LinAlgError as e:
            _check_proximity(op, lam)
            raise SchrolabNumericError(
                "Resolvent system of {} is not positive definite at {}: {}"
                .format(op, lam, e), diagnostics={'lambda': lam.real})
    if abs(lam.imag) <= PROXIMITY_TOL * max(1.0, abs(lam)):
        _check_proximity(op, lam)
    n = len(op)
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = -op.offdiag
    ab[1] = lam * op.mass - op.diag
    ab[2, :-1] = -op.offdiag
    if lam.imag == 0.0:
        ab = ab.real
    try:
        return solve_banded((1, 1), ab, rhs)
    except LinAlgError:
        nearest = nearest_eigenvalue(op, lam.real)
        raise SchrolabSpectralProximityError(
            "Resolvent system of {} is singular at {} (nearest eigenvalue "
            "{})".format(op, lam, nearest), nearest=nearest)


def resolvent_positivity(op, lam, f):
    """
    Smallest entry of R(lam) f relative to |f|_inf, which is >= -1e-12 for
    non-negative f when the resolvent is a positive operator
    """
    u = solve_resolvent(op, lam, f)
    return float(u.min() / np.abs(f).max())


def resolvent_identity_error(op, lam, mu, v):
    """
    Relative defect of R(lam) v - R(mu) v = (mu - lam) R(lam) R(mu) v
    """
    r_lam = solve_resolvent(op, lam, v)
    r_mu = solve_resolvent(op, mu, v)
    product = solve_resolvent(op, lam, r_mu)
    defect = r_lam - r_mu - (mu - lam) * product
    scale = max(np.abs(r_lam).max(), np.abs(r_mu).max())
    return float(np.abs(defect).max() / scale)
