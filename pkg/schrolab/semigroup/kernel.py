import math
import numpy as np
from schrolab.exceptions import SchrolabUsageError, SchrolabAccuracyError


# Largest discarded term exp(lambda t) accepted by the kernel expansion
KERNEL_TAIL = 1e-12


class KernelDiagnostics(object):
    """
    Diagonal of the heat kernel p(t, x, x) in the weighted measure, built
    from the eigen-expansion over all channels. Its supremum bounds the
    L^1(mu) -> L^inf norm of T(t) by the Cauchy-Schwarz factorisation
    T(t) = T(t/2) T(t/2)

    Parameters
    ----------
    t : float
        Time
    diagonal : np.ndarray
        p(t, r_i, r_i) at the grid nodes
    tail : float
        Largest discarded term of the expansion
    """

    def __init__(self, t, diagonal, tail):
        self._t = t
        self._diagonal = diagonal
        self._tail = tail

    def __repr__(self):
        return "{}(t={}, kernel_sup={})".format(
            type(self).__name__, self.t, self.kernel_sup)

    @property
    def t(self):
        return self._t

    @property
    def diagonal(self):
        return self._diagonal

    @property
    def tail(self):
        return self._tail

    @property
    def kernel_sup(self):
        return float(self._diagonal.max())

    @property
    def argmax(self):
        return int(np.argmax(self._diagonal))

    @property
    def l1_to_linf_bound(self):
        return self.kernel_sup


def _discarded_tail(spectra, t):
    if spectra.cut is not None:
        return math.exp(spectra.cut * t)
    # Without a cut the smallest retained level of each channel bounds the
    # discarded ones
    return max(math.exp(float(s.eigenvalues[-1]) * t)
               for s in spectra.channels.values() if len(s))


def kernel_diagnostics(spectra, t):
    """
    Computes p(t, x, x) = sum_{l,k} deg(l) exp(lambda_{l,k} t)
    psi_{l,k}(x)^2 / sigma_{N-1} at the grid nodes

    Parameters
    ----------
    spectra : MultiChannelSpectrum
        Channel spectra, typically from kernel_spectra
    t : float
        Time (> 0)

    Returns
    -------
    diagnostics : KernelDiagnostics
        The kernel diagonal and its supremum
    """
    if not t > 0.0:
        raise SchrolabUsageError(
            "Kernel diagnostics need a positive time ({})".format(t))
    tail = _discarded_tail(spectra, t)
    if tail > KERNEL_TAIL * (1.0 + 1e-9):
        raise SchrolabAccuracyError(
            "Kernel expansion at t={} discards terms of size {}, more "
            "eigenpairs are required".format(t, tail))
    sigma = spectra.params.sigma
    diagonal = np.zeros(spectra.grid.n)
    for ell, spectrum in spectra.channels.items():
        weights = (spectra.degeneracy(ell) / sigma *
                   np.exp(spectrum.eigenvalues * t))
        diagonal += (spectrum.eigenvectors ** 2) @ weights
    return KernelDiagnostics(t, diagonal, tail)


def kernel_matrix(spectra, t, ell=0):
    """
    The ell-channel radial kernel sum_k exp(lambda_k t) psi_k(r) psi_k(s),
    formed explicitly for small grids
    """
    spectrum = spectra.channels[ell]
    vectors = spectrum.eigenvectors
    return (vectors * np.exp(spectrum.eigenvalues * t)) @ vectors.T
