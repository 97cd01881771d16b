import math
import logging
import numpy as np
from scipy.special import comb
from schrolab.exceptions import SchrolabUsageError, SchrolabAccuracyError
from schrolab.discretization import assemble_operator
from schrolab.utils import parallel_map
from .solver import solve_spectrum

logger = logging.getLogger('schrolab')


def channel_degeneracy(ell, N):
    """
    Dimension of the space of spherical harmonics of degree 'ell' in R^N,
    (2 ell + N - 2) (ell + N - 3)! / (ell! (N - 2)!)
    """
    if ell < 0 or N < 3:
        raise SchrolabUsageError(
            "Channel degeneracy needs ell >= 0 and N >= 3 ({}, {})"
            .format(ell, N))
    return int(round(comb(ell + N - 3, ell, exact=True) *
                     (2 * ell + N - 2) / (N - 2)))


class MultiChannelSpectrum(object):
    """
    Spectra of the angular channels ell = 0..L, merged into the spectrum of
    the full operator on R^N with multiplicities

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    grid : RadialGrid
        The radial grid shared by all channels
    channels : dict[int, SpectrumResult]
        Spectrum of each channel
    cut : float | None
        The eigenvalue cut the channels were truncated at, if any
    """

    def __init__(self, params, grid, channels, cut=None):
        self._params = params
        self._grid = grid
        self._channels = dict(channels)
        self._cut = cut

    def __repr__(self):
        return "{}(params={}, grid={}, ells={})".format(
            type(self).__name__, self.params, self.grid,
            sorted(self._channels))

    @property
    def params(self):
        return self._params

    @property
    def grid(self):
        return self._grid

    @property
    def channels(self):
        return self._channels

    @property
    def cut(self):
        return self._cut

    @property
    def ells(self):
        return sorted(self._channels)

    def degeneracy(self, ell):
        return channel_degeneracy(ell, self._params.N)

    def merged(self):
        """
        All levels in decreasing order as (eigenvalue, ell, multiplicity)
        """
        levels = [(float(lam), ell, self.degeneracy(ell))
                  for ell, spectrum in self._channels.items()
                  for lam in spectrum.eigenvalues]
        return sorted(levels, key=lambda l: (-l[0], l[1]))

    @property
    def top(self):
        return max(float(s.eigenvalues[0]) for s in self._channels.values()
                   if len(s))


def solve_channels(grid, params, L_max=3, k=10, jobs=1, **kwargs):
    """
    Solves the top 'k' levels of every channel ell = 0..L_max

    Parameters
    ----------
    grid : RadialGrid
        The radial grid
    params : OperatorParams
        The operator parameters
    L_max : int
        Highest angular channel
    k : int
        Levels per channel
    jobs : int
        Number of worker threads the channels are distributed over
    kwargs : dict
        Passed on to assemble_operator

    Returns
    -------
    spectra : MultiChannelSpectrum
        Per-channel spectra and their merge
    """
    def solve(ell):
        op = assemble_operator(grid, params, ell=ell, **kwargs)
        return ell, solve_spectrum(op, k=min(k, len(op)))

    channels = parallel_map(solve, range(L_max + 1), jobs=jobs)
    return MultiChannelSpectrum(params, grid, channels)


def kernel_spectra(grid, params, t_min, tail=1e-12, max_ell=200, jobs=1):
    """
    Collects, per channel, every level lambda with exp(lambda t_min) above
    'tail', adding channels until a channel's ground level falls below the
    cut (channel ground levels decrease with ell)

    Parameters
    ----------
    grid : RadialGrid
        The radial grid
    params : OperatorParams
        The operator parameters
    t_min : float
        Smallest time the kernel will be evaluated at
    tail : float
        Size of the discarded terms exp(lambda t_min)
    max_ell : int
        Channel beyond which the truncation is declared inaccurate
    jobs : int
        Worker threads for the channel solves

    Returns
    -------
    spectra : MultiChannelSpectrum
        Per-channel spectra truncated at log(tail) / t_min
    """
    if not t_min > 0.0:
        raise SchrolabUsageError(
            "Kernel spectra need a positive time ({})".format(t_min))
    cut = math.log(tail) / t_min
    channels = []
    batch = max(jobs, 1)
    ell = 0
    while True:
        def solve(l):
            op = assemble_operator(grid, params, ell=l)
            return l, solve_spectrum(op, lower=cut)

        solved = parallel_map(solve, range(ell, ell + batch), jobs=jobs)
        for l, spectrum in solved:
            if not len(spectrum):
                logger.debug("Kernel spectra truncated before channel %d "
                             "(cut %g)", l, cut)
                return MultiChannelSpectrum(params, grid, channels, cut=cut)
            channels.append((l, spectrum))
        ell += batch
        if ell > max_ell:
            raise SchrolabAccuracyError(
                "Channel ground levels still above the kernel cut {} at "
                "ell={}".format(cut, max_ell))
