import logging
import numpy as np
from schrolab.exceptions import SchrolabUsageError

logger = logging.getLogger('schrolab')


# Grids coarser than this are accepted but are far from converged
MIN_RECOMMENDED_NODES = 16


class RadialGrid(object):
    """
    Graded mesh of interior nodes r_i = R (i / (n + 1))^grading, i = 1..n,
    on the truncated radial domain [0, R] of R^N

    Parameters
    ----------
    R : float
        Truncation radius
    n : int
        Number of interior nodes
    grading : float
        Exponent (>= 1) of the node map, larger values cluster nodes
        towards the origin
    N : int
        Spatial dimension, which fixes the radial measure r^(N-1) dr
    """

    def __init__(self, R, n, grading=2.0, N=3):
        if not R > 0.0:
            raise SchrolabUsageError(
                "Truncation radius must be positive ({})".format(R))
        if int(n) != n or n < 1:
            raise SchrolabUsageError(
                "Number of grid nodes must be a positive integer ({})"
                .format(n))
        if not grading >= 1.0:
            raise SchrolabUsageError(
                "Grid grading must be at least 1 ({})".format(grading))
        if int(N) != N or N < 1:
            raise SchrolabUsageError(
                "Dimension must be a positive integer ({})".format(N))
        self._R = float(R)
        self._n = int(n)
        self._grading = float(grading)
        self._N = int(N)
        self._nodes = self._R * (np.arange(1, self._n + 1) /
                                 (self._n + 1.0)) ** self._grading
        self._nodes.setflags(write=False)

    def __repr__(self):
        return "{}(R={}, n={}, grading={}, N={})".format(
            type(self).__name__, self.R, self.n, self.grading, self.N)

    def __eq__(self, other):
        return (self.R == other.R and self.n == other.n and
                self.grading == other.grading and self.N == other.N)

    def __hash__(self):
        return hash((self.R, self.n, self.grading, self.N))

    def __len__(self):
        return self._n

    @property
    def R(self):
        return self._R

    @property
    def n(self):
        return self._n

    @property
    def grading(self):
        return self._grading

    @property
    def N(self):
        return self._N

    @property
    def nodes(self):
        return self._nodes

    @property
    def edges(self):
        "Primal edges {0, r_1, ..., r_n, R}"
        return np.concatenate(([0.0], self._nodes, [self._R]))

    @property
    def cell_volumes(self):
        """
        Radial measure of the n + 1 primal intervals between consecutive
        edges, which sum to R^N / N
        """
        return np.diff(self.edges ** self.N) / self.N

    def dual_edges(self, outer='dirichlet'):
        """
        Edges of the control volumes around each node: 0, the midpoints
        between nodes and finally the midpoint to R (Dirichlet) or R itself
        (Neumann)
        """
        mids = 0.5 * (self._nodes[1:] + self._nodes[:-1])
        if outer == 'dirichlet':
            last = 0.5 * (self._nodes[-1] + self._R)
        elif outer == 'neumann':
            last = self._R
        else:
            raise SchrolabUsageError(
                "Unrecognised outer boundary '{}'".format(outer))
        return np.concatenate(([0.0], mids, [last]))

    @property
    def control_volumes(self):
        return np.diff(self.dual_edges() ** self.N) / self.N

    @property
    def max_width(self):
        return float(np.diff(self.edges).max())

    def to_dict(self):
        return {'R': self.R, 'n': self.n, 'grading': self.grading,
                'N': self.N}


def build_grid(R, n, grading=2.0, N=3):
    """
    Builds a graded radial grid, see RadialGrid
    """
    grid = RadialGrid(R, n, grading=grading, N=N)
    if n < MIN_RECOMMENDED_NODES:
        logger.warning(
            "Building radial grid with only %d nodes, results will be far "
            "from converged", n)
    return grid


def rescale_grid(grid, factor=2.0):
    """
    Returns a grid on [0, factor * R] with the same local node spacing as
    'grid' at every radius it covers, i.e. with (n + 1) scaled by
    factor^(1 / grading)
    """
    if not factor > 0.0:
        raise SchrolabUsageError(
            "Rescale factor must be positive ({})".format(factor))
    n = int(round(factor ** (1.0 / grid.grading) * (grid.n + 1))) - 1
    return build_grid(grid.R * factor, max(n, 1), grading=grid.grading,
                      N=grid.N)
