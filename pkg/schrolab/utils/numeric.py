"""
Numerical helpers shared across components: sphere constants, graded
Gauss-Legendre panels, discrete norms and sign-change counting
"""
import math
from functools import lru_cache
import numpy as np
from scipy.special import gamma as euler_gamma
from schrolab.exceptions import SchrolabUsageError


def sphere_area(N):
    """
    Surface area of the unit sphere in R^N, i.e. 2 pi^{N/2} / Gamma(N/2)
    """
    if N < 1:
        raise SchrolabUsageError(
            "Sphere area requires a positive dimension ({})".format(N))
    return 2.0 * math.pi ** (N / 2.0) / float(euler_gamma(N / 2.0))


def ball_volume(N, radius):
    return sphere_area(N) * radius ** N / N


@lru_cache(maxsize=64)
def leggauss(order):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=64)
def _graded_panel_edges(levels):
    """
    Panel edges on [0, 1] halving in width towards both ends, which
    resolves integrable endpoint singularities of power type
    """
    halves = 0.5 ** np.arange(1, levels + 1)
    edges = np.unique(np.concatenate(([0.0, 1.0], halves, 1.0 - halves)))
    edges.setflags(write=False)
    return edges


def composite_gauss_nodes(order, levels=12):
    """
    Nodes and weights of a composite Gauss-Legendre rule on [0, 1] over
    panels graded towards both end points

    Parameters
    ----------
    order : int
        Number of Gauss-Legendre nodes per panel
    levels : int
        Number of halvings towards each end point

    Returns
    -------
    nodes : np.ndarray
        Quadrature nodes in (0, 1)
    weights : np.ndarray
        Matching quadrature weights (sum to 1)
    """
    x, w = leggauss(order)
    edges = _graded_panel_edges(levels)
    lo = edges[:-1, None]
    width = np.diff(edges)[:, None]
    nodes = lo + 0.5 * width * (x[None, :] + 1.0)
    weights = 0.5 * width * w[None, :]
    return nodes.ravel(), weights.ravel()


def lp_norm(values, weights, p):
    """
    Discrete L^p norm (sum_i w_i |v_i|^p)^{1/p} with positive weights
    """
    values = np.abs(np.asarray(values))
    if np.isinf(p):
        return float(values.max()) if values.size else 0.0
    return float(np.sum(weights * values ** p) ** (1.0 / p))


def sign_changes(vector, rel_floor=1e-8):
    """
    Counts the sign changes of a vector, ignoring entries smaller than
    'rel_floor' times its maximum magnitude
    """
    vector = np.asarray(vector, dtype=float)
    if not vector.size:
        return 0
    scale = np.abs(vector).max()
    signs = np.sign(vector[np.abs(vector) > rel_floor * scale])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
