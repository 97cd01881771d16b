import logging
import numpy as np
from schrolab.exceptions import SchrolabUsageError
from schrolab.discretization import (
    build_grid, rescale_grid, assemble_operator)
from .evolution import evolve

logger = logging.getLogger('schrolab')


# Absolute ordering tolerance of the domination check, relative to max u0
DOMINATION_RTOL = 1e-10

# Values below this are reported as underflow by the decay probe
UNDERFLOW_FLOOR = 1e-300


class DominationReport(object):
    """
    Outcome of comparing the semigroup T(t) of A with the semigroup S(t) of
    the pure diffusion a Lap, evolved from the same nonnegative data

    Parameters
    ----------
    t : float
        Comparison time
    excess : float
        Largest value of u_T - u_S relative to max u0
    worst_node : int
        Node at which the excess is attained
    step : float
        Time step of the runs
    scheme : dict
        Scheme descriptor of the runs that were compared, marked
        'downgraded' when they had to be rerun with backward Euler
    """

    def __init__(self, t, excess, worst_node, step, scheme,
                 refined_excess=None):
        self.t = t
        self.excess = excess
        self.worst_node = worst_node
        self.step = step
        self.scheme = scheme
        self.refined_excess = refined_excess

    def __repr__(self):
        return "{}(t={}, excess={}, worst_node={}, holds={})".format(
            type(self).__name__, self.t, self.excess, self.worst_node,
            self.holds)

    @property
    def holds(self):
        excesses = [self.excess]
        if self.refined_excess is not None:
            excesses.append(self.refined_excess)
        return all(e <= DOMINATION_RTOL for e in excesses)

    @property
    def downgraded(self):
        return bool(self.scheme.get('downgraded', False))


def _excess(op_T, op_S, u0, t, step, scheme):
    u_T = evolve(op_T, u0, [t], step, scheme=scheme).states[-1]
    u_S = evolve(op_S, u0, [t], step, scheme=scheme).states[-1]
    diff = (u_T - u_S) / np.abs(u0).max()
    worst = int(np.argmax(diff))
    return float(diff[worst]), worst


def domination_check(params, grid, u0, t, step=1e-3):
    """
    Checks T(t) u0 <= S(t) u0 + 1e-10 max u0 nodewise, where T is generated
    by A and S by the diffusion part alone on the same grid. The check is
    repeated with half the step to rule out time-stepping artefacts, and is
    rerun with backward Euler (which preserves the ordering exactly) if
    implicit midpoint violates it

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    grid : RadialGrid
        The radial grid
    u0 : np.ndarray
        Nonnegative initial data
    t : float
        Comparison time
    step : float
        Time step

    Returns
    -------
    report : DominationReport
        Largest excess and its node
    """
    u0 = np.asarray(u0, dtype=float)
    if np.any(u0 < 0.0) or not np.any(u0 > 0.0):
        raise SchrolabUsageError(
            "Domination check needs nonnegative, nonzero initial data")
    op_T = assemble_operator(grid, params, include_potential=True)
    op_S = assemble_operator(grid, params, include_potential=False)
    scheme = 'midpoint'
    excess, worst = _excess(op_T, op_S, u0, t, step, scheme)
    refined, _ = _excess(op_T, op_S, u0, t, step / 2.0, scheme)
    if max(excess, refined) > DOMINATION_RTOL:
        logger.warning(
            "Implicit midpoint violates domination by %g at node %d "
            "(t=%g), rerunning with backward Euler",
            max(excess, refined), worst, t)
        excess, worst = _excess(op_T, op_S, u0, t, step, 'euler')
        refined, _ = _excess(op_T, op_S, u0, t, step / 2.0, 'euler')
        descriptor = {'name': 'euler', 'fallback_from': scheme,
                      'downgraded': True}
    else:
        descriptor = {'name': scheme}
    return DominationReport(t, excess, worst, step, descriptor,
                            refined_excess=refined)


class DecayProfile(object):
    """
    Outer-region maxima of T(t)1 on domains of increasing radius, evolved
    with the configured step and with half of it
    """

    def __init__(self, t, radii, outer_max, monotone_in_r, schemes,
                 refined_outer_max=None):
        self.t = t
        self.radii = list(radii)
        self.outer_max = list(outer_max)
        self.monotone_in_r = list(monotone_in_r)
        self.schemes = schemes
        self.refined_outer_max = (list(refined_outer_max)
                                  if refined_outer_max is not None else None)

    def __repr__(self):
        return "{}(t={}, radii={}, outer_max={}, refined_outer_max={})".format(
            type(self).__name__, self.t, self.radii, self.outer_max,
            self.refined_outer_max)

    @property
    def underflow(self):
        return [m < UNDERFLOW_FLOOR for m in self.outer_max]

    @property
    def refinement_change(self):
        "Relative change of the outer maxima when the step is halved"
        if self.refined_outer_max is None:
            return None
        changes = []
        for m, m_ref in zip(self.outer_max, self.refined_outer_max):
            if max(m, m_ref) < UNDERFLOW_FLOOR:
                changes.append(0.0)
            else:
                changes.append(abs(m - m_ref) / max(m, m_ref))
        return changes

    @staticmethod
    def _decreasing(maxima):
        for prev, curr in zip(maxima[:-1], maxima[1:]):
            if prev < UNDERFLOW_FLOOR:
                continue
            if not curr < prev:
                return False
        return True

    @property
    def decreasing_in_R(self):
        """
        Strict decrease of the outer maximum across domains, at both steps,
        required only while the maxima are above the underflow floor
        """
        return (self._decreasing(self.outer_max) and
                (self.refined_outer_max is None or
                 self._decreasing(self.refined_outer_max)))

    @property
    def positivity_violated(self):
        return any(s.get('positivity_violated', False) for s in self.schemes)

    @property
    def downgraded(self):
        return any(s.get('downgraded', False) for s in self.schemes)

    @property
    def holds(self):
        return (self.decreasing_in_R and all(self.monotone_in_r) and
                not self.positivity_violated)


def _outer_max(op, R, t, step, scheme, fallback):
    result = evolve(op, np.ones(len(op)), [t], step, scheme=scheme,
                    enforce_positivity=True, fallback=fallback)
    u = result.states[-1]
    outer = op.nodes > 0.5 * R
    # Non-increasing up to the positivity tolerance
    monotone = bool(np.all(np.diff(u[outer]) <= 1e-12))
    return float(u[outer].max()), monotone, result.scheme


def decay_of_one(params, t, radii=(20.0, 40.0, 80.0), n=400, grading=2.0,
                 step=1e-2, scheme='midpoint', fallback=None):
    """
    Evolves u0 = 1 on domains of increasing radius and reports the maximum
    of u(t) over r > R/2 on each, which must decrease with R (and with r at
    fixed R) for T(t)1 to vanish at infinity. Every domain is evolved twice,
    with 'step' and with half of it, and the decrease is required of both

    The first domain uses 'n' nodes, larger ones are rescaled to keep the
    local node spacing

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    t : float
        Evolution time (> 0)
    radii : list[float]
        Increasing truncation radii
    n : int
        Nodes on the first domain
    grading : float
        Grid grading
    step : float
        Time step
    scheme : str
        Time stepping scheme, see 'evolve'
    fallback : str | None
        Positivity fallback passed to 'evolve'. Runs that needed it are
        reported as downgraded

    Returns
    -------
    profile : DecayProfile
        Outer maxima per radius
    """
    if not t > 0.0:
        raise SchrolabUsageError(
            "Decay probe needs a positive time ({})".format(t))
    radii = sorted(radii)
    grid = build_grid(radii[0], n, grading=grading, N=params.N)
    outer_max = []
    refined_max = []
    monotone = []
    schemes = []
    for R in radii:
        if R != grid.R:
            grid = rescale_grid(grid, R / grid.R)
        op = assemble_operator(grid, params)
        m, mono, desc = _outer_max(op, R, t, step, scheme, fallback)
        m_ref, mono_ref, desc_ref = _outer_max(op, R, t, step / 2.0, scheme,
                                               fallback)
        outer_max.append(m)
        refined_max.append(m_ref)
        monotone.append(mono and mono_ref)
        schemes.extend((desc, desc_ref))
        logger.debug("Decay probe R=%g: outer max %g (half step %g)", R, m,
                     m_ref)
    return DecayProfile(t, radii, outer_max, monotone, schemes,
                        refined_outer_max=refined_max)


class IrreducibilityReport(object):

    def __init__(self, t, positive_fraction, first_zero):
        self.t = t
        self.positive_fraction = positive_fraction
        self.first_zero = first_zero

    def __repr__(self):
        return "{}(t={}, positive_fraction={})".format(
            type(self).__name__, self.t, self.positive_fraction)

    @property
    def holds(self):
        return self.positive_fraction == 1.0


def irreducibility_probe(params, grid, bump_center, t, width=None,
                         step=1e-2):
    """
    Evolves a compactly supported nonnegative bump and reports the fraction
    of nodes at which u(t) is strictly positive, which must be all of them
    for an irreducible (positivity improving) semigroup. Backward Euler is
    used since its resolvent steps are positivity improving themselves
    """
    if not t > 0.0:
        raise SchrolabUsageError(
            "Irreducibility probe needs a positive time ({})".format(t))
    if width is None:
        width = 0.05 * grid.R
    r = grid.nodes
    u0 = np.where(np.abs(r - bump_center) < width,
                  np.cos(0.5 * np.pi * (r - bump_center) / width) ** 2, 0.0)
    if not np.any(u0 > 0.0):
        raise SchrolabUsageError(
            "Bump at {} (width {}) contains no grid nodes".format(
                bump_center, width))
    op = assemble_operator(grid, params)
    u = evolve(op, u0, [t], step, scheme='euler').states[-1]
    positive = u > 0.0
    zeros = np.flatnonzero(~positive)
    return IrreducibilityReport(
        t, float(positive.mean()), int(zeros[0]) if len(zeros) else None)
