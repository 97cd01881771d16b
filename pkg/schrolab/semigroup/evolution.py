import math
import logging
import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import cholesky_banded, cho_solve_banded
from schrolab.exceptions import SchrolabUsageError, SchrolabNumericError

logger = logging.getLogger('schrolab')


SCHEMES = ('midpoint', 'euler')

FALLBACKS = (None, 'euler')

# Tolerated undershoot relative to max |u0| for nonnegative data
POSITIVITY_RTOL = 1e-12

MAX_HALVINGS = 3


class EvolutionResult(object):
    """
    States of the discrete evolution M u' = K u at the requested times

    Parameters
    ----------
    op : DiscreteOperator
        The generator
    times : np.ndarray
        Recorded times
    states : np.ndarray
        One state per row, matching 'times'
    scheme : dict
        Descriptor of the time stepping actually used ('name', 'step' and,
        when positivity was enforced, 'halvings', 'positivity_violated',
        'fallback_from' and 'downgraded')
    scale : float | None
        Reference magnitude of the relative undershoot, max |u0|. Defaults to
        the largest entry of the first recorded state
    """

    def __init__(self, op, times, states, scheme, scale=None):
        self._op = op
        self._times = times
        self._states = states
        self._scheme = scheme
        self._scale = scale

    def __repr__(self):
        return "{}(times={}, scheme={})".format(
            type(self).__name__, list(self._times), self._scheme)

    def __len__(self):
        return len(self._times)

    @property
    def op(self):
        return self._op

    @property
    def times(self):
        return self._times

    @property
    def states(self):
        return self._states

    @property
    def scheme(self):
        return self._scheme

    @property
    def positive(self):
        "Whether no recorded state undershoots -1e-12 max |u0|"
        return self.min_relative() >= -POSITIVITY_RTOL

    @property
    def downgraded(self):
        return bool(self._scheme.get('downgraded', False))

    @property
    def mass_trace(self):
        "Integral of u in the discrete measure M at every recorded time"
        return self._states @ self._op.mass

    def at(self, t):
        matches = np.flatnonzero(np.isclose(self._times, t, rtol=1e-12,
                                            atol=0.0))
        if not len(matches):
            raise SchrolabUsageError(
                "Time {} was not recorded ({})".format(t, self._times))
        return self._states[matches[0]]

    def min_relative(self):
        "Smallest state entry relative to max |u0|"
        scale = self._scale
        if scale is None:
            scale = np.abs(self._states[0]).max()
        return float(self._states.min() / scale) if scale else 0.0


class _Stepper(object):
    """
    Banded Cholesky factorisations of (1/theta h) M - K, cached per step
    size
    """

    def __init__(self, op, scheme):
        self._op = op
        self._theta = 0.5 if scheme == 'midpoint' else 1.0
        self._factors = {}

    def step(self, u, h):
        shift = 1.0 / (self._theta * h)
        try:
            factor = self._factors[h]
        except KeyError:
            try:
                factor = cholesky_banded(self._op.negated_upper_band(shift))
            except LinAlgError as e:
                raise SchrolabNumericError(
                    "Could not factorise implicit step of {} (h={}): {}"
                    .format(self._op, h, e), diagnostics={'step': h})
            self._factors[h] = factor
        rhs = shift * self._op.mass * u
        if self._theta < 1.0:
            rhs += self._op.matvec(u)
        return cho_solve_banded((factor, False), rhs)


def _integrate(op, u0, times, step, scheme):
    stepper = _Stepper(op, scheme)
    states = []
    u = np.array(u0, dtype=float)
    current = 0.0
    for t in times:
        interval = t - current
        if interval > 0.0:
            nsteps = max(int(math.ceil(interval / step * (1.0 - 1e-12))), 1)
            h = interval / nsteps
            for _ in range(nsteps):
                u = stepper.step(u, h)
            current = t
        states.append(u.copy())
    return np.array(states)


def evolve(op, u0, times, step, scheme='midpoint', enforce_positivity=False,
           fallback=None):
    """
    Evolves M u' = K u from u(0) = u0 with implicit midpoint (Crank-Nicolson)
    or backward Euler steps, recording the state at each requested time.
    Every interval between recorded times is split into equal steps no
    longer than 'step'

    Parameters
    ----------
    op : DiscreteOperator
        The generator
    u0 : np.ndarray
        Initial state
    times : list[float]
        Non-decreasing, non-negative times to record (0 records u0)
    step : float
        Maximum time step
    scheme : str
        'midpoint' or 'euler'
    enforce_positivity : bool
        For nonnegative u0, check that all states stay above
        -1e-12 max|u0|. Violations are retried with halved steps, up to
        MAX_HALVINGS times. If the undershoot persists the descriptor is
        marked with 'positivity_violated' (see EvolutionResult.positive)
    fallback : str | None
        Scheme to switch to once the halvings are exhausted. Only 'euler'
        is accepted, and a result obtained with it is marked 'downgraded'

    Returns
    -------
    result : EvolutionResult
        Recorded states and the scheme descriptor
    """
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (len(op),):
        raise SchrolabUsageError(
            "Initial state of shape {} does not match operator dimension {}"
            .format(u0.shape, len(op)))
    times = np.asarray(times, dtype=float)
    if np.any(times < 0.0) or np.any(np.diff(times) < 0.0):
        raise SchrolabUsageError(
            "Evolution times must be non-negative and non-decreasing ({})"
            .format(times))
    if not step > 0.0:
        raise SchrolabUsageError(
            "Time step must be positive ({})".format(step))
    if scheme not in SCHEMES:
        raise SchrolabUsageError(
            "Unrecognised time stepping scheme '{}', can be one of {}"
            .format(scheme, SCHEMES))
    if fallback not in FALLBACKS:
        raise SchrolabUsageError(
            "Unrecognised positivity fallback '{}', can be one of {}"
            .format(fallback, FALLBACKS))
    if enforce_positivity and np.any(u0 < 0.0):
        raise SchrolabUsageError(
            "Positivity can only be enforced for nonnegative initial data")
    states = _integrate(op, u0, times, step, scheme)
    descriptor = {'name': scheme, 'step': step}
    scale = float(np.abs(u0).max())
    if not enforce_positivity:
        return EvolutionResult(op, times, states, descriptor, scale)
    floor = -POSITIVITY_RTOL * scale
    h = step
    halvings = 0
    while states.min() < floor and halvings < MAX_HALVINGS:
        h /= 2.0
        halvings += 1
        logger.info("Retrying evolution with halved step %g", h)
        states = _integrate(op, u0, times, h, scheme)
        descriptor = {'name': scheme, 'step': h, 'halvings': halvings}
    if states.min() >= floor:
        return EvolutionResult(op, times, states, descriptor, scale)
    if fallback is None or fallback == scheme:
        logger.warning(
            "%s undershoots by %g on %s after %d step halvings (h=%g)",
            scheme, states.min(), op, halvings, h)
        descriptor['positivity_violated'] = True
        return EvolutionResult(op, times, states, descriptor, scale)
    logger.warning(
        "%s undershoots by %g on %s after %d step halvings, downgrading to "
        "%s (h=%g)", scheme, states.min(), op, halvings, fallback, step)
    states = _integrate(op, u0, times, step, fallback)
    descriptor = {'name': fallback, 'step': step, 'fallback_from': scheme,
                  'halvings': halvings, 'downgraded': True}
    if states.min() < floor:
        descriptor['positivity_violated'] = True
    return EvolutionResult(op, times, states, descriptor, scale)
