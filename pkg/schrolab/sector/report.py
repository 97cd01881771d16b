import math
import logging
import numpy as np
from schrolab.discretization import build_grid, assemble_operator
from .shift import (
    feasible_shift, shift_scan, dissipativity_slack, sector_angle,
    dual_angle, default_c_tilde)
from .rays import resolvent_norm_scan

logger = logging.getLogger('schrolab')


DEFAULT_ANGLES = (0.6 * math.pi, 0.75 * math.pi, 0.9 * math.pi)
DEFAULT_MODULI = tuple(np.geomspace(1e-1, 1e3, 9))

SHIFT_RTOL = 1e-6
SLACK_TOL = -1e-9


class SectorReport(object):
    """
    Dissipativity shift, sector angle and resolvent ray scans of one
    parameter set

    Parameters
    ----------
    c_tilde : float
        The margin of the dissipativity inequality
    omega : float
        The shift
    delta : float
        The angle constant
    theta_alpha : float
        arctan(delta)
    rays : list[RayScan]
        Resolvent norm scans per angle
    shift_check : ShiftCheck
        Closed-form shift against the dense scan
    slack : float
        Smallest relative slack of the dissipativity inequality
    """

    def __init__(self, c_tilde, omega, delta, theta_alpha, rays, shift_check,
                 slack):
        self.c_tilde = c_tilde
        self.omega = omega
        self.delta = delta
        self.theta_alpha = theta_alpha
        self.rays = rays
        self.shift_check = shift_check
        self.slack = slack

    def __repr__(self):
        return ("{}(c_tilde={}, omega={}, delta={}, theta_alpha={})"
                .format(type(self).__name__, self.c_tilde, self.omega,
                        self.delta, self.theta_alpha))

    @property
    def theta_dual(self):
        return dual_angle(self.delta)

    @property
    def shift_agrees(self):
        return self.shift_check.rel_error <= SHIFT_RTOL

    @property
    def dissipative(self):
        return self.slack >= SLACK_TOL

    @property
    def rays_hold(self):
        "Whether every exact ray satisfies its geometric bound"
        return all(r.holds for r in self.rays if r.exact)

    @property
    def holds(self):
        return self.shift_agrees and self.dissipative and self.rays_hold


def sector_report(params, grid=None, c_tilde=None, angles=DEFAULT_ANGLES,
                  moduli=DEFAULT_MODULI, ray_p=None, jobs=1,
                  c_tilde_objective='shift'):
    """
    Computes the sector constants of 'params' and scans the resolvent of
    its ell = 0 discretisation along 'angles'

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    grid : RadialGrid | None
        Grid of the resolvent scan, R = 20 and n = 400 by default
    c_tilde : float | None
        Margin of the dissipativity inequality, see default_c_tilde
    angles : list[float]
        Ray arguments
    moduli : list[float]
        Sampled |lambda|
    ray_p : float | None
        Lebesgue index of the ray scans, by default the operator's
    jobs : int
        Worker threads for the ray scans
    c_tilde_objective : str
        Objective of default_c_tilde when 'c_tilde' is None

    Returns
    -------
    report : SectorReport
        The constants and the scans
    """
    if c_tilde is None:
        c_tilde = default_c_tilde(params, objective=c_tilde_objective)
    if grid is None:
        grid = build_grid(20.0, 400, 2.0, N=params.N)
    omega = feasible_shift(params, c_tilde)
    delta, theta_alpha = sector_angle(params, c_tilde)
    op = assemble_operator(grid, params)
    rays = resolvent_norm_scan(op, angles, moduli, p=ray_p, jobs=jobs)
    return SectorReport(c_tilde, omega, delta, theta_alpha, rays,
                        shift_scan(params, c_tilde),
                        dissipativity_slack(params, c_tilde, omega))
