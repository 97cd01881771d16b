"""
Experiment suites. Each suite runs one group of numerical checks on the
configured operator, returns the tables backing them and emits a verdict
for every claim it declares
"""
import math
import zlib
import logging
from collections import namedtuple, OrderedDict
import numpy as np
import scipy.linalg
from schrolab.operator import lyapunov_constant, classify_reverse_holder
from schrolab.discretization import (
    build_grid, rescale_grid, assemble_operator)
from schrolab.spectrum import solve_spectrum, ground_state, kernel_spectra
from schrolab.semigroup import (
    evolve, domination_check, decay_of_one, kernel_diagnostics)
from schrolab.auxiliary import (
    fit_m_exponent, sample_m_profile, m_function, m_function_oracle,
    estimate_rh_constant, rh_refinement_study)
from schrolab.green import (
    green_at_origin, verify_green_bound, resolvent_positivity,
    resolvent_identity_error, WeightedEstimateSpec, weighted_estimate_report)
from schrolab.sector import sector_report, C_TILDE_OBJECTIVES
from schrolab.utils import parallel_map
from .parameter import ParamSpec
from .bundle import Table
from .verdicts import ClaimResult, PASS, SURROGATE, FAIL

logger = logging.getLogger('schrolab')


Claim = namedtuple('Claim', ('claim_id', 'anchor', 'surrogate'))


class SuiteResult(object):
    """
    Claims, evidence tables and the outputs passed on to dependent suites
    """

    def __init__(self, claims, tables, outputs=None):
        self.claims = list(claims)
        self.tables = list(tables)
        self.outputs = outputs if outputs is not None else {}

    def __repr__(self):
        return "{}(claims={}, tables={})".format(
            type(self).__name__, [c.claim_id for c in self.claims],
            [t.name for t in self.tables])


class Suite(object):
    """
    Base class of the experiment suites

    Parameters
    ----------
    config : ExperimentConfig
        The experiment configuration, which provides the operator, the grid
        and any overridden settings or tolerances
    """

    name = None
    depends_on = ()
    claims = ()
    setting_specs = ()
    tolerance_specs = ()

    def __init__(self, config):
        self._config = config

    def __repr__(self):
        return "{}(params={})".format(type(self).__name__, self.params)

    @property
    def config(self):
        return self._config

    @property
    def params(self):
        return self._config.params

    @property
    def grid(self):
        return self._config.grid

    @property
    def rng(self):
        "Generator seeded by the run seed and the suite name"
        return np.random.default_rng(
            [self._config.seed, zlib.crc32(self.name.encode())])

    def setting(self, name):
        return self._config.setting(self.name, name)

    def tolerance(self, name):
        return self._config.tolerance(self.name, name)

    @classmethod
    def setting_spec(cls, name):
        return cls._find_spec(cls.setting_specs, name)

    @classmethod
    def tolerance_spec(cls, name):
        return cls._find_spec(cls.tolerance_specs, name)

    @classmethod
    def _find_spec(cls, specs, name):
        for spec in specs:
            if spec.name == name:
                return spec
        raise KeyError(name)

    @classmethod
    def claim(cls, claim_id):
        return next(c for c in cls.claims if c.claim_id == claim_id)

    def run(self, upstream, jobs=1):
        """
        Runs the checks of the suite

        Parameters
        ----------
        upstream : dict[str, dict]
            Outputs of the suites this one depends on, by suite name
        jobs : int
            Worker threads available to the suite

        Returns
        -------
        result : SuiteResult
            Claims, tables and outputs
        """
        raise NotImplementedError

    def _result(self, claim_id, holds, numbers, tables, message=None):
        claim = self.claim(claim_id)
        if not holds:
            verdict = FAIL
        elif claim.surrogate:
            verdict = SURROGATE
        else:
            verdict = PASS
        return ClaimResult(
            claim.claim_id, claim.anchor, verdict, self.name,
            evidence=[t.fname(self.name) for t in tables],
            numbers=numbers, message=message)


def _rel_error(value, reference):
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)


class LyapunovSuite(Suite):

    name = 'lyapunov'
    claims = (
        Claim('lyapunov',
              "A phi <= C phi for phi(x) = 1 + |x|^gamma with "
              "C = sup A phi / phi", False),)
    setting_specs = (
        ParamSpec('gammas', [2.5, 3.0, 4.0], "Lyapunov exponents",
                  dtype=float, array=True),
        ParamSpec('window', 1e3, "Initial radius window of the scan"),
        ParamSpec('check_points', 10000,
                  "Log-spaced radii the inequality is checked on"),
        ParamSpec('oracle_points', 1000000,
                  "Radii of the brute-force scan"))
    tolerance_specs = (
        ParamSpec('slack', 1e-9, "Largest admitted (A phi - C phi) / phi"),
        ParamSpec('oracle', 1e-6,
                  "Relative agreement with the brute-force scan"))

    def oracle(self, gamma, window):
        "Largest ratio A phi / phi over a dense log and linear scan"
        half = self.setting('oracle_points') // 2
        radii = np.concatenate((np.geomspace(1e-8, window, half),
                                np.linspace(0.0, window, half + 1)[1:]))
        values = self.params.a(radii) * gamma * (
            self.params.N + gamma - 2.0) * radii ** (gamma - 2.0)
        values = values / (1.0 + radii ** gamma) - self.params.V(radii)
        return max(float(values.max()), 0.0)

    def run(self, upstream, jobs=1):
        table = Table('constants', ['gamma', 'C', 'r_star', 'window',
                                    'oracle', 'rel_error', 'max_slack'])
        worst_error = worst_slack = -np.inf
        for gamma in self.setting('gammas'):
            probe = lyapunov_constant(self.params, gamma,
                                      window=self.setting('window'))
            oracle = self.oracle(gamma, probe.window)
            error = _rel_error(probe.C, oracle)
            radii = np.geomspace(1e-6, probe.window,
                                 self.setting('check_points'))
            slack = float(probe.slack(radii).max())
            table.append((gamma, probe.C, probe.r_star, probe.window,
                          oracle, error, slack))
            worst_error = max(worst_error, error)
            worst_slack = max(worst_slack, slack)
        holds = (worst_slack <= self.tolerance('slack') and
                 worst_error <= self.tolerance('oracle'))
        numbers = OrderedDict(
            [('C_gamma{:g}'.format(g), c)
             for g, c in zip(table.column('gamma'), table.column('C'))] +
            [('max_rel_error', worst_error), ('max_slack', worst_slack)])
        return SuiteResult(
            [self._result('lyapunov', holds, numbers, [table])], [table])


class MFunctionSuite(Suite):

    name = 'mfunction'
    claims = (
        Claim('m-exponent',
              "m(x) behaves like (1 + |x|)^((beta - alpha) / 2) for large "
              "|x|", False),
        Claim('m-oracle',
              "1 / m(x) is the largest radius r with "
              "r^(2 - N) int_B(x, r) V/a <= 1", False))
    setting_specs = (
        ParamSpec('fit_radii',
                  [float(r) for r in np.geomspace(10.0, 1e3, 9)],
                  "Radii of the exponent fit", dtype=float, array=True),
        ParamSpec('oracle_radii',
                  [0.0] + [float(r) for r in np.geomspace(0.1, 100.0, 9)],
                  "Radii compared against the dense-scan oracle",
                  dtype=float, array=True),
        ParamSpec('profile_count', 12,
                  "Radii of the profile handed to the Green suite"))
    tolerance_specs = (
        ParamSpec('exponent', 0.1, "Absolute error of the fitted exponent"),
        ParamSpec('oracle', 1e-4, "Relative agreement with the oracle"))

    def run(self, upstream, jobs=1):
        estimate = fit_m_exponent(self.params, self.setting('fit_radii'),
                                  jobs=jobs)
        fit = Table('fit', ['radius', 'm', 'power_law'])
        for r, m in zip(estimate.radii, estimate.m_values):
            fit.append((r, m, estimate.fitted_constant *
                        (1.0 + r) ** estimate.fitted_exponent))
        exponent_error = abs(estimate.fitted_exponent -
                             estimate.expected_exponent)
        claims = [self._result(
            'm-exponent', exponent_error <= self.tolerance('exponent'),
            OrderedDict([('fitted', estimate.fitted_exponent),
                         ('expected', estimate.expected_exponent)]), [fit])]
        radii = self.setting('oracle_radii')

        def compare(s):
            return (m_function(self.params, s),
                    m_function_oracle(self.params, s))

        oracle = Table('oracle', ['radius', 'm', 'oracle', 'rel_error'])
        for s, (m, ref) in zip(radii, parallel_map(compare, radii,
                                                   jobs=jobs)):
            oracle.append((s, m, ref, _rel_error(m, ref)))
        worst = max(oracle.column('rel_error'))
        claims.append(self._result(
            'm-oracle', worst <= self.tolerance('oracle'),
            OrderedDict([('max_rel_error', worst)]), [oracle]))
        # The profile must reach the doubled Green function domain
        reach = 2.0 * self.grid.R
        profile_radii = np.concatenate((
            [0.0], np.geomspace(0.05, reach, self.setting('profile_count'))))
        m_profile = sample_m_profile(self.params, profile_radii, jobs=jobs)
        profile = Table('profile', ['radius', 'm'],
                        zip(m_profile.radii, m_profile.m_values))
        return SuiteResult(claims, [fit, oracle, profile],
                           outputs={'m_profile': m_profile})


class ReverseHolderSuite(Suite):

    name = 'rholder'
    claims = (
        Claim('reverse-holder',
              "V/a belongs to the reverse Hoelder class B_q: its q-mean "
              "over any ball is bounded by a multiple of its mean", True),)
    setting_specs = (
        ParamSpec('q', 1.5, "Reverse Hoelder index"),
        ParamSpec('count', 24, "Centers and radii of the base sample"),
        ParamSpec('refine', 10, "Refinement factor of the sample"),
        ParamSpec('extend', 10.0, "Extension factor of the sample windows"))
    tolerance_specs = (
        ParamSpec('constant_field', 1e-9,
                  "Deviation from 1 of the constant field ratio"),
        ParamSpec('growth', 0.05,
                  "Relative growth of the constant under refinement"))

    def run(self, upstream, jobs=1):
        q = self.setting('q')
        classes = Table('classification', ['label', 'q', 'holds', 'reason'])
        for verdict in classify_reverse_holder(self.params, [q]):
            classes.append(verdict)
        constant = estimate_rh_constant(
            self.params, q, field=lambda t: np.full_like(t, 2.0))
        deviation = max(abs(constant.constant_estimate - 1.0),
                        abs(constant.min_ratio - 1.0))
        study = rh_refinement_study(
            self.params, q, count=self.setting('count'),
            refine=self.setting('refine'), extend=self.setting('extend'),
            tolerance=self.tolerance('growth'))
        refinement = Table('refinement', ['sample', 'count', 'constant',
                                          'growth', 'worst_center',
                                          'worst_radius'])
        for label, report, growth in (
                ('base', study.base, 0.0),
                ('refined', study.refined, study.refinement_growth),
                ('extended', study.extended, study.window_growth)):
            refinement.append((label, report.sample_count,
                               report.constant_estimate, growth) +
                              tuple(report.worst_ball))
        holds = (deviation <= self.tolerance('constant_field') and
                 study.refinement_growth < self.tolerance('growth'))
        numbers = OrderedDict([
            ('q', q), ('constant', study.refined.constant_estimate),
            ('refinement_growth', study.refinement_growth),
            ('window_growth', study.window_growth),
            ('constant_field_deviation', deviation)])
        return SuiteResult(
            [self._result('reverse-holder', holds, numbers,
                          [classes, refinement])], [classes, refinement])


class SpectrumSuite(Suite):

    name = 'spectrum'
    claims = (
        Claim('spectrum',
              "The spectrum of A is a sequence of negative eigenvalues whose "
              "top level is simple with a positive radial eigenfunction",
              False),
        Claim('convergence',
              "The ground level converges under mesh refinement and domain "
              "enlargement", False))
    setting_specs = (
        ParamSpec('levels', 10, "Eigenvalues computed on the main grid"),
        ParamSpec('harmonic_R', 12.0, "Domain of the harmonic validation"),
        ParamSpec('harmonic_n', 2000, "Nodes of the harmonic validation"),
        ParamSpec('dense_R', 10.0, "Domain of the dense oracle"),
        ParamSpec('dense_n', 60, "Nodes of the dense oracle"),
        ParamSpec('convergence_n', 800,
                  "Nodes of the coarse grid of the convergence study"))
    tolerance_specs = (
        ParamSpec('harmonic', 1e-3,
                  "Relative error of the harmonic ground level"),
        ParamSpec('dense', 1e-10, "Relative agreement with dense eigh"),
        ParamSpec('n_doubling', 1e-3,
                  "Relative change of the ground level under refinement"),
        ParamSpec('R_doubling', 1e-4,
                  "Relative change of the ground level under doubling R"))

    def run(self, upstream, jobs=1):
        params = self.params
        op = assemble_operator(self.grid, params)
        spectrum = solve_spectrum(op, k=min(self.setting('levels'), len(op)))
        ground = ground_state(op)
        levels = Table('levels', ['k', 'eigenvalue', 'residual'],
                       zip(range(len(spectrum)), spectrum.eigenvalues,
                           spectrum.residuals))
        # The harmonic oscillator -Lap + r^2 has ground level N
        harmonic = params.with_(mode='harmonic')
        h_op = assemble_operator(
            build_grid(self.setting('harmonic_R'), self.setting('harmonic_n'),
                       2.0, N=params.N), harmonic)
        h_lambda0 = float(solve_spectrum(h_op).eigenvalues[0])
        h_error = _rel_error(h_lambda0, -float(params.N))
        d_op = assemble_operator(
            build_grid(self.setting('dense_R'), self.setting('dense_n'), 1.0,
                       N=params.N), params)
        k = min(self.setting('levels'), len(d_op))
        banded = solve_spectrum(d_op, k=k).eigenvalues
        dense = scipy.linalg.eigh(d_op.K_dense(), np.diag(d_op.mass),
                                  eigvals_only=True)[::-1][:k]
        d_error = float(np.max(np.abs(banded - dense) / np.abs(dense)))
        validation = Table('validation', ['check', 'computed', 'reference',
                                          'rel_error'])
        validation.append(('harmonic', h_lambda0, -float(params.N), h_error))
        validation.append(('dense', float(banded[0]), float(dense[0]),
                           d_error))
        holds = (bool(np.all(spectrum.eigenvalues < 0.0)) and
                 ground.sign_changes == 0 and
                 bool(np.all(ground.psi > 0.0)) and
                 h_error <= self.tolerance('harmonic') and
                 d_error <= self.tolerance('dense'))
        claims = [self._result(
            'spectrum', holds,
            OrderedDict([('lambda0', ground.lambda0),
                         ('gap', ground.simplicity_gap),
                         ('harmonic_error', h_error),
                         ('dense_error', d_error)]),
            [levels, validation])]
        convergence, table = self._convergence()
        claims.append(convergence)
        return SuiteResult(
            claims, [levels, validation, table],
            outputs={'op': op, 'ground': ground, 'spectrum': spectrum})

    def _convergence(self):
        params = self.params
        n = self.setting('convergence_n')
        coarse = build_grid(self.grid.R, n, self.grid.grading, N=params.N)
        # Nested refinement keeps every coarse node
        fine = build_grid(self.grid.R, 2 * (n + 1) - 1, self.grid.grading,
                          N=params.N)
        levels = [ground_state(assemble_operator(g, params)).lambda0
                  for g in (coarse, fine, rescale_grid(coarse, 2.0))]
        n_change = _rel_error(levels[1], levels[0])
        R_change = _rel_error(levels[2], levels[0])
        table = Table('convergence', ['grid', 'R', 'n', 'lambda0',
                                      'rel_change'])
        table.append(('coarse', coarse.R, coarse.n, levels[0], 0.0))
        table.append(('refined', fine.R, fine.n, levels[1], n_change))
        table.append(('doubled', 2.0 * coarse.R, rescale_grid(coarse).n,
                      levels[2], R_change))
        holds = (n_change < self.tolerance('n_doubling') and
                 R_change < self.tolerance('R_doubling'))
        return self._result(
            'convergence', holds,
            OrderedDict([('n_change', n_change), ('R_change', R_change)]),
            [table]), table


class SemigroupSuite(Suite):

    name = 'semigroup'
    depends_on = ('spectrum',)
    claims = (
        Claim('domination',
              "T(t) f <= S(t) f for f >= 0, S(t) being the semigroup of "
              "the diffusion part", False),
        Claim('c0-invariance',
              "T(t) maps bounded continuous functions to functions "
              "vanishing at infinity", True),
        Claim('ultracontractivity',
              "T(t) is bounded from L^1 to L^inf for every t > 0", True))
    setting_specs = (
        ParamSpec('times', [0.1, 1.0], "Domination times", dtype=float,
                  array=True),
        ParamSpec('step', 1e-3, "Time step of the domination runs"),
        ParamSpec('decay_time', 1.0, "Time of the decay probe"),
        ParamSpec('decay_radii', [20.0, 40.0, 80.0],
                  "Domains of the decay probe", dtype=float, array=True),
        ParamSpec('kernel_times', [0.1, 0.25, 0.5, 1.0],
                  "Times of the kernel diagonal", dtype=float, array=True),
        ParamSpec('stability_time', 0.5,
                  "Time of the kernel refinement comparison"),
        ParamSpec('positivity_fallback', 'none',
                  "Scheme that replaces implicit midpoint when its "
                  "undershoot survives the step halvings. Claims relying on "
                  "it are reported as downgraded", choices=['none', 'euler']))
    tolerance_specs = (
        ParamSpec('positivity', 1e-12,
                  "Admitted undershoot relative to max u0"),
        ParamSpec('kernel_growth', 0.05,
                  "Relative change of the kernel sup under refinement"))

    def run(self, upstream, jobs=1):
        claims = []
        tables = []
        claims.append(self._domination(tables))
        claims.append(self._decay(tables))
        claims.append(self._ultracontractivity(tables, jobs))
        return SuiteResult(claims, tables)

    def _domination(self, tables):
        grid = self.grid
        u0 = np.exp(-grid.nodes ** 2)
        step = self.setting('step')
        times = self.setting('times')
        table = Table('domination', ['t', 'excess', 'refined_excess',
                                     'worst_node', 'scheme'])
        reports = []
        for t in times:
            report = domination_check(self.params, grid, u0, t, step=step)
            table.append((t, report.excess, report.refined_excess,
                          report.worst_node, report.scheme['name']))
            reports.append(report)
        op = assemble_operator(grid, self.params)
        evolution = evolve(op, u0, [0.0] + list(times), step,
                           enforce_positivity=True,
                           fallback=self._fallback())
        undershoot = evolution.min_relative()
        tables.append(table)
        holds = (all(r.holds for r in reports) and
                 undershoot >= -self.tolerance('positivity'))
        downgraded = [r.t for r in reports if r.downgraded]
        message = None
        if downgraded:
            message = ("ordering only holds with backward Euler at t = {}"
                       .format(downgraded))
        if evolution.downgraded:
            message = (message + ', ' if message else '') + (
                "positivity run downgraded to {}".format(
                    evolution.scheme['name']))
        return self._result(
            'domination', holds,
            OrderedDict([('max_excess', max(max(r.excess, r.refined_excess)
                                            for r in reports)),
                         ('min_relative', undershoot),
                         ('scheme', evolution.scheme['name'])]),
            [table], message=message)

    def _fallback(self):
        fallback = self.setting('positivity_fallback')
        return None if fallback == 'none' else fallback

    def _decay(self, tables):
        grid = self.grid
        profile = decay_of_one(
            self.params, self.setting('decay_time'),
            radii=self.setting('decay_radii'), n=grid.n,
            grading=grid.grading, fallback=self._fallback())
        table = Table('decay', ['R', 'outer_max', 'refined_outer_max',
                                'refinement_change', 'monotone_in_r',
                                'underflow', 'scheme', 'downgraded'])
        # Two runs per radius, at the step and at half of it
        pairs = zip(profile.schemes[::2], profile.schemes[1::2])
        for row in zip(profile.radii, profile.outer_max,
                       profile.refined_outer_max, profile.refinement_change,
                       profile.monotone_in_r, profile.underflow, pairs):
            schemes = row[-1]
            table.append(row[:-1] + (
                schemes[0]['name'],
                any(s.get('downgraded', False) for s in schemes)))
        tables.append(table)
        message = None
        if profile.positivity_violated:
            message = "T(t)1 undershoots zero beyond the positivity tolerance"
        elif profile.downgraded:
            message = "downgraded to backward Euler to keep T(t)1 positive"
        numbers = OrderedDict(
            ('outer_max_R{:g}'.format(R), m)
            for R, m in zip(profile.radii, profile.outer_max))
        numbers['max_refinement_change'] = max(profile.refinement_change)
        numbers['downgraded'] = profile.downgraded
        return self._result('c0-invariance', profile.holds, numbers,
                            [table], message=message)

    def _ultracontractivity(self, tables, jobs):
        params = self.params
        grid = self.grid
        times = self.setting('kernel_times')
        spectra = kernel_spectra(grid, params, min(times), jobs=jobs)
        diagnostics = [kernel_diagnostics(spectra, t) for t in times]
        sups = [d.kernel_sup for d in diagnostics]
        fine_grid = build_grid(grid.R, 2 * (grid.n + 1) - 1, grid.grading,
                               N=params.N)
        t_ref = self.setting('stability_time')
        coarse_ref = kernel_diagnostics(
            kernel_spectra(grid, params, t_ref, jobs=jobs), t_ref)
        fine_spectra = kernel_spectra(fine_grid, params, t_ref, jobs=jobs)
        fine_ref = kernel_diagnostics(fine_spectra, t_ref)
        growth = _rel_error(fine_ref.kernel_sup, coarse_ref.kernel_sup)
        table = Table('kernel', ['t', 'n', 'kernel_sup', 'argmax_radius',
                                 'channels'])
        for d in diagnostics:
            table.append((d.t, grid.n, d.kernel_sup,
                          float(grid.nodes[d.argmax]), len(spectra.ells)))
        table.append((t_ref, fine_grid.n, fine_ref.kernel_sup,
                      float(fine_grid.nodes[fine_ref.argmax]),
                      len(fine_spectra.ells)))
        tables.append(table)
        holds = (bool(np.all(np.isfinite(sups))) and
                 all(b <= a for a, b in zip(sups[:-1], sups[1:])) and
                 growth < self.tolerance('kernel_growth'))
        return self._result(
            'ultracontractivity', holds,
            OrderedDict([('sup_t{:g}'.format(t), s)
                         for t, s in zip(times, sups)] +
                        [('refinement_change', growth)]),
            [table])


class GreenSuite(Suite):

    name = 'green'
    depends_on = ('spectrum', 'mfunction')
    claims = (
        Claim('green-bound',
              "G(x, 0) <= C_k / ((1 + m(x) |x|)^k |x|^(N - 2)) for every k",
              True),)
    setting_specs = (
        ParamSpec('k_list', [2, 4], "Decay orders of the bound", dtype=int,
                  array=True),
        ParamSpec('resolvent_lambdas', [0.0, 1.0],
                  "Spectral parameters of the positivity check",
                  dtype=float, array=True))
    tolerance_specs = (
        ParamSpec('newtonian', 1e-2,
                  "Relative error against the Newtonian kernel"),
        ParamSpec('growth', 0.1,
                  "Relative growth of C_k under domain doubling"),
        ParamSpec('positivity', 1e-12,
                  "Admitted negative part of R(lambda) f, f >= 0"),
        ParamSpec('identity', 1e-8, "Defect of the resolvent identity"))

    def run(self, upstream, jobs=1):
        params = self.params
        grid = self.grid
        free = green_at_origin(params.with_(mode='free'), grid)
        newtonian_error = free.newtonian_error()
        gs = green_at_origin(params, grid)
        report = verify_green_bound(gs, upstream['mfunction']['m_profile'],
                                    self.setting('k_list'))
        constants = Table('constants', ['k', 'C_k', 'C_k_doubled', 'growth',
                                        'closed_form', 'closed_form_doubled'],
                          report.table())
        profile = Table('profile', ['radius', 'G', 'newtonian'],
                        zip(gs.nodes, gs.G0, gs.newtonian_kernel()))
        op = upstream['spectrum']['op']
        f = np.exp(-op.nodes ** 2)
        resolvent = Table('resolvent', ['lambda', 'min_relative'])
        for lam in self.setting('resolvent_lambdas'):
            resolvent.append((lam, resolvent_positivity(op, lam, f)))
        v = self.rng.standard_normal(len(op))
        identity = resolvent_identity_error(op, 0.0, 1.0, v)
        holds = (newtonian_error < self.tolerance('newtonian') and
                 gs.positive and gs.decreasing and report.finite and
                 all(abs(g) < self.tolerance('growth')
                     for g in report.growth.values()) and
                 min(resolvent.column('min_relative')) >=
                 -self.tolerance('positivity') and
                 identity <= self.tolerance('identity'))
        numbers = OrderedDict(
            [('newtonian_error', newtonian_error)] +
            [('C_{}'.format(k), gs.fitted_Ck[k]) for k in report.k_list] +
            [('max_growth', max(abs(g) for g in report.growth.values())),
             ('identity_error', identity)])
        tables = [constants, profile, resolvent]
        return SuiteResult(
            [self._result('green-bound', holds, numbers, tables)], tables)


class WeightedSuite(Suite):

    name = 'weighted'
    claims = (
        Claim('weighted-estimates',
              "|||x|^gamma u||_p <= C ||f||_p for u = -A^-1 f, "
              "||V u||_p <= C ||A u||_p and "
              "||(1 + |x|^(alpha - 1)) grad u||_p <= C (||A u||_p + "
              "||u||_p)", True),)
    setting_specs = (
        ParamSpec('p_values', [2.0, 3.0], "Lebesgue indices", dtype=float,
                  array=True),
        ParamSpec('domains', [40.0, 80.0], "Truncation radii", dtype=float,
                  array=True))
    tolerance_specs = (
        ParamSpec('growth', 0.1,
                  "Relative growth of the sup ratios between domains"),)

    def run(self, upstream, jobs=1):
        ratios = Table('ratios', ['p', 'R', 'estimate', 'f', 'ratio'])
        growth = Table('growth', ['p', 'estimate', 'growth'])
        spectral = Table('spectral', ['R', 'measure', 'ratio', 'bound'])
        holds = True
        numbers = OrderedDict()
        tolerance = self.tolerance('growth')
        for p in self.setting('p_values'):
            spec = WeightedEstimateSpec(p=p, domains=self.setting('domains'),
                                        n=self.grid.n,
                                        grading=self.grid.grading)
            report = weighted_estimate_report(self.params, spec, jobs=jobs)
            for row in report.table():
                ratios.append((p,) + tuple(row))
            for estimate, g in report.growth.items():
                growth.append((p, estimate, g))
            for R, bounds in sorted(report.spectral_bounds.items()):
                for measure, (ratio, bound) in sorted(bounds.items()):
                    spectral.append((R, measure, ratio, bound))
            holds = (holds and all(g < tolerance
                                   for g in report.growth.values()) and
                     report.spectral_bound_holds)
            numbers['max_growth_p{:g}'.format(p)] = max(
                report.growth.values())
        tables = [ratios, growth, spectral]
        return SuiteResult(
            [self._result('weighted-estimates', holds, numbers, tables)],
            tables)


class SectorSuite(Suite):

    name = 'sector'
    depends_on = ('spectrum',)
    claims = (
        Claim('sector',
              "|lambda| ||R(lambda, A)|| is bounded on every ray of a sector "
              "strictly larger than a half-plane", False),)
    setting_specs = (
        ParamSpec('angles', [0.6 * math.pi, 0.75 * math.pi, 0.9 * math.pi],
                  "Ray arguments", dtype=float, array=True),
        ParamSpec('moduli', [float(m) for m in np.geomspace(0.1, 1e3, 9)],
                  "Sampled |lambda|", dtype=float, array=True),
        ParamSpec('ray_p', 2.0, "Lebesgue index of the ray scans"),
        ParamSpec('c_tilde_objective', 'shift',
                  "Objective minimised by the default c_tilde",
                  choices=sorted(C_TILDE_OBJECTIVES)))

    def run(self, upstream, jobs=1):
        report = sector_report(self.params, grid=self.grid,
                               angles=self.setting('angles'),
                               moduli=self.setting('moduli'),
                               ray_p=self.setting('ray_p'), jobs=jobs,
                               c_tilde_objective=self.setting(
                                   'c_tilde_objective'))
        constants = Table('constants', ['c_tilde', 'omega', 'delta',
                                        'theta_alpha', 'theta_dual',
                                        'shift_scan', 'shift_rel_error',
                                        'min_slack'])
        constants.append((report.c_tilde, report.omega, report.delta,
                          report.theta_alpha, report.theta_dual,
                          report.shift_check.scan,
                          report.shift_check.rel_error, report.slack))
        rays = Table('rays', ['angle', 'modulus', 'norm', 'scaled'])
        for scan in report.rays:
            for row in scan.table():
                rays.append(row)
        numbers = OrderedDict(
            [('omega', report.omega), ('delta', report.delta),
             ('theta_alpha', report.theta_alpha),
             ('theta_dual', report.theta_dual)] +
            [('C_theta_{:.4g}'.format(r.angle), r.C_theta)
             for r in report.rays])
        tables = [constants, rays]
        return SuiteResult(
            [self._result('sector', report.holds, numbers, tables)], tables)


SUITES = OrderedDict((s.name, s) for s in (
    LyapunovSuite, MFunctionSuite, ReverseHolderSuite, SpectrumSuite,
    SemigroupSuite, GreenSuite, WeightedSuite, SectorSuite))
