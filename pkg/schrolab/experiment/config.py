import os.path as op
import logging
from collections import OrderedDict
from configparser import ConfigParser, Error as ConfigParserError
from schrolab.exceptions import (
    SchrolabConfigError, SchrolabUsageError, SchrolabParameterError)
from schrolab.operator import OperatorParams
from schrolab.discretization import build_grid
from schrolab.utils import parse_value
from .parameter import Parameter, ParamSpec
from .suites import SUITES

logger = logging.getLogger('schrolab')


OPERATOR_SPECS = (
    ParamSpec('N', 3, "Spatial dimension"),
    ParamSpec('alpha', 3.0, "Exponent of the diffusion coefficient"),
    ParamSpec('beta', 2.0, "Exponent of the potential"),
    ParamSpec('p', 2.0, "Lebesgue index"),
    ParamSpec('mode', 'power', "Operator mode",
              choices=OperatorParams.MODES))

GRID_SPECS = (
    ParamSpec('R', 20.0, "Truncation radius"),
    ParamSpec('n', 400, "Interior nodes"),
    ParamSpec('grading', 2.0, "Exponent of the graded node map"))

RUN_SPECS = (
    ParamSpec('suites', list(SUITES), "Suites to run, or 'all'",
              choices=list(SUITES), dtype=str, array=True),
    ParamSpec('seed', 0, "Seed of all sampled families"),
    ParamSpec('output_dir', 'results', "Directory of the results bundle"),
    ParamSpec('jobs', 1, "Worker threads"))

SECTIONS = ('operator', 'grid', 'run', 'tolerances')


def _parse(spec, raw, context):
    """
    Converts the raw string of an option to the datatype of its spec and
    validates it
    """
    try:
        value = parse_value(raw, dtype=(float if spec.dtype is float
                                        else None))
    except (ValueError, SchrolabUsageError) as e:
        raise SchrolabConfigError(
            spec.name, "Could not parse '{}' for '{}' in {}: {}".format(
                raw, spec.name, context, e))
    value = spec.coerce(value)
    spec.check_valid(Parameter(spec.name, value), context=context)
    return value


def _parse_section(section, specs, context):
    specs = OrderedDict((s.name, s) for s in specs)
    unknown = [k for k in section if k not in specs]
    if unknown:
        raise SchrolabConfigError(
            unknown[0], "Unrecognised option(s) {} in {}, can be one of {}"
            .format(unknown, context, list(specs)))
    return OrderedDict((k, _parse(specs[k], v, context))
                       for k, v in section.items())


class ExperimentConfig(object):
    """
    A verification run: the operator, the grid, the suites to run and any
    overridden suite settings and tolerances

    Parameters
    ----------
    params : OperatorParams
        The operator parameters
    grid_spec : tuple(float, int, float)
        (R, n, grading) of the main radial grid
    suites : list[str]
        Names of the suites to run, in declaration order
    output_dir : str
        Directory the results bundle is written to
    seed : int
        Seed of all sampled families
    jobs : int
        Worker threads
    tolerances : dict[str, dict[str, float]]
        Tolerance overrides by suite and name
    settings : dict[str, dict[str, object]]
        Setting overrides by suite and name
    """

    def __init__(self, params, grid_spec=(20.0, 400, 2.0), suites=(),
                 output_dir='results', seed=0, jobs=1, tolerances=None,
                 settings=None):
        self._params = params
        self._grid_spec = tuple(grid_spec)
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise SchrolabConfigError(
                unknown[0], "Unrecognised suite(s) {}, can be one of {}"
                .format(unknown, list(SUITES)))
        # Declaration order, so that reports do not depend on the order
        # the suites were listed in
        self._suites = [s for s in SUITES if s in suites]
        self._output_dir = output_dir
        self._seed = int(seed)
        self._jobs = int(jobs)
        if self._jobs < 1:
            raise SchrolabConfigError(
                'jobs', "Number of jobs must be positive ({})".format(jobs))
        self._tolerances = self._check_overrides(tolerances, 'tolerance')
        self._settings = self._check_overrides(settings, 'setting')
        self._grid = None

    def __repr__(self):
        return "{}(params={}, grid={}, suites={}, seed={})".format(
            type(self).__name__, self.params, self.grid_spec, self.suites,
            self.seed)

    def __eq__(self, other):
        return (self.to_dict() == other.to_dict() and
                self.output_dir == other.output_dir)

    @property
    def params(self):
        return self._params

    @property
    def grid_spec(self):
        return self._grid_spec

    @property
    def grid(self):
        if self._grid is None:
            R, n, grading = self._grid_spec
            self._grid = build_grid(R, n, grading, N=self._params.N)
        return self._grid

    @property
    def suites(self):
        return self._suites

    @property
    def output_dir(self):
        return self._output_dir

    @property
    def seed(self):
        return self._seed

    @property
    def jobs(self):
        return self._jobs

    def setting(self, suite, name):
        try:
            return self._settings[suite][name]
        except KeyError:
            return SUITES[suite].setting_spec(name).default

    def tolerance(self, suite, name):
        try:
            return self._tolerances[suite][name]
        except KeyError:
            return SUITES[suite].tolerance_spec(name).default

    def _check_overrides(self, overrides, kind):
        checked = OrderedDict()
        for suite, values in (overrides or {}).items():
            if suite not in SUITES:
                raise SchrolabConfigError(
                    suite, "{} overrides given for unrecognised suite '{}'"
                    .format(kind.capitalize(), suite))
            lookup = getattr(SUITES[suite], kind + '_spec')
            checked[suite] = OrderedDict()
            for name, value in values.items():
                try:
                    spec = lookup(name)
                except KeyError:
                    raise SchrolabConfigError(
                        name, "Unrecognised {} '{}' of suite '{}'".format(
                            kind, name, suite))
                value = spec.coerce(value)
                spec.check_valid(Parameter(name, value),
                                 context="{} suite".format(suite))
                checked[suite][name] = value
        return checked

    def with_overrides(self, seed=None, output_dir=None, jobs=None):
        "Returns a copy with the command-line overrides applied"
        return type(self)(
            self.params, self.grid_spec, self.suites,
            output_dir=(output_dir if output_dir is not None
                        else self.output_dir),
            seed=seed if seed is not None else self.seed,
            jobs=jobs if jobs is not None else self.jobs,
            tolerances=self._tolerances, settings=self._settings)

    def to_dict(self):
        """
        The resolved configuration, as stored in the provenance of a run.
        The output directory is left out so that bundles written to
        different places compare equal
        """
        R, n, grading = self._grid_spec
        return OrderedDict([
            ('operator', OrderedDict([
                ('N', self.params.N), ('alpha', self.params.alpha),
                ('beta', self.params.beta), ('p', self.params.p),
                ('mode', self.params.mode)])),
            ('grid', OrderedDict([('R', R), ('n', n),
                                  ('grading', grading)])),
            ('suites', list(self.suites)),
            ('seed', self.seed),
            ('tolerances', self._tolerances),
            ('settings', self._settings)])


def load_config(path):
    """
    Loads an experiment configuration from an INI file with the sections
    [operator], [grid], [run], [tolerances] ('suite.name = value') and one
    optional section of settings per suite

    Parameters
    ----------
    path : str
        Path to the configuration file

    Returns
    -------
    config : ExperimentConfig
        The validated configuration
    """
    if not op.exists(path):
        raise SchrolabConfigError(
            path, "Configuration file '{}' does not exist".format(path))
    parser = ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read(path)
    except ConfigParserError as e:
        raise SchrolabConfigError(
            path, "Could not parse '{}': {}".format(path, e))
    unknown = [s for s in parser.sections()
               if s not in SECTIONS and s not in SUITES]
    if unknown:
        raise SchrolabConfigError(
            unknown[0], "Unrecognised section(s) {} in '{}', can be one of "
            "{}".format(unknown, path, list(SECTIONS) + list(SUITES)))

    def section(name):
        return parser[name] if parser.has_section(name) else {}

    operator = _parse_section(section('operator'), OPERATOR_SPECS,
                              '[operator]')
    grid = _parse_section(section('grid'), GRID_SPECS, '[grid]')
    raw_run = dict(section('run'))
    if raw_run.get('suites', '').strip() == 'all':
        raw_run['suites'] = '[{}]'.format(', '.join(SUITES))
    run = _parse_section(raw_run, RUN_SPECS, '[run]')
    defaults = dict((s.name, s.default)
                    for s in OPERATOR_SPECS + GRID_SPECS + RUN_SPECS)
    defaults.update(operator)
    defaults.update(grid)
    defaults.update(run)
    try:
        params = OperatorParams(defaults['N'], defaults['alpha'],
                                defaults['beta'], p=defaults['p'],
                                mode=defaults['mode'])
    except SchrolabParameterError as e:
        raise SchrolabConfigError('operator', e.msg)
    tolerances = OrderedDict()
    for key, raw in section('tolerances').items():
        suite, _, name = key.partition('.')
        if suite not in SUITES or not name:
            raise SchrolabConfigError(
                key, "Tolerance keys take the form 'suite.name' with a "
                "suite from {} ('{}')".format(list(SUITES), key))
        try:
            spec = SUITES[suite].tolerance_spec(name)
        except KeyError:
            raise SchrolabConfigError(
                key, "Unrecognised tolerance '{}' of suite '{}'".format(
                    name, suite))
        tolerances.setdefault(suite, OrderedDict())[name] = _parse(
            spec, raw, '[tolerances]')
    settings = OrderedDict(
        (name, _parse_section(parser[name], suite.setting_specs,
                              '[{}]'.format(name)))
        for name, suite in SUITES.items() if parser.has_section(name))
    config = ExperimentConfig(
        params, (defaults['R'], defaults['n'], defaults['grading']),
        suites=defaults['suites'], output_dir=defaults['output_dir'],
        seed=defaults['seed'], jobs=defaults['jobs'],
        tolerances=tolerances, settings=settings)
    logger.info("Loaded %s from '%s'", config, path)
    return config
