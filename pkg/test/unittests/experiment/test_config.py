import os.path as op
from schrolab.utils.testing import BaseTestCase
from schrolab.experiment import (
    ExperimentConfig, load_config, ParamSpec, Parameter, SUITES)
from schrolab.exceptions import SchrolabConfigError, SchrolabUsageError


CONFIG = """
[operator]
N = 3
alpha = 3.0
beta = 2.0

[grid]
R = 20
n = 400

[run]
suites = [spectrum, lyapunov]
seed = 7
output_dir = {out}

[tolerances]
lyapunov.oracle = 1e-5

[lyapunov]
gammas = [3, 4]
"""


class TestParamSpec(BaseTestCase):

    def test_coerce(self):
        spec = ParamSpec('window', 1e3)
        self.assertEqual(spec.coerce(20), 20.0)
        self.assertIsInstance(spec.coerce(20), float)
        array = ParamSpec('gammas', [2.5], dtype=float, array=True)
        self.assertEqual(array.coerce(3), [3.0])

    def test_check_valid(self):
        spec = ParamSpec('count', 24)
        spec.check_valid(Parameter('count', 12))
        with self.assertRaises(SchrolabConfigError):
            spec.check_valid(Parameter('count', 1.5))
        with self.assertRaises(SchrolabConfigError):
            spec.check_valid(Parameter('count', True))
        choice = ParamSpec('mode', 'power', choices=('power', 'free'))
        with self.assertRaises(SchrolabConfigError):
            choice.check_valid(Parameter('mode', 'cubic'))

    def test_default_dtype_mismatch(self):
        with self.assertRaises(SchrolabUsageError):
            ParamSpec('gammas', [3], dtype=float, array=True)


class TestLoadConfig(BaseTestCase):

    def write(self, text, fname='config.ini'):
        path = op.join(self.work_dir, fname)
        with open(path, 'w') as f:
            f.write(text)
        return path

    def load(self, text):
        return load_config(self.write(text))

    def test_load(self):
        out = op.join(self.work_dir, 'out')
        config = self.load(CONFIG.format(out=out))
        self.assertEqual(config.params, self.params())
        self.assertEqual(config.grid_spec, (20.0, 400, 2.0))
        self.assertEqual(config.suites, ['lyapunov', 'spectrum'])
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.output_dir, out)
        self.assertEqual(config.setting('lyapunov', 'gammas'), [3.0, 4.0])
        self.assertEqual(config.setting('lyapunov', 'window'), 1e3)
        self.assertEqual(config.tolerance('lyapunov', 'oracle'), 1e-5)
        self.assertEqual(config.tolerance('lyapunov', 'slack'), 1e-9)
        self.assertEqual(config.setting('semigroup', 'positivity_fallback'),
                         'none')
        self.assertEqual(config.grid.n, 400)

    def test_all_suites(self):
        config = self.load("[run]\nsuites = all\n")
        self.assertEqual(config.suites, list(SUITES))
        self.assertEqual(config.params, self.params())

    def test_empty_suites(self):
        self.assertEqual(self.load("[run]\nsuites = []\n").suites, [])

    def test_single_suite(self):
        self.assertEqual(self.load("[run]\nsuites = sector\n").suites,
                         ['sector'])

    def test_shipped_configs(self):
        configs_dir = op.join(self.BASE_TEST_DIR, '..', 'configs')
        for fname, (N, alpha, beta) in (
                ('n3-a3-b2.ini', (3, 3.0, 2.0)),
                ('n3-a4-b3.ini', (3, 4.0, 3.0)),
                ('n4-a3-b2.5.ini', (4, 3.0, 2.5)),
                ('n3-a3-b4.ini', (3, 3.0, 4.0))):
            config = load_config(op.join(configs_dir, fname))
            self.assertEqual(config.params, self.params(N, alpha, beta))
            self.assertEqual(config.suites, list(SUITES))

    def test_errors(self):
        for text in ("[run]\nsuites = [lyapunov, cubic]\n",
                     "[grid]\nn = 4.5\n",
                     "[grid]\nspacing = 0.1\n",
                     "[operator]\nalpha = 1.0\n",
                     "[operator]\nmode = cubic\n",
                     "[plotting]\ncolour = red\n",
                     "[tolerances]\noracle = 1e-5\n",
                     "[tolerances]\nlyapunov.accuracy = 1e-5\n",
                     "[lyapunov]\ngammas = [3, four]\n",
                     "[run]\njobs = 0\n"):
            with self.assertRaises(SchrolabConfigError, msg=text):
                self.load(text)

    def test_missing_file(self):
        with self.assertRaises(SchrolabConfigError):
            load_config(op.join(self.work_dir, 'missing.ini'))


class TestExperimentConfig(BaseTestCase):

    def test_declaration_order(self):
        config = ExperimentConfig(self.params(),
                                  suites=['sector', 'lyapunov'])
        self.assertEqual(config.suites, ['lyapunov', 'sector'])

    def test_unknown_suite(self):
        with self.assertRaises(SchrolabConfigError):
            ExperimentConfig(self.params(), suites=['plots'])

    def test_overrides_validated(self):
        with self.assertRaises(SchrolabConfigError):
            ExperimentConfig(self.params(),
                             settings={'lyapunov': {'order': 3}})
        with self.assertRaises(SchrolabConfigError):
            ExperimentConfig(self.params(),
                             tolerances={'plots': {'oracle': 1.0}})
        with self.assertRaises(SchrolabConfigError):
            ExperimentConfig(self.params(),
                             settings={'mfunction': {'profile_count': 'a'}})
        with self.assertRaises(SchrolabConfigError):
            ExperimentConfig(
                self.params(),
                settings={'semigroup': {'positivity_fallback': 'rk4'}})

    def test_with_overrides(self):
        config = ExperimentConfig(
            self.params(), suites=['lyapunov'], output_dir='a', seed=1,
            settings={'lyapunov': {'gammas': [3]}})
        overridden = config.with_overrides(seed=5, output_dir='b')
        self.assertEqual(overridden.seed, 5)
        self.assertEqual(overridden.output_dir, 'b')
        self.assertEqual(overridden.jobs, 1)
        self.assertEqual(overridden.setting('lyapunov', 'gammas'), [3.0])
        self.assertEqual(config.with_overrides(), config)

    def test_to_dict(self):
        config = ExperimentConfig(self.params(), suites=['lyapunov'],
                                  output_dir='somewhere', seed=3)
        dct = config.to_dict()
        self.assertNotIn('output_dir', dct)
        self.assertEqual(dct['operator']['beta'], 2.0)
        self.assertEqual(dct['suites'], ['lyapunov'])
        self.assertEqual(dct['seed'], 3)
        self.assertEqual(
            config.with_overrides(output_dir='elsewhere').to_dict(), dct)
