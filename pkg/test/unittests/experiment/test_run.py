import os
import os.path as op
import json
from unittest import mock
from schrolab.utils.testing import BaseTestCase
from schrolab.experiment import (
    ExperimentConfig, run_config, report, Bundle, Suite, SuiteResult,
    Claim, Table, SingleProc, MultiProc, SUITES, PASS, FAIL, SKIPPED,
    suite_graph)
from schrolab.exceptions import SchrolabNumericError, SchrolabInputError


class FailingSpectrumSuite(Suite):

    name = 'spectrum'
    claims = SUITES['spectrum'].claims

    def run(self, upstream, jobs=1):
        raise SchrolabNumericError("Tridiagonal eigensolver failed")


class BrokenLyapunovSuite(Suite):

    name = 'lyapunov'
    claims = SUITES['lyapunov'].claims

    def run(self, upstream, jobs=1):
        raise RuntimeError("index out of range")


class SourceSuite(Suite):

    name = 'source'
    claims = (Claim('source-claim', "x = 2", False),)

    def run(self, upstream, jobs=1):
        table = Table('values', ['x'], [(2.0,)])
        return SuiteResult(
            [self._result('source-claim', True, {'x': 2.0}, [table])],
            [table], outputs={'x': 2.0})


class SinkSuite(Suite):

    name = 'sink'
    depends_on = ('source',)
    claims = (Claim('sink-claim', "x^2 = 4", True),)

    def run(self, upstream, jobs=1):
        x = upstream['source']['x']
        return SuiteResult(
            [self._result('sink-claim', x ** 2 == 4.0, {'x2': x ** 2}, [])],
            [])


class TestRunConfig(BaseTestCase):

    def config(self, suites, out='bundle', **kwargs):
        return ExperimentConfig(self.params(), suites=suites,
                                output_dir=op.join(self.work_dir, out),
                                **kwargs)

    def lyapunov_config(self, out='bundle', **kwargs):
        kwargs.setdefault('settings', {'lyapunov': {'gammas': [3.0]}})
        return self.config(['lyapunov'], out=out, **kwargs)

    def test_empty(self):
        config = self.config([])
        result = run_config(config)
        self.assertEqual(len(result), 0)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.render(), "no claims\n")
        self.assertEqual(report(config.output_dir).render(), "no claims\n")

    def test_lyapunov(self):
        config = self.lyapunov_config()
        result = run_config(config)
        self.assertEqual(result.claim_ids, ['lyapunov'])
        claim = result['lyapunov']
        self.assertEqual(claim.verdict, PASS)
        self.assertEqual(claim.suite, 'lyapunov')
        self.assertEqual(claim.evidence, ['lyapunov-constants.csv'])
        self.assertGreater(claim.numbers['C_gamma3'], 0.0)
        self.assertLessEqual(claim.numbers['max_rel_error'], 1e-6)
        self.assertIsNotNone(claim.runtime)
        self.assertEqual(result.exit_code, 0)
        bundle = Bundle(config.output_dir)
        table = bundle.read_table('lyapunov-constants.csv')
        self.assertEqual(table.column('gamma'), [3.0])
        self.assertEqual(table.column('C'), [claim.numbers['C_gamma3']])
        self.assertEqual(report(config.output_dir), result)
        _, record = bundle.load()
        self.assertEqual(record.config, json.loads(json.dumps(
            config.to_dict())))

    def test_determinism(self):
        first = self.lyapunov_config('first', seed=4)
        second = self.lyapunov_config('second', seed=4)
        run_config(first)
        run_config(second)
        fname = 'lyapunov-constants.csv'
        with open(op.join(first.output_dir, fname), 'rb') as f:
            first_bytes = f.read()
        with open(op.join(second.output_dir, fname), 'rb') as f:
            self.assertEqual(f.read(), first_bytes)
        self.assertEqual(
            Bundle(first.output_dir).mismatches(Bundle(second.output_dir)),
            {})

    def test_mismatch(self):
        first = self.lyapunov_config('first')
        second = self.lyapunov_config(
            'second', settings={'lyapunov': {'gammas': [4.0]}})
        run_config(first)
        run_config(second)
        first_bundle = Bundle(first.output_dir)
        second_bundle = Bundle(second.output_dir)
        diff = first_bundle.mismatches(second_bundle)
        self.assertIn('values_changed', diff)
        self.assertTrue(any(k.startswith("root['config']['settings']")
                            for k in diff['values_changed']))
        self.assertEqual(first_bundle.mismatches(
            second_bundle, include=['config/seed']), {})
        self.assertEqual(first_bundle.mismatches(
            second_bundle, exclude=['config/settings', 'claims', 'tables',
                                    'datetime', 'python_version',
                                    'pkg_versions']), {})

    def test_rerun_replaces_bundle(self):
        run_config(self.lyapunov_config())
        config = self.config([])
        result = run_config(config)
        bundle = Bundle(config.output_dir)
        self.assertEqual(bundle.table_fnames, [])
        self.assertEqual(report(config.output_dir), result)
        self.assertEqual(len(report(config.output_dir)), 0)

    def test_failed_claim(self):
        config = self.lyapunov_config(
            tolerances={'lyapunov': {'slack': -1.0}})
        result = run_config(config)
        self.assertEqual(result['lyapunov'].verdict, FAIL)
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(report(config.output_dir).exit_code, 1)

    def test_dependents_skipped(self):
        with mock.patch.dict(SUITES, {'spectrum': FailingSpectrumSuite}):
            config = self.config(['sector'])
            result = run_config(config, processor=SingleProc())
        self.assertEqual(result.claim_ids,
                         ['spectrum', 'convergence', 'sector'])
        self.assertEqual(result['spectrum'].verdict, FAIL)
        self.assertIn('SchrolabNumericError', result['spectrum'].message)
        self.assertEqual(result['sector'].verdict, SKIPPED)
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(os.listdir(config.output_dir).count('.lock'), 1)

    def test_unexpected_error(self):
        with mock.patch.dict(SUITES, {'lyapunov': BrokenLyapunovSuite,
                                      'source': SourceSuite}):
            results = [run_config(self.config(['lyapunov', 'source'],
                                              out=out),
                                  processor=processor)
                       for out, processor in (('single', SingleProc()),
                                              ('multi', MultiProc(2)))]
        for result in results:
            self.assertEqual(result['lyapunov'].verdict, FAIL)
            self.assertEqual(result['lyapunov'].message,
                             'RuntimeError: index out of range')
            self.assertEqual(result['source-claim'].verdict, PASS)
            self.assertEqual(result.exit_code, 1)

    def test_outputs_passed(self):
        with mock.patch.dict(SUITES, {'source': SourceSuite,
                                      'sink': SinkSuite}):
            self.assertEqual(list(suite_graph(['sink']).edges),
                             [('source', 'sink')])
            results = [run_config(self.config(['sink'], out=out),
                                  processor=processor)
                       for out, processor in (('single', SingleProc()),
                                              ('multi', MultiProc(2)))]
        for result in results:
            self.assertEqual(result.claim_ids, ['source-claim',
                                                'sink-claim'])
            self.assertEqual(result['sink-claim'].numbers['x2'], 4.0)
            self.assertEqual(result.exit_code, 0)
        self.assertEqual([c.verdict for c in results[0]],
                         [c.verdict for c in results[1]])
        self.assertEqual(results[0]['source-claim'].evidence,
                         ['source-values.csv'])

    def test_missing_bundle(self):
        with self.assertRaises(SchrolabInputError):
            report(op.join(self.work_dir, 'missing'))

    def test_corrupt_bundle(self):
        config = self.config([])
        run_config(config)
        with open(op.join(config.output_dir, 'report.json'), 'w') as f:
            f.write('{"claims": [')
        with self.assertRaises(SchrolabInputError):
            report(config.output_dir)
