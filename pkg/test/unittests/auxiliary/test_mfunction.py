from unittest import mock
import numpy as np
from scipy.integrate import quad
from schrolab.utils.testing import BaseTestCase
from schrolab.operator import OperatorParams
from schrolab.auxiliary import (
    m_function, m_function_oracle, normalized_mass, oracle_normalized_mass,
    fit_m_exponent)
from schrolab.exceptions import SchrolabParameterError, SchrolabRangeError


class TestMFunction(BaseTestCase):

    def test_origin_oracle(self):
        params = self.params()
        sigma = params.sigma

        def f0(r):
            return sigma / r * quad(lambda p: p ** 4 / (1 + p ** 3), 0.0, r,
                                    epsabs=0.0, epsrel=1e-13)[0]

        self.assertRelClose(normalized_mass(params, 0.0, [0.5, 2.0, 40.0]),
                            [f0(0.5), f0(2.0), f0(40.0)], 1e-8)
        self.assertRelClose(m_function(params, 0.0),
                            m_function_oracle(params, 0.0), 1e-4)

    def test_sandwich_at_origin(self):
        params = self.params()
        r = np.geomspace(1e-3, 1e3, 61)
        f0 = normalized_mass(params, 0.0, r)
        lower = params.sigma * r ** 4 / (5.0 * (1 + r ** 3))
        upper = params.sigma * r ** 4 / 5.0
        self.assertTrue(np.all(lower <= f0 * (1 + 1e-10)))
        self.assertTrue(np.all(f0 <= upper * (1 + 1e-10)))

    def test_oracle_agreement(self):
        for N, alpha, beta in ((3, 3.0, 2.0), (4, 3.0, 2.5)):
            params = OperatorParams(N, alpha, beta)
            for s in (0.0, 0.5, 3.0, 50.0):
                self.assertRelClose(m_function(params, s),
                                    m_function_oracle(params, s), 1e-4,
                                    msg='{} s={}'.format(params, s))

    def test_normalized_mass_oracle(self):
        params = self.params(beta=4.0)
        for s, r in ((2.0, 1.0), (2.0, 3.0), (10.0, 0.1)):
            self.assertRelClose(
                normalized_mass(params, s, r, accurate=True),
                oracle_normalized_mass(params, s, r), 1e-7)

    def test_endpoint_limits(self):
        for beta in (2.0, 4.0):
            params = self.params(beta=beta)
            for s in (0.0, 5.0):
                f = normalized_mass(params, s, [1e-6 * (1 + s),
                                                1e6 * (1 + s)])
                self.assertLess(f[0], 1e-6)
                self.assertGreater(f[1], 1e2)

    def test_positive_and_finite(self):
        params = self.params()
        for s in (0.0, 1.0, 100.0):
            m = m_function(params, s)
            self.assertTrue(0.0 < m < np.inf)

    def test_larger_potential(self):
        params = self.params()
        for s in (0.0, 0.5, 2.0, 10.0, 100.0):
            doubled = m_function(params, s,
                                 field=lambda t: 2.0 * params.Vtilde(t))
            self.assertGreaterEqual(doubled, m_function(params, s))

    def test_no_crossing(self):
        with self.assertRaises(SchrolabRangeError):
            m_function(self.params(), 1.0, field=lambda t: np.zeros_like(t))

    def test_oracle_no_crossing(self):
        module = 'schrolab.auxiliary.mfunction.'
        with mock.patch(module + 'oracle_normalized_mass',
                        lambda params, s, r: 0.5):
            with self.assertRaises(SchrolabRangeError):
                m_function_oracle(self.params(), 1.0)
        # A crossing of the coarse scan that the dense scan does not see
        with mock.patch(module + 'oracle_normalized_mass',
                        lambda params, s, r: r), \
                mock.patch(module + '_last_crossing',
                           side_effect=[0, None]):
            with self.assertRaises(SchrolabRangeError):
                m_function_oracle(self.params(), 1.0)


class TestMExponent(BaseTestCase):

    def test_decaying_potential(self):
        estimate = fit_m_exponent(self.params(), jobs=2)
        self.assertLess(abs(estimate.fitted_exponent + 0.5), 0.1)
        self.assertTrue(estimate.success)
        self.assertIsNone(estimate.vtilde_ratio)

    def test_growing_potential(self):
        estimate = fit_m_exponent(self.params(beta=4.0))
        self.assertLess(abs(estimate.fitted_exponent - 0.5), 0.1)
        self.assertTrue(estimate.success)
        ratio = estimate.vtilde_ratio
        self.assertGreater(ratio.min(), 0.1 * ratio.max())

    def test_balanced_exponents(self):
        estimate = fit_m_exponent(OperatorParams(3, 3.0, 3.0))
        self.assertLess(abs(estimate.fitted_exponent), 0.1)

    def test_interpolation(self):
        estimate = fit_m_exponent(self.params())
        self.assertRelClose(estimate.interpolate(estimate.radii),
                            estimate.m_values, 1e-12)

    def test_invalid_radii(self):
        with self.assertRaises(SchrolabParameterError):
            fit_m_exponent(self.params(), radii=[10.0, 100.0, 1000.0])
        with self.assertRaises(SchrolabParameterError):
            fit_m_exponent(self.params(), radii=[10.0, 20.0, 30.0, 40.0])
