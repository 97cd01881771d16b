import math
import numpy as np
import mpmath
from schrolab.utils.testing import BaseTestCase
from schrolab.operator import OperatorParams, eval_coefficients
from schrolab.exceptions import SchrolabParameterError, SchrolabDomainError


class TestOperatorParams(BaseTestCase):

    def test_invalid_parameters(self):
        for kwargs in ({'N': 2, 'alpha': 3, 'beta': 2},
                       {'N': 3, 'alpha': 2, 'beta': 2},
                       {'N': 3, 'alpha': 3, 'beta': 1},
                       {'N': 3, 'alpha': 3, 'beta': 2, 'p': 1.0},
                       {'N': 3, 'alpha': 3, 'beta': 2, 'p': math.inf},
                       {'N': 3.5, 'alpha': 3, 'beta': 2},
                       {'N': 3, 'alpha': 3, 'beta': 2, 'mode': 'cubic'}):
            with self.assertRaises(SchrolabParameterError, msg=str(kwargs)):
                OperatorParams(**kwargs)

    def test_validation_modes_skip_hypotheses(self):
        params = OperatorParams(3, 0.0, 0.0, mode='harmonic')
        self.assertFalse(params.validity['alpha>2'])
        np.testing.assert_array_equal(params.a([0.0, 2.0]), [1.0, 1.0])
        np.testing.assert_array_equal(params.V([0.0, 2.0]), [0.0, 4.0])
        free = OperatorParams(3, 0.0, 0.0, mode='free')
        self.assertEqual(free.Vtilde(5.0), 0.0)

    def test_sphere_area(self):
        self.assertAlmostEqual(self.params(N=3).sigma, 4 * math.pi)
        self.assertAlmostEqual(self.params(N=4).sigma, 2 * math.pi ** 2)

    def test_with_(self):
        params = self.params()
        self.assertEqual(params.with_(beta=4.0),
                         OperatorParams(3, 3.0, 4.0))
        self.assertNotEqual(params.with_(p=3.0), params)


class TestCoefficients(BaseTestCase):

    def test_zero_radius(self):
        for beta in (2.0, 4.0):
            coeffs = eval_coefficients(self.params(beta=beta), 0.0)
            self.assertEqual(tuple(coeffs), (1.0, 0.0, 0.0, 1.0))

    def test_unit_radius(self):
        coeffs = eval_coefficients(self.params(), 1.0)
        self.assertEqual(coeffs.a, 2.0)
        self.assertEqual(coeffs.V, 1.0)
        self.assertEqual(coeffs.Vtilde, 0.5)
        self.assertEqual(coeffs.q, 0.5)

    def test_extended_precision(self):
        params = OperatorParams(3, 4.0, 3.0)
        coeffs = eval_coefficients(params, 10.0)
        mpmath.mp.dps = 40
        r = mpmath.mpf(10)
        a = 1 + r ** 4
        V = r ** 3
        self.assertRelClose(coeffs.a, float(a), 1e-15)
        self.assertRelClose(coeffs.V, float(V), 1e-15)
        self.assertRelClose(coeffs.Vtilde, float(V / a), 1e-14)
        self.assertRelClose(coeffs.q, float(1 / a), 1e-15)

    def test_negative_radius(self):
        with self.assertRaises(SchrolabDomainError):
            eval_coefficients(self.params(), -1e-3)
        with self.assertRaises(SchrolabDomainError):
            eval_coefficients(self.params(), [1.0, -1.0])

    def test_reduced_potential(self):
        r = np.geomspace(1e-4, 1e4, 2001)
        for N, alpha, beta in ((3, 3, 2), (3, 4, 3), (4, 3, 2.5),
                               (3, 3, 4)):
            coeffs = eval_coefficients(OperatorParams(N, alpha, beta), r)
            np.testing.assert_array_equal(coeffs.Vtilde, coeffs.V * coeffs.q)
            self.assertTrue(np.all(coeffs.a >= 1.0))
            self.assertTrue(np.all(coeffs.Vtilde >= 0.0))
            outer = r >= 1.0
            self.assertTrue(np.all(
                coeffs.Vtilde[outer] >= r[outer] ** (beta - alpha) / 2.0))

    def test_reduced_potential_sup(self):
        params = self.params()
        # V/a = r^2 / (1 + r^3) peaks at r = 2^(1/3)
        t_star = 2.0 ** (1.0 / 3.0)
        self.assertRelClose(params.Vtilde_sup(0.0, 5.0),
                            t_star ** 2 / (1 + t_star ** 3), 1e-14)
        self.assertRelClose(params.Vtilde_sup(3.0, 5.0),
                            params.Vtilde(3.0), 1e-14)
        dense = np.linspace(0.1, 0.5, 1001)
        self.assertRelClose(params.Vtilde_sup(0.1, 0.5),
                            params.Vtilde(dense).max(), 1e-14)
