import numpy as np
from scipy.optimize import minimize_scalar
from schrolab.utils.testing import BaseTestCase
from schrolab.operator import (
    OperatorParams, lyapunov_constant, lyapunov_ratio, apply_to_phi)
from schrolab.exceptions import SchrolabParameterError


DEFAULT_SETS = ((3, 3.0, 2.0), (3, 4.0, 3.0), (4, 3.0, 2.5), (3, 3.0, 4.0))


def brute_force_sup(params, gamma):
    radii = np.arange(1, 1000001) * 1e-3
    values = lyapunov_ratio(params, gamma, radii)
    i = int(np.argmax(values))
    lo = radii[max(i - 1, 0)] if i else 1e-12
    res = minimize_scalar(lambda r: -lyapunov_ratio(params, gamma, r),
                          method='bounded', bounds=(lo, radii[i + 1]),
                          options={'xatol': 1e-14})
    return max(0.0, values[i], -res.fun)


class TestLyapunov(BaseTestCase):

    def test_closed_form(self):
        # With gamma = alpha the ratio reduces to 12 r - r^beta
        probe = lyapunov_constant(self.params(), 3.0)
        self.assertRelClose(probe.C, 36.0, 1e-10)
        self.assertRelClose(probe.r_star, 6.0, 1e-5)
        probe = lyapunov_constant(self.params(beta=4.0), 3.0)
        self.assertRelClose(probe.C, 9.0 * 3.0 ** (1.0 / 3.0), 1e-10)

    def test_ratio_at_origin(self):
        for gamma in (2.5, 3.0, 4.0):
            self.assertEqual(
                float(lyapunov_ratio(self.params(), gamma, 0.0)), 0.0)

    def test_inequality_and_oracle(self):
        radii = np.concatenate((np.geomspace(1e-6, 1e3, 5000),
                                np.linspace(1e-3, 1e3, 5000)))
        for N, alpha, beta in DEFAULT_SETS:
            params = OperatorParams(N, alpha, beta)
            for gamma in (2.5, 3.0, 4.0):
                probe = lyapunov_constant(params, gamma)
                self.assertGreaterEqual(probe.C, 0.0)
                phi = 1.0 + radii ** gamma
                excess = apply_to_phi(params, gamma, radii) - probe.C * phi
                self.assertTrue(np.all(excess <= 1e-9 * phi),
                                "{} gamma={}".format(params, gamma))
                self.assertRelClose(probe.C, brute_force_sup(params, gamma),
                                    1e-6, msg=str(params))
                self.assertLess(float(lyapunov_ratio(
                    params, gamma, probe.window)), 0.0)

    def test_supremum_attained_at_finite_radius(self):
        probe = lyapunov_constant(OperatorParams(3, 4.0, 3.0), 4.0)
        self.assertGreater(probe.r_star, 0.0)
        self.assertLess(probe.r_star, probe.window)
        self.assertLessEqual(float(np.max(probe.slack(
            np.geomspace(1e-3, 1e3, 1000)))), 1e-9)

    def test_invalid_gamma(self):
        for gamma in (2.0, 1.0, -3.0):
            with self.assertRaises(SchrolabParameterError):
                lyapunov_constant(self.params(), gamma)
