import numpy as np
from scipy.integrate import quad
from schrolab.utils.testing import BaseTestCase
from schrolab.utils import ball_volume
from schrolab.auxiliary import (
    BallIntegralSpec, ball_integral_radial, cap_fraction)
from schrolab.exceptions import SchrolabUsageError


def ones(t):
    return np.ones_like(t)


class TestBallIntegral(BaseTestCase):

    def test_constant_field_volume(self):
        for N in (3, 4, 5):
            for s, r in ((0.0, 1.0), (2.0, 1.0), (1.0, 2.0), (1.0, 1.0),
                         (1e3, 1e-2), (0.5, 30.0)):
                spec = BallIntegralSpec(s, r, N=N)
                self.assertRelClose(ball_integral_radial(ones, spec),
                                    ball_volume(N, r), 1e-6,
                                    msg='N={} s={} r={}'.format(N, s, r))

    def test_cap_fraction_three_dimensions(self):
        s, r = 2.0, 1.5
        t = np.linspace(0.6, 3.4, 50)
        c = (s ** 2 + t ** 2 - r ** 2) / (2 * s * t)
        self.assertRelClose(cap_fraction(3, s, r, t), 0.5 * (1.0 - c),
                            1e-10)

    def test_cap_fraction_range(self):
        for N in (3, 4, 7):
            t = np.linspace(0.01, 4.99, 200)
            frac = cap_fraction(N, 2.5, 2.5, t)
            self.assertTrue(np.all((frac >= 0.0) & (frac <= 1.0)))

    def test_concentric(self):
        params = self.params()
        for r in (0.3, 1.0, 7.0):
            expected = params.sigma * quad(
                lambda t: params.Vtilde(t) * t ** 2, 0.0, r,
                epsabs=0.0, epsrel=1e-13)[0]
            self.assertRelClose(
                ball_integral_radial(params.Vtilde, BallIntegralSpec(0.0, r)),
                expected, 1e-9)

    def test_monte_carlo(self):
        params = self.params()
        s, r = 2.0, 1.0
        value = ball_integral_radial(params.Vtilde, BallIntegralSpec(s, r))
        rng = np.random.default_rng(20190712)
        samples = []
        for _ in range(10):
            # Uniform points in the ball by rejection from its bounding cube
            points = rng.uniform(-r, r, size=(1500000, 3))
            points = points[np.sum(points ** 2, axis=1) <= r ** 2][:1000000]
            points[:, 0] += s
            samples.append(params.Vtilde(np.sqrt(np.sum(points ** 2,
                                                        axis=1))))
        samples = np.concatenate(samples) * ball_volume(3, r)
        mean = samples.mean()
        stderr = samples.std() / np.sqrt(len(samples))
        self.assertLess(abs(value - mean), 3.0 * stderr)

    def test_invalid_spec(self):
        with self.assertRaises(SchrolabUsageError):
            BallIntegralSpec(-1.0, 1.0)
        with self.assertRaises(SchrolabUsageError):
            BallIntegralSpec(1.0, 0.0)
