import math
import numpy as np
from schrolab.utils.testing import BaseTestCase
from schrolab.green import eigenvalues, solve_resolvent
from schrolab.sector import resolvent_norm_scan, sector_report
from schrolab.exceptions import (
    SchrolabParameterError, SchrolabSpectralProximityError)


MODULI = np.geomspace(1e-1, 1e3, 9)


class TestResolventNormScan(BaseTestCase):

    def test_geometric_bound(self):
        op = self.operator()
        rays = resolvent_norm_scan(op, [0.6 * math.pi, 0.75 * math.pi,
                                        0.9 * math.pi], MODULI, p=2.0)
        for ray in rays:
            self.assertTrue(ray.exact)
            self.assertTrue(ray.holds, str(ray))

    def test_imaginary_axis(self):
        op = self.operator()
        ray, = resolvent_norm_scan(op, [0.5 * math.pi], MODULI, p=2.0)
        lambda0 = eigenvalues(op)[0]
        self.assertRelClose(ray.norms,
                            1.0 / np.sqrt(lambda0 ** 2 + MODULI ** 2),
                            1e-12)
        self.assertLessEqual(ray.C_theta, 1.0)

    def test_against_dense_solve(self):
        op = self.operator(n=60)
        values = eigenvalues(op)
        for lam in 2.0 * np.exp(1j * np.array([0.6, 0.9]) * math.pi):
            ray, = resolvent_norm_scan(op, [np.angle(lam)], [abs(lam)],
                                       p=2.0)
            self.assertRelClose(ray.norms[0],
                                np.max(1.0 / np.abs(lam - values)), 1e-12)
            # Operator norm in the M-weighted inner product
            sq = np.sqrt(op.mass)
            dense = np.linalg.inv(lam * np.diag(op.mass) - op.K_dense())
            weighted = sq[:, None] * dense * sq[None, :]
            self.assertRelClose(np.linalg.norm(weighted, 2), ray.norms[0],
                                1e-8)

    def test_pole(self):
        op = self.operator()
        lambda0 = eigenvalues(op)[0]
        far, near = resolvent_norm_scan(
            op, [0.6 * math.pi, math.pi - 1e-6], [abs(lambda0)], p=2.0)
        self.assertGreater(near.norms[0], 1e3 * far.norms[0])

    def test_on_spectrum(self):
        op = self.operator(n=60)
        values = eigenvalues(op)
        with self.assertRaises(SchrolabSpectralProximityError):
            resolvent_norm_scan(op, [math.pi - 1e-15], [abs(values[2])],
                                p=2.0)

    def test_lower_bounds(self):
        op = self.operator(n=100)
        ray, = resolvent_norm_scan(op, [0.75 * math.pi], [1.0, 10.0],
                                   p=3.0, samples=4)
        self.assertFalse(ray.exact)
        self.assertTrue(np.all(ray.norms > 0.0))
        f = np.exp(-op.nodes ** 2)
        u = solve_resolvent(op, 10.0 * np.exp(0.75j * math.pi), f)
        w = op.grid.control_volumes
        ratio = (np.sum(w * np.abs(u) ** 3) /
                 np.sum(w * np.abs(f) ** 3)) ** (1.0 / 3.0)
        self.assertGreaterEqual(ray.norms[1], ratio * (1.0 - 1e-12))

    def test_invalid_angle(self):
        with self.assertRaises(SchrolabParameterError):
            resolvent_norm_scan(self.operator(n=60), [0.3 * math.pi], MODULI)


class TestSectorReport(BaseTestCase):

    def test_report(self):
        report = sector_report(self.params(), jobs=3)
        self.assertTrue(report.holds, str(report))
        self.assertAlmostEqual(math.tan(report.theta_alpha), report.delta)
        self.assertEqual(len(report.rays), 3)
        self.assertRelClose(report.c_tilde, 1e-2, 1e-12)
