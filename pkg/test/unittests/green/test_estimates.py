import numpy as np
from schrolab.utils.testing import BaseTestCase
from schrolab.utils import lp_norm
from schrolab.spectrum import ground_state
from schrolab.green import (
    WeightedEstimateSpec, weighted_estimate_report, estimate_ratios)
from schrolab.exceptions import SchrolabParameterError


class TestWeightedEstimates(BaseTestCase):

    def test_eigenpair(self):
        op = self.operator()
        gs = ground_state(op)
        psi, lam = gs.psi, gs.lambda0
        r = op.nodes
        w = op.grid.control_volumes
        for p in (2.0, 3.0):
            ratios = estimate_ratios(op, psi, [0.0, 1.0, 2.0], p)
            u = psi / lam
            f_norm = lp_norm(psi, w, p)
            u_norm = lp_norm(u, w, p)
            for gamma in (0.0, 1.0, 2.0):
                self.assertRelClose(
                    ratios['weight-{:g}'.format(gamma)],
                    lp_norm(r ** gamma * psi, w, p) / (abs(lam) * f_norm),
                    1e-8)
            self.assertRelClose(ratios['potential'],
                                lp_norm(r ** 2 * psi, w, p) /
                                (abs(lam) * f_norm), 1e-8)
            self.assertRelClose(
                ratios['lower-order'],
                lp_norm((1.0 + r) * u, w, p) / (f_norm + u_norm), 1e-8)
            du = np.gradient(u, r)
            self.assertRelClose(
                ratios['gradient'],
                lp_norm((1.0 + r ** 2) * du, w, p) / (f_norm + u_norm),
                1e-8)

    def test_spectral_bound(self):
        spec = WeightedEstimateSpec(gammas=[0.0], p=2.0,
                                    domains=(20.0, 40.0), n=200)
        report = weighted_estimate_report(self.params(), spec)
        self.assertEqual(sorted(report.spectral_bounds), [20.0, 40.0])
        self.assertTrue(report.spectral_bound_holds)

    def test_bounded_under_doubling(self):
        for p in (2.0, 3.0):
            report = weighted_estimate_report(
                self.params(), WeightedEstimateSpec(p=p), jobs=4)
            self.assertEqual(report.gammas, [0.0, 1.0, 2.0])
            self.assertTrue(report.bounded, str(report))
            self.assertEqual(len(report.table()), 2 * 6 * 5)

    def test_invalid(self):
        with self.assertRaises(SchrolabParameterError):
            WeightedEstimateSpec(f_family={})
        with self.assertRaises(SchrolabParameterError):
            weighted_estimate_report(self.params(),
                                     WeightedEstimateSpec(gammas=[3.0]))
