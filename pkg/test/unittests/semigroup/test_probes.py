import numpy as np
from schrolab.utils.testing import BaseTestCase
from schrolab.operator import OperatorParams
from schrolab.discretization import build_grid
from schrolab.semigroup import (
    DecayProfile, domination_check, decay_of_one, irreducibility_probe)
from schrolab.exceptions import SchrolabUsageError


class TestDomination(BaseTestCase):

    def setUp(self):
        super(TestDomination, self).setUp()
        self.grid = build_grid(20.0, 400)
        self.u0 = np.exp(-((self.grid.nodes - 2.0) / 0.5) ** 2)

    def test_domination(self):
        for t in (0.1, 1.0):
            report = domination_check(self.params(), self.grid, self.u0, t)
            self.assertTrue(report.holds, str(report))
            self.assertLessEqual(report.refined_excess, 1e-10)

    def test_identical_generators(self):
        free = OperatorParams(3, 0.0, 0.0, mode='free')
        report = domination_check(free, self.grid, self.u0, 1.0)
        self.assertEqual(report.excess, 0.0)

    def test_initial_time(self):
        report = domination_check(self.params(), self.grid, self.u0, 0.0)
        self.assertEqual(report.excess, 0.0)

    def test_invalid_data(self):
        with self.assertRaises(SchrolabUsageError):
            domination_check(self.params(), self.grid, -self.u0, 1.0)


class TestDecayOfOne(BaseTestCase):

    def test_decreasing_outer_maximum(self):
        profile = decay_of_one(self.params(), 1.0, scheme='euler')
        self.assertEqual(profile.radii, [20.0, 40.0, 80.0])
        self.assertTrue(profile.holds, str(profile))
        self.assertTrue(all(0.0 <= m < 1.0 for m in profile.outer_max))
        self.assertFalse(profile.downgraded)

    def test_half_step_agrees(self):
        profile = decay_of_one(self.params(), 1.0, scheme='euler')
        self.assertEqual(len(profile.refined_outer_max), 3)
        self.assertEqual(len(profile.schemes), 6)
        self.assertTrue(profile.decreasing_in_R)
        self.assertTrue(all(0.0 <= c <= 1.0
                            for c in profile.refinement_change))

    def test_larger_beta_decays_faster(self):
        for R in (20.0, 40.0):
            outer = [decay_of_one(self.params(beta=beta), 1.0, radii=(R,),
                                  scheme='euler').outer_max[0]
                     for beta in (2.0, 4.0)]
            self.assertLessEqual(outer[1], outer[0])

    def test_midpoint_with_fallback(self):
        profile = decay_of_one(self.params(), 1.0, radii=(20.0, 40.0),
                               fallback='euler')
        self.assertFalse(profile.positivity_violated)
        for scheme in profile.schemes:
            self.assertEqual(scheme['name'] == 'euler',
                             scheme.get('downgraded', False))
        self.assertEqual(profile.downgraded,
                         any(s['name'] == 'euler' for s in profile.schemes))

    def test_short_time(self):
        profile = decay_of_one(self.params(), 1e-4, radii=(20.0,))
        self.assertGreater(profile.outer_max[0], 0.95)

    def test_underflow_floor(self):
        profile = DecayProfile(1.0, [20.0, 40.0, 80.0], [1e-20, 0.0, 0.0],
                               [True] * 3, [])
        self.assertTrue(profile.decreasing_in_R)
        self.assertEqual(profile.underflow, [False, True, True])
        profile.outer_max = [1e-20, 1e-10, 0.0]
        self.assertFalse(profile.decreasing_in_R)

    def test_refined_maxima_must_decrease(self):
        profile = DecayProfile(1.0, [20.0, 40.0], [1e-3, 1e-5], [True] * 2,
                               [], refined_outer_max=[1e-3, 2e-3])
        self.assertFalse(profile.decreasing_in_R)
        self.assertFalse(profile.holds)
        self.assertAlmostEqual(profile.refinement_change[1], 0.995)

    def test_positivity_violation_fails(self):
        violated = {'name': 'midpoint', 'halvings': 3,
                    'positivity_violated': True}
        profile = DecayProfile(1.0, [20.0, 40.0], [1e-3, 1e-5], [True] * 2,
                               [{'name': 'midpoint'}, violated])
        self.assertTrue(profile.decreasing_in_R)
        self.assertTrue(profile.positivity_violated)
        self.assertFalse(profile.holds)

    def test_downgrade_reported(self):
        downgraded = {'name': 'euler', 'fallback_from': 'midpoint',
                      'halvings': 3, 'downgraded': True}
        profile = DecayProfile(1.0, [20.0, 40.0], [1e-3, 1e-5], [True] * 2,
                               [{'name': 'midpoint'}, downgraded])
        self.assertTrue(profile.downgraded)
        self.assertTrue(profile.holds)


class TestIrreducibility(BaseTestCase):

    def test_bump_spreads(self):
        grid = build_grid(10.0, 200)
        report = irreducibility_probe(self.params(), grid, 3.0, 0.5)
        self.assertTrue(report.holds, str(report))
        self.assertIsNone(report.first_zero)
