import math
import numpy as np
from scipy.integrate import quad
from schrolab.utils.testing import BaseTestCase
from schrolab.operator import OperatorParams
from schrolab.discretization import (
    build_grid, assemble_operator, apply_operator, face_conductances)
from schrolab.spectrum import solve_spectrum
from schrolab.exceptions import SchrolabUsageError


class TestAssembly(BaseTestCase):

    def test_exact_symmetry(self):
        for ell in (0, 1, 3):
            K = self.operator(n=100, ell=ell).K_dense()
            self.assertEqual(np.abs(K - K.T).max(), 0.0)

    def test_face_conductances(self):
        left, right = np.array([0.5, 3.0]), np.array([0.50001, 7.0])
        for N in (3, 4, 6):
            expected = [1.0 / quad(lambda t: t ** (1 - N), a, b,
                                   epsabs=0, epsrel=1e-13)[0]
                        for a, b in zip(left, right)]
            self.assertRelClose(face_conductances(left, right, N), expected,
                                1e-9)

    def test_dirichlet_laplacian(self):
        free = OperatorParams(3, 0.0, 0.0, mode='free')
        errors = []
        for n in (200, 400):
            op = self.operator(free, R=1.0, n=n, grading=1.0,
                               include_potential=False, weighted=False)
            lam = solve_spectrum(op, k=1).eigenvalues[0]
            errors.append(abs(lam + math.pi ** 2) / math.pi ** 2)
        self.assertLess(errors[0], 1e-3)
        self.assertLess(errors[1], errors[0])

    def test_rayleigh_quotient_oracle(self):
        params = self.params()
        op = self.operator(params, R=20.0, n=400)
        u = np.exp(-op.nodes)
        discrete = np.dot(u, op.matvec(u)) / np.dot(u, op.mass * u)
        self.assertLess(discrete, 0.0)
        energy = quad(lambda r: (np.exp(-2 * r) * r ** 2 *
                                 (1.0 + params.Vtilde(r))), 0.0, 20.0,
                      limit=200)[0]
        norm = quad(lambda r: np.exp(-2 * r) * r ** 2 / params.a(r),
                    0.0, 20.0, limit=200)[0]
        self.assertRelClose(discrete, -energy / norm, 2e-2)

    def test_nonpositive_rayleigh_quotients(self):
        rng = np.random.default_rng(7)
        for ell in (0, 2):
            op = self.operator(n=200, ell=ell)
            for _ in range(20):
                u = rng.standard_normal(len(op))
                self.assertLessEqual(np.dot(u, op.matvec(u)), 0.0)

    def test_weighted_mass(self):
        params = self.params()
        op = self.operator(params, n=50)
        dual = op.grid.dual_edges()
        for i in (0, 10, 49):
            expected = quad(lambda r: r ** 2 / params.a(r), dual[i],
                            dual[i + 1], epsabs=0, epsrel=1e-13)[0]
            self.assertRelClose(op.mass[i], expected, 1e-10)
        lebesgue = self.operator(params, n=50, weighted=False)
        np.testing.assert_allclose(lebesgue.mass,
                                   op.grid.control_volumes, rtol=1e-14)

    def test_centrifugal_term(self):
        op0 = self.operator(n=100, ell=0)
        op2 = self.operator(n=100, ell=2)
        # Only the centrifugal term and the inner Dirichlet face differ
        self.assertTrue(np.all(op2.diag < op0.diag))
        np.testing.assert_array_equal(op2.offdiag, op0.offdiag)
        self.assertEqual(op2.boundary, ('dirichlet', 'dirichlet'))
        self.assertEqual(op0.boundary, ('neumann', 'dirichlet'))

    def test_apply_zero(self):
        op = self.operator(n=100)
        np.testing.assert_array_equal(apply_operator(op, np.zeros(100)),
                                      np.zeros(100))

    def test_apply_constant(self):
        op = self.operator(n=300, include_potential=False)
        Au = apply_operator(op, np.ones(300))
        scale = np.abs(op.diag / op.mass).max()
        self.assertLess(np.abs(Au[:-1]).max(), 1e-12 * scale)
        self.assertLess(Au[-1], 0.0)

    def test_neumann_outer_conserves(self):
        op = self.operator(n=120, include_potential=False, outer='neumann')
        row_sums = op.K_dense().sum(axis=1)
        self.assertLess(np.abs(row_sums).max(),
                        1e-13 * np.abs(op.diag).max())

    def test_dimension_mismatch(self):
        op = self.operator(n=100)
        with self.assertRaises(SchrolabUsageError):
            apply_operator(op, np.ones(99))
        with self.assertRaises(SchrolabUsageError):
            assemble_operator(build_grid(10.0, 100, N=4), self.params())
        with self.assertRaises(SchrolabUsageError):
            assemble_operator(build_grid(10.0, 100), self.params(),
                              outer='robin')
