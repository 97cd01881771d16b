import math
import numpy as np
from schrolab.utils.testing import BaseTestCase
from schrolab.discretization import build_grid
from schrolab.spectrum import (
    channel_degeneracy, solve_channels, kernel_spectra, solve_spectrum)
from schrolab.discretization import assemble_operator


class TestChannels(BaseTestCase):

    def test_degeneracy(self):
        for ell in range(8):
            self.assertEqual(channel_degeneracy(ell, 3), 2 * ell + 1)
            self.assertEqual(channel_degeneracy(ell, 4), (ell + 1) ** 2)
        self.assertEqual(channel_degeneracy(0, 7), 1)
        self.assertEqual(channel_degeneracy(1, 7), 7)

    def test_merge(self):
        grid = build_grid(20.0, 200)
        spectra = solve_channels(grid, self.params(), L_max=3, k=5, jobs=2)
        self.assertEqual(spectra.ells, [0, 1, 2, 3])
        merged = spectra.merged()
        self.assertEqual(len(merged), 20)
        values = [m[0] for m in merged]
        self.assertEqual(values, sorted(values, reverse=True))
        self.assertEqual(merged[0][1], 0)
        self.assertEqual(merged[0][2], 1)
        self.assertEqual(spectra.top, merged[0][0])
        self.assertTrue(all(m == 2 * ell + 1 for _, ell, m in merged))

    def test_kernel_cut(self):
        grid = build_grid(20.0, 200)
        t_min = 0.5
        spectra = kernel_spectra(grid, self.params(), t_min)
        cut = math.log(1e-12) / t_min
        self.assertEqual(spectra.cut, cut)
        for spectrum in spectra.channels.values():
            self.assertTrue(np.all(spectrum.eigenvalues > cut))
        next_ell = max(spectra.ells) + 1
        next_top = solve_spectrum(
            assemble_operator(grid, self.params(), ell=next_ell),
            k=1).eigenvalues[0]
        self.assertLessEqual(next_top, cut)
