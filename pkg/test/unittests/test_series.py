import numpy
from numpy.testing import assert_allclose
import scipy.linalg
from spinflow.lattice import MicroRange
from spinflow.flow.series import (
    series, diag_part, split_plus, offdiag_norm, Resolvent)
from spinflow.exceptions import SpinflowGapError, SpinflowConvergenceError
from spinflow.utils.testing import random_hermitian
if __name__ == '__main__':
    from spinflow.utils.testing import DummyTestCase as TestCase  # @UnusedImport
else:
    from unittest import TestCase  # @Reimport


def _conjugated(g, v, epsilon, z):
    u = scipy.linalg.expm(z)
    return u.dot(g + epsilon * v).dot(u.conj().T)


class TestBlockParts(TestCase):

    def test_parts(self):
        x = random_hermitian(MicroRange(1, 3), seed=1).matrix
        idx = [0, 3]
        d = diag_part(x, idx)
        self.assertEqual(offdiag_norm(d, idx), 0.0)
        assert_allclose(d[numpy.ix_(idx, idx)], x[numpy.ix_(idx, idx)])
        rest = numpy.eye(8, dtype=complex)
        p, rest = split_plus(numpy.array(x), idx, rest)
        self.assertEqual(numpy.count_nonzero(p[idx, :]), 0)
        self.assertEqual(numpy.count_nonzero(p[:, idx]), 0)
        assert_allclose(p[1:3, 1:3], x[1:3, 1:3])
        # nothing lost or counted twice
        assert_allclose(p + rest - numpy.eye(8), x, atol=1e-15)
        assert_allclose(rest[1:3, 1:3], numpy.eye(2), atol=1e-15)


class TestResolvent(TestCase):

    def test_diagonal_g(self):
        g = numpy.diag([0.0, 2.0, 3.0, 5.0]).astype(complex)
        res = Resolvent(g, [0], [0.0])
        self.assertAlmostEqual(res.gap, 2.0)
        y = numpy.array([7.0, 2.0, 3.0, 5.0], dtype=complex)
        assert_allclose(res.apply(0, y), [0.0, 1.0, 1.0, 1.0])

    def test_gap_floor(self):
        g = numpy.diag([0.0, 0.0, 1.0, 2.0]).astype(complex)
        self.assertRaises(SpinflowGapError, Resolvent, g, [0], [0.0])

    def test_non_diagonal_block(self):
        g = numpy.diag([0.0, 2.0, 3.0, 5.0]).astype(complex)
        g[1, 2] = g[2, 1] = 0.5
        res = Resolvent(g, [0], [0.0])
        mask = [1, 2, 3]
        y = numpy.array([0.0, 1.0, -1.0, 2.0], dtype=complex)
        expected = numpy.zeros(4, dtype=complex)
        expected[mask] = numpy.linalg.solve(g[numpy.ix_(mask, mask)],
                                            y[mask])
        assert_allclose(res.apply(0, y), expected, atol=1e-12)


class TestSeries(TestCase):

    def _check_block_diagonal(self, g, v, idx, energies, epsilon):
        result = series(g, v, idx, energies, epsilon)
        conj = _conjugated(g, v, epsilon, result.z)
        self.assertLess(offdiag_norm(conj, idx), 1e-12,
                        "Conjugated Hamiltonian is not block-diagonal")
        assert_allclose(conj, g + epsilon * result.diag_series, atol=1e-12)
        assert_allclose(result.z, -result.z.conj().T, atol=1e-14)
        return result

    def test_single_ground_state(self):
        g = numpy.diag([-1.0, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0])
        v = random_hermitian(MicroRange(1, 3), seed=2).matrix
        result = self._check_block_diagonal(g.astype(complex), v, [0],
                                            [-1.0], 0.01)
        self.assertGreater(result.terms, 2)
        self.assertAlmostEqual(result.gap, 2.0)

    def test_two_ground_states(self):
        g = numpy.diag([-1.0, 1.0, 1.5, -0.6, 2.5, 3.0, 3.5, 4.0])
        v = random_hermitian(MicroRange(1, 3), seed=3).matrix
        result = self._check_block_diagonal(g.astype(complex), v, [0, 3],
                                            [-1.0, -0.6], 0.01)
        self.assertAlmostEqual(result.gap, 1.6)

    def test_first_order_generator(self):
        g = numpy.diag([0.0, 1.0, 2.0, 4.0]).astype(complex)
        v = random_hermitian(MicroRange(1, 2), seed=4).matrix
        epsilon = 1e-3
        result = series(g, v, [0], [0.0], epsilon)
        w = numpy.zeros(4, dtype=complex)
        w[1:] = v[1:, 0] / numpy.array([1.0, 2.0, 4.0])
        z1 = numpy.outer(w, [1, 0, 0, 0]) - numpy.outer([1, 0, 0, 0],
                                                       w.conj())
        assert_allclose(result.z, epsilon * z1, atol=epsilon ** 2 * 100)
        self.assertAlmostEqual(result.z1_norm,
                               epsilon * numpy.linalg.norm(w), places=12)

    def test_zero_expansion_parameter(self):
        g = numpy.diag([0.0, 1.0, 2.0, 4.0]).astype(complex)
        v = random_hermitian(MicroRange(1, 2), seed=5).matrix
        result = series(g, v, [0], [0.0], 0.0)
        self.assertLess(result.z_norm, 1e-15)
        self.assertEqual(result.terms, 1)
        self.assertEqual(numpy.count_nonzero(result.high_order), 0)

    def test_decoupled_perturbation(self):
        g = numpy.diag([0.0, 1.0, 2.0, 4.0]).astype(complex)
        v = numpy.zeros((4, 4), dtype=complex)
        v[1, 2] = v[2, 1] = 1.0
        result = series(g, v, [0], [0.0], 0.1)
        self.assertLess(result.z_norm, 1e-15)
        assert_allclose(result.diag_series, v)

    def test_convergence_cap(self):
        g = numpy.diag([0.0, 1.0, 2.0, 4.0]).astype(complex)
        v = random_hermitian(MicroRange(1, 2), seed=6).matrix
        self.assertRaises(SpinflowConvergenceError, series, g, v, [0], [0.0],
                          0.05, max_order=2)
