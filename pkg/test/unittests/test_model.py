import numpy
from numpy.testing import assert_allclose
from spinflow.lattice import MicroRange, Interval
from spinflow.operator import op_norm
from spinflow.model import (
    ModelParams, h0, hc, h0_diagonal, ising_bond, v_perp, k_lambda,
    xxz_hamiltonian, k_lambda_sparse, neel_spins, ground_data, gap_formula,
    gap_exact, frustration)
from spinflow.exceptions import SpinflowUsageError, SpinflowTypeError
if __name__ == '__main__':
    from spinflow.utils.testing import DummyTestCase as TestCase  # @UnusedImport
else:
    from unittest import TestCase  # @Reimport


class TestModelParams(TestCase):

    def test_regime(self):
        self.assertTrue(ModelParams(10, 3, 1.0, 0.4).is_ferro)
        p = ModelParams(10, 3, -1.0, 0.3)
        self.assertFalse(p.is_ferro)
        self.assertEqual(p.regime, 'af')
        self.assertAlmostEqual(p.unperturbed_gap, 1.4)
        self.assertAlmostEqual(ModelParams(10, 3, 1.0, 0.4).unperturbed_gap,
                               2.8)

    def test_invalid(self):
        self.assertRaises(SpinflowUsageError, ModelParams, 10, 3, 0.0, 0.4)
        self.assertRaises(SpinflowUsageError, ModelParams, 10, 3, 1.0, -0.1)
        self.assertRaises(SpinflowUsageError, ModelParams, 10, 3, -1.0, 1.0)
        self.assertRaises(SpinflowUsageError, ModelParams, 11, 3, 1.0, 0.4)

    def test_wrong_types(self):
        self.assertRaises(SpinflowTypeError, ModelParams, 10, 3, 'strong',
                          0.4)
        self.assertRaises(SpinflowTypeError, ModelParams, 10, 3, 1.0, None)
        self.assertRaises(SpinflowTypeError, ModelParams, 'ten', 3)
        self.assertRaises(SpinflowTypeError, ModelParams, 10, [3])

    def test_ferro_flow_needs_field(self):
        p = ModelParams(10, 3, 1.0, 0.0)
        self.assertRaises(SpinflowUsageError, p.check_flow)

    def test_with_t(self):
        p = ModelParams(10, 3, 1.0, 0.4, 1e-3)
        q = p.with_t(1e-2)
        self.assertAlmostEqual(q.xi_t, 3e-2)
        self.assertEqual(q.n_sites, p.n_sites)
        self.assertNotEqual(p, q)
        self.assertEqual(p, ModelParams(10, 3, 1.0, 0.4, 1e-3))


class TestHamiltonians(TestCase):

    def setUp(self):
        self.ferro = ModelParams(10, 3, 1.0, 0.4, 1e-2)
        self.af = ModelParams(10, 3, -1.0, 0.3, 1e-2)

    def test_all_up_energy(self):
        r = MicroRange(1, 5)
        self.assertAlmostEqual(h0_diagonal(r, self.ferro)[0], -4.0 - 2.0)
        self.assertAlmostEqual(hc(r, self.ferro).matrix[0, 0].real,
                               -4.0 - 0.4 * 4)

    def test_ising_bond(self):
        bond = ising_bond(3, self.af)
        self.assertEqual(bond.support, MicroRange(3, 4))
        assert_allclose(numpy.diag(bond.matrix).real, [1, -1, -1, 1])

    def test_initial_potential_norm(self):
        v = v_perp(Interval(1, 1), self.ferro)
        self.assertEqual(v.support, MicroRange(1, 4))
        self.assertAlmostEqual(op_norm(v), 0.745356, places=6)
        self.assertRaises(SpinflowUsageError, v_perp, Interval(1, 2),
                          self.ferro)

    def test_decomposition_matches_bond_sum(self):
        for p in (self.ferro, self.af):
            assert_allclose(k_lambda(p).matrix, xxz_hamiltonian(p).matrix,
                            atol=1e-12)

    def test_sparse_matches_dense(self):
        p = ModelParams(7, 3, -1.0, 0.3, 0.05)
        assert_allclose(k_lambda_sparse(p).toarray(), k_lambda(p).matrix,
                        atol=1e-12)

    def test_unperturbed_chain(self):
        p = self.ferro.with_t(0.0)
        assert_allclose(k_lambda(p).matrix, h0(p.lattice.chain, p).matrix)


class TestGroundStates(TestCase):

    def test_ferro(self):
        p = ModelParams(10, 3, 1.0, 0.4)
        data = ground_data(MicroRange(2, 6), p)
        self.assertEqual(data.indices, [0])
        self.assertIsNone(data.minus_a)
        self.assertEqual(numpy.count_nonzero(data.plus_mask()), 31)

    def test_neel(self):
        p = ModelParams(10, 3, -1.0, 0.3)
        self.assertEqual(neel_spins(MicroRange(1, 4)), [1, -1, 1, -1])
        data = ground_data(MicroRange(1, 4), p)
        # ↑↓↑↓ has sites 2 and 4 down
        self.assertEqual(data.indices, [10, 5])
        assert_allclose(data.minus.matrix + data.plus.matrix, numpy.eye(16))
        assert_allclose(data.minus_a.matrix + data.minus_b.matrix,
                        data.minus.matrix)

    def test_frustration(self):
        p = ModelParams(10, 3, -1.0, 0.3)
        e_a, e_b = frustration(p, MicroRange(1, 4))
        self.assertAlmostEqual(e_a, e_b)
        e_a, e_b = frustration(p, MicroRange(1, 5))
        self.assertAlmostEqual(abs(e_a - e_b), 0.6)
        e_a, e_b = frustration(p, MicroRange(2, 6))
        self.assertAlmostEqual(abs(e_a - e_b), 0.6)
        self.assertRaises(SpinflowUsageError, frustration,
                          ModelParams(10, 3, 1.0, 0.4), MicroRange(1, 4))


class TestGaps(TestCase):

    def test_formulas(self):
        self.assertAlmostEqual(gap_formula('H0', 1.0, 0.4, 5), 2.8)
        self.assertAlmostEqual(gap_formula('HC', 1.0, 0.4, 5), 2.4)
        self.assertAlmostEqual(gap_formula('H0', -1.0, 0.3, 6), 1.4)
        self.assertAlmostEqual(gap_formula('H0', -1.0, 0.3, 7), 2.0)
        self.assertAlmostEqual(gap_formula('HC', -1.0, 0.3, 7), 1.7)
        self.assertRaises(SpinflowUsageError, gap_formula, 'H0', 1.0, 0.4, 4)
        self.assertRaises(SpinflowUsageError, gap_formula, 'HX', 1.0, 0.4, 5)

    def test_ferro_exact(self):
        p = ModelParams(10, 3, 1.0, 0.4)
        for size in (5, 6, 7, 8):
            r = MicroRange(1, size)
            self.assertAlmostEqual(gap_exact(h0(r, p)),
                                   gap_formula('H0', 1.0, 0.4, size),
                                   places=10)
            self.assertAlmostEqual(gap_exact(hc(r, p)),
                                   gap_formula('HC', 1.0, 0.4, size),
                                   places=10)

    def test_af_exact(self):
        p = ModelParams(10, 3, -1.0, 0.3)
        for size in (5, 6, 7, 8):
            r = MicroRange(1, size)
            self.assertAlmostEqual(
                gap_exact(hc(r, p), 'above_gs_subspace', d=2), 1.7,
                places=10)
        self.assertAlmostEqual(
            gap_exact(h0(MicroRange(1, 6), p), 'above_gs_subspace', d=2),
            1.4, places=10)
