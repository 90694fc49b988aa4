import os.path
import tempfile
import shutil
import numpy
from numpy.testing import assert_allclose
from spinflow.lattice import MicroRange
from spinflow.operator import (
    LocalOperator, StateVector, pauli, local_term, embed, accumulate, add,
    mul, commutator, conjugate, conjugation_change, expm_skew, symmetrize,
    op_norm, spectral_norm, apply,
    expectation, partial_trace, leakage, projector_from_states, basis_index,
    unitarity_residual, dump, load)
from spinflow.exceptions import (
    SpinflowSupportError, SpinflowHermiticityError, SpinflowUsageError,
    SpinflowTypeError)
from spinflow.utils.testing import (
    random_hermitian, random_anti_hermitian, random_unit_vector)
if __name__ == '__main__':
    from spinflow.utils.testing import DummyTestCase as TestCase  # @UnusedImport
else:
    from unittest import TestCase  # @Reimport


class TestBasisConvention(TestCase):

    def test_lowest_site_is_least_significant(self):
        self.assertEqual(basis_index([1, 1, 1]), 0)
        self.assertEqual(basis_index([-1, 1, 1]), 1)
        self.assertEqual(basis_index([1, 1, -1]), 4)

    def test_pauli_z_eigenvalues(self):
        support = MicroRange(2, 4)
        z_first = pauli(2, 'z', support)
        # basis index 1 has the first site (2) down
        self.assertEqual(z_first.matrix[1, 1], -1)
        self.assertEqual(z_first.matrix[4, 4], 1)
        z_last = pauli(4, 'z', support)
        self.assertEqual(z_last.matrix[4, 4], -1)

    def test_local_term_matches_embedding(self):
        zz = local_term([numpy.diag([1, -1]), numpy.diag([1, -1])], 3)
        self.assertEqual(zz.support, MicroRange(3, 4))
        support = MicroRange(2, 5)
        product = pauli(3, 'z', support).matrix.dot(
            pauli(4, 'z', support).matrix)
        assert_allclose(embed(zz, support).matrix, product)

    def test_bad_axis(self):
        self.assertRaises(SpinflowUsageError, pauli, 1, 'w', MicroRange(1, 2))


class TestLocalOperator(TestCase):

    def test_shape_checked(self):
        self.assertRaises(SpinflowSupportError, LocalOperator,
                          MicroRange(1, 2), numpy.eye(2))

    def test_types_checked(self):
        self.assertRaises(SpinflowTypeError, LocalOperator, 3, numpy.eye(2))
        self.assertRaises(SpinflowTypeError, LocalOperator, (1, 1),
                          [['a', 'b'], ['c', 'd']])
        a = LocalOperator((2, 2), numpy.eye(2))
        self.assertEqual(a.support, MicroRange(2, 2))

    def test_hermitian_flag_checked(self):
        m = numpy.array([[0, 1], [0, 0]])
        self.assertRaises(SpinflowHermiticityError, LocalOperator,
                          MicroRange(1, 1), m, True)

    def test_immutable(self):
        a = LocalOperator.identity(MicroRange(1, 1))
        with self.assertRaises(ValueError):
            a.matrix[0, 0] = 2.0

    def test_add_on_union(self):
        a = random_hermitian(MicroRange(1, 2), seed=1)
        b = random_hermitian(MicroRange(3, 4), seed=2)
        c = a + b
        self.assertEqual(c.support, MicroRange(1, 4))
        self.assertTrue(c.hermitian)
        assert_allclose(c.matrix, embed(a, c.support).matrix +
                        embed(b, c.support).matrix)

    def test_add_needs_contiguous_union(self):
        a = random_hermitian(MicroRange(1, 2), seed=1)
        b = random_hermitian(MicroRange(4, 5), seed=2)
        self.assertRaises(SpinflowSupportError, a.__add__, b)

    def test_product_matches_dense(self):
        a = random_hermitian(MicroRange(2, 3), seed=3)
        b = random_hermitian(MicroRange(1, 4), seed=4)
        dense = embed(a, b.support).matrix.dot(b.matrix)
        assert_allclose((a @ b).matrix, dense, atol=1e-12)
        dense = b.matrix.dot(embed(a, b.support).matrix)
        assert_allclose((b @ a).matrix, dense, atol=1e-12)

    def test_disjoint_operators_commute(self):
        a = random_hermitian(MicroRange(1, 2), seed=5)
        b = random_hermitian(MicroRange(3, 3), seed=6)
        self.assertTrue(commutator(a, b).is_zero)

    def test_symmetrize_refuses_non_hermitian(self):
        z = random_anti_hermitian(MicroRange(1, 2), seed=7)
        self.assertRaises(SpinflowHermiticityError, symmetrize, z)


class TestConjugation(TestCase):

    def setUp(self):
        self.z = random_anti_hermitian(MicroRange(2, 4), seed=11, scale=0.3)
        self.u = expm_skew(self.z)

    def test_exponential_is_unitary(self):
        self.assertLess(unitarity_residual(self.u), 1e-12)

    def test_exponential_of_small_generator(self):
        z = random_anti_hermitian(MicroRange(1, 2), seed=12, scale=1e-5)
        u = expm_skew(z)
        expected = numpy.eye(4) + z.matrix + 0.5 * z.matrix.dot(z.matrix)
        assert_allclose(u.matrix, expected, atol=1e-11)

    def test_non_skew_rejected(self):
        h = random_hermitian(MicroRange(1, 2), seed=13)
        self.assertRaises(SpinflowHermiticityError, expm_skew, h)

    def test_conjugate_preserves_spectrum(self):
        a = random_hermitian(MicroRange(1, 5), seed=14)
        b = conjugate(self.u, a)
        assert_allclose(numpy.linalg.eigvalsh(b.matrix),
                        numpy.linalg.eigvalsh(a.matrix), atol=1e-10)

    def test_conjugate_extends_support(self):
        a = random_hermitian(MicroRange(4, 6), seed=15)
        b = conjugate(self.u, a)
        self.assertEqual(b.support, MicroRange(2, 6))
        uu = embed(self.u, b.support).matrix
        expected = uu.dot(embed(a, b.support).matrix).dot(uu.conj().T)
        assert_allclose(b.matrix, expected, atol=1e-12)

    def test_disjoint_conjugation_is_identity(self):
        a = random_hermitian(MicroRange(6, 7), seed=16)
        self.assertTrue(conjugation_change(self.u, a).is_zero)

    def test_first_order_of_change(self):
        z = random_anti_hermitian(MicroRange(1, 2), seed=17, scale=1e-5)
        a = random_hermitian(MicroRange(2, 3), seed=18)
        change = conjugation_change(expm_skew(z), a)
        first = commutator(z, a)
        self.assertLess(
            numpy.max(numpy.abs(change.matrix - first.matrix)),
            1e-3 * numpy.max(numpy.abs(first.matrix)))


def _kron_embed(a, target):
    above = numpy.eye(2 ** (target.hi - a.support.hi))
    below = numpy.eye(2 ** (a.support.lo - target.lo))
    return numpy.kron(above, numpy.kron(a.matrix, below))


class TestSupportArithmetic(TestCase):

    def setUp(self):
        self.a = random_hermitian(MicroRange(1, 3), seed=41)
        self.b = random_anti_hermitian(MicroRange(3, 5), seed=42)
        self.union = MicroRange(1, 5)

    def test_embed_matches_kron(self):
        a = random_hermitian(MicroRange(2, 3), seed=43)
        target = MicroRange(1, 5)
        assert_allclose(embed(a, target).matrix, _kron_embed(a, target),
                        atol=0.0)

    def test_accumulate_in_place(self):
        a = random_hermitian(MicroRange(2, 3), seed=44)
        target = MicroRange(1, 5)
        matrix = numpy.eye(target.dim, dtype=complex)
        out = accumulate(matrix, a, target, 0.5)
        self.assertIs(out, matrix)
        assert_allclose(matrix, numpy.eye(target.dim) +
                        0.5 * _kron_embed(a, target), atol=1e-15)
        self.assertRaises(SpinflowUsageError, accumulate,
                          embed(a, target).matrix, a, target)
        self.assertRaises(SpinflowSupportError, accumulate,
                          numpy.zeros((4, 4), dtype=complex), a,
                          MicroRange(3, 4))

    def test_partially_overlapping_products(self):
        ma = _kron_embed(self.a, self.union)
        mb = _kron_embed(self.b, self.union)
        for result, expected in ((mul(self.a, self.b), ma.dot(mb)),
                                 (mul(self.b, self.a), mb.dot(ma)),
                                 (add(self.a, self.b), ma + mb),
                                 (commutator(self.b, self.a),
                                  mb.dot(ma) - ma.dot(mb))):
            self.assertEqual(result.support, self.union)
            assert_allclose(result.matrix, expected, atol=1e-12)

    def test_partially_overlapping_conjugation(self):
        u = expm_skew(self.b)
        change = conjugation_change(u, self.a)
        uu = _kron_embed(u, self.union)
        ma = _kron_embed(self.a, self.union)
        self.assertEqual(change.support, self.union)
        assert_allclose(change.matrix, uu.dot(ma).dot(uu.conj().T) - ma,
                        atol=1e-12)


class TestLocalMeasures(TestCase):

    def test_op_norm(self):
        a = LocalOperator(MicroRange(1, 1), numpy.diag([-3.0, 2.0]),
                          hermitian=True)
        self.assertAlmostEqual(op_norm(a), 3.0)
        self.assertEqual(op_norm(LocalOperator.zero(MicroRange(1, 2))), 0.0)

    def test_krylov_norms(self):
        h = random_hermitian(MicroRange(1, 6), seed=45).matrix
        self.assertAlmostEqual(
            spectral_norm(h, hermitian=True, krylov_above=16),
            numpy.max(numpy.abs(numpy.linalg.eigvalsh(h))), places=10)
        rng = numpy.random.RandomState(46)
        m = rng.standard_normal((64, 64)) + 1j * rng.standard_normal((64, 64))
        self.assertAlmostEqual(spectral_norm(m, krylov_above=16),
                               numpy.linalg.norm(m, 2), places=8)

    def test_apply_matches_embedding(self):
        a = random_hermitian(MicroRange(3, 4), seed=21)
        support = MicroRange(1, 6)
        vector = random_unit_vector(support.dim, seed=22)
        assert_allclose(apply(a, vector, support),
                        embed(a, support).matrix.dot(vector), atol=1e-12)

    def test_expectation_of_product_state(self):
        support = MicroRange(1, 3)
        state = StateVector.product(support, [1, -1, 1])
        self.assertAlmostEqual(expectation(pauli(2, 'z', support), state),
                               -1.0)

    def test_partial_trace_recovers_local_part(self):
        a = random_hermitian(MicroRange(2, 3), seed=23)
        big = embed(a, MicroRange(1, 4))
        assert_allclose(partial_trace(big, a.support).matrix, a.matrix,
                        atol=1e-12)
        self.assertLess(leakage(big, a.support), 1e-12)
        self.assertGreater(leakage(random_hermitian(MicroRange(1, 3), seed=24),
                                   MicroRange(2, 3)), 1e-3)

    def test_projector(self):
        support = MicroRange(1, 2)
        p = projector_from_states([StateVector.product(support, [1, -1]),
                                   StateVector.product(support, [-1, 1])])
        assert_allclose(p.matrix.dot(p.matrix), p.matrix)
        self.assertAlmostEqual(numpy.trace(p.matrix).real, 2.0)


class TestDump(TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_dump_load(self):
        a = random_hermitian(MicroRange(3, 5), seed=31)
        path = os.path.join(self.tmpdir, 'potential.bin')
        dump(a, path)
        self.assertEqual(os.path.getsize(path), 3 * 8 + a.dim ** 2 * 16)
        b = load(path, hermitian=True)
        self.assertEqual(b.support, a.support)
        assert_allclose(b.matrix, a.matrix)
