import os
import numpy
from numpy.testing import assert_allclose
import mock
from spinflow.lattice import MicroRange
from spinflow.model import ModelParams
from spinflow.verify import (
    ed_spectrum, degenerate_groups, ground_degeneracy, fit_slope, Check,
    VerifyReport, PASS, FAIL, REPORT, check_propositions, check_theorem_ferro,
    check_theorem_af, check_flow_against_ed, check_energy_splitting,
    check_hooked_scaling, check_ferro_zero_field, verify_battery,
    run_scenarios, max_threads, low_spectrum, hooked_ratio)
from spinflow.verify.report import jsonable
from spinflow.exceptions import (
    SpinflowResourceError, SpinflowHermiticityError, SpinflowUsageError)
from spinflow.utils.testing import random_hermitian, random_anti_hermitian
if __name__ == '__main__':
    from spinflow.utils.testing import DummyTestCase as TestCase  # @UnusedImport
else:
    from unittest import TestCase  # @Reimport


class TestOracle(TestCase):

    def test_full_spectrum(self):
        a = random_hermitian(MicroRange(1, 4), seed=1)
        assert_allclose(ed_spectrum(a), numpy.linalg.eigvalsh(a.matrix),
                        atol=1e-12)
        assert_allclose(ed_spectrum(a, 3),
                        numpy.linalg.eigvalsh(a.matrix)[:3], atol=1e-12)

    def test_krylov_path(self):
        a = random_hermitian(MicroRange(1, 6), seed=2)
        krylov = ed_spectrum(a, 3, krylov_above=16)
        assert_allclose(krylov, numpy.linalg.eigvalsh(a.matrix)[:3],
                        atol=1e-9)

    def test_caps_and_checks(self):
        a = random_hermitian(MicroRange(1, 4), seed=3)
        self.assertRaises(SpinflowResourceError, ed_spectrum, a,
                          dense_cap=8)
        self.assertRaises(SpinflowUsageError, ed_spectrum, a, 0)
        self.assertRaises(SpinflowHermiticityError, ed_spectrum,
                          random_anti_hermitian(MicroRange(1, 2), seed=4))

    def test_degenerate_groups(self):
        eigs = [-2.0, -2.0, 0.5, 1.0, 1.0, 1.0]
        self.assertEqual(degenerate_groups(eigs), [2, 1, 3])
        self.assertEqual(ground_degeneracy(eigs), 2)
        self.assertEqual(ground_degeneracy([-1.0, -1.0 + 1e-6]), 1)

    def test_fit_slope(self):
        xs = [1e-4, 1e-3, 1e-2]
        slope, c = fit_slope(xs, [3.0 * x ** 2 for x in xs])
        self.assertAlmostEqual(slope, 2.0, places=10)
        self.assertAlmostEqual(c, 3.0, places=8)
        self.assertEqual(fit_slope(xs, [0.0, 0.0, 1.0]), (None, None))

    def test_low_spectrum_at_zero_hopping(self):
        p = ModelParams(10, 3, -1.0, 0.3, 0.0)
        eigs = low_spectrum(p, 3)
        self.assertAlmostEqual(eigs[1] - eigs[0], 0.0)
        self.assertAlmostEqual(eigs[2] - eigs[0], 1.4)


class TestReport(TestCase):

    def test_statuses(self):
        self.assertEqual(Check.compare('a', 1.0, 1.05, 0.1).status, PASS)
        self.assertEqual(Check.compare('a', 1.0, 1.5, 0.1).status, FAIL)
        self.assertEqual(Check.below('b', 2.0, 1.0).status, FAIL)
        self.assertEqual(Check.below('b', 2.0, 1.0, assert_=False).status,
                         REPORT)
        self.assertEqual(Check.above('c', 2.0, 1.0).status, PASS)
        self.assertRaises(ValueError, Check, 'd', 1.0, 1.0, None, 'maybe')

    def test_report(self):
        report = VerifyReport('scenario', {'n': 10})
        report.add(Check.below('ok', 0.0, 1.0))
        report.add(Check('info', 3.0, None, None, REPORT))
        self.assertTrue(report.passed)
        report.add(Check.above('bad', 0.0, 1.0))
        self.assertFalse(report.passed)
        self.assertEqual([c.name for c in report.failures], ['bad'])
        self.assertEqual(report.summary(),
                         'scenario: 1 passed, 1 failed, 1 report-only')
        d = report.to_dict()
        self.assertEqual(d['scenario'], 'scenario')
        self.assertEqual(len(d['checks']), 3)
        self.assertNotIn('timings', d)

    def test_merge(self):
        a = VerifyReport('a', {})
        b = VerifyReport('b', {})
        b.add(Check.below('x', 0.0, 1.0))
        b.add_rows('gap_vs_t', [{'t': 1e-3, 'gap': 2.8}])
        a.merge(b)
        self.assertEqual(a.checks[0].name, 'b/x')
        self.assertEqual(a.tables['gap_vs_t'][0]['gap'], 2.8)

    def test_jsonable(self):
        self.assertEqual(jsonable(numpy.float64(0.5)), 0.5)
        self.assertIs(jsonable(numpy.bool_(True)), True)
        self.assertEqual(jsonable(numpy.int64(3)), 3)
        self.assertEqual(jsonable(float('nan')), 'nan')
        self.assertEqual(jsonable(float('inf')), 'inf')
        self.assertEqual(list(jsonable({'b': 1, 'a': 2})), ['a', 'b'])


class TestChecks(TestCase):

    ferro = ModelParams(10, 3, 1.0, 0.4, 1e-3)
    af = ModelParams(10, 3, -1.0, 0.3, 1e-3)

    def _assert_passed(self, report):
        self.assertTrue(report.passed, "{} failed: {}".format(
            report.scenario, report.failures))

    def test_propositions(self):
        for p in (self.ferro, self.af):
            report = check_propositions(p)
            self._assert_passed(report)
            self.assertEqual(len(report.tables['gaps']), 8)

    def test_theorem_ferro(self):
        report = check_theorem_ferro(self.ferro)
        self._assert_passed(report)
        ts = [row['t'] for row in report.tables['gap_vs_t']]
        self.assertEqual(ts, sorted(ts))
        self.assertRaises(SpinflowUsageError, check_theorem_ferro, self.af)

    def test_theorem_af_even(self):
        report = check_theorem_af(self.af)
        self._assert_passed(report)
        self.assertEqual(report.scenario, 'theorem_af_even')

    def test_theorem_af_odd(self):
        p = ModelParams(13, 3, -1.0, 0.3, 1e-3)
        report = check_theorem_af(p, t_grid=(1e-3, 1e-2))
        self._assert_passed(report)
        for row in report.tables['splitting_vs_t']:
            self.assertAlmostEqual(row['splitting'], 0.6, delta=0.1)

    def test_flow_against_ed(self):
        report = check_flow_against_ed(self.af)
        self._assert_passed(report)
        names = [c.name for c in report.checks]
        for name in ('consistency', 'isospectral', 'block_diagonal',
                     'final_block', 'gap_ledger'):
            self.assertIn(name, names)
        self.assertEqual(len(report.tables['steps']), 6)

    def test_energy_splitting(self):
        report = check_energy_splitting(self.af, t_grid=(1e-3,))
        self._assert_passed(report)
        parities = set(row['parity']
                       for row in report.tables['step_splitting'])
        self.assertEqual(parities, set(['odd', 'even']))

    def test_hooked_scaling(self):
        self.assertLess(hooked_ratio(self.af), 1e-12)
        report = check_hooked_scaling(self.af, t_grid=(1e-4, 1e-3))
        self._assert_passed(report)
        self.assertEqual(report.checks[0].status, REPORT)

    def test_hooked_scaling_over_spacings(self):
        report = check_hooked_scaling(self.ferro, t_grid=(1e-4, 1e-3),
                                      xis=(6, 3))
        self._assert_passed(report)
        self.assertEqual(report.scenario, 'hooked_scaling_xi3_6')
        checks = dict((c.name, c) for c in report.checks)
        # ξ=6 is asserted, ξ=3 only reported
        self.assertEqual(checks['hooked_slope[xi=6]'].status, PASS)
        self.assertEqual(checks['hooked_slope[xi=3]'].status, REPORT)
        self.assertEqual(sorted(set(r['xi']
                                    for r in report.tables['hooked_vs_t'])),
                         [3, 6])

    def test_ferro_zero_field(self):
        self._assert_passed(check_ferro_zero_field(self.ferro))

    def test_battery(self):
        names = [s[0] for s in verify_battery(self.ferro)]
        self.assertIn('theorem_ferro', names)
        self.assertIn('ferro_zero_field', names)
        names = [s[0] for s in verify_battery(self.af)]
        self.assertIn('theorem_af', names)
        self.assertIn('energy_splitting', names)


def _named_report(name):
    return VerifyReport(name, {})


class TestScenarios(TestCase):

    def test_order_preserved(self):
        scenarios = [(str(n), _named_report, {'name': str(n)})
                     for n in range(5)]
        for threads in (1, 3):
            reports = run_scenarios(scenarios, threads=threads)
            self.assertEqual([r.scenario for r in reports],
                             [str(n) for n in range(5)])
            self.assertIn('0', reports[0].timings)

    def test_thread_cap(self):
        with mock.patch.dict(os.environ, {'SPINFLOW_THREADS': '4'}):
            self.assertEqual(max_threads(), 4)
        with mock.patch.dict(os.environ, {'SPINFLOW_THREADS': 'many'}):
            self.assertRaises(SpinflowUsageError, max_threads)
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(max_threads(), 1)
