import os.path
import json
import tempfile
import shutil
from spinflow.cmd import flow
if __name__ == '__main__':
    from spinflow.utils.testing import DummyTestCase as TestCase  # @UnusedImport
else:
    from unittest import TestCase  # @Reimport


class TestFlow(TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def _report(self):
        with open(os.path.join(self.tmpdir, 'report.json')) as f:
            return json.load(f)

    def test_complete_flow(self):
        args = '--n 10 --j -1 --h 0.3 --t 1e-3 --out {}'.format(self.tmpdir)
        self.assertEqual(flow.run(args.split()), 0)
        report = self._report()
        self.assertTrue(report['passed'])
        transcript = report['transcript']
        self.assertEqual([(r['interval']['q'], r['interval']['k'])
                          for r in transcript],
                         [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)])
        final = report['final']
        self.assertEqual(len(final['block_eigenvalues']), 2)
        self.assertGreater(final['plus_bottom'],
                           final['block_eigenvalues'][-1] + 1.0)
        for fname in ('steps.csv', 'norm_ledger.csv'):
            self.assertTrue(os.path.exists(os.path.join(self.tmpdir, fname)))
        with open(os.path.join(self.tmpdir, 'steps.csv')) as f:
            self.assertEqual(len(f.read().splitlines()), 7)

    def test_unperturbed_flow(self):
        args = '--n 10 --j 1 --h 0.4 --t 0 --out {}'.format(self.tmpdir)
        self.assertEqual(flow.run(args.split()), 0)
        report = self._report()
        for step in report['transcript']:
            self.assertLess(step['z_norm'], 1e-14)
        self.assertAlmostEqual(report['final']['block_eigenvalues'][0],
                               -9.0 - 4.0, places=12)

    def test_truncated_flow(self):
        args = ('--n 13 --j -1 --h 0.3 --max-steps 2 --no-check --out {}'
                .format(self.tmpdir))
        self.assertEqual(flow.run(args.split()), 0)
        report = self._report()
        self.assertEqual(len(report['transcript']), 2)
        self.assertNotIn('final', report)
        self.assertIsNone(report['transcript'][0]['consistency_residual'])
