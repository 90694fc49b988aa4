import os.path
import csv
import tempfile
import shutil
from spinflow.cmd import sweep
if __name__ == '__main__':
    from spinflow.utils.testing import DummyTestCase as TestCase  # @UnusedImport
else:
    from unittest import TestCase  # @Reimport


class TestSweep(TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_antiferro_sweep(self):
        args = ('--n 10 --j -1 --h 0.3 --t-grid 1e-2,1e-3 --out {}'
                .format(self.tmpdir))
        self.assertEqual(sweep.run(args.split()), 0)
        with open(os.path.join(self.tmpdir, 'splitting_vs_t.csv')) as f:
            rows = list(csv.DictReader(f))
        self.assertEqual([float(r['t']) for r in rows], [1e-3, 1e-2])
        for row in rows:
            # even chain: Néel pair nearly degenerate, 2|J| - 2h above it
            self.assertLess(float(row['splitting']), 1e-3)
            self.assertAlmostEqual(float(row['gap']), 1.4, delta=0.05)
        with open(os.path.join(self.tmpdir, 'hooked_vs_t.csv')) as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(len(rows), 2)
        self.assertEqual(set(r['xi'] for r in rows), set(['3']))
