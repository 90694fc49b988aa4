"""
Helpers shared by the unit tests
"""
from __future__ import print_function
import numpy
from spinflow.lattice import MicroRange
from spinflow.operator import LocalOperator


def random_hermitian(support, seed=0, scale=1.0):
    "Random Hermitian operator on `support` with entries of order `scale`"
    if not isinstance(support, MicroRange):
        support = MicroRange(*support)
    rng = numpy.random.RandomState(seed)
    m = (rng.standard_normal((support.dim, support.dim)) +
         1j * rng.standard_normal((support.dim, support.dim)))
    return LocalOperator(support, 0.5 * scale * (m + m.conj().T),
                         hermitian=True)


def random_anti_hermitian(support, seed=0, scale=1.0):
    "Random anti-Hermitian operator on `support`"
    h = random_hermitian(support, seed=seed, scale=scale)
    return LocalOperator(h.support, 1j * h.matrix)


def random_unit_vector(dim, seed=0):
    rng = numpy.random.RandomState(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / numpy.linalg.norm(v)


class DummyTestCase(object):

    def __init__(self):
        self.setUp()

    def setUp(self):
        pass

    def tearDown(self):
        pass

    def __del__(self):
        self.tearDown()

    def assertEqual(self, first, second, msg=None):
        if first != second:
            if msg is None:
                msg = '{} and {} are not equal'.format(repr(first),
                                                       repr(second))
            print(msg)

    def assertAlmostEqual(self, first, second, places=None, msg=None,
                          delta=None):
        if delta is None:
            delta = 10 ** -(7 if places is None else places)
        if abs(first - second) > delta:
            if msg is None:
                msg = '{} and {} are not equal'.format(repr(first),
                                                       repr(second))
            print(msg)

    def assertLess(self, first, second, msg=None):
        if first >= second:
            if msg is None:
                msg = '{} is not less than {}'.format(repr(first),
                                                      repr(second))
            print(msg)

    def assertLessEqual(self, first, second, msg=None):
        if first > second:
            if msg is None:
                msg = '{} is not less than or equal to {}'.format(
                    repr(first), repr(second))
            print(msg)

    def assertGreater(self, first, second, msg=None):
        if first <= second:
            if msg is None:
                msg = '{} is not greater than {}'.format(repr(first),
                                                         repr(second))
            print(msg)

    def assertGreaterEqual(self, first, second, msg=None):
        if first < second:
            if msg is None:
                msg = '{} is not greater than or equal to {}'.format(
                    repr(first), repr(second))
            print(msg)

    def assertNotEqual(self, first, second, msg=None):
        if first == second:
            if msg is None:
                msg = '{} is equal to {}'.format(
                    repr(first), repr(second))
            print(msg)

    def assertTrue(self, statement, msg=None):
        if not statement:
            if msg is None:
                msg = '{} is not true'.format(repr(statement))
            print(msg)

    def assertFalse(self, statement, msg=None):
        if statement:
            if msg is None:
                msg = '{} is true'.format(repr(statement))
            print(msg)

    def assertIsNone(self, obj, msg=None):
        if obj is not None:
            if msg is None:
                msg = '{} is not None'.format(repr(obj))
            print(msg)

    def assertIsNotNone(self, obj, msg=None):
        if obj is None:
            print(msg if msg is not None else 'unexpected None')

    def assertRaises(self, exception, func=None, *args, **kwargs):
        if func is None:
            return _DummyRaises(exception)
        try:
            func(*args, **kwargs)
        except exception:
            pass
        else:
            print('{} not raised'.format(exception.__name__))


class _DummyRaises(object):

    def __init__(self, exception):
        self.exception_type = exception
        self.exception = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, tb):
        if exc_type is None:
            print('{} not raised'.format(self.exception_type.__name__))
            return False
        if issubclass(exc_type, self.exception_type):
            self.exception = exc_value
            return True
        return False
