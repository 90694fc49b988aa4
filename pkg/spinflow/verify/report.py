"""
Acceptance-check records and their JSON form
"""
from __future__ import division
import math
from collections import OrderedDict

PASS = 'pass'
FAIL = 'fail'
REPORT = 'report-only'


def jsonable(value):
    "Converts numpy scalars and non-finite floats into JSON-safe values"
    if value is None or isinstance(value, (bool, str)):
        return value
    if hasattr(value, 'dtype') and value.dtype.kind == 'b':
        return bool(value)
    if isinstance(value, dict):
        return OrderedDict((str(k), jsonable(v))
                           for k, v in sorted(value.items()))
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    try:
        f = float(value)
    except (TypeError, ValueError):
        return str(value)
    if isinstance(value, int) or (hasattr(value, 'dtype') and
                                  value.dtype.kind in 'iu'):
        return int(value)
    if math.isnan(f) or math.isinf(f):
        return repr(f)
    return f


class Check(object):
    """
    A single acceptance check

    Parameters
    ----------
    name : str
        Identifier of the check
    measured : float | None
        The measured quantity
    expected : float | str | None
        The reference value or bound it is compared with
    tol : float | None
        Tolerance of the comparison
    status : str
        'pass', 'fail' or 'report-only'
    note : str
        Free-form detail
    """

    def __init__(self, name, measured, expected, tol, status, note=None):
        if status not in (PASS, FAIL, REPORT):
            raise ValueError("Unrecognised check status '{}'".format(status))
        self.name = name
        self.measured = measured
        self.expected = expected
        self.tol = tol
        self.status = status
        self.note = note

    @classmethod
    def compare(cls, name, measured, expected, tol, note=None):
        "Passes when |measured - expected| <= tol"
        status = PASS if abs(measured - expected) <= tol else FAIL
        return cls(name, measured, expected, tol, status, note)

    @classmethod
    def below(cls, name, measured, bound, assert_=True, note=None):
        "Passes when measured <= bound"
        if not assert_:
            status = REPORT
        else:
            status = PASS if measured <= bound else FAIL
        return cls(name, measured, bound, None, status, note)

    @classmethod
    def above(cls, name, measured, bound, assert_=True, note=None):
        "Passes when measured >= bound"
        if not assert_:
            status = REPORT
        else:
            status = PASS if measured >= bound else FAIL
        return cls(name, measured, bound, None, status, note)

    @property
    def failed(self):
        return self.status == FAIL

    def to_dict(self):
        d = OrderedDict([('name', self.name),
                         ('measured', jsonable(self.measured)),
                         ('expected', jsonable(self.expected)),
                         ('tol', jsonable(self.tol)),
                         ('status', self.status)])
        if self.note:
            d['note'] = self.note
        return d

    def __repr__(self):
        return 'Check({}, measured={}, expected={}, status={})'.format(
            self.name, self.measured, self.expected, self.status)


class VerifyReport(object):
    """
    Checks of one scenario, with the tables behind the plot data

    Parameters
    ----------
    scenario : str
        Identifier of the scenario
    params : dict
        Parameters of the scenario
    """

    def __init__(self, scenario, params):
        self.scenario = scenario
        self.params = dict(params)
        self.checks = []
        self.tables = OrderedDict()
        # wall-clock timings are kept out of the JSON to keep it reproducible
        self.timings = OrderedDict()

    def add(self, check):
        self.checks.append(check)
        return check

    def add_rows(self, table, rows):
        self.tables.setdefault(table, []).extend(rows)

    def merge(self, other):
        "Appends the checks and tables of `other` (prefixing check names)"
        for check in other.checks:
            check.name = '{}/{}'.format(other.scenario, check.name)
            self.checks.append(check)
        for table, rows in other.tables.items():
            self.add_rows(table, rows)
        self.timings.update(other.timings)
        return self

    @property
    def passed(self):
        return not any(c.failed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if c.failed]

    def to_dict(self):
        return OrderedDict([
            ('scenario', self.scenario),
            ('params', jsonable(self.params)),
            ('passed', self.passed),
            ('checks', [c.to_dict() for c in self.checks])])

    def summary(self):
        counts = dict((s, 0) for s in (PASS, FAIL, REPORT))
        for c in self.checks:
            counts[c.status] += 1
        return "{}: {} passed, {} failed, {} report-only".format(
            self.scenario, counts[PASS], counts[FAIL], counts[REPORT])

    def __repr__(self):
        return 'VerifyReport({})'.format(self.summary())
