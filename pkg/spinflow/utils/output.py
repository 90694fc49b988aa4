"""
Writes run reports as JSON and their tables as CSV plot data
"""
import os
import csv
import json
from collections import OrderedDict
from spinflow.verify.report import jsonable
from spinflow.exceptions import SpinflowUsageError
from spinflow.utils.logging import logger
from spinflow.utils.mpi import is_mpi_master

REPORT_FILE = 'report.json'

# Column order of each table, and the columns the rows are sorted by
# (None keeps the emission order, which follows the flow order)
TABLES = OrderedDict([
    ('gap_vs_t', (('t', 'gap', 'deviation'), ('t',))),
    ('splitting_vs_t', (('t', 'splitting', 'gap'), ('t',))),
    ('hooked_vs_t', (('xi', 't', 'ratio'), ('xi', 't'))),
    ('norm_ledger', (('step_q', 'step_k', 'q', 'k', 'norm', 'bound'), None)),
    ('steps', (('step', 'q', 'k', 'norm', 'bound', 'gap_g', 'e_a', 'e_b',
                'residual'), None)),
    ('step_splitting', (('t', 'q', 'k', 'parity', 'splitting'), None)),
    ('spectrum', (('index', 'energy'), ('index',))),
    ('gaps', (('kind', 'size', 'measured', 'expected'), None))])


def _prepare(out):
    if out is None:
        return None
    if os.path.exists(out) and not os.path.isdir(out):
        raise SpinflowUsageError(
            "Output path '{}' exists and is not a directory".format(out))
    if not os.path.exists(out):
        os.makedirs(out)
    return out


def report_dict(mode, config, reports, extra=None):
    "The JSON document of a run"
    doc = OrderedDict([
        ('mode', mode),
        ('config', jsonable(config.to_dict())),
        ('passed', all(r.passed for r in reports)),
        ('reports', [r.to_dict() for r in reports])])
    if extra:
        doc.update(jsonable(extra))
    return doc


def write_report(out, mode, config, reports, extra=None):
    """
    Writes the JSON report of a run to `out`/report.json, returning its path
    (None when `out` is None)
    """
    out = _prepare(out)
    if out is None:
        return None
    path = os.path.join(out, REPORT_FILE)
    with open(path, 'w') as f:
        json.dump(report_dict(mode, config, reports, extra), f, indent=2,
                  sort_keys=True)
        f.write('\n')
    logger.info("Wrote report to '{}'".format(path))
    return path


def collect_tables(reports):
    "Concatenates the tables of `reports` by name"
    tables = OrderedDict()
    for report in reports:
        for name, rows in report.tables.items():
            tables.setdefault(name, []).extend(rows)
    return tables


def emit_plot_data(out, reports):
    """
    Writes one CSV file per table found in `reports`, returning the paths
    written
    """
    out = _prepare(out)
    if out is None:
        return []
    paths = []
    for name, rows in collect_tables(reports).items():
        if not rows:
            continue
        try:
            columns, sort_by = TABLES[name]
        except KeyError:
            columns = tuple(sorted(rows[0]))
            sort_by = None
        if sort_by is not None:
            rows = sorted(rows, key=lambda r: tuple(r[c] for c in sort_by))
        path = os.path.join(out, name + '.csv')
        with open(path, 'w') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(columns)
            for row in rows:
                writer.writerow(['' if row.get(c) is None else
                                 _cell(row.get(c)) for c in columns])
        paths.append(path)
        logger.debug("Wrote {} rows to '{}'".format(len(rows), path))
    return paths


def _cell(value):
    value = jsonable(value)
    if isinstance(value, float):
        return repr(value)
    return value


def finish_run(mode, config, reports, extra=None):
    """
    Logs the summaries of `reports`, writes the report and plot data when an
    output directory is configured and returns the exit code (0 when no
    asserted check failed, 1 otherwise)
    """
    for report in reports:
        logger.info(report.summary())
        for check in report.failures:
            logger.error("FAILED {}/{}: measured {}, expected {}{}".format(
                report.scenario, check.name, check.measured, check.expected,
                ' ({})'.format(check.note) if check.note else ''))
    if is_mpi_master():
        write_report(config.out, mode, config, reports, extra)
        emit_plot_data(config.out, reports)
    return 0 if all(r.passed for r in reports) else 1
