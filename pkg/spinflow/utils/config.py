"""
Run configuration shared by the commands: model parameters, tolerances, caps
and output locations, read from an optional JSON (or YAML) file and
overridden by command-line flags
"""
from __future__ import division
import os.path
import json
import yaml
from spinflow.model import ModelParams, DEFAULT_DENSE_CAP
from spinflow.exceptions import SpinflowUsageError

MODES = ('gaps', 'spectrum', 'flow', 'verify', 'sweep')

DEFAULT_TOLERANCES = {
    'consistency': 1e-8,
    'isospectral': 1e-8,
    'block': 1e-10,
    'hermitian': 1e-10,
    'eigenvector': 1e-10,
    'conj_offdiag': 1e-9,
    'series_rel': 1e-14,
    'gap_floor': 1e-6,
    'translation': 1e-10,
    'final_block': 1e-8,
    'gap_exact': 1e-10}

DEFAULT_SERIES_CAP = 40
DEFAULT_CHECK_CAP = 2 ** 12
DEFAULT_T = 1e-3
DEFAULT_T_GRID = (1e-4, 1e-3, 1e-2)
DEFAULT_SEED = 0
THREADS_ENV = 'SPINFLOW_THREADS'

# Keys of the config file and the flags overriding them
_FILE_KEYS = ('mode', 'n', 'xi', 'j', 'h', 't', 't_grid', 'tolerances',
              'dense_cap', 'check_cap', 'out', 'seed', 'sizes', 'count')


def tolerances(overrides=None):
    "DEFAULT_TOLERANCES updated by `overrides`, rejecting unknown names"
    tols = dict(DEFAULT_TOLERANCES)
    for name, value in (overrides or {}).items():
        if name not in DEFAULT_TOLERANCES:
            raise SpinflowUsageError(
                "Unrecognised tolerance '{}' (valid names: {})".format(
                    name, ', '.join(sorted(DEFAULT_TOLERANCES))))
        value = float(value)
        if not value > 0.0:
            raise SpinflowUsageError(
                "Tolerance '{}' must be positive, got {}".format(name, value))
        tols[name] = value
    return tols


class RunConfig(object):
    """
    Validated configuration of a run

    Parameters
    ----------
    mode : str
        One of 'gaps', 'spectrum', 'flow', 'verify' or 'sweep'
    n : int
        Number of sites N
    xi : int
        Macroscopic spacing ξ
    j : float
        Ising coupling J
    h : float
        Magnetic field h
    t : float
        Hopping t of single-point runs
    t_grid : list(float)
        Hoppings of the sweeps and theorem checks
    tolerances : dict(str, float)
        Overrides of DEFAULT_TOLERANCES
    dense_cap : int
        Largest dimension handled by dense eigensolvers
    check_cap : int
        Largest dimension for which full-chain consistency matrices are formed
    out : str
        Output directory, None for no files
    seed : int
        Seed of the sampled-vector checks
    sizes : list(int)
        Range sizes of the gap checks
    count : int
        Number of eigenvalues reported by 'spectrum'
    """

    def __init__(self, mode, n=None, xi=3, j=1.0, h=0.4, t=DEFAULT_T,
                 t_grid=DEFAULT_T_GRID, tolerances=None,
                 dense_cap=DEFAULT_DENSE_CAP, check_cap=DEFAULT_CHECK_CAP,
                 out=None, seed=DEFAULT_SEED, sizes=(5, 6, 7, 8), count=6):
        if mode not in MODES:
            raise SpinflowUsageError(
                "Unrecognised mode '{}' (valid modes: {})".format(
                    mode, ', '.join(MODES)))
        if n is None:
            raise SpinflowUsageError(
                "The number of sites 'n' is required for mode '{}'"
                .format(mode))
        self.mode = mode
        # validates the lattice constraints and emits the regime warnings
        self.params = ModelParams(n, xi, j, h, t)
        self.t_grid = sorted(float(x) for x in t_grid)
        if not self.t_grid or any(x <= 0.0 for x in self.t_grid):
            raise SpinflowUsageError(
                "The t-grid must be a non-empty list of positive values, got "
                "{}".format(t_grid))
        self.tolerances = globals()['tolerances'](tolerances)
        self.dense_cap = int(dense_cap)
        self.check_cap = int(check_cap)
        if self.dense_cap < 2 or self.check_cap < 2:
            raise SpinflowUsageError(
                "Caps must be at least 2 (dense_cap={}, check_cap={})"
                .format(dense_cap, check_cap))
        self.out = out
        self.seed = int(seed)
        self.sizes = [int(s) for s in sizes]
        if any(s < 2 for s in self.sizes):
            raise SpinflowUsageError(
                "Range sizes must be at least 2, got {}".format(sizes))
        self.count = int(count)

    def to_dict(self):
        d = {'mode': self.mode, 't_grid': self.t_grid,
             'tolerances': self.tolerances, 'dense_cap': self.dense_cap,
             'check_cap': self.check_cap, 'seed': self.seed,
             'sizes': self.sizes, 'count': self.count}
        d.update(self.params.to_dict())
        return d

    def __repr__(self):
        return 'RunConfig(mode={}, params={})'.format(self.mode, self.params)


def load_config_file(path):
    "Reads a JSON config file, or a YAML one for .yml/.yaml extensions"
    try:
        with open(path) as f:
            if os.path.splitext(path)[1].lower() in ('.yml', '.yaml'):
                contents = yaml.safe_load(f)
            else:
                contents = json.load(f)
    except (ValueError, yaml.YAMLError) as e:
        raise SpinflowUsageError(
            "Malformed config file '{}': {}".format(path, e))
    except IOError as e:
        raise SpinflowUsageError(
            "Could not read config file '{}': {}".format(path, e))
    if not isinstance(contents, dict):
        raise SpinflowUsageError(
            "Config file '{}' must hold a key-value mapping, found {}"
            .format(path, type(contents).__name__))
    unknown = set(contents) - set(_FILE_KEYS)
    if unknown:
        raise SpinflowUsageError(
            "Unrecognised keys in config file '{}': {}".format(
                path, ', '.join(sorted(unknown))))
    return contents


def parse_config(mode, args):
    """
    Combines the config file named by `args.config` (if any) with the flags
    parsed into `args`, flags taking precedence

    Parameters
    ----------
    mode : str
        The command being run
    args : argparse.Namespace
        Parsed arguments (attributes that are absent or None fall back to the
        file values and then to the defaults)
    """
    settings = {}
    config_path = getattr(args, 'config', None)
    if config_path is not None:
        settings.update(load_config_file(config_path))
    file_mode = settings.pop('mode', mode)
    if file_mode != mode:
        raise SpinflowUsageError(
            "Config file is for mode '{}' but '{}' was run"
            .format(file_mode, mode))
    file_tols = settings.pop('tolerances', None) or {}
    for key in _FILE_KEYS[1:]:
        value = getattr(args, key, None)
        if value is not None and key != 'tolerances':
            settings[key] = value
    tols = dict(file_tols)
    tols.update(dict(getattr(args, 'tol', None) or []))
    return RunConfig(mode, tolerances=tols, **settings)
