"""
Value snapshots of the flow: the effective potentials after a step and the
per-step reports
"""
from __future__ import division
import numpy
from spinflow.operator import LocalOperator, apply, accumulate
from spinflow.model import h0_diagonal
from spinflow.exceptions import SpinflowUsageError, SpinflowResourceError
from spinflow.utils.config import DEFAULT_CHECK_CAP


class StepReport(object):
    """
    Measured quantities of a single block-diagonalization step

    Parameters
    ----------
    interval : Interval
        The interval the step acted on (Λ for the final step)
    e_gs : tuple(float)
        (E,) in the ferromagnetic case, (E^A, E^B) in the antiferromagnetic
    gap_g_plus : float
        Distance of the spectrum of G on range(P⁺) above the ground energies
    z_norm : float
        ‖Z‖
    diag_potential_norm : float
        Norm of the newly diagonalized potential
    consistency_residual : float
        Residual of the conjugation identity for the whole chain, None if the
        check was skipped
    series_terms_used : int
        Number of Lie-Schwinger orders
    """

    def __init__(self, interval, e_gs, gap_g_plus, z_norm,
                 diag_potential_norm, consistency_residual, series_terms_used,
                 z_ratio=None, high_order_ratio=None, hooked_ratio=None,
                 card_parity=None, block_residual=None, conj_offdiag=None,
                 potential_norm=None):
        self.interval = interval
        self.e_gs = tuple(float(e) for e in e_gs)
        self.gap_g_plus = float(gap_g_plus)
        self.z_norm = float(z_norm)
        self.diag_potential_norm = float(diag_potential_norm)
        self.consistency_residual = consistency_residual
        self.series_terms_used = int(series_terms_used)
        self.z_ratio = z_ratio
        self.high_order_ratio = high_order_ratio
        self.hooked_ratio = hooked_ratio
        self.card_parity = card_parity
        self.block_residual = block_residual
        self.conj_offdiag = conj_offdiag
        self.potential_norm = potential_norm

    @property
    def splitting(self):
        "E^B - E^A (None in the ferromagnetic case)"
        if len(self.e_gs) < 2:
            return None
        return self.e_gs[1] - self.e_gs[0]

    def to_dict(self):
        return {
            'interval': {'q': self.interval.q, 'k': self.interval.k},
            'e_gs': list(self.e_gs),
            'gap_g_plus': self.gap_g_plus,
            'z_norm': self.z_norm,
            'diag_potential_norm': self.diag_potential_norm,
            'potential_norm': self.potential_norm,
            'consistency_residual': self.consistency_residual,
            'series_terms_used': self.series_terms_used,
            'z_ratio': self.z_ratio,
            'high_order_ratio': self.high_order_ratio,
            'hooked_ratio': self.hooked_ratio,
            'card_parity': self.card_parity,
            'block_residual': self.block_residual,
            'conj_offdiag': self.conj_offdiag}

    def __repr__(self):
        return ('StepReport(interval={}, e_gs={}, gap={:.6g}, '
                'residual={})'.format(self.interval, self.e_gs,
                                      self.gap_g_plus,
                                      self.consistency_residual))


class FlowState(object):
    """
    The effective potentials after the step on `step`

    Parameters
    ----------
    params : ModelParams
        The chain
    step : Interval | None
        The last interval treated, None for the initial sentinel I₀
    potentials_active : dict(Interval, LocalOperator | None)
        V_J for every J ≻ step, None standing for a vanishing potential
    potentials_diag : dict(Interval, LocalOperator)
        The block-diagonalized potentials on the bar-star range of J ⪯ step
    reports : tuple(StepReport)
        Reports of the steps taken so far
    """

    def __init__(self, params, step, potentials_active, potentials_diag,
                 reports=()):
        self._params = params
        self._step = step
        self._active = dict(potentials_active)
        self._diag = dict(potentials_diag)
        self._reports = tuple(reports)

    @property
    def params(self):
        return self._params

    @property
    def lattice(self):
        return self._params.lattice

    @property
    def step(self):
        return self._step

    @property
    def potentials_active(self):
        return dict(self._active)

    @property
    def potentials_diag(self):
        return dict(self._diag)

    @property
    def reports(self):
        return self._reports

    def active(self, j):
        "V_J for J ≻ step (None when it vanishes)"
        if j not in self._active:
            raise SpinflowUsageError(
                "{} is not an active interval after the step on {}"
                .format(j, self._step))
        return self._active[j]

    def diag(self, j):
        "The diagonalized potential of J ⪯ step (None when it vanishes)"
        return self._diag.get(j)

    @property
    def is_complete(self):
        "Whether every proper interval has been treated"
        return self._step == self.lattice.predecessor(self.lattice.full)

    def next_interval(self):
        return self.lattice.successor(self._step)

    def potentials(self):
        "All non-vanishing potentials, diagonal ones first"
        return ([v for v in self._diag.values() if v is not None] +
                [v for v in self._active.values() if v is not None])

    def assemble_k(self, cap=DEFAULT_CHECK_CAP):
        """
        K^I_Λ = H⁰_Λ + ξt (Σ_{J ⪯ I} V_{J̄*} + Σ_{J ≻ I} V_J) on the full chain
        """
        chain = self.lattice.chain
        if chain.dim > cap:
            raise SpinflowResourceError(
                "Full-chain K of dimension {} exceeds the cap {}"
                .format(chain.dim, cap), chain.dim, cap)
        matrix = numpy.diag(h0_diagonal(chain, self._params)).astype(complex)
        for v in self.potentials():
            accumulate(matrix, v, chain, self._params.xi_t)
        return LocalOperator(chain, 0.5 * (matrix + matrix.conj().T),
                             hermitian=True)

    def apply_k(self, vector):
        "K^I_Λ·vector without forming the full-chain matrix"
        chain = self.lattice.chain
        out = h0_diagonal(chain, self._params) * vector
        if self._params.xi_t:
            for v in self.potentials():
                out = out + self._params.xi_t * apply(v, vector, chain)
        return out

    def advance(self, step, potentials_active, potentials_diag, report):
        return FlowState(self._params, step, potentials_active,
                         potentials_diag, self._reports + (report,))

    def __repr__(self):
        return 'FlowState(step={}, n_active={}, n_diag={})'.format(
            self._step, sum(v is not None for v in self._active.values()),
            len(self._diag))
