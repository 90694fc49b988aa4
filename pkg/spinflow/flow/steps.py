"""
The steps of the block-diagonalization flow.

Each proper interval I (in increasing order) is treated by conjugating the
current Hamiltonian with e^{Z_{I*}}, where Z_{I*} block-diagonalizes
G_{I*} + ξt V_I with respect to the product ground states of I*. The result is
redistributed over the effective potentials:

 a-1) active potentials on J ≻ I are copied,
 a-2) diagonalized potentials on J̄* (J ≺ I) are copied,
 b)   the diagonal part of the conjugated V_I, plus the P⁺·P⁺ part of the
      first-order hooked Ising terms, becomes the diagonalized potential of I,
 c)   every J whose micro range strictly contains I* collects the conjugation
      changes of the potentials routed to it.

A final global step on Λ then block-diagonalizes the whole chain.
"""
from __future__ import division
from collections import namedtuple
import numpy
import scipy.linalg
from spinflow.operator import (
    LocalOperator, embed, accumulate, commutator, conjugate,
    conjugation_change, expm_skew, symmetrize, op_norm, apply, adjoint)
from spinflow.model import (
    h0_diagonal, ising_bond, v_perp, ground_data, DEFAULT_DENSE_CAP)
from spinflow.exceptions import (
    SpinflowUsageError, SpinflowConsistencyError, SpinflowSupportError,
    SpinflowResourceError)
from spinflow.utils.config import (
    DEFAULT_TOLERANCES, DEFAULT_SERIES_CAP, DEFAULT_CHECK_CAP)
from spinflow.utils.logging import logger
from .state import FlowState, StepReport
from .series import series, split_plus, offdiag_norm

CONSISTENCY_SAMPLES = 20


def _tols(tolerances):
    tols = dict(DEFAULT_TOLERANCES)
    tols.update(tolerances or {})
    return tols


def init_flow(p):
    "V_J = V_⊥ on intervals of unit length and 0 elsewhere, no diagonal terms"
    p.check_flow()
    active = dict((a, v_perp(a, p) if a.k == 1 else None)
                  for a in p.lattice.all_intervals())
    return FlowState(p, None, active, {})


def _assemble(s, r, tols):
    """
    H⁰ on `r` plus ξt times every diagonalized potential whose bar-star range
    lies inside `r`, with the energies of the product ground states of `r`
    """
    p = s.params
    lattice = s.lattice
    matrix = numpy.diag(h0_diagonal(r, p)).astype(complex)
    if p.xi_t:
        for j, v in s.potentials_diag.items():
            if v is not None and r.contains(lattice.bar_star(j)):
                accumulate(matrix, v, r, p.xi_t)
    g = LocalOperator(r, 0.5 * (matrix + matrix.conj().T), hermitian=True)
    ground = ground_data(r, p)
    energies = []
    for index in ground.indices:
        column = numpy.array(g.matrix[:, index])
        energy = column[index].real
        column[index] -= energy
        residual = float(numpy.linalg.norm(column))
        if residual > tols['eigenvector']:
            raise SpinflowConsistencyError(
                "Product ground state {} of {} is not an eigenvector of G "
                "(residual {})".format(index, r, residual), residual)
        energies.append(float(energy))
    return g, ground, tuple(energies)


class StepContext(object):
    """
    Everything computed once per step on `i`: G, the Lie-Schwinger series,
    e^Z and the hooked Ising pieces
    """

    def __init__(self, s, i, tolerances=None, max_order=DEFAULT_SERIES_CAP):
        lattice = s.lattice
        lattice.check(i)
        if i == lattice.full:
            raise SpinflowUsageError(
                "The full lattice {} is treated by finalize, not by a local "
                "step".format(i))
        if i != s.next_interval():
            raise SpinflowUsageError(
                "{} is not the next step after {}".format(i, s.step))
        p = s.params
        self.tolerances = tols = _tols(tolerances)
        self.interval = i
        self.star = lattice.star(i)
        self.bar = lattice.bar_star(i)
        self.tilde = lattice.tilde_star(i)
        self.g, self.ground, self.energies = _assemble(s, self.star, tols)
        v = s.active(i)
        self.v = v if v is not None else LocalOperator.zero(lattice.micro(i))
        self.series = series(
            self.g.matrix, embed(self.v, self.star).matrix,
            self.ground.indices, self.energies, p.xi_t,
            tol=tols['series_rel'], max_order=max_order,
            gap_floor=tols['gap_floor'])
        self.z = LocalOperator(self.star, self.series.z)
        # e^Z is exactly the identity when the series vanishes
        self.trivial = not self.series.z_norm
        self.u = (LocalOperator.identity(self.star) if self.trivial
                  else expm_skew(self.z))
        self.conj_offdiag = _conj_offdiag(self.u, self.g, self.v, p.xi_t,
                                          self.ground.indices, tols)
        self._hooked(s)

    def _hooked(self, s):
        "Splits the conjugated Ising bonds straddling the ends of I*"
        p = s.params
        bar = self.bar
        self.ground_bar = ground_data(bar, p)
        self.hooked_plus = None
        self.hooked_tilde = None
        self.hooked_offdiag = 0.0
        if not (p.xi_t and self.series.z_norm):
            return
        sites = []
        if self.star.lo > 1:
            sites.append(self.star.lo - 1)
        if self.star.hi < p.n_sites:
            sites.append(self.star.hi)
        first = numpy.zeros((bar.dim, bar.dim), dtype=complex)
        rest = numpy.zeros((bar.dim, bar.dim), dtype=complex)
        for site in sites:
            bond = ising_bond(site, p)
            ad = commutator(self.z, bond)
            accumulate(first, ad, bar, 1.0 / p.xi_t)
            accumulate(rest, conjugation_change(self.u, bond), bar,
                       1.0 / p.xi_t)
            accumulate(rest, ad, bar, -1.0 / p.xi_t)
        if not first.any() and not rest.any():
            return
        idx = self.ground_bar.indices
        self.hooked_offdiag = offdiag_norm(first, idx)
        # P⁺·P⁺ goes to the diagonal potential, the rest of the first order
        # (P⁻·P⁺ + h.c., P⁻·P⁻ vanishing) to Ĩ*
        self.hooked_plus, self.hooked_tilde = split_plus(first, idx, rest)


def _conj_offdiag(u, g, v, xi_t, idx, tols):
    "Off-diagonal residual of e^Z(G + ξtV)e^{-Z}"
    if not xi_t:
        return 0.0
    h = g + xi_t * embed(v, g.support)
    conj = conjugate(u, h, check=False).matrix
    residual = offdiag_norm(conj, idx)
    if residual > tols['conj_offdiag']:
        raise SpinflowConsistencyError(
            "Conjugated G + ξtV on {} is not block-diagonal (off-diagonal "
            "norm {})".format(g.support, residual), residual)
    return residual


def prepare_step(s, i, tolerances=None):
    return StepContext(s, i, tolerances)


def assemble_g(s, i, tolerances=None):
    """
    G_{I*} for the next step `i` with the ground energies, E (ferro) or
    (E^A, E^B) (antiferro)
    """
    lattice = s.lattice
    if i == lattice.full:
        raise SpinflowUsageError(
            "G is not defined for the full lattice {} in a local step"
            .format(i))
    if i != s.next_interval():
        raise SpinflowUsageError(
            "{} is not the next step after {}".format(i, s.step))
    g, _, energies = _assemble(s, lattice.star(i), _tols(tolerances))
    return g, energies


def lie_schwinger(s, i, context=None):
    "Z_{I*} and the diagonal series Σ_j (ξt)^{j-1}(V_I)_j^diag on I*"
    ctx = context if context is not None else prepare_step(s, i)
    return ctx.z, LocalOperator(ctx.star, ctx.series.diag_series)


def step_b(s, i, context=None):
    """
    The diagonalized potential of `i`: P⁺VP⁺ + P⁻VP⁻ on I* plus the P⁺·P⁺ part
    (on Ī*) of the first-order hooked Ising terms
    """
    ctx = context if context is not None else prepare_step(s, i)
    first = LocalOperator(ctx.star, ctx.series.first_order)
    if ctx.hooked_plus is None or not ctx.hooked_plus.any():
        result = first
    else:
        matrix = numpy.array(ctx.hooked_plus)
        accumulate(matrix, first, ctx.bar)
        result = LocalOperator(ctx.bar, matrix)
    return symmetrize(result, ctx.tolerances['hermitian'])


def _total(terms, target):
    """
    Sum of the (operator, factor) `terms` on the hull of their supports,
    accumulated in place
    """
    terms = [(a, f) for a, f in terms if a is not None and not a.is_zero]
    if not terms:
        return None
    hull = terms[0][0].support
    for a, _ in terms[1:]:
        hull = hull.hull(a.support)
    if not target.contains(hull):
        raise SpinflowSupportError(
            "Contributions on {} leak outside the target {}"
            .format(hull, target))
    matrix = numpy.zeros((hull.dim, hull.dim), dtype=complex)
    for a, factor in terms:
        accumulate(matrix, a, hull, factor)
    if not matrix.any():
        return None
    return LocalOperator(hull, matrix)


def _change(ctx, v):
    """
    e^Z v e^{-Z} - v as two (operator, factor) terms, none if v vanishes or
    does not meet I*
    """
    if v is None or ctx.trivial or not v.support.intersects(ctx.star):
        return []
    return [(conjugate(ctx.u, v, check=False), 1.0), (v, -1.0)]


def step_c(s, i, j, context=None):
    """
    The potential of `j` (micro(j) ⊋ I*) after the step on `i`: the conjugated
    V_J plus the conjugation changes routed to J, and, when J = Ĩ*, the higher
    Lie-Schwinger orders and the remaining hooked Ising pieces
    """
    ctx = context if context is not None else prepare_step(s, i)
    lattice = s.lattice
    target = lattice.micro(j)
    g1, g2, g3 = lattice.growth_sets(i, j)
    grazing = lattice.grazing_set(i, j)
    terms = []
    v = s.active(j)
    if v is not None:
        terms.append((v if ctx.trivial else conjugate(ctx.u, v, check=False),
                      1.0))
    for k in g1:
        terms.extend(_change(ctx, s.active(k)))
    for k in g2 + grazing:
        terms.extend(_change(ctx, s.diag(k)))
    if j == ctx.tilde:
        for k in g3:
            terms.extend(_change(ctx, s.diag(k)))
        terms.append((LocalOperator(ctx.star, ctx.series.high_order), 1.0))
        if ctx.hooked_tilde is not None:
            terms.append((LocalOperator(ctx.bar, ctx.hooked_tilde), 1.0))
    logger.debug("Step {} → {}: G¹={}, G²={}, grazing={}, G³={}".format(
        i, j, [str(k) for k in g1], [str(k) for k in g2],
        [str(k) for k in grazing],
        [str(k) for k in g3] if j == ctx.tilde else []))
    result = _total(terms, target)
    if result is None:
        return None
    return symmetrize(result, ctx.tolerances['hermitian'])


def _block_residual(v, p):
    """
    ‖P⁺VP⁻‖ on the support of `v` and, antiferromagnetically, the matrix
    element between the two Néel states
    """
    if v is None or v.support.size < 2:
        return 0.0
    idx = ground_data(v.support, p).indices
    residual = offdiag_norm(v.matrix, idx)
    if len(idx) == 2:
        residual = max(residual, abs(v.matrix[idx[0], idx[1]]))
    return float(residual)


def _consistency(prev, new, u, tols, check_cap, seed,
                 samples=CONSISTENCY_SAMPLES):
    """
    ‖K^I - e^Z K^{I₋₁} e^{-Z}‖ on full-chain matrices, or its largest action on
    `samples` random unit vectors above `check_cap`
    """
    chain = prev.lattice.chain
    if chain.dim <= check_cap:
        k_prev = prev.assemble_k(check_cap)
        k_new = new.assemble_k(check_cap)
        diff = k_new - conjugate(u, k_prev, check=False)
        residual = op_norm(symmetrize(diff, tols['hermitian']))
    else:
        rng = numpy.random.RandomState(seed)
        u_dag = adjoint(u)
        residual = 0.0
        for _ in range(samples):
            vec = (rng.standard_normal(chain.dim) +
                   1j * rng.standard_normal(chain.dim))
            vec /= numpy.linalg.norm(vec)
            rhs = apply(u, prev.apply_k(apply(u_dag, vec, chain)), chain)
            residual = max(residual,
                           float(numpy.linalg.norm(new.apply_k(vec) - rhs)))
    if residual > tols['consistency']:
        raise SpinflowConsistencyError(
            "Conjugation identity violated after the step on {} (residual "
            "{})".format(new.step, residual), residual)
    return float(residual)


def _ratios(ctx, xi_t):
    v_norm = op_norm(ctx.v)
    scale = abs(xi_t) * v_norm
    z_ratio = ctx.series.z_norm / scale if scale else None
    high = (sum(ctx.series.high_order_norms) / scale if scale else None)
    hooked = ctx.hooked_offdiag / v_norm if v_norm else None
    return v_norm, z_ratio, high, hooked


def apply_step(s, check=True, tolerances=None, check_cap=DEFAULT_CHECK_CAP,
               seed=0):
    """
    Advances the flow by the step on the successor of `s.step`

    Parameters
    ----------
    s : FlowState
        State after the previous step
    check : bool
        Whether to verify the conjugation identity on the whole chain
    tolerances : dict(str, float)
        Overrides of DEFAULT_TOLERANCES
    check_cap : int
        Largest chain dimension for which the identity is checked on full
        matrices, sampled random vectors being used above it
    seed : int
        Seed of the sampled check
    """
    lattice = s.lattice
    p = s.params
    i = s.next_interval()
    if i is None or i == lattice.full:
        raise SpinflowUsageError(
            "All proper intervals have been treated (last step {}), use "
            "finalize".format(s.step))
    ctx = prepare_step(s, i, tolerances)
    tols = ctx.tolerances
    # a-2)
    diag = s.potentials_diag
    # b)
    diag[i] = step_b(s, i, ctx)
    # a-1) and c)
    targets = set(lattice.targets(i))
    active = {}
    for j, v in s.potentials_active.items():
        if j > i:
            active[j] = step_c(s, i, j, ctx) if j in targets else v
    block = _block_residual(diag[i], p)
    v_norm, z_ratio, high_ratio, hooked_ratio = _ratios(ctx, p.xi_t)
    report = StepReport(
        interval=i, e_gs=ctx.energies, gap_g_plus=ctx.series.gap,
        z_norm=ctx.series.z_norm, diag_potential_norm=op_norm(diag[i]),
        consistency_residual=None, series_terms_used=ctx.series.terms,
        z_ratio=z_ratio, high_order_ratio=high_ratio,
        hooked_ratio=hooked_ratio,
        card_parity='even' if ctx.star.size % 2 == 0 else 'odd',
        block_residual=block, conj_offdiag=ctx.conj_offdiag,
        potential_norm=v_norm)
    new = s.advance(i, active, diag, report)
    if check:
        report.consistency_residual = _consistency(s, new, ctx.u, tols,
                                                   check_cap, seed)
    logger.info(
        "Step {}: I*={}, E={}, gap={:.6f}, ‖Z‖={:.3e}, terms={}, "
        "residual={}".format(i, ctx.star, ', '.join(
            '{:.10f}'.format(e) for e in ctx.energies), ctx.series.gap,
            ctx.series.z_norm, ctx.series.terms, report.consistency_residual))
    return new


class FinalResult(object):
    """
    Outcome of the global step on Λ

    Attributes
    ----------
    hamiltonian : LocalOperator
        Ǩ_Λ(t) = G_Λ + ξt V̌_Λ, block-diagonal with respect to P^(±)_Λ
    block : numpy.ndarray
        Restriction of Ǩ_Λ(t) to range(P⁻_Λ) (1x1 or 2x2)
    block_eigenvalues : numpy.ndarray
        Eigenvalues of `block`, ascending
    plus_bottom : float
        Bottom of the spectrum of Ǩ_Λ(t) on range(P⁺_Λ)
    report : StepReport
        Report of the global step
    transcript : tuple(StepReport)
        Reports of every step including the global one
    """

    def __init__(self, hamiltonian, block, block_eigenvalues, plus_bottom,
                 report, transcript):
        self.hamiltonian = hamiltonian
        self.block = block
        self.block_eigenvalues = block_eigenvalues
        self.plus_bottom = plus_bottom
        self.report = report
        self.transcript = transcript

    @property
    def gap(self):
        "Distance from the top of the P⁻ block to the P⁺ spectrum"
        return self.plus_bottom - self.block_eigenvalues[-1]

    def to_dict(self):
        return {'block': [[[float(x.real), float(x.imag)] for x in row]
                          for row in self.block],
                'block_eigenvalues': [float(e)
                                      for e in self.block_eigenvalues],
                'plus_bottom': float(self.plus_bottom),
                'report': self.report.to_dict()}


def finalize(s, tolerances=None, dense_cap=DEFAULT_DENSE_CAP,
             max_order=DEFAULT_SERIES_CAP):
    """
    The global Lie-Schwinger step on Λ after all proper intervals are treated
    """
    if not s.is_complete:
        raise SpinflowUsageError(
            "Cannot finalize after the step on {}, proper intervals remain"
            .format(s.step))
    p = s.params
    tols = _tols(tolerances)
    lattice = s.lattice
    chain = lattice.chain
    if chain.dim > dense_cap:
        raise SpinflowResourceError(
            "Global step of dimension {} exceeds the dense cap {}"
            .format(chain.dim, dense_cap), chain.dim, dense_cap)
    g, ground, energies = _assemble(s, chain, tols)
    v = s.active(lattice.full)
    v = v if v is not None else LocalOperator.zero(chain)
    idx = ground.indices
    result = series(g.matrix, embed(v, chain).matrix, idx, energies,
                    p.xi_t, tol=tols['series_rel'], max_order=max_order,
                    gap_floor=tols['gap_floor'])
    z = LocalOperator(chain, result.z)
    u = expm_skew(z) if result.z_norm else LocalOperator.identity(chain)
    offdiag = _conj_offdiag(u, g, v, p.xi_t, idx, tols)
    matrix = g.matrix + p.xi_t * result.diag_series
    hamiltonian = symmetrize(LocalOperator(chain, matrix), tols['hermitian'])
    block = numpy.array(hamiltonian.matrix[numpy.ix_(idx, idx)])
    block_eigs = scipy.linalg.eigvalsh(block)
    mask = ground.plus_mask()
    plus = hamiltonian.matrix[numpy.ix_(mask, mask)]
    plus_bottom = float(scipy.linalg.eigvalsh(plus, subset_by_index=[0, 0])[0])
    v_norm = op_norm(v)
    scale = abs(p.xi_t) * v_norm
    report = StepReport(
        interval=lattice.full, e_gs=energies, gap_g_plus=result.gap,
        z_norm=result.z_norm,
        diag_potential_norm=op_norm(LocalOperator(chain, result.diag_series)),
        consistency_residual=offdiag, series_terms_used=result.terms,
        z_ratio=result.z_norm / scale if scale else None,
        high_order_ratio=(sum(result.high_order_norms) / scale
                          if scale else None),
        card_parity='even' if chain.size % 2 == 0 else 'odd',
        block_residual=float(offdiag_norm(hamiltonian.matrix, idx)),
        conj_offdiag=offdiag, potential_norm=v_norm)
    logger.info("Final step on Λ: P⁻ block eigenvalues {}, P⁺ bottom {:.10f}"
                .format(', '.join('{:.10f}'.format(e) for e in block_eigs),
                        plus_bottom))
    return FinalResult(hamiltonian, block, block_eigs, plus_bottom, report,
                       s.reports + (report,))


FlowRun = namedtuple('FlowRun', 'history final')


def run_flow(p, max_steps=None, check=True, tolerances=None,
             check_cap=DEFAULT_CHECK_CAP, dense_cap=DEFAULT_DENSE_CAP,
             seed=0):
    """
    Runs the local steps (at most `max_steps` of them) and, if all proper
    intervals were treated, the global step

    Returns
    -------
    run : FlowRun
        The history of states (initial state first) and the FinalResult, None
        when the run was truncated
    """
    state = init_flow(p)
    history = [state]
    n_steps = len(p.lattice.proper_intervals())
    if max_steps is not None:
        n_steps = min(n_steps, int(max_steps))
    for _ in range(n_steps):
        state = apply_step(state, check=check, tolerances=tolerances,
                           check_cap=check_cap, seed=seed)
        history.append(state)
    final = None
    if state.is_complete:
        final = finalize(state, tolerances=tolerances, dense_cap=dense_cap)
    return FlowRun(history, final)


TranslationPair = namedtuple('TranslationPair',
                             'kind step interval residual')


def _shifted_residual(a, b, n_sites):
    "max|τa - b| for potentials a, b (None meaning zero)"
    if a is None and b is None:
        return 0.0
    if a is None or b is None:
        present = a if a is not None else b
        return float(numpy.max(numpy.abs(present.matrix)))
    a = LocalOperator(a.support.shift(n_sites), a.matrix)
    hull = a.support.hull(b.support)
    return float(numpy.max(numpy.abs(embed(a, hull).matrix -
                                     embed(b, hull).matrix)))


def translation_pairs(history, k_shift=1):
    """
    Compares the potentials of bulk intervals J after the step on I with those
    of τJ after the step on τI, τ being the shift by `k_shift` macroscopic
    edges
    """
    if not history:
        return []
    lattice = history[0].lattice
    shift = k_shift * lattice.xi
    by_step = dict((s.step, s) for s in history if s.step is not None)

    def bulk(j):
        r = lattice.micro(j)
        return r.lo > 1 and r.hi + shift < lattice.n_sites

    pairs = []
    for s in history:
        if s.step is None:
            continue
        moved = lattice.translate(s.step, k_shift)
        if moved not in by_step:
            continue
        other = by_step[moved]
        for j, v in sorted(s.potentials_diag.items()):
            tj = lattice.translate(j, k_shift)
            if bulk(j) and tj is not None and tj <= moved:
                pairs.append(TranslationPair(
                    'diag', s.step, j,
                    _shifted_residual(v, other.diag(tj), shift)))
        other_active = other.potentials_active
        for j, v in sorted(s.potentials_active.items()):
            tj = lattice.translate(j, k_shift)
            if bulk(j) and tj in other_active:
                pairs.append(TranslationPair(
                    'active', s.step, j,
                    _shifted_residual(v, other_active[tj], shift)))
    return pairs
