"""
XXZ and Ising Hamiltonians of the open chain, their exact product ground states
and the closed-form spectral gaps of the unperturbed Hamiltonians.

    K_Λ(t) = -J Σ σᶻσᶻ + (t/2) Σ (σˣσˣ + σʸσʸ) - h Σ σᶻ

J > 0 is the ferromagnetic regime, J < 0 the antiferromagnetic one.
"""
from __future__ import division
import numpy
import scipy.linalg
import scipy.sparse
from spinflow.lattice import MacroLattice, MicroRange
from spinflow.operator import (
    LocalOperator, StateVector, local_term, embed, accumulate,
    projector_from_states, PAULI)
from spinflow.exceptions import (
    SpinflowUsageError, SpinflowResourceError, SpinflowConsistencyError,
    SpinflowTypeError)
from spinflow.utils.logging import logger

FERRO = 'ferro'
ANTIFERRO = 'af'

DEFAULT_DENSE_CAP = 2 ** 13

# σˣσˣ + σʸσʸ = 2(σ⁺σ⁻ + σ⁻σ⁺) on a bond
HOP = (numpy.kron(PAULI['x'], PAULI['x']) +
       numpy.kron(PAULI['y'], PAULI['y'])).real

# Fraction of the unperturbed gap above which |t| is no longer "small"
SMALL_T_FRACTION = 0.1


class ModelParams(object):
    """
    Parameters of the chain and of the flow

    Parameters
    ----------
    n_sites : int
        Number of sites N
    xi : int
        Macroscopic spacing ξ
    j_coupling : float
        Ising coupling J, whose sign selects the regime
    h_field : float
        Magnetic field h (h = 0 only accepted for the ferromagnetic ED checks)
    t_coupling : float
        Hopping t
    """

    def __init__(self, n_sites, xi=3, j_coupling=1.0, h_field=0.4,
                 t_coupling=0.0):
        self._lattice = MacroLattice(n_sites, xi)
        try:
            self._j = float(j_coupling)
            self._h = float(h_field)
            self._t = float(t_coupling)
        except (TypeError, ValueError):
            raise SpinflowTypeError(
                "Couplings must be real numbers (J={}, h={}, t={})".format(
                    repr(j_coupling), repr(h_field), repr(t_coupling)))
        if self._j == 0.0:
            raise SpinflowUsageError(
                "J must be non-zero (its sign selects the regime)")
        if self._h < 0.0:
            raise SpinflowUsageError(
                "Field h must be non-negative, got {}".format(self._h))
        if self.is_ferro:
            if self._h > 0.0 and xi <= self._j / self._h:
                logger.warning(
                    "ξ={} <= J/h={:.4g}, outside the regime where the ferro "
                    "gaps are guaranteed on every star range"
                    .format(xi, self._j / self._h))
            scale = self._j + self._h
        else:
            if self._h >= abs(self._j):
                raise SpinflowUsageError(
                    "Antiferromagnetic regime requires h < |J| (h={}, J={})"
                    .format(self._h, self._j))
            if self._h >= abs(self._j) / 2.0:
                logger.warning(
                    "h={} >= |J|/2={}, outside the antiferromagnetic regime "
                    "h < |J|/2".format(self._h, abs(self._j) / 2.0))
            scale = abs(self._j) - self._h
        if abs(self._t) > SMALL_T_FRACTION * scale:
            logger.warning(
                "|t|={} is not small compared with {:.4g}"
                .format(abs(self._t), scale))

    @property
    def lattice(self):
        return self._lattice

    @property
    def n_sites(self):
        return self._lattice.n_sites

    @property
    def xi(self):
        return self._lattice.xi

    @property
    def j_coupling(self):
        return self._j

    @property
    def h_field(self):
        return self._h

    @property
    def t_coupling(self):
        return self._t

    @property
    def xi_t(self):
        return self.xi * self._t

    @property
    def regime(self):
        return FERRO if self._j > 0 else ANTIFERRO

    @property
    def is_ferro(self):
        return self._j > 0

    @property
    def unperturbed_gap(self):
        "Gap of H⁰ above its ground space on long ranges (2J+2h, 2|J|-2h)"
        if self.is_ferro:
            return 2 * self._j + 2 * self._h
        return 2 * abs(self._j) - 2 * self._h

    def check_flow(self):
        "Preconditions of the block-diagonalization flow"
        if self.is_ferro and self._h <= 0.0:
            raise SpinflowUsageError(
                "The ferromagnetic flow requires h > 0 (got h={})"
                .format(self._h))
        return self

    def with_t(self, t_coupling):
        return ModelParams(self.n_sites, self.xi, self._j, self._h,
                           t_coupling)

    def to_dict(self):
        return {'n': self.n_sites, 'xi': self.xi, 'j': self._j,
                'h': self._h, 't': self._t, 'regime': self.regime}

    def __eq__(self, other):
        return (isinstance(other, ModelParams) and
                self.to_dict() == other.to_dict())

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))

    def __repr__(self):
        return ('ModelParams(n_sites={}, xi={}, j_coupling={}, h_field={}, '
                't_coupling={})'.format(self.n_sites, self.xi, self._j,
                                        self._h, self._t))


class GroundStateData(object):
    """
    Product ground states of H⁰/H^C on a range and the associated projections

    Parameters
    ----------
    regime : str
        'ferro' or 'af'
    support : MicroRange
        Range of sites
    vectors : list(StateVector)
        Ψ (ferro) or Ψ^A, Ψ^B (af)
    """

    def __init__(self, regime, support, vectors):
        self._regime = regime
        self._support = support
        self._vectors = tuple(vectors)
        self._projections = {}

    @property
    def regime(self):
        return self._regime

    @property
    def support(self):
        return self._support

    @property
    def vectors(self):
        return self._vectors

    @property
    def indices(self):
        "Basis indices of the ground states"
        return [v.index for v in self._vectors]

    def _projection(self, name, states):
        try:
            return self._projections[name]
        except KeyError:
            proj = projector_from_states(states)
            self._projections[name] = proj
            return proj

    @property
    def minus(self):
        "P⁻, projection onto the ground space"
        return self._projection('minus', self._vectors)

    @property
    def plus(self):
        "P⁺ = 1 - P⁻"
        try:
            return self._projections['plus']
        except KeyError:
            proj = LocalOperator(
                self._support, numpy.eye(self._support.dim) -
                self.minus.matrix, hermitian=True)
            self._projections['plus'] = proj
            return proj

    @property
    def minus_a(self):
        if self._regime == FERRO:
            return None
        return self._projection('minus_a', self._vectors[:1])

    @property
    def minus_b(self):
        if self._regime == FERRO:
            return None
        return self._projection('minus_b', self._vectors[1:])

    def plus_mask(self):
        "Boolean mask of the basis states spanning range(P⁺)"
        mask = numpy.ones(self._support.dim, dtype=bool)
        mask[self.indices] = False
        return mask


def _spins(support):
    "Array (dim, size) of ±1 z-spins of every basis state of `support`"
    bits = (numpy.arange(support.dim)[:, None] >>
            numpy.arange(support.size)[None, :]) & 1
    return 1 - 2 * bits


def _check_range(r, name):
    if not isinstance(r, MicroRange):
        r = MicroRange(*r)
    if r.size < 2:
        raise SpinflowUsageError(
            "{} needs at least two sites, got range {}".format(name, r))
    return r


def h0_diagonal(r, p):
    "Diagonal of H⁰ on the range `r`"
    r = _check_range(r, 'H⁰')
    s = _spins(r)
    return (-p.j_coupling * numpy.sum(s[:, :-1] * s[:, 1:], axis=1) -
            p.h_field * numpy.sum(s, axis=1)).astype(float)


def hc_diagonal(r, p):
    "Diagonal of H^C on the range `r`"
    r = _check_range(r, 'H^C')
    s = _spins(r)
    bonds = (p.j_coupling * s[:, :-1] * s[:, 1:] +
             0.5 * p.h_field * (s[:, :-1] + s[:, 1:]))
    return -numpy.sum(bonds, axis=1).astype(float)


def h0(r, p):
    "Ising Hamiltonian -J Σ σᶻσᶻ - h Σ σᶻ on `r`"
    r = _check_range(r, 'H⁰')
    return LocalOperator(r, numpy.diag(h0_diagonal(r, p)), hermitian=True)


def hc(r, p):
    "Combinatorial Hamiltonian -Σ_bonds {J σᶻσᶻ + (h/2)(σᶻᵢ + σᶻᵢ₊₁)} on `r`"
    r = _check_range(r, 'H^C')
    return LocalOperator(r, numpy.diag(hc_diagonal(r, p)), hermitian=True)


def ising_bond(site, p):
    "The Ising term -J σᶻ_site σᶻ_site+1 of H⁰"
    term = local_term([PAULI['z'], PAULI['z']], site)
    return LocalOperator(term.support, -p.j_coupling * term.matrix,
                         hermitian=True)


def hop_bond(site):
    "σˣσˣ + σʸσʸ on the bond (site, site + 1)"
    return LocalOperator(MicroRange(site, site + 1), HOP, hermitian=True)


def v_perp(a, p):
    """
    Initial potential V_I = (1/2ξ) Σ (σˣσˣ + σʸσʸ) over the bonds of an
    interval of unit length
    """
    if a.k != 1:
        raise SpinflowUsageError(
            "Initial potentials are defined on intervals of length 1, got {}"
            .format(a))
    r = p.lattice.micro(a)
    matrix = numpy.zeros((r.dim, r.dim))
    for site in range(r.lo, r.hi):
        matrix += embed(hop_bond(site), r).matrix.real
    return LocalOperator(r, matrix / (2.0 * p.xi), hermitian=True)


def k_lambda(p):
    "K_Λ(t) = H⁰_Λ + ξt Σ_{ℓ(I)=1} V_I on the full chain"
    chain = p.lattice.chain
    if chain.dim > DEFAULT_DENSE_CAP:
        raise SpinflowResourceError(
            "Dense K_Λ of dimension {} exceeds the cap {}"
            .format(chain.dim, DEFAULT_DENSE_CAP), chain.dim,
            DEFAULT_DENSE_CAP)
    matrix = numpy.diag(h0_diagonal(chain, p)).astype(complex)
    for a in p.lattice.all_intervals():
        if a.k == 1:
            accumulate(matrix, v_perp(a, p), chain, p.xi_t)
    return LocalOperator(chain, matrix, hermitian=True)


def xxz_hamiltonian(p):
    """
    The XXZ chain written bond by bond from Pauli strings (independent of the
    macroscopic decomposition used by `k_lambda`)
    """
    chain = p.lattice.chain
    matrix = numpy.zeros((chain.dim, chain.dim), dtype=complex)
    for site in range(chain.lo, chain.hi):
        for axis, coupling in (('z', -p.j_coupling),
                               ('x', 0.5 * p.t_coupling),
                               ('y', 0.5 * p.t_coupling)):
            term = local_term([PAULI[axis], PAULI[axis]], site)
            matrix += coupling * embed(term, chain).matrix
    for site in chain.sites():
        matrix -= p.h_field * embed(local_term([PAULI['z']], site),
                                    chain).matrix
    return LocalOperator(chain, matrix, hermitian=True)


def k_lambda_sparse(p):
    "K_Λ(t) as a scipy.sparse CSR matrix, for the Krylov eigensolver"
    n = p.n_sites
    hop = scipy.sparse.csr_matrix(HOP)
    matrix = scipy.sparse.diags(h0_diagonal(p.lattice.chain, p),
                                format='csr').astype(complex)
    for site in range(1, n):
        # bits (site - 1, site) are the bond, site 1 being least significant
        above = scipy.sparse.identity(2 ** (n - site - 1), format='csr')
        below = scipy.sparse.identity(2 ** (site - 1), format='csr')
        term = scipy.sparse.kron(above, scipy.sparse.kron(hop, below),
                                 format='csr')
        matrix = matrix + 0.5 * p.t_coupling * term
    return matrix.tocsr()


def neel_spins(r, leading=1):
    "Alternating spins on `r` starting with `leading` on the first site"
    return [leading * (-1) ** n for n in range(r.size)]


def ground_data(r, p):
    """
    Ground states of H⁰ and H^C on `r`: all-up in the ferromagnetic regime,
    the Néel states Ψ^A (↑ at the leftmost site) and Ψ^B in the
    antiferromagnetic one
    """
    r = _check_range(r, 'ground_data')
    if p.is_ferro:
        vectors = [StateVector.product(r, [1] * r.size)]
    else:
        if p.h_field >= abs(p.j_coupling):
            raise SpinflowUsageError(
                "No Néel ground states for h={} >= |J|={}"
                .format(p.h_field, abs(p.j_coupling)))
        vectors = [StateVector.product(r, neel_spins(r, 1)),
                   StateVector.product(r, neel_spins(r, -1))]
    data = GroundStateData(p.regime, r, vectors)
    # product states are eigenvectors of the diagonal Hamiltonians, so only the
    # minimality on the ground space of H^C needs confirming
    diag = hc_diagonal(r, p)
    lowest = diag.min()
    for index in data.indices:
        if diag[index] - lowest > 1e-12 * max(1.0, abs(lowest)):
            raise SpinflowConsistencyError(
                "Product state {} on {} is not a ground state of H^C"
                .format(index, r))
    return data


def gap_formula(kind, j_coupling, h_field, card):
    """
    Closed-form gap of H⁰ ('H0') or H^C ('HC') on a range of `card` sites.
    For odd antiferromagnetic H⁰ the gap is meant in the restricted sense, as
    the distance from E(Ψ^A) to the complement of span{Ψ^A, Ψ^B}
    """
    if kind not in ('H0', 'HC'):
        raise SpinflowUsageError(
            "Unrecognised Hamiltonian kind '{}' (H0 or HC)".format(kind))
    j = float(j_coupling)
    h = float(h_field)
    if j > 0:
        if h <= 0 or not j / h + 1.5 < card:
            raise SpinflowUsageError(
                "Ferromagnetic gap formula requires J/h + 3/2 < card "
                "(J={}, h={}, card={})".format(j, h, card))
        return 2 * j + h if kind == 'HC' else 2 * j + 2 * h
    if not abs(j) > h:
        raise SpinflowUsageError(
            "Antiferromagnetic gap formula requires |J| > h (J={}, h={})"
            .format(j, h))
    if kind == 'HC':
        return 2 * abs(j) - h
    return 2 * abs(j) if card % 2 else 2 * abs(j) - 2 * h


def _dense_spectrum(op, dense_cap):
    if op.dim > dense_cap:
        raise SpinflowResourceError(
            "Dimension {} exceeds the dense cap {}".format(op.dim, dense_cap),
            op.dim, dense_cap)
    if not numpy.count_nonzero(op.matrix - numpy.diag(numpy.diag(op.matrix))):
        return numpy.sort(numpy.diag(op.matrix).real)
    return scipy.linalg.eigvalsh(op.matrix)


def gap_exact(op, mode='above_gs', d=None, dense_cap=DEFAULT_DENSE_CAP,
              degeneracy_tol=1e-9):
    """
    Exact gap of a Hermitian operator

    Parameters
    ----------
    mode : str
        'above_gs' gives the distance from E₀ to the first eigenvalue that is
        not degenerate with it; 'above_gs_subspace' gives E_d - E₀, i.e. the
        distance to the spectrum with the d lowest states removed
    d : int
        Size of the excluded subspace for 'above_gs_subspace'
    """
    eigs = _dense_spectrum(op, dense_cap)
    if mode == 'above_gs':
        threshold = degeneracy_tol * max(1.0, numpy.max(numpy.abs(eigs)))
        above = eigs[eigs > eigs[0] + threshold]
        return float(above[0] - eigs[0]) if len(above) else 0.0
    elif mode == 'above_gs_subspace':
        if d is None or not 0 < d < len(eigs):
            raise SpinflowUsageError(
                "Subspace size d={} invalid for dimension {}"
                .format(d, len(eigs)))
        return float(eigs[d] - eigs[0])
    raise SpinflowUsageError("Unrecognised gap mode '{}'".format(mode))


def frustration(p, sub):
    """
    Expectation values of H⁰ on the sub-range `sub` in the Néel states Ψ^A_Λ
    and Ψ^B_Λ of the whole chain. They coincide iff `sub` has an even number
    of sites
    """
    if p.is_ferro:
        raise SpinflowUsageError("Frustration check is antiferromagnetic only")
    sub = _check_range(sub, 'frustration')
    diag = h0_diagonal(sub, p)
    leading = 1 if (sub.lo - 1) % 2 == 0 else -1
    e_a = diag[StateVector.product(sub, neel_spins(sub, leading)).index]
    e_b = diag[StateVector.product(sub, neel_spins(sub, -leading)).index]
    return float(e_a), float(e_b)
