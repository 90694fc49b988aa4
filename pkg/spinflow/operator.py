"""
Dense operator algebra on contiguous blocks of spin-½ sites.

Basis convention: for an operator supported on [lo, hi] the basis index of a
product state is b = Σ_i bit(i)·2^(i - lo), where bit(i) = 0 for spin-up and
bit(i) = 1 for spin-down, so that σᶻ|↑⟩ = +|↑⟩ and site `lo` is the least
significant bit. Operators on different supports are combined by tensoring
with the identity on the missing sites.
"""
from __future__ import division
from functools import reduce
import numpy
import scipy.linalg
import scipy.sparse.linalg
from spinflow.lattice import MicroRange
from spinflow.exceptions import (
    SpinflowSupportError, SpinflowHermiticityError, SpinflowUsageError,
    SpinflowTypeError)
from spinflow.utils.logging import logger

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
SKEW_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
# Above this dimension spectral norms go through the (seeded) Lanczos solver
NORM_KRYLOV_ABOVE = 2 ** 10

PAULI = {
    'x': numpy.array([[0, 1], [1, 0]], dtype=complex),
    'y': numpy.array([[0, -1j], [1j, 0]], dtype=complex),
    'z': numpy.array([[1, 0], [0, -1]], dtype=complex),
    'i': numpy.eye(2, dtype=complex)}


def _max_abs(matrix):
    return float(numpy.max(numpy.abs(matrix))) if matrix.size else 0.0


def _adjoint_residual(matrix, sign=-1.0, rows=512):
    "max|A + sign·A†|, a block of rows at a time"
    residual = 0.0
    for r in range(0, matrix.shape[0], rows):
        block = matrix[r:r + rows] + sign * matrix[:, r:r + rows].conj().T
        residual = max(residual, _max_abs(block))
    return residual


class LocalOperator(object):
    """
    A (generally dense) complex matrix acting on the sites of `support`

    Parameters
    ----------
    support : MicroRange
        The contiguous range of sites the operator acts on
    matrix : numpy.ndarray
        Square matrix of dimension 2 ** support.size
    hermitian : bool
        Flags the operator as Hermitian, which is checked to 1e-12 (relative
        to the largest matrix element)
    """

    def __init__(self, support, matrix, hermitian=False):
        if not isinstance(support, MicroRange):
            try:
                support = MicroRange(*support)
            except TypeError:
                raise SpinflowTypeError(
                    "Support must be a MicroRange or a (lo, hi) pair, got {}"
                    .format(repr(support)))
        try:
            matrix = numpy.asarray(matrix, dtype=complex)
        except (TypeError, ValueError):
            raise SpinflowTypeError(
                "Operator matrix on {} is not numeric ({})".format(
                    support, type(matrix).__name__))
        if matrix.shape != (support.dim, support.dim):
            raise SpinflowSupportError(
                "Matrix of shape {} does not match support {} (dimension {})"
                .format(matrix.shape, support, support.dim))
        if hermitian:
            residual = _adjoint_residual(matrix)
            if residual > HERMITIAN_TOL * max(1.0, _max_abs(matrix)):
                raise SpinflowHermiticityError(
                    "Operator on {} flagged Hermitian but ‖A - A†‖ = {}"
                    .format(support, residual))
        # frozen in place, the operator owns the array from here on
        matrix.setflags(write=False)
        self._support = support
        self._matrix = matrix
        self._hermitian = bool(hermitian)

    @classmethod
    def identity(cls, support):
        return cls(support, numpy.eye(support.dim, dtype=complex),
                   hermitian=True)

    @classmethod
    def zero(cls, support):
        return cls(support, numpy.zeros((support.dim, support.dim),
                                        dtype=complex), hermitian=True)

    @property
    def support(self):
        return self._support

    @property
    def matrix(self):
        return self._matrix

    @property
    def hermitian(self):
        return self._hermitian

    @property
    def dim(self):
        return self._support.dim

    @property
    def is_zero(self):
        return not self._matrix.any()

    def hermiticity_residual(self):
        return _adjoint_residual(self._matrix)

    def embed(self, target):
        return embed(self, target)

    def adjoint(self):
        return adjoint(self)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, factor):
        return scale(self, factor)

    __rmul__ = __mul__

    def __truediv__(self, factor):
        return scale(self, 1.0 / factor)

    __div__ = __truediv__

    def __matmul__(self, other):
        return mul(self, other)

    def __repr__(self):
        return 'LocalOperator(support={}, dim={}, hermitian={})'.format(
            self._support, self.dim, self._hermitian)


class StateVector(object):
    """
    Normalized vector in the Hilbert space of `support`

    Parameters
    ----------
    support : MicroRange
        Sites the state lives on
    amplitudes : numpy.ndarray
        Complex amplitudes, one per basis index
    """

    def __init__(self, support, amplitudes):
        if not isinstance(support, MicroRange):
            support = MicroRange(*support)
        amplitudes = numpy.asarray(amplitudes, dtype=complex).ravel()
        if amplitudes.shape != (support.dim,):
            raise SpinflowSupportError(
                "{} amplitudes supplied for support {} (dimension {})"
                .format(amplitudes.size, support, support.dim))
        norm = numpy.linalg.norm(amplitudes)
        if abs(norm - 1.0) > 1e-12:
            raise SpinflowUsageError(
                "State vector is not normalized (norm {})".format(norm))
        amplitudes.setflags(write=False)
        self._support = support
        self._amplitudes = amplitudes

    @classmethod
    def product(cls, support, spins):
        """
        Product state of z-basis spins (+1 for ↑, -1 for ↓) listed from the
        first site of `support` onwards
        """
        if len(spins) != support.size:
            raise SpinflowSupportError(
                "{} spins given for support {}".format(len(spins), support))
        amplitudes = numpy.zeros(support.dim, dtype=complex)
        amplitudes[basis_index(spins)] = 1.0
        return cls(support, amplitudes)

    @property
    def support(self):
        return self._support

    @property
    def amplitudes(self):
        return self._amplitudes

    @property
    def index(self):
        "Basis index if the state is a computational basis state, else None"
        nonzero = numpy.flatnonzero(self._amplitudes)
        return int(nonzero[0]) if len(nonzero) == 1 else None


def basis_index(spins):
    "Basis index of a product state listed as ±1 spins from the first site"
    return sum((1 << n) for n, s in enumerate(spins) if s < 0)


def local_term(matrices, lo):
    """
    Tensor product of single-site matrices placed on consecutive sites
    starting at `lo`
    """
    support = MicroRange(lo, lo + len(matrices) - 1)
    # the last site is the most significant bit
    matrix = reduce(numpy.kron, reversed([numpy.asarray(m, dtype=complex)
                                          for m in matrices]))
    return LocalOperator(support, matrix)


def pauli(site, axis, support):
    """
    σ^axis on `site`, tensored with the identity on the rest of `support`
    """
    if not isinstance(support, MicroRange):
        support = MicroRange(*support)
    if not support.contains(site):
        raise SpinflowSupportError(
            "Site {} lies outside support {}".format(site, support))
    try:
        single = PAULI[axis]
    except KeyError:
        raise SpinflowUsageError(
            "Unrecognised Pauli axis '{}' (x, y or z)".format(axis))
    op = LocalOperator(MicroRange(site, site), single, hermitian=True)
    return embed(op, support)


def _split(inner, outer):
    "Number of sites of `outer` above and below `inner`"
    return 2 ** (outer.hi - inner.hi), 2 ** (inner.lo - outer.lo)


def embed(a, target):
    """
    Extends `a` to the (larger) support `target` by tensoring with the identity
    """
    if not isinstance(target, MicroRange):
        target = MicroRange(*target)
    if a.support == target:
        return a
    matrix = numpy.zeros((target.dim, target.dim), dtype=complex)
    accumulate(matrix, a, target)
    return LocalOperator(target, matrix, hermitian=a.hermitian)


def accumulate(matrix, a, support, factor=1.0):
    """
    Adds factor·embed(a, support) to the dense `matrix` on `support` in place,
    without forming the embedding
    """
    if not isinstance(support, MicroRange):
        support = MicroRange(*support)
    if not support.contains(a.support):
        raise SpinflowSupportError(
            "Cannot embed operator on {} into {}".format(a.support, support))
    if not matrix.flags['C_CONTIGUOUS'] or not matrix.flags['WRITEABLE']:
        raise SpinflowUsageError(
            "Accumulation target must be a writeable, contiguous array")
    above, below = _split(a.support, support)
    # a view, as the target is contiguous
    blocks = matrix.reshape(above, a.dim, below, above, a.dim, below)
    term = a.matrix * factor
    for x in range(above):
        for y in range(below):
            blocks[x, :, y, x, :, y] += term
    return matrix


def _left(small, support, matrix):
    "embed(small, support) @ matrix without forming the embedding"
    above, below = _split(small.support, support)
    dim = matrix.shape[1]
    blocks = matrix.reshape(above, small.dim, below, dim)
    return numpy.einsum('ij,ajbd->aibd', small.matrix, blocks,
                        optimize=True).reshape(matrix.shape)


def _right(matrix, small, support):
    "matrix @ embed(small, support) without forming the embedding"
    above, below = _split(small.support, support)
    dim = matrix.shape[0]
    blocks = matrix.reshape(dim, above, small.dim, below)
    return numpy.einsum('dajb,jl->dalb', blocks, small.matrix,
                        optimize=True).reshape(matrix.shape)


def _larger_first(a, b):
    "The union of both supports and the dense embedding of the larger operand"
    support = a.support.union(b.support)
    large, small = (a, b) if a.dim >= b.dim else (b, a)
    matrix = numpy.array(embed(large, support).matrix, order='C')
    return support, matrix, small


def add(a, b):
    if b.is_zero and a.support.contains(b.support):
        return a
    if a.is_zero and b.support.contains(a.support):
        return b
    support, matrix, small = _larger_first(a, b)
    accumulate(matrix, small, support)
    return LocalOperator(support, matrix,
                         hermitian=a.hermitian and b.hermitian)


def scale(a, factor):
    hermitian = a.hermitian and numpy.imag(factor) == 0
    return LocalOperator(a.support, a.matrix * factor, hermitian=hermitian)


def mul(a, b):
    "Operator product a·b"
    if a.support == b.support:
        return LocalOperator(a.support, a.matrix.dot(b.matrix))
    if b.support.contains(a.support):
        return LocalOperator(b.support, _left(a, b.support, b.matrix))
    if a.support.contains(b.support):
        return LocalOperator(a.support, _right(a.matrix, b, a.support))
    support, matrix, small = _larger_first(a, b)
    if small is b:
        return LocalOperator(support, _right(matrix, b, support))
    return LocalOperator(support, _left(a, support, matrix))


def commutator(a, b):
    "ad a (b) = ab - ba"
    if not a.support.intersects(b.support):
        return LocalOperator.zero(a.support.hull(b.support))
    return add(mul(a, b), scale(mul(b, a), -1.0))


def adjoint(a):
    return LocalOperator(a.support, a.matrix.conj().T, hermitian=a.hermitian)


def symmetrize(a, tol=1e-10):
    """
    Removes accumulated roundoff from an operator that should be Hermitian,
    refusing to do so if the anti-Hermitian part exceeds `tol`
    """
    residual = a.hermiticity_residual()
    if residual > tol:
        raise SpinflowHermiticityError(
            "Operator on {} is not Hermitian to within {} (‖A - A†‖ = {})"
            .format(a.support, tol, residual))
    out = a.matrix + a.matrix.conj().T
    out *= 0.5
    return LocalOperator(a.support, out, hermitian=True)


def spectral_norm(matrix, hermitian=False, krylov_above=NORM_KRYLOV_ABOVE,
                  seed=0):
    """
    Spectral norm of a dense matrix, from the seeded Lanczos solver above
    dimension `krylov_above` and from the full spectrum below it
    """
    if not matrix.any():
        return 0.0
    dim = matrix.shape[0]
    if dim > krylov_above:
        v0 = numpy.random.RandomState(seed).standard_normal(dim).astype(
            numpy.result_type(matrix.dtype, float))
        try:
            if hermitian:
                w = scipy.sparse.linalg.eigsh(
                    matrix, k=1, which='LM', v0=v0,
                    return_eigenvectors=False)
                return float(numpy.abs(w).max())
            s = scipy.sparse.linalg.svds(matrix, k=1, v0=v0,
                                         return_singular_vectors=False)
            return float(s.max())
        except scipy.sparse.linalg.ArpackNoConvergence:
            logger.warning("Lanczos norm of a {0}x{0} matrix did not "
                           "converge, using the full spectrum".format(dim))
    if hermitian:
        eigs = scipy.linalg.eigvalsh(matrix)
        return float(max(abs(eigs[0]), abs(eigs[-1])))
    return float(scipy.linalg.svdvals(matrix)[0])


def op_norm(a):
    "Spectral norm"
    if a.is_zero:
        return 0.0
    return spectral_norm(a.matrix, hermitian=a.hermitian)


def expm_skew(z):
    """
    e^z for anti-Hermitian z via the Hermitian eigendecomposition of iz
    """
    m = z.matrix
    residual = _adjoint_residual(m, sign=1.0)
    if residual > SKEW_TOL:
        raise SpinflowHermiticityError(
            "Cannot exponentiate, operator on {} is not anti-Hermitian "
            "(‖Z + Z†‖ = {})".format(z.support, residual))
    h = 1j * m
    w, v = scipy.linalg.eigh(0.5 * (h + h.conj().T))
    # z = -i(iz)
    u = (v * numpy.exp(-1j * w)).dot(v.conj().T)
    return LocalOperator(z.support, u)


def unitarity_residual(u):
    m = u.matrix
    return _max_abs(m.dot(m.conj().T) - numpy.eye(u.dim))


def conjugate(u, a, check=True):
    "u·a·u†, acting only on the sites shared with u"
    if check:
        residual = unitarity_residual(u)
        if residual > UNITARY_TOL:
            raise SpinflowUsageError(
                "Conjugating operator on {} is not unitary (‖UU† - 1‖ = {})"
                .format(u.support, residual))
    if not u.support.intersects(a.support):
        return a
    support = u.support.union(a.support)
    matrix = embed(a, support).matrix
    # u only ever acts on its own sites
    left = _left(u, support, matrix)
    return LocalOperator(support, _right(left, adjoint(u), support),
                         hermitian=a.hermitian)


def conjugation_change(u, a):
    "u·a·u† - a, exact, on the union of both supports"
    if not u.support.intersects(a.support):
        return LocalOperator.zero(a.support)
    return add(conjugate(u, a, check=False), scale(a, -1.0))


def projector_from_states(states):
    "Σ|ψ⟩⟨ψ| over orthonormal states sharing a support"
    if not states:
        raise SpinflowUsageError("No states given to build a projector")
    support = states[0].support
    if any(s.support != support for s in states):
        raise SpinflowSupportError(
            "States do not share a common support ({})".format(
                ', '.join(str(s.support) for s in states)))
    vectors = numpy.array([s.amplitudes for s in states]).T
    overlap = vectors.conj().T.dot(vectors)
    residual = _max_abs(overlap - numpy.eye(len(states)))
    if residual > ORTHONORMAL_TOL:
        raise SpinflowUsageError(
            "States are not orthonormal (residual {})".format(residual))
    return LocalOperator(support, vectors.dot(vectors.conj().T),
                         hermitian=True)


def apply(a, vector, support):
    "Applies embed(a, support) to the plain vector `vector` on `support`"
    if not support.contains(a.support):
        raise SpinflowSupportError(
            "Operator on {} does not act within {}".format(a.support, support))
    above, below = _split(a.support, support)
    blocks = numpy.asarray(vector).reshape(above, a.dim, below)
    return numpy.einsum('ij,ajb->aib', a.matrix, blocks,
                        optimize=True).reshape(-1)


def expectation(a, state):
    "⟨ψ|a|ψ⟩ (real part) for `a` supported inside the support of `state`"
    return float(numpy.vdot(state.amplitudes,
                            apply(a, state.amplitudes, state.support)).real)


def partial_trace(a, target):
    """
    Normalized partial trace of `a` over the sites of its support outside
    `target`, i.e. the best approximation of `a` supported on `target`
    """
    if not a.support.contains(target):
        raise SpinflowSupportError(
            "{} is not inside the support {}".format(target, a.support))
    above, below = _split(target, a.support)
    blocks = a.matrix.reshape(above, target.dim, below,
                              above, target.dim, below)
    reduced = numpy.einsum('ajbalb->jl', blocks) / (above * below)
    return LocalOperator(target, reduced)


def leakage(a, target):
    """
    Largest matrix element of the part of `a` acting outside `target`
    (0 when `a` is supported inside `target`)
    """
    if target.contains(a.support):
        return 0.0
    a = embed(a, target.hull(a.support))
    reduced = partial_trace(a, target)
    return _max_abs(a.matrix - embed(reduced, a.support).matrix)


def block_residual(a, left, right):
    "max|P_left a P_right| for projectors on (a subset of) the support of a"
    support = a.support.hull(left.support).hull(right.support)
    ma = embed(a, support).matrix
    pl = embed(left, support).matrix
    pr = embed(right, support).matrix
    return _max_abs(pl.dot(ma).dot(pr))


def dump(a, path):
    """
    Writes `a` as little-endian int64 (lo, hi, dim) followed by the row-major
    complex128 matrix
    """
    with open(path, 'wb') as f:
        numpy.array([a.support.lo, a.support.hi, a.dim],
                    dtype='<i8').tofile(f)
        numpy.ascontiguousarray(a.matrix, dtype='<c16').tofile(f)


def load(path, hermitian=False):
    with open(path, 'rb') as f:
        lo, hi, dim = numpy.fromfile(f, dtype='<i8', count=3)
        matrix = numpy.fromfile(f, dtype='<c16', count=int(dim) * int(dim))
    return LocalOperator(MicroRange(lo, hi), matrix.reshape(dim, dim),
                         hermitian=hermitian)
