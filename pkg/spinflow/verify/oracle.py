"""
Exact-diagonalization oracle, independent of the flow
"""
from __future__ import division
import numpy
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg
from spinflow.operator import LocalOperator
from spinflow.model import DEFAULT_DENSE_CAP
from spinflow.exceptions import (
    SpinflowHermiticityError, SpinflowResourceError, SpinflowUsageError)

# Above this dimension partial spectra go through the Krylov eigensolver
KRYLOV_ABOVE = 2 ** 12
DEGENERACY_TOL = 1e-9
HERMITIAN_TOL = 1e-10


def _check_hermitian(matrix, sparse):
    if sparse:
        diff = abs(matrix - matrix.conj().T)
        residual = diff.max() if diff.nnz else 0.0
        scale = abs(matrix).max() if matrix.nnz else 0.0
    else:
        residual = numpy.max(numpy.abs(matrix - matrix.conj().T))
        scale = numpy.max(numpy.abs(matrix))
    if residual > HERMITIAN_TOL * max(1.0, scale):
        raise SpinflowHermiticityError(
            "ED requires a Hermitian operator (‖A - A†‖ = {})"
            .format(residual))


def ed_spectrum(op, count='all', dense_cap=DEFAULT_DENSE_CAP,
                krylov_above=KRYLOV_ABOVE, seed=0):
    """
    Ascending eigenvalues of a Hermitian operator

    Parameters
    ----------
    op : LocalOperator | numpy.ndarray | scipy.sparse.spmatrix
        The operator
    count : int | 'all'
        Number of lowest eigenvalues to return
    dense_cap : int
        Largest dimension handled by the dense eigensolver
    krylov_above : int
        Dimension above which a partial spectrum is computed with the
        (seeded) Lanczos eigensolver
    """
    if isinstance(op, LocalOperator):
        op = op.matrix
    sparse = scipy.sparse.issparse(op)
    dim = op.shape[0]
    _check_hermitian(op, sparse)
    if count != 'all':
        count = int(count)
        if not 0 < count <= dim:
            raise SpinflowUsageError(
                "Cannot compute {} eigenvalues of a {}-dimensional operator"
                .format(count, dim))
    if count != 'all' and (dim > dense_cap or dim > krylov_above) and \
            count < dim - 1:
        v0 = numpy.random.RandomState(seed).standard_normal(dim).astype(
            numpy.result_type(op.dtype, float))
        eigs = scipy.sparse.linalg.eigsh(
            scipy.sparse.csr_matrix(op), k=count, which='SA', v0=v0,
            return_eigenvectors=False, tol=0)
        return numpy.sort(eigs.real)
    if dim > dense_cap:
        raise SpinflowResourceError(
            "Full spectrum of dimension {} exceeds the dense cap {}"
            .format(dim, dense_cap), dim, dense_cap)
    matrix = op.toarray() if sparse else numpy.asarray(op)
    if count == 'all':
        return scipy.linalg.eigvalsh(matrix)
    return scipy.linalg.eigvalsh(matrix, subset_by_index=[0, count - 1])


def degenerate_groups(eigs, rel_tol=DEGENERACY_TOL, norm=None):
    """
    Groups ascending eigenvalues closer than rel_tol·‖op‖ (‖op‖ defaulting to
    the largest |eigenvalue|), returning the group sizes
    """
    eigs = numpy.asarray(eigs)
    if not len(eigs):
        return []
    if norm is None:
        norm = numpy.max(numpy.abs(eigs))
    threshold = rel_tol * max(1.0, norm)
    sizes = [1]
    for prev, e in zip(eigs[:-1], eigs[1:]):
        if e - prev <= threshold:
            sizes[-1] += 1
        else:
            sizes.append(1)
    return sizes


def ground_degeneracy(eigs, rel_tol=DEGENERACY_TOL, norm=None):
    return degenerate_groups(eigs, rel_tol=rel_tol, norm=norm)[0]


def fit_slope(xs, ys, floor=0.0):
    """
    Least-squares fit of log y = slope·log x + log c

    Returns
    -------
    slope : float | None
        None when fewer than two points have y > floor
    c : float | None
    """
    xs = numpy.asarray(xs, dtype=float)
    ys = numpy.asarray(ys, dtype=float)
    keep = (ys > floor) & (xs > 0)
    if numpy.count_nonzero(keep) < 2:
        return None, None
    slope, intercept = numpy.polyfit(numpy.log(xs[keep]),
                                     numpy.log(ys[keep]), 1)
    return float(slope), float(numpy.exp(intercept))
