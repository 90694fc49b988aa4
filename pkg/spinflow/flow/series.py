"""
The Lie-Schwinger series of a single block-diagonalization step.

Given G, block-diagonal with respect to the computational basis states |s⟩
spanning range(P⁻) (one in the ferromagnetic case, Ψ^A and Ψ^B in the
antiferromagnetic one) with G|s⟩ = E_s|s⟩, and a perturbation εV, the series
builds Z = Σ_j ε^j (Z)_j such that

    e^Z (G + εV) e^{-Z} = G + ε Σ_j ε^{j-1} (V)_j^diag

where "diag" keeps the P⁺·P⁺ and P⁻·P⁻ blocks. Every (Z)_j has the form
Σ_s (|w_s⟩⟨s| - |s⟩⟨w_s|) with w_s = (G - E_s)⁻¹P⁺(V)_j|s⟩, so it is stored by
its columns w_s and all ad-products are kept in factored low-rank form.
"""
from __future__ import division
from math import factorial
import numpy
import scipy.linalg
from spinflow.exceptions import (
    SpinflowGapError, SpinflowConvergenceError)
from spinflow.operator import spectral_norm
from spinflow.utils.logging import logger

DEFAULT_SERIES_TOL = 1e-14
DEFAULT_MAX_ORDER = 40
DEFAULT_GAP_FLOOR = 1e-6


class _Factored(object):
    "Matrix stored as left·right† (both dim x rank)"

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def dot(self, y):
        return self.left.dot(self.right.conj().T.dot(y))

    def hdot(self, y):
        "X† y"
        return self.right.dot(self.left.conj().T.dot(y))

    def columns(self, idx):
        "X[:, idx]"
        return self.left.dot(self.right[idx, :].conj().T)

    def hrows(self, idx):
        "X[idx, :]†, i.e. X†[:, idx]"
        return self.right.dot(self.left[idx, :].conj().T)

    def dense(self):
        return self.left.dot(self.right.conj().T)

    def scaled(self, factor):
        return _Factored(self.left * factor, self.right)

    @classmethod
    def total(cls, terms):
        return cls(numpy.hstack([t.left for t in terms]),
                   numpy.hstack([t.right for t in terms]))


class _Dense(object):

    def __init__(self, matrix):
        self.matrix = matrix

    def dot(self, y):
        return self.matrix.dot(y)

    def hdot(self, y):
        return self.matrix.conj().T.dot(y)

    def columns(self, idx):
        return self.matrix[:, idx]

    def hrows(self, idx):
        return self.matrix[idx, :].conj().T

    def dense(self):
        return self.matrix


def _ad(w, basis, idx, x):
    """
    ad Z (x) for Z = w·basis† - basis·w† in factored form, where `basis` holds
    the ground-state basis columns (indices `idx`)
    """
    xw = x.dot(w)
    left = numpy.hstack([w, -basis, -xw, x.columns(idx)])
    right = numpy.hstack([x.hrows(idx), x.hdot(w), basis, w])
    return _Factored(left, right)


def _factored_norm(left, right):
    "Spectral norm of left·right† through thin QR factors"
    if not left.size or not numpy.any(left) or not numpy.any(right):
        return 0.0
    ql, rl = numpy.linalg.qr(left)
    qr_, rr = numpy.linalg.qr(right)
    return float(scipy.linalg.svdvals(rl.dot(rr.conj().T))[0])


def diag_part(matrix, idx):
    "P⁺XP⁺ + P⁻XP⁻ for P⁻ spanned by the basis states `idx`"
    mask = numpy.ones(matrix.shape[0], dtype=bool)
    mask[idx] = False
    out = numpy.array(matrix, dtype=complex)
    out[numpy.ix_(mask, idx)] = 0.0
    out[numpy.ix_(idx, mask)] = 0.0
    return out


def split_plus(matrix, idx, rest):
    """
    Leaves P⁺XP⁺ in `matrix` and adds X - P⁺XP⁺ to `rest`, both in place
    """
    idx = list(idx)
    rest[:, idx] += matrix[:, idx]
    rest[idx, :] += matrix[idx, :]
    # the P⁻·P⁻ block was added twice
    rest[numpy.ix_(idx, idx)] -= matrix[numpy.ix_(idx, idx)]
    matrix[:, idx] = 0.0
    matrix[idx, :] = 0.0
    return matrix, rest


def offdiag_norm(matrix, idx):
    "‖P⁺XP⁻‖ (spectral norm of the dim x rank(P⁻) block)"
    mask = numpy.ones(matrix.shape[0], dtype=bool)
    mask[idx] = False
    block = matrix[numpy.ix_(mask, idx)]
    if not block.size:
        return 0.0
    return float(scipy.linalg.svdvals(block)[0])


class Resolvent(object):
    """
    (G - E_s)⁻¹P⁺ for each ground state s, from the eigendecomposition of G
    restricted to range(P⁺)

    Parameters
    ----------
    g : numpy.ndarray
        The step Hamiltonian
    idx : list(int)
        Basis indices of the ground states
    energies : list(float)
        E_s for each ground state
    gap_floor : float
        Smallest admissible distance between any E_s and the spectrum of G on
        range(P⁺)
    """

    def __init__(self, g, idx, energies, gap_floor=DEFAULT_GAP_FLOOR):
        mask = numpy.ones(g.shape[0], dtype=bool)
        mask[idx] = False
        self._mask = mask
        block = g[numpy.ix_(mask, mask)]
        offdiag = block - numpy.diag(numpy.diag(block))
        if not numpy.any(offdiag):
            self._lam = numpy.diag(block).real
            self._vecs = None
        else:
            self._lam, self._vecs = scipy.linalg.eigh(
                0.5 * (block + block.conj().T))
        self._energies = list(energies)
        if len(self._lam):
            self.gaps = [float(self._lam.min() - e) for e in self._energies]
        else:
            self.gaps = [float('inf')] * len(self._energies)
        self.gap = min(self.gaps)
        if self.gap < gap_floor:
            raise SpinflowGapError(
                "Gap {} of G above its ground energies {} is below the floor "
                "{}".format(self.gap, self._energies, gap_floor))

    def eigenpairs(self):
        "Eigenvalues and (full-space) eigenvectors of G on range(P⁺)"
        dim = self._mask.shape[0]
        vecs = numpy.zeros((dim, len(self._lam)), dtype=complex)
        if self._vecs is None:
            vecs[numpy.flatnonzero(self._mask), numpy.arange(len(self._lam))] = 1
        else:
            vecs[self._mask, :] = self._vecs
        return self._lam, vecs

    def apply(self, s, y):
        "(G - E_s)⁻¹P⁺ y"
        yp = y[self._mask]
        denom = self._lam - self._energies[s]
        if self._vecs is None:
            wp = yp / denom
        else:
            wp = self._vecs.dot(self._vecs.conj().T.dot(yp) / denom)
        w = numpy.zeros(y.shape[0], dtype=complex)
        w[self._mask] = wp
        return w


class SeriesResult(object):
    """
    Outcome of the series

    Attributes
    ----------
    z : numpy.ndarray
        Z = Σ_j ε^j (Z)_j (anti-Hermitian)
    first_order : numpy.ndarray
        (V)_1^diag = P⁺VP⁺ + P⁻VP⁻
    high_order : numpy.ndarray
        Σ_{j≥2} ε^{j-1} (V)_j^diag
    terms : int
        Number of orders used
    gap : float
        Measured gap of G on range(P⁺) above the ground energies
    z_norm : float
    z1_norm : float
        ‖ε(Z)_1‖
    high_order_norms : list(float)
        ε^{j-1}‖(V)_j^diag‖ for j ≥ 2
    """

    def __init__(self, z, first_order, high_order, terms, gap, z_norm,
                 z1_norm, high_order_norms, resolvent):
        self.z = z
        self.first_order = first_order
        self.high_order = high_order
        self.terms = terms
        self.gap = gap
        self.z_norm = z_norm
        self.z1_norm = z1_norm
        self.high_order_norms = high_order_norms
        self.resolvent = resolvent

    @property
    def diag_series(self):
        "Σ_j ε^{j-1}(V)_j^diag"
        return self.first_order + self.high_order


def series(g, v, idx, energies, epsilon, tol=DEFAULT_SERIES_TOL,
           max_order=DEFAULT_MAX_ORDER, gap_floor=DEFAULT_GAP_FLOOR):
    """
    Runs the Lie-Schwinger recursion

        (V)_1 = V
        (V)_j = Σ_{p≥2} 1/p! Σ_{r₁+…+r_p=j} ad(Z)_{r₁}…ad(Z)_{r_p}(G)
              + Σ_{p≥1} 1/p! Σ_{r₁+…+r_p=j-1} ad(Z)_{r₁}…ad(Z)_{r_p}(V)
        (Z)_j = Σ_s (G - E_s)⁻¹P⁺(V)_jP_s - h.c.

    until ‖ε^j(Z)_j‖ < tol·‖ε(Z)_1‖. Composition sums are accumulated in
    tables T[p][m] = Σ_{r₁+…+r_p=m} ad(Z)_{r₁}…ad(Z)_{r_p}(X), filled by
    T[p][m] = Σ_r ad(Z)_r(T[p-1][m-r])

    Parameters
    ----------
    g : numpy.ndarray
        Step Hamiltonian G
    v : numpy.ndarray
        Perturbation V (same dimension as G)
    idx : list(int)
        Basis indices of the ground states of G
    energies : list(float)
        Ground energies E_s
    epsilon : float
        Expansion parameter ξt
    """
    dim = g.shape[0]
    idx = list(idx)
    basis = numpy.zeros((dim, len(idx)), dtype=complex)
    basis[idx, numpy.arange(len(idx))] = 1.0
    resolvent = Resolvent(g, idx, energies, gap_floor=gap_floor)
    first_order = diag_part(v, idx)
    high_order = numpy.zeros((dim, dim), dtype=complex)
    g_op = _Dense(g)
    v_op = _Dense(v)

    def z_columns(vj):
        vs = vj.columns(idx)
        return numpy.array([resolvent.apply(s, vs[:, s])
                            for s in range(len(idx))]).T

    ws = {1: z_columns(v_op)}
    z1_norm = abs(epsilon) * _factored_norm(
        numpy.hstack([ws[1], -basis]), numpy.hstack([basis, ws[1]]))
    w_total = epsilon * ws[1]
    high_norms = []
    terms = 1
    if epsilon and z1_norm:
        # t_g[p][m] for X = G (p ≥ 1), t_v[p][m] for X = V (p ≥ 0)
        t_g = {}
        t_v = {0: {0: v_op}}
        converged = False
        for j in range(2, max_order + 1):
            t_g.setdefault(1, {})[j - 1] = _ad(ws[j - 1], basis, idx, g_op)
            for p in range(2, j + 1):
                t_g.setdefault(p, {})[j] = _Factored.total(
                    [_ad(ws[r], basis, idx, t_g[p - 1][j - r])
                     for r in range(1, j - p + 2)])
            for p in range(1, j):
                # the zeroth power only exists at m = 0
                t_v.setdefault(p, {})[j - 1] = _Factored.total(
                    [_ad(ws[r], basis, idx, t_v[p - 1][j - 1 - r])
                     for r in range(1, j - p + 1)
                     if j - 1 - r in t_v[p - 1]])
            vj = _Factored.total(
                [t_g[p][j].scaled(1.0 / factorial(p))
                 for p in range(2, j + 1)] +
                [t_v[p][j - 1].scaled(1.0 / factorial(p))
                 for p in range(1, j)])
            vj_diag = diag_part(vj.dense(), idx) * epsilon ** (j - 1)
            high_order += vj_diag
            high_norms.append(spectral_norm(
                0.5 * (vj_diag + vj_diag.conj().T), hermitian=True))
            ws[j] = z_columns(vj)
            w_total = w_total + epsilon ** j * ws[j]
            terms = j
            zj_norm = abs(epsilon) ** j * _factored_norm(
                numpy.hstack([ws[j], -basis]), numpy.hstack([basis, ws[j]]))
            logger.debug("Lie-Schwinger order {}: ‖ε^j Z_j‖ = {:.3e}"
                         .format(j, zj_norm))
            if zj_norm < tol * z1_norm:
                converged = True
                break
        if not converged:
            raise SpinflowConvergenceError(
                "Lie-Schwinger series did not reach relative tolerance {} "
                "within {} orders".format(tol, max_order))
    z = w_total.dot(basis.conj().T) - basis.dot(w_total.conj().T)
    z_norm = _factored_norm(numpy.hstack([w_total, -basis]),
                            numpy.hstack([basis, w_total]))
    return SeriesResult(z, first_order, high_order, terms, resolvent.gap,
                        z_norm, z1_norm, high_norms, resolvent)
