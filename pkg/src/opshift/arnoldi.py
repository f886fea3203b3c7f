"""Orthonormal polynomials and the Hessenberg matrix of multiplication by ``z``.

Quadrature-backed measures are orthogonalised on node values: each step
multiplies the newest polynomial by ``z`` pointwise and removes its components
along the earlier ones (modified Gram-Schmidt, repeated once).  The projection
coefficients are exactly the Hessenberg entries ``M[j, k]``, and the same
elimination applied to coefficient vectors yields the monomial table ``C``.

``C`` degrades with degree (monomials are badly conditioned); the node values
and ``M`` do not, and the asymptotic checks use only those.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import ggt_matrix, jacobi_matrix, jacobi_polynomials, szego_recursion
from .errors import DegreeExceeded, RankDeficient
from .hessenberg import HessenbergMatrix, log_kappa_from_subdiagonal
from .measure import CircleVerblunsky, JacobiLine, Mixture, PlanarQuadrature, as_quadrature

RANK_TOL = 1e-12


@dataclass(frozen=True)
class OrthonormalBasis:
    """``phi_n(z) = sum_i C[n, i] z**i`` for ``n <= N`` with ``kappa_n = C[n, n]``.

    ``kappa`` is taken from the Hessenberg subdiagonal, not from ``C``.

    ``values[n, i] = phi_n(nodes[i])`` for quadrature measures (empty otherwise).
    """

    N: int
    C: np.ndarray
    kappa: np.ndarray
    values: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray

    def monic(self, n: int) -> np.ndarray:
        """Ascending coefficients of ``Phi_n = phi_n / kappa_n``."""
        if not 0 <= n <= self.N:
            raise IndexError(f"degree {n} outside 0..{self.N}")
        out = self.C[n, :n + 1] / self.kappa[n]
        out[n] = 1.0
        return out


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def arnoldi(m, N: int, strict: bool = True, rank_tol: float = RANK_TOL):
    """Orthonormalise ``1, z, ..., z**N`` in ``L2(m)``.

    Returns ``(basis, M)`` with ``M`` the ``(N+1) x (N+1)`` section, so that
    ``z phi_{k-1} = sum_{j <= k+1} M[j, k] phi_{j-1}`` (1-based) for ``k <= N``.

    Raises
    ------
    RankDeficient
        If a new direction has norm below ``rank_tol`` times that of
        ``z phi_k``, or ``N`` is not below the node count.
    DegreeExceeded
        If ``strict`` and the quadrature is not exact to degree ``2N + 1``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if isinstance(m, CircleVerblunsky):
        polys, kappa = szego_recursion(m.alpha, N)
        C = np.zeros((N + 1, N + 1), dtype=complex)
        # kappa_n overflows for alpha_n -> 1; only the printable table suffers
        with np.errstate(over="ignore", invalid="ignore"):
            for n, p in enumerate(polys):
                C[n, :n + 1] = p * kappa[n]
        return _closed_form(N, C, kappa), ggt_matrix(m.alpha, N)
    if isinstance(m, JacobiLine):
        M = jacobi_matrix(m.arrays, N)
        C = jacobi_polynomials(m.arrays, N)
        return _closed_form(N, C, np.exp(M.log_kappa)), M
    if isinstance(m, Mixture):
        m = as_quadrature(m)
    if not isinstance(m, PlanarQuadrature):
        raise TypeError(f"cannot orthogonalise {type(m).__name__}")
    if strict and 2 * N + 1 > m.degree:
        raise DegreeExceeded(f"degree-{N} basis needs exactness {2 * N + 1}, have {m.degree}")
    if N >= m.nodes.size:
        raise RankDeficient(f"{m.nodes.size} nodes support degree at most {m.nodes.size - 1}")
    return _node_arnoldi(m, N, rank_tol)


def _closed_form(N, C, kappa):
    empty = np.zeros((0,), dtype=complex)
    V = np.zeros((N + 1, 0), dtype=complex)
    kappa = np.asarray(kappa, dtype=float)
    _freeze(C, kappa, V, empty)
    return OrthonormalBasis(N, C, kappa, V, empty, np.zeros(0))


def _node_arnoldi(m: PlanarQuadrature, N: int, rank_tol: float):
    z, w = m.nodes, m.weights
    V = np.zeros((N + 1, z.size), dtype=complex)
    C = np.zeros((N + 1, N + 1), dtype=complex)
    H = np.zeros((N + 1, N + 1), dtype=complex)
    k0 = 1.0 / np.sqrt(m.mass)
    V[0] = k0
    C[0, 0] = k0
    for k in range(N + 1):
        v = z * V[k]
        c = np.zeros(N + 1, dtype=complex)
        c[1:] = C[k, :-1]
        start = np.sqrt(np.sum(w * np.abs(v) ** 2))
        for _ in range(2):
            for j in range(k + 1):
                h = np.sum(w * v * np.conj(V[j]))
                v = v - h * V[j]
                c = c - h * C[j]
                H[j, k] += h
        if k == N:
            break
        norm = np.sqrt(np.sum(w * np.abs(v) ** 2))
        if not norm > rank_tol * start:
            raise RankDeficient(f"degree {k + 1} direction vanishes (norm {norm:.3e})")
        H[k + 1, k] = norm
        V[k + 1] = v / norm
        C[k + 1] = c / norm
    # the subdiagonal fixes kappa more accurately than the coefficient table
    log_kappa = log_kappa_from_subdiagonal(H, k0)
    kappa = np.exp(log_kappa)
    _freeze(V, C, kappa)
    basis = OrthonormalBasis(N, C, kappa, V, m.nodes, m.weights)
    return basis, HessenbergMatrix(H, log_kappa=log_kappa)


def evaluate_poly(basis: OrthonormalBasis, n: int, z):
    """``phi_n(z)`` by Horner's rule on the coefficient table."""
    if not 0 <= n <= basis.N:
        raise IndexError(f"degree {n} outside 0..{basis.N}")
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in basis.C[n, n::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc
