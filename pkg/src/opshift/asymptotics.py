"""Limit pipelines over Hessenberg matrices.

* :func:`ratio_series` -- coefficients of ``lim Phi_{n-1}(z)/Phi_n(z)`` at infinity,
  read off the corner powers ``((pi_n M pi_n)**j)_{n,n}``;
* :func:`weak_moment_sequence` -- ``(M**j)_{n+1,n+1} = int z**j |phi_n|**2 dmu``;
* :func:`symbol_extract` -- the Toeplitz symbol from diagonal limits, checked
  against the functional inverse of the ratio limit;
* :func:`degenerate_limit` -- the case ``kappa_n/kappa_{n+1} -> 0``;
* :func:`zero_counting_moments` -- power sums of the zeros of ``Phi_n``.

Every pipeline returns the per-sequence :class:`LimitEstimate` objects it used
so that verdicts can be inspected rather than trusted.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from .errors import (CrossCheckFailed, DegenerateKappa, IndexOutOfRange,
                     InsufficientDepth, NotDegenerate, WindowExceeded)
from .hessenberg import (HessenbergMatrix, corner_powers, diagonal_limit,
                         full_power_diagonals)
from .laurent import LaurentSeries, SeriesAtInfinity, ratio_inverse
from .limits import DEFAULT_TOL, DEFAULT_WINDOW, LimitEstimate, estimate_limit

DEFAULT_TERMS = 8


def thread_count() -> int:
    """Worker cap from ``OPSHIFT_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("OPSHIFT_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items, workers):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))   # order preserved


def _vanishes(est: LimitEstimate, tol: float) -> bool:
    return est.converged and abs(est.limit) < tol


def kappa_ratio_positive(est: LimitEstimate, tol: float) -> bool:
    """Whether ``liminf kappa_n/kappa_{n+1} > 0`` on the evidence of the subdiagonal."""
    floor = max(10 * tol, 1e-8)
    if est.converged:
        return abs(est.limit) > floor
    return float(np.min(np.abs(est.tail))) > floor


class RatioReport(NamedTuple):
    """``f_est`` has coefficients ``A_0, A_1, ..., A_J`` (monic normalisation);
    ``estimates[j]`` is the verdict on ``A_j``."""

    f_est: SeriesAtInfinity
    estimates: list
    posinf: bool
    kappa_ratio: LimitEstimate

    @property
    def converged(self) -> list:
        return [e.converged for e in self.estimates]

    def orthonormal(self) -> SeriesAtInfinity:
        """Limit of ``phi_n/phi_{n+1}``: the monic series times ``lim kappa_n/kappa_{n+1}``."""
        return self.f_est.scaled(self.kappa_ratio.limit.real)


def corner_table(M: HessenbergMatrix, J: int) -> np.ndarray:
    """``T[n-1, j] = ((pi_n M pi_n)**j)_{n,n}`` for ``n = 1..size``, ``j = 0..J``."""
    return np.array([corner_powers(M, n, J) for n in range(1, M.size + 1)])


def ratio_series(M: HessenbergMatrix, J: int = DEFAULT_TERMS, window: int = DEFAULT_WINDOW,
                 tol: float = DEFAULT_TOL, workers: int | None = None) -> RatioReport:
    """Estimate ``lim Phi_{n-1}/Phi_n = sum_{j>=0} A_j z**-(j+1)`` for ``j <= J``.

    Raises
    ------
    InsufficientDepth
        If the section is smaller than ``window + J``.
    """
    if M.size < window + J:
        raise InsufficientDepth(f"section of size {M.size} cannot host window {window} and J={J}")
    workers = thread_count() if workers is None else workers
    table = corner_table(M, J)
    estimates = _map(lambda j: estimate_limit(table[:, j], start=1, window=window, tol=tol),
                     range(J + 1), workers)
    coeffs = np.array([e.limit for e in estimates])
    coeffs[0] = 1.0
    sub = diagonal_limit(M, -1, window=window, tol=tol)
    return RatioReport(SeriesAtInfinity(coeffs), estimates, kappa_ratio_positive(sub, tol), sub)


def weak_moment_table(M: HessenbergMatrix, jmax: int) -> np.ndarray:
    """``T[n, j] = (M**j)_{n+1,n+1}`` for every ``n`` with ``n + 1 + jmax <= size + 1``."""
    count = M.size + 1 - jmax
    if count < 1:
        raise WindowExceeded(f"no index n admits power {jmax} in a section of size {M.size}")
    return np.array([full_power_diagonals(M, n, jmax) for n in range(1, count + 1)])


def weak_moment_sequence(M: HessenbergMatrix, j: int, window: int = DEFAULT_WINDOW,
                         tol: float = DEFAULT_TOL) -> LimitEstimate:
    """Limit of ``n -> (M**j)_{n+1,n+1}``, starting at ``n = 0``."""
    table = weak_moment_table(M, j)
    return estimate_limit(table[:, j], start=0, window=window, tol=tol)


class SymbolEstimate(NamedTuple):
    """Symbol from diagonal limits plus the independent inverse-map estimate."""

    symbol: LaurentSeries
    inverse_symbol: LaurentSeries
    residual: float
    estimates: list

    @property
    def converged(self) -> bool:
        return all(e.converged for e in self.estimates)


def symbol_extract(M: HessenbergMatrix, J: int = DEFAULT_TERMS, window: int = DEFAULT_WINDOW,
                   tol: float = DEFAULT_TOL, check_tol: float | None = None,
                   workers: int | None = None) -> SymbolEstimate:
    """``beta_j = lim M_{n-j,n}`` for ``-1 <= j <= J``, cross-checked against
    ``ratio_inverse`` of the ratio limit.

    Raises
    ------
    DegenerateKappa
        If ``kappa_n/kappa_{n+1}`` is not bounded away from zero.
    CrossCheckFailed
        If the two estimates differ by more than ``check_tol`` (default ``tol``).
    """
    check_tol = tol if check_tol is None else check_tol
    workers = thread_count() if workers is None else workers
    report = ratio_series(M, J + 1, window, tol, workers)
    if not report.posinf:
        raise DegenerateKappa("kappa_n/kappa_{n+1} tends to zero; use degenerate_limit")
    estimates = _map(lambda j: diagonal_limit(M, j, window=window, tol=tol),
                     range(-1, J + 1), workers)
    beta = np.array([e.limit for e in estimates])
    inverse = ratio_inverse(report.orthonormal(), J)
    residual = float(np.max(np.abs(beta - inverse.beta)))
    symbol = LaurentSeries(beta, 1, inverse.rho)
    if residual > check_tol:
        raise CrossCheckFailed(f"diagonal limits and inverse map differ by {residual:.3e}")
    return SymbolEstimate(symbol, inverse, residual, estimates)


class DegenerateReport(NamedTuple):
    x: complex
    moments: list
    holds: bool
    subdiagonal: LimitEstimate
    diagonal: LimitEstimate


def degenerate_limit(M: HessenbergMatrix, window: int = DEFAULT_WINDOW,
                     tol: float = DEFAULT_TOL, jmax: int = 4) -> DegenerateReport:
    """When ``kappa_n/kappa_{n+1} -> 0``, weak limits collapse to ``delta_x`` with
    ``x = lim M_{n,n}``; checks ``(M**j)_{n+1,n+1} -> x**j`` for ``j <= jmax``.

    Raises
    ------
    NotDegenerate
        If the subdiagonal is not seen to tend to zero.
    """
    sub = diagonal_limit(M, -1, window=window, tol=tol)
    if not _vanishes(sub, 10 * tol):
        raise NotDegenerate(f"subdiagonal tends to {sub.limit:.3e}, not 0")
    diag = diagonal_limit(M, 0, window=window, tol=tol)
    x = diag.limit
    table = weak_moment_table(M, jmax)
    moments = [estimate_limit(table[:, j], start=0, window=window, tol=tol)
               for j in range(1, jmax + 1)]
    holds = diag.converged and all(
        e.converged and abs(e.limit - x ** j) < tol for j, e in enumerate(moments, 1))
    return DegenerateReport(x, moments, holds, sub, diag)


def zero_counting_moments(M: HessenbergMatrix, n: int, j: int, method: str = "trace") -> complex:
    """``(1/n) tr((pi_n M pi_n)**j)``, the ``j``-th moment of the zero counting
    measure of ``Phi_n``.  ``method='eig'`` averages eigenvalue powers instead."""
    if not 1 <= n <= M.size:
        raise IndexOutOfRange(f"n={n} outside 1..{M.size}")
    if j < 0:
        raise ValueError("j must be nonnegative")
    H = np.array(M.truncation(n))
    if method == "trace":
        return complex(np.trace(np.linalg.matrix_power(H, j)) / n)
    if method == "eig":
        return complex(np.mean(np.linalg.eigvals(H) ** j))
    raise ValueError(f"unknown method {method!r}")


def weakzero_bound_check(M: HessenbergMatrix, n: int, j: int, normbound: float
                         ) -> tuple[float, float]:
    """``(lhs, rhs)`` with ``lhs = |zero-counting moment - mean_{k<n} (M**j)_{k+1,k+1}|``
    and ``rhs = 2 j normbound / n``.

    Raises
    ------
    WindowExceeded
        If ``(M**j)_{n,n}`` is not determined by the section.
    """
    if n + j > M.size + 1:
        raise WindowExceeded(f"averages up to n={n} with j={j} need a section of size {n + j - 1}")
    zc = zero_counting_moments(M, n, j)
    avg = np.mean([full_power_diagonals(M, k, j)[j] for k in range(1, n + 1)])
    return float(abs(zc - avg)), 2.0 * j * normbound / n
