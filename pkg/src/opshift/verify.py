"""Identity suites run by ``opshift verify`` and by the acceptance tests.

Each suite returns a :class:`SuiteResult` holding the worst measured residual
and the threshold it was held to, so failures print something actionable.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .arnoldi import arnoldi
from .asymptotics import weakzero_bound_check
from .classical import (VerblunskySequence, bernstein_szego_weights, ggt_matrix,
                        szego_recursion)
from .hessenberg import (char_poly, lemma_repeat_check, random_excursion,
                         resolvent_corner)
from .measure import make_circle_arc


class SuiteResult(NamedTuple):
    name: str
    passed: bool
    residual: float
    threshold: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual {self.residual:.3e} (threshold {self.threshold:.1e}) {self.detail}".rstrip()


def circle_points(rng: np.random.Generator, radius: float, count: int = 10) -> np.ndarray:
    return radius * np.exp(2j * np.pi * rng.random(count))


def _rel(a, b) -> float:
    return float(abs(a - b) / max(abs(b), 1e-300))


def determinant_suite(M, basis, bound: float, rng, nmax: int = 15, points: int = 10,
                      threshold: float = 1e-9) -> SuiteResult:
    """``det(z - pi_n M pi_n)`` against the monic polynomial of the basis."""
    z = circle_points(rng, 2 * bound, points)
    worst = 0.0
    for n in range(1, min(nmax, M.size, basis.N) + 1):
        mono = np.polynomial.polynomial.polyval(z, basis.monic(n))
        worst = max(worst, max(_rel(char_poly(M, n, zi), mi) for zi, mi in zip(z, mono)))
    return SuiteResult("determinant identity", worst <= threshold, worst, threshold)


def resolvent_suite(M, bound: float, rng, nmax: int = 15, points: int = 10,
                 threshold: float = 1e-9) -> SuiteResult:
    """Resolvent corner against the ratio of consecutive determinants."""
    z = circle_points(rng, 2 * bound, points)
    worst = 0.0
    for n in range(1, min(nmax, M.size) + 1):
        for zi in z:
            ratio = char_poly(M, n - 1, zi) / char_poly(M, n, zi)
            worst = max(worst, _rel(resolvent_corner(M, n, zi), ratio))
    return SuiteResult("resolvent corner identity", worst <= threshold, worst, threshold)


def path_collapse_suite(M, rng, count: int = 200, threshold: float = 1e-12) -> SuiteResult:
    """Path products against their collapsed single-entry form."""
    worst = 0.0
    for _ in range(count):
        path = random_excursion(rng, M.size)
        product, collapsed = lemma_repeat_check(M, path)
        scale = max(abs(product), abs(collapsed), 1e-300)
        worst = max(worst, abs(product - collapsed) / scale if scale > 1e-300 else 0.0)
    return SuiteResult("path collapsing", worst <= threshold, worst, threshold, f"({count} paths)")


def bernstein_szego_grid(prefix: VerblunskySequence, L: int, N: int) -> int:
    """Trapezoid size resolving ``1/|phi_L|**2`` to round-off.

    The density has poles at the reflections of the zeros of ``Phi_L``; the
    trapezoid error decays like ``r**grid`` with ``r`` the largest zero modulus.
    """
    polys, _ = szego_recursion(prefix, L)
    r = float(np.max(np.abs(np.roots(polys[L][::-1])))) if L else 0.0
    need = 40 / -np.log(r) if 0 < r < 1 else 0
    grid = max(8 * (N + 1), int(np.ceil(need)))
    return min(1 << int(np.ceil(np.log2(grid))), 1 << 16)


def ggt_agreement_suite(alpha: VerblunskySequence, N: int, grid: int | None = None,
                        threshold: float = 1e-7) -> SuiteResult:
    """Circle matrix from the closed formula against node-value orthogonalisation
    of the density with the same first ``N//2`` coefficients."""
    L = max(1, N // 2)
    prefix = VerblunskySequence.from_values(alpha.values(L))
    grid = bernstein_szego_grid(prefix, L, N) if grid is None else grid
    q = make_circle_arc(bernstein_szego_weights(prefix, L, grid), grid - 1)
    _, M = arnoldi(q, N)
    G = ggt_matrix(prefix, N)
    err = float(np.max(np.abs(M.entries - G.entries)))
    return SuiteResult("closed-form circle matrix vs orthogonalisation", err <= threshold, err, threshold,
                       f"(N={N}, first {L} coefficients, grid {grid})")


def weakzero_suite(M, bound: float, nmax: int | None = None, jmax: int = 4) -> SuiteResult:
    """Zero-counting moments against running averages of weak moments."""
    nmax = M.size + 1 - jmax if nmax is None else nmax
    violations, worst = 0, 0.0
    for j in range(1, jmax + 1):
        for n in range(1, nmax + 1):
            lhs, rhs = weakzero_bound_check(M, n, j, bound)
            worst = max(worst, lhs / rhs)
            violations += lhs > rhs * (1 + 1e-12)
    return SuiteResult("zero-counting bound", violations == 0, worst, 1.0,
                       f"(lhs/rhs, {violations} violations, n <= {nmax}, j <= {jmax})")
