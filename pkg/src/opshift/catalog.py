"""Built-in worked examples with stored expected values.

Each example builds its measure, runs the pipelines that characterise it and
compares against expected values.  Every expectation carries a provenance
note saying where the number comes from (a closed form, a hand computation or
a classical fact), plus the tolerance it is held to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .arnoldi import arnoldi
from .asymptotics import (degenerate_limit, ratio_series, symbol_extract,
                          weak_moment_sequence, zero_counting_moments)
from .classical import JacobiArrays, VerblunskySequence
from .hessenberg import (diagonal_limit, full_power_diagonal, resolvent_corner)
from .laurent import LaurentSeries, equilibrium_moments, joukowski
from .measure import (CircleVerblunsky, JacobiLine, add_point_masses, lebesgue_circle,
                      make_annulus_area, make_disk_area, push_forward)

CATALOG_NAMES = ("disk", "circle", "free_jacobi", "alpha_to_one", "oscillatory",
                 "joukowski", "blaschke_atoms")

CATALAN = (1, 0, 1, 0, 2, 0, 5, 0, 14)
GOLDEN_RATIO_AT_3 = (3 - math.sqrt(5)) / 2


@dataclass(frozen=True)
class Check:
    quantity: str
    expected: object
    measured: object
    tol: float
    provenance: str

    @property
    def passed(self) -> bool:
        if isinstance(self.expected, bool):
            return bool(self.measured) == self.expected
        return abs(complex(self.measured) - complex(self.expected)) <= self.tol

    def row(self) -> tuple:
        return (self.quantity, _fmt(self.expected), _fmt(self.measured), self.tol,
                "pass" if self.passed else "FAIL", self.provenance)


def _fmt(v):
    if isinstance(v, bool):
        return str(v)
    c = complex(v)
    return f"{c.real:.12g}" if c.imag == 0 else f"{c.real:.12g}{c.imag:+.12g}j"


@dataclass
class ExampleReport:
    name: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *args):
        self.checks.append(Check(*args))


# measures -----------------------------------------------------------------------

def disk_measure(N: int):
    return make_disk_area(1.0, 2 * N + 1, unit_mass=True)


def joukowski_measure(N: int):
    """Area on ``1 < |w| < 2`` pushed forward by ``w + 1/(4w)``.

    The outer boundary maps to an ellipse whose exterior map is
    ``2w + 1/(8w)``; the extra angular resolution keeps the Riemann sums of
    the pushed-forward moments at round-off level.
    """
    annulus = make_annulus_area(1.0, 2.0, 2 * N + 41, unit_mass=True)
    return push_forward(annulus, joukowski(0.25))


JOUKOWSKI_SYMBOL = LaurentSeries.from_terms(2.0, [0.0, 0.125], rho=0.25, order=8)


def blaschke_measure(N: int, atoms: int = 20):
    """Normalised arc length plus masses ``2**-k`` at ``1 + 2**-k``, ``k = 1..atoms``."""
    masses = [(1 + 2.0 ** -k, 2.0 ** -k) for k in range(1, atoms + 1)]
    return add_point_masses(lebesgue_circle(2 * N + 1), masses)


# examples -----------------------------------------------------------------------

def _disk(rep: ExampleReport):
    N = 60
    _, M = arnoldi(disk_measure(N), N)
    for k in (1, 5, 10):
        rep.add(f"M[{k + 1},{k}]", math.sqrt(k / (k + 1)), M.entry(k + 1, k).real, 1e-12,
                "closed form: z phi_{k-1} = sqrt(k/(k+1)) phi_k for area on the disk")
    sym = symbol_extract(M, 6)
    for k, b in enumerate(sym.symbol.beta[:8], -1):
        rep.add(f"beta_{k}", 1.0 if k == -1 else 0.0, b, 1e-6, "derived: weighted shift tends to the shift")
    for j in (1, 2, 3):
        rep.add(f"weak moment j={j}", 0.0, weak_moment_sequence(M, j).limit, 1e-6,
                "derived: (M^j)_{n,n} vanishes for a weighted shift")
    rep.add("zero-counting moment n=10 j=1", 0.0, zero_counting_moments(M, 10, 1), 1e-12,
            "derived: Phi_n = z^n has all zeros at 0")


def _circle(rep: ExampleReport):
    M = arnoldi(CircleVerblunsky(VerblunskySequence.constant(0.0)), 60)[1]
    r = ratio_series(M, 6)
    for j, a in enumerate(r.f_est.coeffs, 1):
        rep.add(f"f_{j}", 1.0 if j == 1 else 0.0, a, 1e-12, "trivial: Phi_n = z^n")
    sym = symbol_extract(M, 6)
    rep.add("beta_-1", 1.0, sym.symbol.coef(-1), 1e-12, "trivial: M is the shift")
    rep.add("diagonal -1 converged", True, diagonal_limit(M, -1).converged, 0, "trivial")
    rep.add("weak moment j=1", 0.0, weak_moment_sequence(M, 1).limit, 1e-12, "trivial")


def _free_jacobi(rep: ExampleReport):
    M = arnoldi(JacobiLine(JacobiArrays.free()), 80)[1]
    r = ratio_series(M, 8)
    for j, (a, c) in enumerate(zip(r.f_est.coeffs, CATALAN), 1):
        rep.add(f"f_{j}", float(c), a, 1e-6, "classical: Catalan numbers, moments of the semicircle")
    sym = symbol_extract(M, 6)
    expected = {-1: 1.0, 0: 0.0, 1: 1.0}
    for k in range(-1, 7):
        rep.add(f"beta_{k}", expected.get(k, 0.0), sym.symbol.coef(k), 1e-6,
                "derived: diagonal limits of the free Jacobi matrix")
    rep.add("symbol cross-check residual", 0.0, sym.residual, 1e-6, "derived: inverse map of the ratio limit")
    psi = joukowski(1.0)
    for j in range(1, 7):
        rep.add(f"weak moment j={j}", equilibrium_moments(psi, j), weak_moment_sequence(M, j).limit,
                1e-6, "classical: arcsine moments 0, 2, 0, 6, 0, 20")
    rep.add("resolvent corner n=60 z=3", GOLDEN_RATIO_AT_3, resolvent_corner(M, 60, 3.0), 1e-6,
            "classical: 2/(z + sqrt(z^2 - 4)) at z = 3")


def _alpha_to_one(rep: ExampleReport):
    M = arnoldi(CircleVerblunsky(VerblunskySequence("alpha_to_one")), 400)[1]
    tol = 1e-4
    for j in range(0, 4):
        est = diagonal_limit(M, j, scaled=True, tol=tol)
        rep.add(f"scaled diagonal j={j}", -1.0 if j == 0 else 0.0, est.limit, tol,
                "known: alpha_n -> 1 collapses the scaled diagonals to -1, 0, 0, ...")
    deg = degenerate_limit(M, tol=tol)
    rep.add("x", -1.0, deg.x, tol, "known: weak limits are the point mass at -1")
    for j, est in enumerate(deg.moments, 1):
        rep.add(f"weak moment j={j}", (-1.0) ** j, est.limit, tol, "known: moments (-1)^j")


def _oscillatory(rep: ExampleReport):
    M = arnoldi(CircleVerblunsky(VerblunskySequence("oscillatory")), 400)[1]
    est = diagonal_limit(M, 0, window=50, tol=1e-3)
    rep.add("diagonal 0 converged", False, est.converged, 0,
            "known: M_{n,n} = -conj(alpha_{n-1}) alpha_{n-2} keeps rotating")
    rep.add("subdiagonal -> 0", 0.0, diagonal_limit(M, -1, tol=1e-4).limit, 1e-4,
            "derived: rho_n = sqrt(1 - |alpha_n|^2) -> 0")


def _joukowski(rep: ExampleReport):
    N = 60
    M = arnoldi(joukowski_measure(N), N, strict=False)[1]
    sym = symbol_extract(M, 6)
    for k in range(-1, 7):
        rep.add(f"beta_{k}", JOUKOWSKI_SYMBOL.coef(k), sym.symbol.coef(k), 1e-6,
                "derived: exterior map of the outer image ellipse, 2w + 1/(8w)")
    for j in range(1, 5):
        rep.add(f"weak moment j={j}", equilibrium_moments(JOUKOWSKI_SYMBOL, j),
                weak_moment_sequence(M, j).limit, 1e-6,
                "derived: constant coefficient of (2w + 1/(8w))^j")


def blaschke_trend(Ns=(20, 40, 80), js=(1, 2, 3)) -> dict:
    """``|(M**j)_{N+1,N+1}|`` for each depth ``N``."""
    out = {}
    for N in Ns:
        _, M = arnoldi(blaschke_measure(N + max(js)), N + max(js))
        out[N] = [abs(full_power_diagonal(M, N + 1, j)) for j in js]
    return out


def _blaschke(rep: ExampleReport):
    trend = blaschke_trend()
    Ns = sorted(trend)
    for i, j in enumerate((1, 2, 3)):
        vals = [trend[N][i] for N in Ns]
        dec = all(b < a for a, b in zip(vals, vals[1:]))
        rep.add(f"|weak moment j={j}| decreasing over N={Ns}", True, dec, 0,
                "trend only: the vanishing limit needs infinitely many atoms")


_RUNNERS: dict[str, Callable[[ExampleReport], None]] = {
    "disk": _disk, "circle": _circle, "free_jacobi": _free_jacobi,
    "alpha_to_one": _alpha_to_one, "oscillatory": _oscillatory,
    "joukowski": _joukowski, "blaschke_atoms": _blaschke,
}


def run_example(name: str) -> ExampleReport:
    if name not in _RUNNERS:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    rep = ExampleReport(name)
    _RUNNERS[name](rep)
    return rep


def builtin_matrices(depth: int = 400):
    """Hessenberg sections of every built-in example, keyed by name."""
    return {
        "disk": arnoldi(disk_measure(60), 60)[1],
        "circle": arnoldi(CircleVerblunsky(VerblunskySequence.constant(0.0)), 60)[1],
        "free_jacobi": arnoldi(JacobiLine(JacobiArrays.free()), 80)[1],
        "alpha_to_one": arnoldi(CircleVerblunsky(VerblunskySequence("alpha_to_one")), depth)[1],
        "oscillatory": arnoldi(CircleVerblunsky(VerblunskySequence("oscillatory")), depth)[1],
        "joukowski": arnoldi(joukowski_measure(60), 60, strict=False)[1],
        "blaschke_atoms": arnoldi(blaschke_measure(80), 80)[1],
    }


def equivalence_verdicts(M, J: int = 6, window: int = 25, tol: float = 1e-6):
    """Cumulative convergence verdicts for ``j = 0..J``.

    ``ratio[j]``: the ratio coefficients ``A_1..A_{j+1}`` all converge;
    ``scaled[j]``: the scaled diagonals ``0..j`` all converge.  The two
    conditions are equivalent term by term, so the lists should be equal.
    """
    r = ratio_series(M, J + 1, window, tol)
    ratio = np.logical_and.accumulate([e.converged for e in r.estimates[1:]])
    scaled = np.logical_and.accumulate(
        [diagonal_limit(M, j, scaled=True, window=window, tol=tol).converged for j in range(J + 1)])
    return [bool(x) for x in ratio], [bool(x) for x in scaled]
