"""Acceptance suite: each test prints exactly one PASS/FAIL line.

The lines are also collected and repeated in the pytest terminal summary.
"""
import math

import numpy as np
import pytest

from opshift.arnoldi import arnoldi
from opshift.asymptotics import degenerate_limit, symbol_extract, weak_moment_sequence
from opshift.catalog import blaschke_trend, builtin_matrices, disk_measure, equivalence_verdicts
from opshift.classical import (JacobiArrays, VerblunskySequence, flip_ratio, flip_spectral,
                               ggt_matrix, khruschev_check, m_function)
from opshift.hessenberg import norm_bound, resolvent_corner
from opshift.laurent import (LaurentSeries, SeriesAtInfinity, b_matrix_power,
                             equilibrium_moments, joukowski, ratio_inverse)
from opshift.measure import CircleVerblunsky, JacobiLine, lebesgue_circle, make_disk_area
from opshift.verify import resolvent_suite, determinant_suite, path_collapse_suite, weakzero_suite

SWEEP_N = 15


def _sweep_measures():
    return {
        "disk area": make_disk_area(1.0, 2 * SWEEP_N + 1, unit_mass=True),
        "Lebesgue circle": lebesgue_circle(2 * SWEEP_N + 1),
        "free Jacobi": JacobiLine(JacobiArrays.free()),
        "random Verblunsky": CircleVerblunsky(VerblunskySequence("random", (11, 0.5))),
    }


@pytest.fixture(scope="module")
def builtins():
    return builtin_matrices()


def test_determinant_identity(record):
    rng = np.random.default_rng(1)
    worst, ok = 0.0, True
    for m in _sweep_measures().values():
        basis, M = arnoldi(m, SWEEP_N)
        res = determinant_suite(M, basis, norm_bound(M, m).bound, rng, nmax=SWEEP_N, threshold=1e-9)
        worst, ok = max(worst, res.residual), ok and res.passed
    assert record("determinant identity on four measures", ok, f"max relative error {worst:.2e} (tol 1e-9)")


def test_resolvent_ratio_identity(record):
    rng = np.random.default_rng(2)
    worst, ok = 0.0, True
    for m in _sweep_measures().values():
        _, M = arnoldi(m, SWEEP_N)
        res = resolvent_suite(M, norm_bound(M, m).bound, rng, nmax=SWEEP_N, threshold=1e-9)
        worst, ok = max(worst, res.residual), ok and res.passed
    assert record("resolvent corner equals determinant ratio", ok, f"max relative error {worst:.2e} (tol 1e-9)")


def test_path_collapsing(record):
    worst, ok = 0.0, True
    for seed in range(3):
        M = ggt_matrix(VerblunskySequence("random", (seed, 0.5)), 30)
        res = path_collapse_suite(M, np.random.default_rng(100 + seed), count=200, threshold=1e-12)
        worst, ok = max(worst, res.residual), ok and res.passed
    assert record("repeated-index path products collapse", ok,
                  f"max relative error {worst:.2e} over 3x200 paths (tol 1e-12)")


def test_ratio_vs_diagonal_equivalence(record, builtins):
    bad = []
    for name, M in builtins.items():
        ratio, scaled = equivalence_verdicts(M, J=6, window=25, tol=1e-6)
        if ratio != scaled:
            bad.append(f"{name}: ratio {ratio} vs scaled {scaled}")
    assert record("ratio and scaled-diagonal convergence verdicts agree (j <= 6)", not bad,
                  "; ".join(bad) or f"{len(builtins)} examples")


def test_symbol_extraction(record):
    M = arnoldi(JacobiLine(JacobiArrays.free()), 80)[1]
    s = symbol_extract(M, 6)
    expected = np.array([1, 0, 1, 0, 0, 0, 0, 0])
    err_j = float(np.max(np.abs(s.symbol.beta[:8] - expected)))
    D = arnoldi(disk_measure(60), 60)[1]
    d = symbol_extract(D, 6)
    err_d = float(np.max(np.abs(d.symbol.beta[:8] - np.eye(8)[0])))
    ok = err_j < 1e-6 and s.residual <= 1e-6 and err_d < 1e-6 and d.residual <= 1e-6
    assert record("symbol of free Jacobi and disk", ok,
                  f"Jacobi error {err_j:.1e} residual {s.residual:.1e}; disk error {err_d:.1e} "
                  f"residual {d.residual:.1e} (tol 1e-6)")


def test_weak_moments_equal_equilibrium(record):
    M = arnoldi(JacobiLine(JacobiArrays.free()), 80)[1]
    psi = joukowski(1.0)
    got = [weak_moment_sequence(M, j).limit for j in range(1, 7)]
    want = [equilibrium_moments(psi, j) for j in range(1, 7)]
    err = max(abs(a - b) for a, b in zip(got, want))
    ok = err <= 1e-6 and np.allclose(want, [0, 2, 0, 6, 0, 20])
    assert record("free Jacobi weak moments equal equilibrium moments", ok,
                  f"max error {err:.1e} (tol 1e-6)")


def test_alpha_to_one_degenerate_limit(record):
    M = arnoldi(CircleVerblunsky(VerblunskySequence("alpha_to_one")), 400)[1]
    rep = degenerate_limit(M, tol=1e-4, jmax=4)
    err = max([abs(rep.x + 1)] + [abs(e.limit - (-1) ** j) for j, e in enumerate(rep.moments, 1)])
    assert record("alpha_n -> 1 gives point mass at -1", rep.holds and err <= 1e-4,
                  f"x = {rep.x.real:.6f}, max moment error {err:.1e} (tol 1e-4)")


def test_zero_counting_bound(record):
    violations, worst = 0, 0.0
    for m in (JacobiLine(JacobiArrays.free()),
              CircleVerblunsky(VerblunskySequence("random", (5, 0.5)))):
        M = arnoldi(m, 103)[1]
        res = weakzero_suite(M, norm_bound(M, m).bound, nmax=100, jmax=4)
        violations += 0 if res.passed else 1
        worst = max(worst, res.residual)
    assert record("zero-counting moments within 2j|M|/n of weak averages", violations == 0,
                  f"max lhs/rhs {worst:.3f}, n <= 100, j <= 4")


def test_decaying_coefficients_moments_vanish(record):
    alpha = VerblunskySequence("decay")
    verdict = khruschev_check(alpha, 4, N=300)
    M = ggt_matrix(alpha, 300)
    worst = max(abs(weak_moment_sequence(M, j).limit) for j in range(1, 5))
    assert record("alpha_n = 1/(n+2) passes the product test and moments vanish",
                  verdict.passed and worst < 1e-3, f"max |moment| {worst:.1e} (tol 1e-3)")


def test_free_jacobi_ratio_at_three(record):
    M = arnoldi(JacobiLine(JacobiArrays.free()), 90)[1]
    target = (3 - math.sqrt(5)) / 2
    err = max(abs(resolvent_corner(M, n, 3.0) - target) for n in range(60, 91))
    assert record("free Jacobi ratio at z=3 reaches (3-sqrt 5)/2 by n=60", err <= 1e-6,
                  f"max error over n=60..90 {err:.1e} (tol 1e-6)")


def test_flip_spectral_contract(record):
    nu = flip_spectral(VerblunskySequence.constant(0.0), 4)
    roots = np.exp(1j * np.pi * (2 * np.arange(4) + 1) / 4)
    dev_atoms = max(min(abs(roots - a)) for a in nu.atoms)
    dev = max(dev_atoms, float(np.max(np.abs(nu.weights - 0.25))), 4 - len(nu.atoms))
    rng = np.random.default_rng(3)
    sources = {"circle": VerblunskySequence.constant(0.0), "free_jacobi": JacobiArrays.free(),
               "alpha_to_one": VerblunskySequence("alpha_to_one"),
               "oscillatory": VerblunskySequence("oscillatory"),
               "random": VerblunskySequence("random", (4, 0.5))}
    worst = 0.0
    for src in sources.values():
        radius = 2 * (src.bound if isinstance(src, JacobiArrays) else 1.0)
        for n in range(1, 31):
            nu_n = flip_spectral(src, n)
            z = radius * np.exp(2j * np.pi * rng.random(10))
            for zi in z:
                worst = max(worst, abs(flip_ratio(src, n, zi) - m_function(nu_n, zi)))
    ok = dev <= 1e-10 and worst <= 1e-8
    assert record("flipped spectral measure and its m-function", ok,
                  f"roots-of--1 deviation {dev:.1e} (tol 1e-10), ratio vs m-function {worst:.1e} (tol 1e-8)")


def test_blaschke_atoms_trend(record):
    trend = blaschke_trend(Ns=(20, 80), js=(1,))
    a, b = trend[20][0], trend[80][0]
    assert record("circle plus Blaschke atoms: |weak moment 1| decreases from N=20 to N=80",
                  b < a, f"{a:.4e} -> {b:.4e}")


def _lagrange_oracle(beta, count):
    """``f_j = [t**(j-1)] R(t)**j / j`` with ``R(t) = beta_{-1} + beta_0 t + ...``."""
    R = np.asarray(beta, dtype=complex)
    f, power = [], np.array([1.0 + 0j])
    for j in range(1, count + 1):
        power = np.convolve(power, R)[:count]
        f.append(power[j - 1] / j if j - 1 < power.size else 0j)
    return np.array(f)


def _conformal_symbol(rng, K):
    """Random ``beta_{-1}, ..., beta_K`` obeying the area inequality
    ``sum k |beta_k|**2 <= beta_{-1}**2 / 2``, as exterior conformal maps do.

    Without it the inversion is ill-conditioned: a one-ulp change in ``f``
    can move ``beta`` by more than 1e-8.
    """
    lead = 0.5 + 1.5 * rng.random()
    tail = (rng.standard_normal(K) + 1j * rng.standard_normal(K)) * 0.5 ** np.arange(1, K + 1)
    area = np.sum(np.arange(1, K + 1) * np.abs(tail) ** 2)
    tail *= min(1.0, lead / np.sqrt(2 * area))
    const = rng.standard_normal() + 1j * rng.standard_normal()
    return np.concatenate([[lead, const], tail])


def test_ratio_inverse_round_trip(record):
    rng = np.random.default_rng(2024)
    K = 8
    worst_inv, worst_b = 0.0, 0.0
    for _ in range(100):
        beta = _conformal_symbol(rng, K)
        f = _lagrange_oracle(beta, K + 2)
        g = ratio_inverse(SeriesAtInfinity(f), K)
        worst_inv = max(worst_inv, float(np.max(np.abs(g.beta - beta))) / max(1.0, np.max(np.abs(beta))))
        g_true = LaurentSeries(beta, 1)
        for k in range(7):
            err = abs(b_matrix_power(g_true, k) - f[k] / f[0]) / max(1.0, abs(f[k] / f[0]))
            worst_b = max(worst_b, err)
    ok = worst_inv <= 1e-9 and worst_b <= 1e-9
    assert record("series inversion round trip and Toeplitz powers", ok,
                  f"recovery {worst_inv:.1e}, power mismatch {worst_b:.1e} over 100 series (tol 1e-9)")
