import numpy as np
import pytest

from opshift.arnoldi import arnoldi
from opshift.asymptotics import (degenerate_limit, ratio_series, symbol_extract, thread_count,
                                 weak_moment_sequence, weak_moment_table, weakzero_bound_check,
                                 zero_counting_moments)
from opshift.catalog import JOUKOWSKI_SYMBOL, joukowski_measure
from opshift.classical import JacobiArrays, VerblunskySequence, ggt_matrix
from opshift.errors import DegenerateKappa, InsufficientDepth, NotDegenerate, WindowExceeded
from opshift.hessenberg import full_power_diagonal
from opshift.laurent import equilibrium_moments
from opshift.measure import JacobiLine, make_disk_area


@pytest.fixture(scope="module")
def free():
    return arnoldi(JacobiLine(JacobiArrays.free()), 80)[1]


@pytest.fixture(scope="module")
def alpha_one():
    return ggt_matrix(VerblunskySequence("alpha_to_one"), 400)


def test_ratio_series_catalan(free):
    r = ratio_series(free, 8)
    assert all(r.converged)
    np.testing.assert_allclose(r.f_est.coeffs, [1, 0, 1, 0, 2, 0, 5, 0, 14], atol=1e-10)
    assert r.posinf and r.kappa_ratio.limit == pytest.approx(1)


def test_ratio_series_depth():
    M = arnoldi(JacobiLine(JacobiArrays.free()), 20)[1]
    with pytest.raises(InsufficientDepth):
        ratio_series(M, 8)


def test_workers_do_not_change_results(free):
    a = symbol_extract(free, 6, workers=1)
    b = symbol_extract(free, 6, workers=4)
    np.testing.assert_array_equal(a.symbol.coeffs, b.symbol.coeffs)


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("OPSHIFT_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("OPSHIFT_THREADS", "junk")
    assert thread_count() == 1


def test_weak_moment_table_matches_powers(free):
    T = weak_moment_table(free, 3)
    assert T.shape == (free.size - 2, 4)
    for n in (0, 5, 40):
        for j in range(4):
            assert T[n, j] == full_power_diagonal(free, n + 1, j)
    with pytest.raises(WindowExceeded):
        weak_moment_table(free, free.size + 1)


def test_symbol_of_disk_is_identity():
    M = arnoldi(make_disk_area(1.0, 121, unit_mass=True), 60)[1]
    s = symbol_extract(M, 5)
    np.testing.assert_allclose(s.symbol.beta, np.eye(7)[0], atol=1e-6)
    assert s.converged


def test_joukowski_image_symbol_and_moments():
    M = arnoldi(joukowski_measure(60), 60, strict=False)[1]
    s = symbol_extract(M, 4)
    np.testing.assert_allclose(s.symbol.beta, JOUKOWSKI_SYMBOL.beta[:6], atol=1e-6)
    for j in (1, 2, 4):
        assert weak_moment_sequence(M, j).limit == pytest.approx(
            equilibrium_moments(JOUKOWSKI_SYMBOL, j), abs=1e-6)


def test_degenerate_case(alpha_one):
    with pytest.raises(DegenerateKappa):
        symbol_extract(alpha_one, 4, tol=1e-4)
    rep = degenerate_limit(alpha_one, tol=1e-4)
    assert rep.holds and rep.x == pytest.approx(-1, abs=1e-4)


def test_not_degenerate(free):
    with pytest.raises(NotDegenerate):
        degenerate_limit(free)


def test_zero_counting_trace_vs_eigenvalues(free):
    for n in (3, 10, 25):
        for j in (1, 2, 3):
            a = zero_counting_moments(free, n, j)
            b = zero_counting_moments(free, n, j, method="eig")
            assert a == pytest.approx(b, abs=1e-10)
    # zeros of the degree-2 free Jacobi polynomial are +-1
    assert zero_counting_moments(free, 2, 2) == pytest.approx(1)


def test_weakzero_bound(free):
    for n in (5, 30, 70):
        for j in (1, 2, 4):
            lhs, rhs = weakzero_bound_check(free, n, j, 2.0)
            assert lhs <= rhs
    with pytest.raises(WindowExceeded):
        weakzero_bound_check(free, free.size, 3, 2.0)
