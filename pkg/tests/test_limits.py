import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opshift.errors import InsufficientData
from opshift.limits import estimate_limit, spread


def test_spread_is_max_pairwise_distance():
    assert spread([1, 3, 2]) == 2
    assert spread([1j, -1j]) == 2
    assert spread([5]) == 0


def test_constant_sequence():
    est = estimate_limit(np.full(30, 2 + 1j))
    assert est.converged and est.limit == 2 + 1j and est.residual == 0
    assert est.tail.size == est.window == 25


def test_algebraic_convergence_is_accelerated():
    n = np.arange(1, 201)
    vals = 1 - 1 / (2 * n) + 1 / (3 * n ** 2)
    raw = estimate_limit(vals, accelerate=False)
    acc = estimate_limit(vals)
    assert not raw.converged
    assert acc.converged and acc.method == "richardson"
    assert acc.limit == pytest.approx(1, abs=1e-8)


def test_half_power_expansion():
    n = np.arange(1, 301)
    est = estimate_limit(2 + 1 / np.sqrt(n) - 0.5 / n)
    assert est.converged and est.limit == pytest.approx(2, abs=1e-7)


def test_oscillation_not_converged():
    n = np.arange(1, 301)
    assert not estimate_limit(np.exp(1j * n ** 2)).converged
    assert not estimate_limit((-1.0) ** n).converged


def test_residual_vs_tol_defines_verdict():
    vals = np.r_[np.zeros(10), 1e-5 * np.arange(25) / 24]
    est = estimate_limit(vals, tol=1e-6, accelerate=False)
    assert est.residual == pytest.approx(1e-5) and not est.converged
    assert estimate_limit(vals, tol=2e-5, accelerate=False).converged


def test_too_short():
    with pytest.raises(InsufficientData):
        estimate_limit(np.ones(10), window=25)


def test_indices_follow_start():
    est = estimate_limit(np.ones(40), start=5)
    assert est.indices[0] == 5 + 40 - 25 and est.indices[-1] == 44


@settings(max_examples=40, deadline=None)
@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       st.sampled_from([1.0, 1.5, 2.0, 2.5, 3.0]))
def test_geometric_and_power_tails_recover_limit(limit, amp, power):
    n = np.arange(1, 201, dtype=float)
    est = estimate_limit(limit + amp * n ** -power + amp * 0.5 ** n, tol=1e-4)
    assert est.converged
    assert abs(est.limit - limit) < 1e-4


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=25, max_size=60))
def test_verdict_matches_residual(vals):
    est = estimate_limit(vals)
    assert est.converged == (est.residual < est.tol)
    assert est.residual <= spread(vals[-25:]) + 1e-12


def test_off_model_rate_converges_with_bias():
    # n**-1.25 is outside the integer/half-integer expansions: the tail still
    # settles, but the reported limit carries a visible bias
    n = np.arange(1, 201, dtype=float)
    est = estimate_limit(5 * n ** -1.25, tol=1e-4)
    assert est.converged
    assert 1e-6 < abs(est.limit) < 1e-3
