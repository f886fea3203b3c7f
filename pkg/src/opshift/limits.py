"""Finite-sample limit detection for sequences indexed by degree.

A sequence is declared convergent when its last ``window`` values agree to
within ``tol`` (a Cauchy test).  Two versions of the tail are tested: the raw
values, and the values of an extrapolated-limit sequence obtained by fitting an
asymptotic expansion in inverse powers of ``n`` over ``[n/4, n]`` for each
endpoint ``n`` in the tail.  The smaller of the two residuals decides the
verdict, so algebraically convergent sequences (``1 - 1/(2n) + ...``) are
recognised at desk-scale depth while oscillating sequences are not.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientData

DEFAULT_WINDOW = 25
DEFAULT_TOL = 1e-6

# highest power kept in each asymptotic model
_MAX_TERMS = 6


@dataclass(frozen=True)
class LimitEstimate:
    """Convergence verdict for the tail of a sequence.

    ``tail`` holds the raw last-window values and ``residual`` the largest
    pairwise distance among whichever tail (raw or extrapolated) was tighter;
    ``method`` records which one.
    """

    tail: np.ndarray
    converged: bool
    limit: complex
    residual: float
    window: int
    tol: float
    method: str = "raw"
    indices: np.ndarray = field(default=None, repr=False)

    def as_row(self, label) -> tuple:
        return (label, int(self.converged), self.limit.real, self.limit.imag,
                self.residual, self.window, self.tol)


def spread(values) -> float:
    """Largest pairwise distance within ``values``."""
    v = np.asarray(values, dtype=complex)
    if v.size < 2:
        return 0.0
    return float(np.max(np.abs(v[:, None] - v[None, :])))


def _design(n, n_end, basis, terms):
    if basis == "integer":
        u = n_end / n
    else:
        u = np.sqrt(n_end / n)
    return np.vander(u, terms + 1, increasing=True)


def _fit(values, ns, n_end, basis, terms):
    lo = max(ns[0], int(np.ceil(n_end / 4)))
    sel = (ns >= lo) & (ns <= n_end)
    A = _design(ns[sel].astype(float), float(n_end), basis, terms)
    coef, *_ = np.linalg.lstsq(A, values[sel], rcond=None)
    resid = A @ coef - values[sel]
    return coef[0], float(np.linalg.norm(resid))


def _accelerated_tail(values, ns, window):
    """Extrapolated limits for each of the last ``window`` endpoints."""
    first_end = ns[-window]
    npts = int(first_end - max(ns[0], np.ceil(first_end / 4))) + 1
    terms = min(_MAX_TERMS, npts // 2 - 1)
    if terms < 1:
        return None
    # choose the expansion once, at the last endpoint, so the tail stays smooth
    scores = {b: _fit(values, ns, ns[-1], b, terms)[1] for b in ("integer", "half")}
    basis = min(scores, key=scores.get)
    return np.array([_fit(values, ns, ns[k], basis, terms)[0]
                     for k in range(len(ns) - window, len(ns))])


def estimate_limit(values, start: int = 1, window: int = DEFAULT_WINDOW,
                   tol: float = DEFAULT_TOL, accelerate: bool = True) -> LimitEstimate:
    """Estimate the limit of ``values[k] = s(start + k)``.

    Raises
    ------
    InsufficientData
        If fewer than ``window`` values are supplied.
    """
    values = np.asarray(values, dtype=complex)
    if window < 2 or values.size < window:
        raise InsufficientData(
            f"need at least {max(window, 2)} samples, got {values.size}")
    ns = np.arange(start, start + values.size)
    tail = values[-window:]
    raw = spread(tail)
    best = (raw, complex(tail[-1]), "raw")
    if accelerate and np.all(np.isfinite(values)):
        acc = _accelerated_tail(values, ns, window)
        if acc is not None and np.all(np.isfinite(acc)):
            r = spread(acc)
            if r < raw:
                best = (r, complex(acc[-1]), "richardson")
    residual, limit, method = best
    return LimitEstimate(tail=tail.copy(), converged=bool(residual < tol),
                         limit=limit, residual=residual, window=window, tol=tol,
                         method=method, indices=ns[-window:])
