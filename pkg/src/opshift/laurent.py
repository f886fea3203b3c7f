"""Truncated Laurent series at infinity.

A :class:`LaurentSeries` stores coefficients of ``w**top, w**(top-1), ...``
down to ``w**(-order)``; everything past ``order`` is zero by definition, so a
series is really a Laurent polynomial whose truncation order is always carried
explicitly.  Public constructors produce ``top == 1`` (conformal-map shape
``c_{-1} w + c_0 + c_1/w + ...``); powers of such maps have larger ``top``.

Series in ``1/z`` with no constant term, such as limits of ratios of monic
polynomials, are :class:`SeriesAtInfinity`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (CrossCheckFailed, DomainTooSmall, OutsideDomain,
                     ZeroLeadingCoefficient)

DEFAULT_ORDER = 8


@dataclass(frozen=True)
class LaurentSeries:
    coeffs: np.ndarray
    top: int = 1
    rho: float = 0.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < self.top + 1:
            raise ValueError("coefficient array must reach the w**0 term")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_terms(cls, lead, tail=(), rho=0.0, order=None):
        """Build ``lead*w + tail[0] + tail[1]/w + ...`` padded to ``order``."""
        tail = list(tail) or [0.0]
        if order is not None:
            if order + 1 < len(tail):
                raise ValueError("order shorter than supplied coefficients")
            tail = tail + [0.0] * (order + 1 - len(tail))
        return cls(np.array([lead] + tail, dtype=complex), 1, rho)

    @classmethod
    def constant(cls, value=1.0, order=DEFAULT_ORDER):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c, 0, 0.0)

    @property
    def order(self) -> int:
        """Most negative power kept, ``K``."""
        return self.coeffs.size - self.top - 1

    def coef(self, k: int) -> complex:
        """Coefficient of ``w**(-k)``; ``coef(-1)`` is the linear coefficient."""
        i = self.top + k
        if i < 0 or i >= self.coeffs.size:
            return 0j
        return complex(self.coeffs[i])

    @property
    def beta(self) -> np.ndarray:
        """``[c_{-1}, c_0, ..., c_K]`` for the conformal-map shape."""
        return np.array([self.coef(k) for k in range(-1, self.order + 1)])

    def nonzero_order(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return 0 if nz.size == 0 else max(int(nz[-1]) - self.top, 0)

    def __call__(self, w):
        return laurent_eval(self, w)


@dataclass(frozen=True)
class SeriesAtInfinity:
    """``f(z) = sum_{j>=1} f_j z**(-j)``; ``coeffs[0]`` is ``f_1``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        t = 1.0 / z
        acc = np.zeros_like(t)
        for c in self.coeffs[::-1]:
            acc = (acc + c) * t
        return acc

    def scaled(self, factor) -> "SeriesAtInfinity":
        return SeriesAtInfinity(self.coeffs * factor)


def laurent_eval(s: LaurentSeries, w):
    """Evaluate ``s`` at ``w`` (scalar or array); requires ``|w| >= rho``."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) < s.rho * (1 - 1e-12)):
        raise OutsideDomain(f"|w| below the series radius {s.rho}")
    if np.any(w == 0) and s.order > 0 and np.any(s.coeffs[s.top + 1:]):
        raise OutsideDomain("w = 0 is a pole of the series")
    out = np.zeros_like(w)
    # positive powers, w**top .. w**1
    for c in s.coeffs[:s.top]:
        out = (out + c) * w
    out = out + s.coeffs[s.top]
    neg = s.coeffs[s.top + 1:]
    if neg.size:
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(w == 0, 0, 1.0 / np.where(w == 0, 1, w))
        acc = np.zeros_like(w)
        for c in neg[::-1]:
            acc = (acc + c) * t
        out = out + acc
    return out[()] if out.ndim == 0 else out


def laurent_multiply(a: LaurentSeries, b: LaurentSeries, order: int | None = None
                     ) -> LaurentSeries:
    """Cauchy product, keeping powers down to ``w**(-order)``.

    ``order`` defaults to ``min(a.order, b.order)``.
    """
    if order is None:
        order = min(a.order, b.order)
    top = a.top + b.top
    full = np.convolve(a.coeffs, b.coeffs)
    keep = top + order + 1
    if full.size < keep:
        full = np.concatenate([full, np.zeros(keep - full.size, dtype=complex)])
    return LaurentSeries(full[:keep], top, max(a.rho, b.rho))


def laurent_affine(s: LaurentSeries, a, b) -> LaurentSeries:
    """``a*s + b``."""
    c = np.array(s.coeffs) * a
    c[s.top] += b
    return LaurentSeries(c, s.top, s.rho)


def joukowski(c: float, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """``w + c/w``; its critical points sit on ``|w| = sqrt(|c|)``."""
    return LaurentSeries.from_terms(1.0, [0.0, c], rho=float(np.sqrt(abs(c))),
                                    order=max(order, 1))


def linear_map(a: float, b: complex = 0.0, order: int = DEFAULT_ORDER) -> LaurentSeries:
    if not a > 0:
        raise ValueError("linear coefficient must be positive")
    return LaurentSeries.from_terms(a, [b], rho=0.0, order=order)


# -- power series helpers (arrays indexed by power of t, truncated to n terms)

def _ps_mul(a, b, n):
    return np.convolve(a[:n], b[:n])[:n]


def _ps_inv(a, n):
    """Reciprocal of a power series with nonzero constant term."""
    out = np.zeros(n, dtype=complex)
    out[0] = 1.0 / a[0]
    for k in range(1, n):
        m = min(k, a.size - 1)
        out[k] = -np.dot(a[1:m + 1], out[k - 1::-1][:m]) / a[0]
    return out


def _ps_compose(p, q, n):
    """``p(q(t))`` for a polynomial ``p`` and series ``q`` with ``q(0) = 0``."""
    acc = np.zeros(n, dtype=complex)
    for c in p[::-1]:
        acc = _ps_mul(acc, q, n)
        acc[0] += c
    return acc


def _reversion(p, n):
    """Compositional inverse of ``p(s) = p[1] s + p[2] s**2 + ...`` mod ``t**n``.

    Newton iteration on ``p(q) - t = 0`` starting from ``q = t/p[1]``; each
    sweep doubles the number of correct coefficients.
    """
    dp = p[1:] * np.arange(1, p.size)
    q = np.zeros(n, dtype=complex)
    q[1] = 1.0 / p[1]
    prec = 2
    while prec < n:
        prec = min(2 * prec, n)
        resid = _ps_compose(p, q, prec)
        resid[1] -= 1.0
        slope = _ps_compose(dp, q, prec)
        q[:prec] = q[:prec] - _ps_mul(resid, _ps_inv(slope, prec), prec)
    return q


def ratio_inverse(f: SeriesAtInfinity, order: int) -> LaurentSeries:
    """Solve ``1/f(g(z)) = z`` for ``g = b_{-1} z + b_0 + b_1/z + ... + b_K/z**K``.

    With ``t = 1/z`` and ``P(s) = sum f_j s**j`` the solution is
    ``g(z) = 1/Q(1/z)`` where ``Q`` reverts ``P``.  Needs ``f_1..f_{K+2}``.

    The returned radius is the largest critical point of ``g`` (a heuristic
    stand-in for the univalence radius).
    """
    fc = np.asarray(f.coeffs, dtype=complex)
    if fc.size == 0 or abs(fc[0]) <= 1e-14 * max(1.0, float(np.max(np.abs(fc)))):
        raise ZeroLeadingCoefficient("f_1 must be nonzero")
    need = order + 2
    if fc.size < need:
        raise ValueError(f"order {order} needs {need} coefficients of f, got {fc.size}")
    p = np.concatenate([[0.0], fc[:need]])
    q = _reversion(p, need + 1)
    # 1/Q(t) = (1/t) * R(t) with R = 1/(q1 + q2 t + ...)
    r = _ps_inv(q[1:], need)
    beta = r[:order + 2]
    # critical points of g: roots of b_{-1} z**(K+1) - sum k b_k z**(K-k)
    poly = np.concatenate([[beta[0], 0.0], -np.arange(1, order + 1) * beta[2:]])
    roots = np.roots(poly) if order > 0 and np.any(poly[2:]) else np.zeros(0)
    rho = float(np.max(np.abs(roots))) if roots.size else 0.0
    return LaurentSeries(beta, 1, rho)


def b_matrix_power(g: LaurentSeries, k: int) -> complex:
    """``(B**k)[1,1]`` for the Toeplitz-like matrix ``B[i,j] = beta_{i-j}``.

    Computed by the vector recursion ``c <- B c`` from ``c = e_1`` on the
    ``k``-dimensional window that can still return to the first row.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1 + 0j
    if g.order < k - 1:
        raise ValueError(f"need beta through index {k - 1}, series has order {g.order}")
    size = k
    B = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(size):
            if i - j >= -1:
                B[i, j] = g.coef(i - j)
    c = np.zeros(size, dtype=complex)
    c[0] = 1.0
    for _ in range(k):
        c = B @ c
    return complex(c[0])


def equilibrium_moments(psi: LaurentSeries, j: int, check: bool = True) -> complex:
    """Constant coefficient of ``psi**j``, i.e. the ``j``-th moment of the
    push-forward of ``d theta/2pi`` under ``psi`` restricted to ``|w| = 1``.

    With ``check`` the value is compared with a trapezoid average of
    ``psi(e^{i theta})**j`` on an alias-free grid of at least ``4(j+1)`` points.
    """
    if psi.rho > 1:
        raise DomainTooSmall(f"series radius {psi.rho} excludes the unit circle")
    if j < 0:
        raise ValueError("j must be nonnegative")
    if j == 0:
        return 1 + 0j
    work = max(psi.order, j)
    acc = LaurentSeries.constant(1.0, work)
    for _ in range(j):
        acc = laurent_multiply(acc, psi, order=work)
    value = acc.coef(0)
    if check:
        grid = max(4 * (j + 1), j * max(psi.top, psi.nonzero_order()) + 1)
        w = np.exp(2j * np.pi * np.arange(grid) / grid)
        avg = complex(np.mean(laurent_eval(psi, w) ** j))
        scale = max(1.0, float(np.sum(np.abs(psi.coeffs))) ** j)
        if abs(avg - value) > 1e-9 * scale:
            raise CrossCheckFailed(f"series {value} vs circle average {avg}")
    return value

