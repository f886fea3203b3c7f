"""Upper Hessenberg matrices of the multiplication operator and their identities.

Indexing follows the 1-based convention ``M[j, k] = <z phi_{k-1}, phi_{j-1}>``:
``entry(j, k)`` is 1-based, while ``entries`` is the plain 0-based array.

Diagonal ``j`` means the sequence ``M_{n-j, n}``; ``j = -1`` is the
subdiagonal, ``j = 0`` the main diagonal and ``j > 0`` the superdiagonals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .errors import (BadPath, IndexOutOfRange, SingularShift, WindowExceeded)
from .limits import DEFAULT_TOL, DEFAULT_WINDOW, LimitEstimate, estimate_limit


@dataclass(frozen=True)
class HessenbergMatrix:
    """Finite section ``pi_N M pi_N`` with optional leading coefficients.

    Entries below the first subdiagonal are forced to exact zeros.  Leading
    coefficients ``kappa_0, kappa_1, ...`` (at least ``N`` values) may be given
    directly or as ``log_kappa``; ratios are always formed from logarithms
    because ``kappa_n`` can overflow long before its ratios do.
    """

    entries: np.ndarray
    kappa: np.ndarray | None = None
    log_kappa: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("Hessenberg matrix must be square")
        a = np.triu(a, -1)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        logk = self.log_kappa
        if logk is None and self.kappa is not None:
            k = np.array(self.kappa, dtype=float)
            if np.any(k <= 0):
                raise ValueError("leading coefficients must be positive")
            logk = np.log(k)
        if logk is not None:
            logk = np.array(logk, dtype=float)
            if logk.size < a.shape[0]:
                raise ValueError("kappa must cover kappa_0..kappa_{N-1}")
            if np.any(np.isnan(logk)):
                raise ValueError("leading coefficients must be positive")
            with np.errstate(over="ignore"):
                k = np.exp(logk)
            logk.setflags(write=False)
            k.setflags(write=False)
            object.__setattr__(self, "log_kappa", logk)
            object.__setattr__(self, "kappa", k)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def entry(self, j: int, k: int) -> complex:
        """``M_{j,k}`` (1-based); structural zeros are returned without lookup."""
        if not (1 <= j <= self.size and 1 <= k <= self.size):
            raise IndexOutOfRange(f"({j}, {k}) outside a {self.size}x{self.size} section")
        if j > k + 1:
            return 0j
        return complex(self.entries[j - 1, k - 1])

    def truncation(self, n: int) -> np.ndarray:
        if not 0 <= n <= self.size:
            raise IndexOutOfRange(f"n={n} exceeds dimension {self.size}")
        return self.entries[:n, :n]

    def kappa_ratio(self, a: int, b: int) -> float:
        """``kappa_a / kappa_b``."""
        if self.log_kappa is None:
            raise ValueError("matrix carries no leading coefficients")
        if min(a, b) < 0 or max(a, b) >= self.log_kappa.size:
            raise IndexOutOfRange(f"kappa index out of range: {a}, {b}")
        return float(np.exp(self.log_kappa[a] - self.log_kappa[b]))

    def with_kappa(self, kappa) -> "HessenbergMatrix":
        return HessenbergMatrix(self.entries, kappa)


def log_kappa_from_subdiagonal(entries, kappa0: float = 1.0) -> np.ndarray:
    """``log kappa_0..log kappa_N`` from ``M_{n+1,n} = kappa_{n-1}/kappa_n``."""
    sub = np.real(np.diagonal(np.asarray(entries), -1))
    return np.log(kappa0) - np.concatenate([[0.0], np.cumsum(np.log(sub))])


# -- determinants and resolvents ---------------------------------------------

def _check_n(M: HessenbergMatrix, n: int):
    if not 1 <= n <= M.size:
        raise IndexOutOfRange(f"n={n} outside 1..{M.size}")


def char_poly_all(M: HessenbergMatrix, n: int, z):
    """``det(z - pi_k M pi_k)`` for ``k = 0..n`` by the column-expansion recurrence.

    ``p_k = (z - h_kk) p_{k-1} - sum_{i<k} h_ik (h_{i+1,i} ... h_{k,k-1}) p_{i-1}``;
    no divisions, ``O(n**2)`` per point.
    """
    if not 0 <= n <= M.size:
        raise IndexOutOfRange(f"n={n} outside 0..{M.size}")
    h = M.entries
    z = np.asarray(z, dtype=complex)
    p = [np.ones_like(z)]
    for k in range(1, n + 1):
        acc = (z - h[k - 1, k - 1]) * p[k - 1]
        prod = 1.0 + 0j
        for i in range(k - 1, 0, -1):
            prod = prod * h[i, i - 1]
            acc = acc - h[i - 1, k - 1] * prod * p[i - 1]
        p.append(acc)
    return p


def char_poly(M: HessenbergMatrix, n: int, z):
    """``det(z - pi_n M pi_n)``, which is the monic polynomial ``Phi_n(z)``."""
    out = char_poly_all(M, n, z)[n]
    return out[()] if np.ndim(out) == 0 else out


def char_poly_coeffs(M: HessenbergMatrix, n: int) -> np.ndarray:
    """Coefficients (ascending powers) of ``det(z - pi_n M pi_n)``."""
    if not 0 <= n <= M.size:
        raise IndexOutOfRange(f"n={n} outside 0..{M.size}")
    h = M.entries
    p = [np.array([1.0 + 0j])]
    for k in range(1, n + 1):
        acc = np.zeros(k + 1, dtype=complex)
        acc[1:] += p[k - 1]
        acc[:k] -= h[k - 1, k - 1] * p[k - 1]
        prod = 1.0 + 0j
        for i in range(k - 1, 0, -1):
            prod = prod * h[i, i - 1]
            acc[:i] -= h[i - 1, k - 1] * prod * p[i - 1]
        p.append(acc)
    return p[n]


def resolvent_corner(M: HessenbergMatrix, n: int, z: complex) -> complex:
    """``((z - pi_n M pi_n)^{-1})_{n,n}``.

    Gaussian elimination down the subdiagonal with adjacent-row pivoting keeps
    the system Hessenberg, so only the last pivot is needed: ``O(n**2)``.
    """
    _check_n(M, n)
    A = -np.array(M.entries[:n, :n])
    A[np.diag_indices(n)] += z
    b = np.zeros(n, dtype=complex)
    b[-1] = 1.0
    scale = max(abs(z), float(np.max(np.abs(M.entries[:n, :n]))), 1e-300)
    for k in range(n - 1):
        if abs(A[k + 1, k]) > abs(A[k, k]):
            A[[k, k + 1], k:] = A[[k + 1, k], k:]
            b[[k, k + 1]] = b[[k + 1, k]]
        if abs(A[k, k]) <= 1e-13 * scale:
            raise SingularShift(f"z={z} is (numerically) an eigenvalue of the {n}-section")
        m = A[k + 1, k] / A[k, k]
        A[k + 1, k:] -= m * A[k, k:]
        b[k + 1] -= m * b[k]
    if abs(A[n - 1, n - 1]) <= 1e-13 * scale:
        raise SingularShift(f"z={z} is (numerically) an eigenvalue of the {n}-section")
    return complex(b[n - 1] / A[n - 1, n - 1])


# -- powers ------------------------------------------------------------------

def _window_power_diagonal(h, lo, hi, target, jmax):
    """``(B**j)[target, target]`` for ``j = 0..jmax`` where ``B = h[lo:hi, lo:hi]``."""
    B = h[lo:hi, lo:hi]
    v = np.zeros(hi - lo, dtype=complex)
    t = target - lo
    v[t] = 1.0
    out = np.empty(jmax + 1, dtype=complex)
    out[0] = 1.0
    for j in range(1, jmax + 1):
        v = B @ v
        out[j] = v[t]
    return out


def corner_powers(M: HessenbergMatrix, n: int, jmax: int) -> np.ndarray:
    """``((pi_n M pi_n)**j)_{n,n}`` for ``j = 0..jmax``.

    Index paths can drop by at most one per step, so a closed path of length
    ``j`` at ``n`` stays inside ``[n-j+1, n]``; only that window is touched.
    """
    _check_n(M, n)
    lo = max(0, n - max(jmax, 1))
    return _window_power_diagonal(M.entries, lo, n, n - 1, jmax)


def truncated_power_diagonal(M: HessenbergMatrix, n: int, j: int) -> complex:
    if j < 0:
        raise ValueError("j must be nonnegative")
    return complex(corner_powers(M, n, j)[j])


def full_power_diagonals(M: HessenbergMatrix, n: int, jmax: int) -> np.ndarray:
    """``(M**j)_{n,n}`` of the untruncated operator for ``j = 0..jmax``.

    Exact from the section as long as ``n + jmax <= size + 1``.
    """
    _check_n(M, n)
    if n + jmax > M.size + 1:
        raise WindowExceeded(
            f"(M^{jmax})_{{{n},{n}}} needs rows up to {n + jmax - 1}, section has {M.size}")
    lo = max(0, n - max(jmax, 1))
    hi = min(M.size, n + jmax - 1) if jmax > 0 else n
    return _window_power_diagonal(M.entries, lo, max(hi, n), n - 1, jmax)


def full_power_diagonal(M: HessenbergMatrix, n: int, j: int) -> complex:
    """``(M**j)_{n,n}``, i.e. ``int z**j |phi_{n-1}|**2 dmu``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return complex(full_power_diagonals(M, n, j)[j])


# -- path chains -------------------------------------------------------------

@dataclass(frozen=True)
class PathChain:
    """Offsets ``(i_0, ..., i_{k+1})`` of a closed path in ``L(k)``.

    ``i_0 = i_{k+1} = 0``, every ``i_t`` lies in ``[0, k]`` and offsets grow by
    at most one per step.  The path visits rows ``n - i_t``.
    """

    offsets: tuple

    def __post_init__(self):
        o = tuple(int(x) for x in self.offsets)
        k = len(o) - 2
        if k < 0 or o[0] != 0 or o[-1] != 0:
            raise BadPath(f"chain must start and end at offset 0: {o}")
        if any(x < 0 or x > k for x in o):
            raise BadPath(f"offsets must lie in [0, {k}]: {o}")
        if any(b > a + 1 for a, b in zip(o, o[1:])):
            raise BadPath(f"offsets may grow by at most one per step: {o}")
        object.__setattr__(self, "offsets", o)

    @property
    def k(self) -> int:
        return len(self.offsets) - 2

    def product(self, M: HessenbergMatrix, n: int) -> complex:
        out = 1.0 + 0j
        for a, b in zip(self.offsets, self.offsets[1:]):
            r, c = n - a, n - b
            if r < 1 or c < 1:
                return 0j
            out *= M.entry(r, c)
        return out


def enumerate_chains(k: int) -> Iterator[PathChain]:
    """All members of ``L(k)``."""
    def extend(prefix):
        if len(prefix) == k + 1:
            # the closing step back to offset 0 never grows
            yield PathChain(tuple(prefix) + (0,))
            return
        for nxt in range(0, min(prefix[-1] + 1, k) + 1):
            yield from extend(prefix + [nxt])
    yield from extend([0])


def path_sum(M: HessenbergMatrix, n: int, k: int) -> complex:
    """``sum over L(k)`` of chain products; equals ``((pi_n M pi_n)**(k+1))_{n,n}``."""
    return complex(sum(c.product(M, n) for c in enumerate_chains(k)))


def _check_excursion(M: HessenbergMatrix, path):
    p = tuple(int(i) for i in path)
    if len(p) < 2 or p[0] != p[-1]:
        raise BadPath(f"path must return to its start: {p}")
    if any(b < a - 1 for a, b in zip(p, p[1:])):
        raise BadPath(f"indices may drop by at most one per step: {p}")
    if len(set(p[:-1])) != len(p) - 1:
        raise BadPath(f"interior indices must be distinct: {p}")
    if min(p) < 1 or max(p) > M.size:
        raise BadPath(f"indices outside 1..{M.size}: {p}")
    if M.log_kappa is None:
        raise ValueError("path collapse needs leading coefficients")
    return p


def lemma_repeat_check(M: HessenbergMatrix, path) -> tuple[complex, complex]:
    """Collapse a closed excursion to a single entry.

    For a path ``(i_m, ..., i_m')`` with equal endpoints, distinct interior
    indices and drops of at most one, the product of entries along the path
    equals ``kappa_{lo-1}/kappa_{hi-1} * M_{lo,hi}`` with ``lo``/``hi`` the
    smallest and largest index visited.  Returns ``(product, collapsed)``.
    """
    p = _check_excursion(M, path)
    product = 1.0 + 0j
    for a, b in zip(p, p[1:]):
        product *= M.entry(a, b)
    lo, hi = min(p), max(p)
    collapsed = M.kappa_ratio(lo - 1, hi - 1) * M.entry(lo, hi)
    return complex(product), complex(collapsed)


def random_excursion(rng: np.random.Generator, size: int) -> tuple:
    """A random path satisfying the hypotheses of :func:`lemma_repeat_check`.

    Every admissible path walks down one step at a time from its start to its
    minimum, jumps to its maximum, then walks down again to the start.
    """
    start = int(rng.integers(1, size + 1))
    depth = int(rng.integers(0, start))
    peak = int(rng.integers(start, size + 1))
    down = list(range(start, start - depth - 1, -1))
    back = list(range(peak, start - 1, -1))
    if depth == 0 and peak == start:
        return (start, start)
    return tuple(down + back)


# -- diagonals and their limits ----------------------------------------------

def scaled_diagonal(M: HessenbergMatrix, n: int, j: int) -> complex:
    """``kappa_{n-1-j}/kappa_{n-1} * M_{n-j,n}``."""
    if n - j < 1 or n > M.size or n - j > M.size or n < 1:
        raise IndexOutOfRange(f"M_{{{n - j},{n}}} not in the section")
    return M.kappa_ratio(n - 1 - j, n - 1) * M.entry(n - j, n)


def diagonal_sequence(M: HessenbergMatrix, j: int, scaled: bool = False):
    """``(ns, values)`` of ``M_{n-j,n}`` (or its scaled form) over every valid ``n``."""
    lo, hi = max(1, j + 1), min(M.size, M.size + j)
    ns = np.arange(lo, hi + 1)
    if scaled:
        vals = np.array([scaled_diagonal(M, int(n), j) for n in ns], dtype=complex)
    elif j < -1:
        vals = np.zeros(ns.size, dtype=complex)
    else:
        vals = np.array([M.entries[n - j - 1, n - 1] for n in ns], dtype=complex)
    return ns, vals


def diagonal_limit(M: HessenbergMatrix, j: int, scaled: bool = False,
                   window: int = DEFAULT_WINDOW, tol: float = DEFAULT_TOL) -> LimitEstimate:
    ns, vals = diagonal_sequence(M, j, scaled)
    return estimate_limit(vals, start=int(ns[0]) if ns.size else 1, window=window, tol=tol)


class NormBound(NamedTuple):
    bound: float
    witness: float


def norm_bound(M: HessenbergMatrix, measure) -> NormBound:
    """Upper bound ``sup |z|`` on the support, with the spectral norm of the
    section as a lower witness (a compression never exceeds the operator)."""
    witness = float(np.linalg.norm(M.entries, 2)) if M.size else 0.0
    return NormBound(float(measure.support_radius), witness)
