"""Closed-form engines on the unit circle and the real line.

Circle measures are described by Verblunsky coefficients ``alpha_n`` and the
Szego recursion; real-line measures by Jacobi parameters ``(a_n, b_n)``.  Both
produce Hessenberg matrices without any quadrature.  The rest of the module
covers discrete spectral measures: m-functions, paraorthogonal polynomials,
flipped truncations and the subsequence embeddings that realise a prescribed
spectral measure as a limit along a sparse set of degrees.

Jacobi convention: ``b_n = M_{n,n}`` and ``a_n = M_{n+1,n}`` (1-based), so a
``JacobiArrays`` supplies ``a_1, a_2, ...`` and ``b_1, b_2, ...``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (BadPattern, CrossCheckFailed, EigenFailure, PoleHit)
from .hessenberg import (HessenbergMatrix, char_poly_coeffs, resolvent_corner)
from .limits import DEFAULT_TOL, DEFAULT_WINDOW, LimitEstimate, estimate_limit

VERBLUNSKY_FAMILIES = ("constant", "decay", "alpha_to_one", "oscillatory",
                       "alternating", "random", "list")
JACOBI_FAMILIES = ("free", "constant", "list")


@dataclass(frozen=True)
class VerblunskySequence:
    """Rule for ``alpha_0, alpha_1, ...`` inside the open unit disk.

    Families
    --------
    constant(value)        alpha_n = value
    decay(scale)           alpha_n = scale / (n + 2)
    alpha_to_one           alpha_n = 1 - 1/(n + 2)
    oscillatory            alpha_n = (1 - 1/(n + 1)) exp(i n**2)
    alternating(value)     alpha_n = (-1)**n value
    random(seed, radius)   uniform in the disk of the given radius
    list(values)           explicit prefix, zero afterwards
    """

    family: str
    params: tuple = ()

    def __post_init__(self):
        if self.family not in VERBLUNSKY_FAMILIES:
            raise ValueError(f"unknown Verblunsky family {self.family!r}")
        params = tuple(self.params)
        if self.family == "list":
            params = tuple(complex(v) for v in params)
            if any(abs(v) >= 1 for v in params):
                raise ValueError("Verblunsky coefficients must satisfy |alpha| < 1")
        elif self.family in ("constant", "alternating"):
            if len(params) != 1 or abs(complex(params[0])) >= 1:
                raise ValueError(f"{self.family} needs one value with |value| < 1")
        elif self.family == "decay":
            params = params or (1.0,)
            if abs(complex(params[0])) >= 2:
                raise ValueError("decay scale must satisfy |scale| < 2")
        elif self.family == "random":
            seed, radius = tuple(params) + (0, 0.5)[len(params):]
            if not 0 <= float(radius) < 1:
                raise ValueError("random radius must lie in [0, 1)")
            params = (int(seed), float(radius))
        object.__setattr__(self, "params", params)

    @classmethod
    def constant(cls, value):
        return cls("constant", (value,))

    @classmethod
    def from_values(cls, values):
        return cls("list", tuple(values))

    def values(self, count: int) -> np.ndarray:
        """``alpha_0 .. alpha_{count-1}``."""
        n = np.arange(count, dtype=float)
        fam, p = self.family, self.params
        if fam == "constant":
            out = np.full(count, complex(p[0]))
        elif fam == "decay":
            out = complex(p[0]) / (n + 2)
        elif fam == "alpha_to_one":
            out = 1 - 1 / (n + 2)
        elif fam == "oscillatory":
            out = (1 - 1 / (n + 1)) * np.exp(1j * n ** 2)
        elif fam == "alternating":
            out = complex(p[0]) * (-1.0) ** n
        elif fam == "random":
            rng = np.random.default_rng(p[0])
            u = rng.random((count, 2))
            out = p[1] * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
        else:
            out = np.zeros(count, dtype=complex)
            m = min(count, len(p))
            out[:m] = p[:m]
        return np.asarray(out, dtype=complex)

    def rho(self, count: int) -> np.ndarray:
        return np.sqrt(np.maximum(1 - np.abs(self.values(count)) ** 2, 0.0))


@dataclass(frozen=True)
class JacobiArrays:
    """Rule for ``a_1, a_2, ... > 0`` and ``b_1, b_2, ...`` real.

    ``list`` arrays are extended by repeating their last entry.
    """

    family: str
    a: tuple = ()
    b: tuple = ()

    def __post_init__(self):
        if self.family not in JACOBI_FAMILIES:
            raise ValueError(f"unknown Jacobi family {self.family!r}")
        a, b = tuple(float(x) for x in self.a), tuple(float(x) for x in self.b)
        if self.family == "free":
            a, b = (1.0,), (0.0,)
        if self.family == "constant" and (len(a) != 1 or len(b) != 1):
            raise ValueError("constant Jacobi arrays need one a and one b")
        if not b:
            raise ValueError("at least one diagonal entry b_1 is required")
        a = a or (1.0,)
        if any(x <= 0 or not np.isfinite(x) for x in a):
            raise ValueError("off-diagonal entries a_n must be positive")
        if any(not np.isfinite(x) for x in b):
            raise ValueError("diagonal entries b_n must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def free(cls):
        return cls("free")

    @classmethod
    def constant(cls, a, b):
        return cls("constant", (a,), (b,))

    @classmethod
    def from_arrays(cls, a, b):
        return cls("list", tuple(a), tuple(b))

    @staticmethod
    def _extend(vals, count):
        out = np.full(count, vals[-1], dtype=float)
        m = min(count, len(vals))
        out[:m] = vals[:m]
        return out

    def values(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        """``(a_1..a_count, b_1..b_count)``."""
        return self._extend(self.a, count), self._extend(self.b, count)

    @property
    def bound(self) -> float:
        """``sup|b| + 2 sup a``, an upper bound on the operator norm."""
        return max(abs(x) for x in self.b) + 2 * max(self.a)


@dataclass(frozen=True)
class DiscreteSpectralMeasure:
    """Finitely many atoms ``lambda_i`` with probabilities ``p_i``."""

    atoms: np.ndarray
    weights: np.ndarray
    support: str = "realline"

    def __post_init__(self):
        lam = np.array(self.atoms, dtype=complex).ravel()
        p = np.array(self.weights, dtype=float).ravel()
        if lam.shape != p.shape or lam.size == 0:
            raise ValueError("atoms and weights must be nonempty and of equal length")
        if np.any(p <= 0):
            raise ValueError("atom weights must be positive")
        if abs(p.sum() - 1) > 1e-8:
            raise ValueError(f"weights must sum to 1, got {p.sum()}")
        if self.support == "circle" and np.max(np.abs(np.abs(lam) - 1)) > 1e-10:
            raise ValueError("circle atoms must be unimodular")
        if self.support == "realline" and np.max(np.abs(lam.imag)) > 1e-10:
            raise ValueError("real-line atoms must be real")
        if self.support not in ("circle", "realline"):
            raise ValueError(f"unknown support {self.support!r}")
        lam.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "atoms", lam)
        object.__setattr__(self, "weights", p)


# -- circle -------------------------------------------------------------------

def reversed_poly(coeffs) -> np.ndarray:
    """Coefficients of ``z**n conj(P(1/conj z))`` for ascending ``coeffs``."""
    return np.conj(np.asarray(coeffs, dtype=complex)[::-1])


def szego_recursion(alpha: VerblunskySequence, N: int):
    """Monic ``Phi_0..Phi_N`` (ascending coefficients) and ``kappa_0..kappa_N``.

    ``Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*``;
    ``kappa_n = prod_{j<n} 1/rho_j``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    a = alpha.values(N)
    polys = [np.array([1.0 + 0j])]
    for n in range(N):
        p = polys[-1]
        nxt = np.concatenate([[0.0], p]) - np.conj(a[n]) * np.concatenate([reversed_poly(p), [0.0]])
        nxt[-1] = 1.0
        polys.append(nxt)
    with np.errstate(over="ignore"):
        kappa = np.exp(_log_kappa_circle(alpha, N))
    return polys, kappa


def _log_kappa_circle(alpha: VerblunskySequence, N: int) -> np.ndarray:
    return np.concatenate([[0.0], np.cumsum(-np.log(alpha.rho(N)))])


def _ggt_entries(a: np.ndarray, size: int) -> np.ndarray:
    """``H[k, l] = -conj(a_l) a_{k-1} prod_{m=k}^{l-1} rho_m`` for ``k <= l``,
    ``H[l+1, l] = rho_l``, with ``a_{-1} = -1``."""
    rho = np.sqrt(np.maximum(1 - np.abs(a[:size]) ** 2, 0.0))
    prev = np.concatenate([[-1.0], a[:size - 1]])
    H = np.zeros((size, size), dtype=complex)
    for k in range(size):
        prods = np.concatenate([[1.0], np.cumprod(rho[k:size - 1])])
        H[k, k:] = -np.conj(a[k:size]) * prev[k] * prods
    idx = np.arange(size - 1)
    H[idx + 1, idx] = rho[:size - 1]
    return H


def ggt_matrix(alpha: VerblunskySequence, N: int) -> HessenbergMatrix:
    """``(N+1) x (N+1)`` section of the circle Hessenberg matrix with kappa attached."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    a = alpha.values(N + 1)
    return HessenbergMatrix(_ggt_entries(a, N + 1), log_kappa=_log_kappa_circle(alpha, N))


def _para_section(alpha: VerblunskySequence, n: int) -> np.ndarray:
    a = alpha.values(n).copy()
    a[n - 1] = -1.0
    return _ggt_entries(a, n)


def paraorthogonal(alpha: VerblunskySequence, n: int, route: str = "both",
                   tol: float = 1e-10) -> np.ndarray:
    """Ascending coefficients of ``z Phi_{n-1} + Phi_{n-1}^*``.

    ``route='recursion'`` uses the Szego polynomials, ``'determinant'`` the
    characteristic polynomial of the ``n``-section with ``alpha_{n-1} = -1``;
    ``'both'`` computes each and raises ``CrossCheckFailed`` if they differ.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if route not in ("recursion", "determinant", "both"):
        raise ValueError(f"unknown route {route!r}")
    rec = det = None
    if route in ("recursion", "both"):
        polys, _ = szego_recursion(alpha, n - 1)
        p = polys[n - 1]
        rec = np.concatenate([[0.0], p]) + np.concatenate([reversed_poly(p), [0.0]])
    if route in ("determinant", "both"):
        det = char_poly_coeffs(HessenbergMatrix(_para_section(alpha, n)), n)
    if route == "both":
        err = float(np.max(np.abs(rec - det)))
        if err > tol * max(1.0, float(np.max(np.abs(rec)))):
            raise CrossCheckFailed(f"paraorthogonal routes differ by {err:.3e}")
    return rec if rec is not None else det


# -- real line ------------------------------------------------------------------

def jacobi_matrix(J: JacobiArrays, N: int) -> HessenbergMatrix:
    """``(N+1) x (N+1)`` tridiagonal section with ``kappa_n = kappa_{n-1}/a_n``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    a, b = J.values(N + 1)
    H = np.diag(b.astype(complex))
    idx = np.arange(N)
    H[idx + 1, idx] = a[:N]
    H[idx, idx + 1] = a[:N]
    return HessenbergMatrix(H, log_kappa=np.concatenate([[0.0], -np.cumsum(np.log(a[:N]))]))


def jacobi_polynomials(J: JacobiArrays, N: int) -> np.ndarray:
    """Orthonormal coefficient table ``C[n, i]`` from the three-term recurrence."""
    a, b = J.values(N + 1)
    C = np.zeros((N + 1, N + 1), dtype=complex)
    C[0, 0] = 1.0
    for k in range(1, N + 1):
        # a_k phi_k = (z - b_k) phi_{k-1} - a_{k-1} phi_{k-2}
        row = np.zeros(N + 1, dtype=complex)
        row[1:] += C[k - 1, :-1]
        row -= b[k - 1] * C[k - 1]
        if k >= 2:
            row -= a[k - 2] * C[k - 2]
        C[k] = row / a[k - 1]
    return C


# -- discrete spectral measures -------------------------------------------------

def m_function(nu: DiscreteSpectralMeasure, z):
    """``sum p_i / (z - lambda_i)``."""
    z = np.asarray(z, dtype=complex)
    diff = z[..., None] - nu.atoms
    scale = max(1.0, float(np.max(np.abs(nu.atoms))))
    if np.any(np.abs(diff) <= 1e-14 * scale):
        raise PoleHit("evaluation point coincides with an atom")
    out = np.sum(nu.weights / diff, axis=-1)
    return out[()] if out.ndim == 0 else out


def _flip(U: np.ndarray) -> np.ndarray:
    """``U~[i, j] = U[n-1-j, n-1-i]``."""
    return U.T[::-1, ::-1]


def _unitary_eig(U: np.ndarray):
    """Eigenpairs of a unitary matrix through a Hermitian pencil.

    ``U + U^H`` and ``i(U - U^H)`` commute with ``U``; a real combination of
    the two has an orthonormal eigenbasis from a symmetric solver, which
    unitary ``eig`` does not promise when eigenvalues cluster.  A line meets
    the circle twice, so two eigenvalues of ``U`` can share one Hermitian
    eigenvalue; each such cluster is split by diagonalising ``U`` on its
    (small, invariant) subspace.
    """
    herm = (U + U.conj().T) / 2 + (1 / np.sqrt(3)) * (U - U.conj().T) / 2j
    h, V = np.linalg.eigh(herm)
    starts = np.flatnonzero(np.diff(h) > 1e-6) + 1
    for idx in np.split(np.arange(h.size), starts):
        if idx.size > 1:
            sub = V[:, idx]
            _, W = np.linalg.eig(sub.conj().T @ U @ sub)
            Q, _ = np.linalg.qr(W)
            V[:, idx] = sub @ Q
    lam = np.einsum("ij,ij->j", V.conj(), U @ V)
    return lam, V


def flip_spectral(source, n: int, mode: str | None = None) -> DiscreteSpectralMeasure:
    """Spectral measure of ``e_1`` for the flipped ``n``-section.

    ``mode='paraorthogonal_circle'`` takes a :class:`VerblunskySequence` and
    uses the unitary section with ``alpha_{n-1} = -1``; ``mode='realline'``
    takes :class:`JacobiArrays`.  Atoms are eigenvalues, weights the squared
    first eigenvector components.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if mode is None:
        mode = "realline" if isinstance(source, JacobiArrays) else "paraorthogonal_circle"
    if mode == "paraorthogonal_circle":
        U = _flip(_para_section(source, n))
        lam, V = _unitary_eig(U)
        resid = float(np.max(np.abs(U @ V - V * lam))) if n else 0.0
        lam = lam / np.abs(lam)
        support = "circle"
    elif mode == "realline":
        T = _flip(jacobi_matrix(source, n - 1).entries.real)
        lam, V = np.linalg.eigh(T)
        resid = float(np.max(np.abs(T @ V - V * lam)))
        support = "realline"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    gram = float(np.max(np.abs(V.conj().T @ V - np.eye(n))))
    if gram > 1e-8 or resid > 1e-8:
        raise EigenFailure(f"eigenbasis defect {gram:.2e}, residual {resid:.2e}")
    p = np.abs(V[0]) ** 2
    keep = p > 0
    return DiscreteSpectralMeasure(lam[keep], p[keep] / p[keep].sum(), support)


def flip_ratio(source, n: int, z, mode: str | None = None) -> complex:
    """``Phi_{n-1}/Phi_n^{(-1)}`` (circle) or ``Phi_{n-1}/Phi_n`` (real line) at ``z``."""
    if mode is None:
        mode = "realline" if isinstance(source, JacobiArrays) else "paraorthogonal_circle"
    if mode == "paraorthogonal_circle":
        M = HessenbergMatrix(_para_section(source, n))
    else:
        M = jacobi_matrix(source, n - 1)
    return resolvent_corner(M, n, z)


# -- Verblunsky limits ---------------------------------------------------------

class KhruschevVerdict(NamedTuple):
    products: list
    moments: list
    conditions_hold: bool
    moments_vanish: bool

    @property
    def passed(self) -> bool:
        return self.conditions_hold and self.moments_vanish


def _vanishes(est: LimitEstimate, tol: float) -> bool:
    return est.converged and abs(est.limit) < tol


def khruschev_check(alpha: VerblunskySequence, K: int, window: int = DEFAULT_WINDOW,
                    tol: float = DEFAULT_TOL, N: int = 300) -> KhruschevVerdict:
    """Test ``alpha_n alpha_{n+k} -> 0`` for ``k <= K`` and, when that holds,
    that the weak moments ``(M**j)_{n,n}`` vanish in the limit for ``1 <= j <= K``."""
    if K < 1:
        raise ValueError("K must be at least 1")
    from .asymptotics import weak_moment_sequence
    a = alpha.values(N + K)
    products = [estimate_limit(a[:N] * a[k:N + k], start=0, window=window, tol=tol)
                for k in range(1, K + 1)]
    cond = all(_vanishes(e, tol) for e in products)
    moments = []
    if cond:
        M = ggt_matrix(alpha, N)
        moments = [weak_moment_sequence(M, j, window, tol) for j in range(1, K + 1)]
    vanish = cond and all(_vanishes(e, tol) for e in moments)
    return KhruschevVerdict(products, moments, cond, vanish)


# -- subsequence embeddings ----------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    """Coefficient arrays whose sections at ``indices`` reproduce a target.

    ``ratios(z)`` gives ``Phi_{n-1}/Phi_n`` (real line) or
    ``Phi_{n-1}/Phi_n^{(-1)}`` (circle) for ``n`` in ``indices``; ``limit(z)``
    is the m-function of the target spectral measure.
    """

    source: object
    indices: np.ndarray
    target: DiscreteSpectralMeasure
    mode: str
    config: dict = field(default_factory=dict)

    def ratios(self, z) -> np.ndarray:
        return np.array([flip_ratio(self.source, int(n), z, self.mode) for n in self.indices])

    def limit(self, z) -> complex:
        return m_function(self.target, z)


def subsequence_embedding(target, spacing: int, count: int = 6) -> Embedding:
    """Realise a finite target inside one sequence along ``n = spacing*k``.

    ``target`` is a :class:`JacobiArrays` whose first ``L = len(b)`` diagonal
    entries define the ``L x L`` target section, or a
    :class:`VerblunskySequence` ``list`` of length ``L`` whose paraorthogonal
    ``L``-section is the target.  Around each ``n`` the target is written so
    that the flipped ``n``-section starts with the flipped target section; the
    coupling to the rest of the section decays like ``1/n``.
    """
    if count < 1:
        raise BadPattern("count must be at least 1")
    if isinstance(target, JacobiArrays):
        return _embed_line(target, spacing, count)
    if isinstance(target, VerblunskySequence):
        return _embed_circle(target, spacing, count)
    raise BadPattern("target must be JacobiArrays or a VerblunskySequence")


def _embed_line(target: JacobiArrays, s: int, count: int) -> Embedding:
    L = len(target.b)
    if L < 1 or s <= L:
        raise BadPattern(f"spacing {s} must exceed the target length {L}")
    tb = np.array(target.b)
    ta = np.array(target.a[:L - 1]) if L > 1 else np.zeros(0)
    size = count * s + 1
    a = np.full(size, ta[-1] if ta.size else 1.0)
    b = np.full(size, tb[-1])
    indices = s * np.arange(1, count + 1)
    for n in indices:
        for j in range(L):
            b[n - j - 1] = tb[j]                 # b_{n-j} = target b_{j+1}
        for j in range(L - 1):
            a[n - j - 2] = ta[j]                 # a_{n-j-1} = target a_{j+1}
        if n - L >= 1:
            a[n - L - 1] = 1.0 / n               # coupling a_{n-L}
    source = JacobiArrays.from_arrays(a, b)
    # the flipped n-section starts with the target in order, so the limit is the
    # e_1 measure of the target itself: flip the reversed target to get it
    nu = flip_spectral(JacobiArrays.from_arrays(ta[::-1] if ta.size else [1.0], tb[::-1]),
                       L, "realline")
    return Embedding(source, indices, nu, "realline",
                     {"kind": "jacobi", "a": a.tolist(), "b": b.tolist()})


def _embed_circle(target: VerblunskySequence, s: int, count: int) -> Embedding:
    if target.family != "list":
        raise BadPattern("circle targets must be explicit coefficient lists")
    L = len(target.params)
    if L < 1 or s <= L:
        raise BadPattern(f"spacing {s} must exceed the target length {L}")
    ta = np.array(target.params, dtype=complex)
    size = count * s + 1
    a = np.zeros(size, dtype=complex)
    indices = s * np.arange(1, count + 1)
    for n in indices:
        # trailing L-block of the n-section is the target's para section
        a[n - L:n - 1] = ta[:L - 1]              # alpha_{n-L+i} = target alpha_i
        if n - 1 - L >= 0:
            # nearly -1 so the block below it decouples
            a[n - 1 - L] = -np.sqrt(1 - 1.0 / n ** 2)
    source = VerblunskySequence.from_values(a)
    nu = flip_spectral(target, L, "paraorthogonal_circle")
    return Embedding(source, indices, nu, "paraorthogonal_circle",
                     {"kind": "verblunsky", "alpha": {"family": "list",
                                                      "values": [[v.real, v.imag] for v in a]}})


def bernstein_szego_weights(alpha: VerblunskySequence, L: int, grid: int) -> np.ndarray:
    """Samples of ``1/|phi_L(e^{i theta})|**2`` on ``grid`` equispaced angles.

    When ``alpha_n = 0`` for ``n >= L`` this density has exactly the given
    Verblunsky coefficients.
    """
    polys, kappa = szego_recursion(alpha, L)
    theta = 2 * np.pi * np.arange(grid) / grid
    vals = np.polynomial.polynomial.polyval(np.exp(1j * theta), polys[L]) * kappa[L]
    return 1.0 / np.abs(vals) ** 2
