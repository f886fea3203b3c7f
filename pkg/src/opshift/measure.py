"""Compactly supported measures in the complex plane and their mixed moments.

Four variants share one interface (``support_radius``, ``mass`` and
:func:`moment`):

* :class:`PlanarQuadrature` -- weighted nodes with a declared exactness degree;
* :class:`CircleVerblunsky` -- a probability measure on the unit circle given
  by its Verblunsky coefficients;
* :class:`JacobiLine` -- a probability measure on the real line given by its
  Jacobi parameters;
* :class:`Mixture` -- a positive combination of the above.

Closed-form variants answer moment queries through their Hessenberg matrix:
``<z**j, z**k> = <M**j e_1, M**k e_1>`` because ``phi_0 = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .classical import JacobiArrays, VerblunskySequence
from .errors import (BadRadii, DegreeExceeded, EmptyMeasure, NegativeWeight,
                     NoNodes, NonpositiveMass, OutsideDomain)
from .laurent import LaurentSeries, laurent_eval


class MomentKey(NamedTuple):
    """Exponents of ``z**j conj(z)**k``."""

    j: int
    k: int


@dataclass(frozen=True, eq=False)
class PlanarQuadrature:
    """Nodes and positive weights, exact for moments of total degree ``<= degree``.

    ``degree`` is ``inf`` for genuinely discrete measures (point masses).
    ``approximate`` marks quadratures whose moments are Riemann sums of some
    other measure (see :func:`push_forward`); ``grid`` then records the node count.
    """

    nodes: np.ndarray
    weights: np.ndarray
    degree: float
    approximate: bool = False
    grid: int | None = None

    def __post_init__(self):
        z = np.array(self.nodes, dtype=complex).ravel()
        w = np.array(self.weights, dtype=float).ravel()
        if z.shape != w.shape:
            raise ValueError("nodes and weights differ in length")
        if np.any(w <= 0):
            raise NegativeWeight("quadrature weights must be strictly positive")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(w))):
            raise ValueError("nodes and weights must be finite")
        if self.degree < 0:
            raise ValueError("exactness degree must be nonnegative")
        z.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "nodes", z)
        object.__setattr__(self, "weights", w)

    @property
    def support_radius(self) -> float:
        return float(np.max(np.abs(self.nodes))) if self.nodes.size else 0.0

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))


@dataclass(frozen=True)
class CircleVerblunsky:
    alpha: VerblunskySequence
    support_radius: float = 1.0
    mass: float = 1.0
    degree: float = math.inf


@dataclass(frozen=True)
class JacobiLine:
    arrays: JacobiArrays
    mass: float = 1.0
    degree: float = math.inf

    @property
    def support_radius(self) -> float:
        return self.arrays.bound


@dataclass(frozen=True)
class Mixture:
    """``sum c_i mu_i`` with ``c_i > 0``."""

    parts: tuple

    def __post_init__(self):
        parts = tuple((float(c), m) for c, m in self.parts)
        if not parts:
            raise EmptyMeasure("a mixture needs at least one part")
        if any(c <= 0 for c, _ in parts):
            raise NonpositiveMass("mixture coefficients must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def support_radius(self) -> float:
        return max(m.support_radius for _, m in self.parts)

    @property
    def mass(self) -> float:
        return sum(c * m.mass for c, m in self.parts)

    @property
    def degree(self) -> float:
        return min(m.degree for _, m in self.parts)

    @property
    def approximate(self) -> bool:
        return any(getattr(m, "approximate", False) for _, m in self.parts)


MeasureSpec = PlanarQuadrature | CircleVerblunsky | JacobiLine | Mixture


def _closed_form_moment(M: np.ndarray, j: int, k: int) -> complex:
    e = np.zeros(M.shape[0], dtype=complex)
    e[0] = 1.0
    vj, vk = e.copy(), e.copy()
    for _ in range(j):
        vj = M @ vj
    for _ in range(k):
        vk = M @ vk
    return complex(np.vdot(vk, vj))


def moment(m, key) -> complex:
    """``int z**j conj(z)**k dmu`` for the raw (not normalised) measure.

    Raises
    ------
    DegreeExceeded
        If ``j + k`` exceeds the exactness degree of a quadrature.
    EmptyMeasure
        If a quadrature has no nodes.
    """
    j, k = MomentKey(*key)
    if j < 0 or k < 0:
        raise ValueError("moment exponents must be nonnegative")
    if isinstance(m, PlanarQuadrature):
        if m.nodes.size == 0:
            raise EmptyMeasure("quadrature has no nodes")
        if j + k > m.degree:
            raise DegreeExceeded(f"moment ({j},{k}) exceeds exactness degree {m.degree}")
        z = m.nodes
        return complex(np.sum(m.weights * z ** j * np.conj(z) ** k))
    if isinstance(m, Mixture):
        return sum(c * moment(part, (j, k)) for c, part in m.parts)
    if isinstance(m, CircleVerblunsky):
        from .classical import ggt_matrix
        return _closed_form_moment(ggt_matrix(m.alpha, max(j, k)).entries, j, k)
    if isinstance(m, JacobiLine):
        from .classical import jacobi_matrix
        return _closed_form_moment(jacobi_matrix(m.arrays, max(j, k)).entries, j, k)
    raise TypeError(f"not a measure: {type(m).__name__}")


def gram_matrix(m, n: int) -> np.ndarray:
    """``G[j, k] = <z**k, z**j>`` for ``0 <= j, k <= n``."""
    return np.array([[moment(m, (k, j)) for k in range(n + 1)] for j in range(n + 1)])


# -- constructors -------------------------------------------------------------

def golub_welsch(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on ``[-1, 1]`` from the Jacobi matrix
    of the Legendre recurrence."""
    if n < 1:
        raise ValueError("need at least one node")
    k = np.arange(1, n)
    off = k / np.sqrt(4.0 * k * k - 1)
    T = np.diag(off, 1) + np.diag(off, -1)
    x, V = np.linalg.eigh(T)
    return x, 2.0 * V[0] ** 2


def _polar_tensor(r_in: float, r_out: float, d: int) -> PlanarQuadrature:
    n_r = math.ceil((d + 2) / 2)
    n_t = d + 1
    x, w = golub_welsch(n_r)
    half = (r_out - r_in) / 2
    r = r_in + half * (x + 1)
    wr = half * w * r                       # weight r dr absorbed
    theta = 2 * np.pi * np.arange(n_t) / n_t
    nodes = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = (wr[:, None] * np.full(n_t, 2 * np.pi / n_t)[None, :]).ravel()
    return PlanarQuadrature(nodes, weights, d)


def make_disk_area(radius: float, d: int, unit_mass: bool = False) -> PlanarQuadrature:
    """Area measure on ``|z| < radius``, exact for ``j + k <= d``.

    Gauss-Legendre in ``r`` (weight ``r dr``) times the trapezoid rule in
    ``theta``.  Mass ``pi radius**2``, or 1 with ``unit_mass``.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    if d < 0:
        raise ValueError("degree must be nonnegative")
    q = _polar_tensor(0.0, float(radius), int(d))
    if unit_mass:
        q = PlanarQuadrature(q.nodes, q.weights / (np.pi * radius ** 2), q.degree)
    return q


def make_annulus_area(r_in: float, r_out: float, d: int, unit_mass: bool = False
                      ) -> PlanarQuadrature:
    """Area measure on ``r_in < |z| < r_out``, exact for ``j + k <= d``."""
    if not 0 < r_in < r_out:
        raise BadRadii(f"need 0 < r_in < r_out, got {r_in}, {r_out}")
    if d < 0:
        raise ValueError("degree must be nonnegative")
    q = _polar_tensor(float(r_in), float(r_out), int(d))
    if unit_mass:
        q = PlanarQuadrature(q.nodes, q.weights / q.mass, q.degree)
    return q


def make_circle_arc(weights, d: int) -> PlanarQuadrature:
    """``w(theta) d theta / 2 pi`` from samples on an equispaced grid.

    Zero samples are dropped; the grid must have at least ``d + 1`` points.
    """
    w = np.asarray(weights, dtype=float).ravel()
    G = w.size
    if G < d + 1:
        raise DegreeExceeded(f"grid of {G} points cannot resolve degree {d}")
    if np.any(w < 0):
        raise NegativeWeight("circle weight samples must be nonnegative")
    keep = w > 0
    if not np.any(keep):
        raise EmptyMeasure("all weight samples vanish")
    nodes = np.exp(2j * np.pi * np.arange(G) / G)
    return PlanarQuadrature(nodes[keep], w[keep] / G, d)


def lebesgue_circle(d: int) -> PlanarQuadrature:
    """Normalised arc length on the unit circle, exact for ``j + k <= d``."""
    return make_circle_arc(np.ones(d + 1), d)


def point_masses(masses) -> PlanarQuadrature:
    z = [complex(p) for p, _ in masses]
    beta = [float(b) for _, b in masses]
    if any(b <= 0 for b in beta):
        raise NonpositiveMass("point masses must be positive")
    return PlanarQuadrature(z, beta, math.inf)


def add_point_masses(m, masses):
    """Append atoms ``(z_j, beta_j)``; an empty list returns ``m`` itself."""
    masses = list(masses)
    if not masses:
        return m
    atoms = point_masses(masses)
    parts = m.parts if isinstance(m, Mixture) else ((1.0, m),)
    return Mixture(parts + ((1.0, atoms),))


def push_forward(m: PlanarQuadrature, psi: LaurentSeries) -> PlanarQuadrature:
    """Image of a quadrature under ``psi``; moments become Riemann sums.

    The result is tagged approximate with its node count as ``grid``.
    """
    if not isinstance(m, PlanarQuadrature):
        raise TypeError("push_forward needs a PlanarQuadrature")
    if np.any(np.abs(m.nodes) < psi.rho * (1 - 1e-12)):
        raise OutsideDomain(f"node inside the series radius {psi.rho}")
    return PlanarQuadrature(laurent_eval(psi, m.nodes), m.weights, math.inf,
                            approximate=True, grid=int(m.nodes.size))


def as_quadrature(m) -> PlanarQuadrature:
    """Flatten a quadrature or a mixture of quadratures into one node list."""
    if isinstance(m, PlanarQuadrature):
        return m
    if isinstance(m, Mixture):
        flat = [(c, as_quadrature(p)) for c, p in m.parts]
        nodes = np.concatenate([q.nodes for _, q in flat])
        weights = np.concatenate([c * q.weights for c, q in flat])
        grids = [q.grid for _, q in flat if q.grid is not None]
        return PlanarQuadrature(nodes, weights, min(q.degree for _, q in flat),
                                approximate=any(q.approximate for _, q in flat),
                                grid=sum(grids) if grids else None)
    raise NoNodes(f"{type(m).__name__} has no node representation")
