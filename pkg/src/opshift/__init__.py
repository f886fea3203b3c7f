"""Orthogonal polynomials in the plane and their Hessenberg (Bergman shift) matrices."""

__version__ = "0.1.0"

from .arnoldi import OrthonormalBasis, arnoldi, evaluate_poly
from .asymptotics import (RatioReport, SymbolEstimate, degenerate_limit, ratio_series,
                          symbol_extract, weak_moment_sequence, weakzero_bound_check,
                          zero_counting_moments)
from .classical import (DiscreteSpectralMeasure, JacobiArrays, VerblunskySequence,
                        flip_spectral, ggt_matrix, jacobi_matrix, khruschev_check,
                        m_function, paraorthogonal, subsequence_embedding, szego_recursion)
from .hessenberg import (HessenbergMatrix, PathChain, char_poly, diagonal_limit,
                         full_power_diagonal, lemma_repeat_check, norm_bound,
                         resolvent_corner, scaled_diagonal, truncated_power_diagonal)
from .laurent import (LaurentSeries, SeriesAtInfinity, b_matrix_power, equilibrium_moments,
                      joukowski, laurent_eval, laurent_multiply, linear_map, ratio_inverse)
from .limits import LimitEstimate, estimate_limit
from .measure import (CircleVerblunsky, JacobiLine, Mixture, MomentKey, PlanarQuadrature,
                      add_point_masses, make_annulus_area, make_circle_arc, make_disk_area,
                      moment, push_forward)

__all__ = [
    "__version__",
    "OrthonormalBasis", "arnoldi", "evaluate_poly",
    "RatioReport", "SymbolEstimate", "degenerate_limit", "ratio_series", "symbol_extract",
    "weak_moment_sequence", "weakzero_bound_check", "zero_counting_moments",
    "DiscreteSpectralMeasure", "JacobiArrays", "VerblunskySequence", "flip_spectral",
    "ggt_matrix", "jacobi_matrix", "khruschev_check", "m_function", "paraorthogonal",
    "subsequence_embedding", "szego_recursion",
    "HessenbergMatrix", "PathChain", "char_poly", "diagonal_limit", "full_power_diagonal",
    "lemma_repeat_check", "norm_bound", "resolvent_corner", "scaled_diagonal",
    "truncated_power_diagonal",
    "LaurentSeries", "SeriesAtInfinity", "b_matrix_power", "equilibrium_moments", "joukowski",
    "laurent_eval", "laurent_multiply", "linear_map", "ratio_inverse",
    "LimitEstimate", "estimate_limit",
    "CircleVerblunsky", "JacobiLine", "Mixture", "MomentKey", "PlanarQuadrature",
    "add_point_masses", "make_annulus_area", "make_circle_arc", "make_disk_area", "moment",
    "push_forward",
]
