import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opshift.classical import JacobiArrays, VerblunskySequence
from opshift.errors import (DegreeExceeded, EmptyMeasure, NegativeWeight, NoNodes, NonpositiveMass,
                            OutsideDomain)
from opshift.laurent import LaurentSeries, joukowski
from opshift.measure import (CircleVerblunsky, JacobiLine, Mixture, PlanarQuadrature, add_point_masses,
                             as_quadrature, golub_welsch, gram_matrix, lebesgue_circle,
                             make_annulus_area, make_circle_arc, make_disk_area, moment,
                             point_masses, push_forward)

exps = st.integers(min_value=0, max_value=6)


def test_golub_welsch_matches_numpy_legendre():
    for n in (1, 2, 5, 12):
        x, w = golub_welsch(n)
        xr, wr = np.polynomial.legendre.leggauss(n)
        np.testing.assert_allclose(np.sort(x), xr, atol=1e-14)
        np.testing.assert_allclose(w[np.argsort(x)], wr, atol=1e-14)


@pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
def test_disk_area_moments(radius):
    m = make_disk_area(radius, 16)
    for k in range(9):
        expected = math.pi * radius ** (2 * k + 2) / (k + 1)
        assert moment(m, (k, k)) == pytest.approx(expected, rel=1e-12)
    assert abs(moment(m, (3, 1))) < 1e-12 * radius ** 6


def test_unit_mass_disk_moments():
    m = make_disk_area(1.0, 12, unit_mass=True)
    assert m.mass == pytest.approx(1.0)
    assert [moment(m, (k, k)).real for k in range(4)] == pytest.approx([1, 1 / 2, 1 / 3, 1 / 4])


def test_annulus_moments():
    m = make_annulus_area(1.0, 2.0, 12)
    for k in range(6):
        expected = math.pi * (2.0 ** (2 * k + 2) - 1) / (k + 1)
        assert moment(m, (k, k)) == pytest.approx(expected, rel=1e-12)


def test_lebesgue_circle_is_orthonormal_monomials():
    G = gram_matrix(lebesgue_circle(12), 6)
    np.testing.assert_allclose(G, np.eye(7), atol=1e-14)


def test_circle_arc_grid_too_small():
    with pytest.raises(DegreeExceeded):
        make_circle_arc(np.ones(4), 8)


def test_degree_exceeded():
    with pytest.raises(DegreeExceeded):
        moment(make_disk_area(1.0, 4), (3, 2))


def test_closed_form_measures():
    m = CircleVerblunsky(VerblunskySequence.constant(0.0))
    assert moment(m, (2, 2)) == pytest.approx(1)
    assert abs(moment(m, (3, 1))) < 1e-15
    sc = JacobiLine(JacobiArrays.free())
    catalan = [1, 0, 1, 0, 2, 0, 5, 0, 14]
    for j in range(9):
        assert moment(sc, (j, 0)) == pytest.approx(catalan[j], abs=1e-12)
    # real support: z**j conj(z)**k only depends on j + k
    assert moment(sc, (3, 3)) == pytest.approx(moment(sc, (6, 0)))


def test_invalid_weights_and_masses():
    with pytest.raises(NegativeWeight):
        PlanarQuadrature([0, 1], [1.0, -1.0], 2)
    with pytest.raises(NonpositiveMass):
        point_masses([(1.0, 0.0)])
    with pytest.raises(NonpositiveMass):
        Mixture(((-1.0, lebesgue_circle(4)),))
    with pytest.raises(EmptyMeasure):
        Mixture(())
    with pytest.raises(EmptyMeasure):
        moment(PlanarQuadrature([], [], 3), (0, 0))


def test_push_forward_outside_domain():
    psi = LaurentSeries(np.array([1.0, 0.0, 1.0]), 1, rho=2.0)
    with pytest.raises(OutsideDomain):
        push_forward(make_disk_area(1.0, 4), psi)


def test_push_forward_of_circle_is_arcsine():
    # Joukowski image of the circle: moments of the arcsine law on [-2, 2]
    m = push_forward(lebesgue_circle(40), joukowski(1.0))
    assert m.approximate and m.grid == 41
    assert [moment(m, (j, 0)).real for j in (2, 4, 6)] == pytest.approx([2, 6, 20], abs=1e-12)


def test_point_masses_and_flattening():
    m = add_point_masses(lebesgue_circle(8), [(2.0, 0.5), (1j, 0.25)])
    assert m.mass == pytest.approx(1.75)
    q = as_quadrature(m)
    assert q.nodes.size == 9 + 2
    assert moment(q, (1, 1)) == pytest.approx(moment(m, (1, 1)))
    circle = lebesgue_circle(4)
    assert add_point_masses(circle, []) is circle


@settings(max_examples=50, deadline=None)
@given(exps, exps)
def test_moments_hermitian(j, k):
    m = add_point_masses(make_disk_area(1.3, 12), [(0.5 + 0.5j, 0.3)])
    assert moment(m, (j, k)) == pytest.approx(np.conj(moment(m, (k, j))), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(exps, exps, st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_mixture_linearity(j, k, c1, c2):
    a, b = make_disk_area(1.0, 12), lebesgue_circle(12)
    mix = Mixture(((c1, a), (c2, b)))
    expected = c1 * moment(a, (j, k)) + c2 * moment(b, (j, k))
    assert moment(mix, (j, k)) == pytest.approx(expected, rel=1e-12, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6))
def test_gram_matrix_positive_definite(n):
    G = gram_matrix(make_disk_area(1.0, 2 * n), n)
    np.testing.assert_allclose(G, G.conj().T, atol=1e-13)
    assert np.all(np.linalg.eigvalsh(G) > 0)


def test_closed_form_parts_have_no_nodes():
    m = Mixture(((1.0, JacobiLine(JacobiArrays.free())), (1.0, lebesgue_circle(9))))
    with pytest.raises(NoNodes):
        as_quadrature(m)
