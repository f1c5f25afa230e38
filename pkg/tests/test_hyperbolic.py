import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wicks.errors import Infeasible, NonPositive, NumericalOverflow
from wicks.hyperbolic import (CLOSURE_TOL, J, ORIGIN, boost, develop_lengths, develop_polygon,
                              holonomy_deviation, hyperbolic_distance, isometry_defect,
                              membership_residual, minkowski, numerical_rank, project_to_variety,
                              regular_inradius, regular_lengths, regular_side_length,
                              reorthogonalize, residual_jacobian, rotation, triangle_angles,
                              triangle_side)
from wicks.transforms import GENUS_ONE


def test_regular_side_closed_form():
    s = regular_side_length(18)
    assert np.cosh(s / 2) == pytest.approx(np.cos(np.pi / 18) / np.sin(np.pi / 3))
    assert s == pytest.approx(1.0358861383, abs=1e-9)


def test_regular_polygon_from_right_triangle():
    # right triangle (center, edge midpoint, vertex): angles pi/n, pi/2, pi/3
    for n in (7, 12, 18, 30):
        half = triangle_side(np.pi / n, np.pi / 2, np.pi / 3)
        assert 2 * half == pytest.approx(regular_side_length(n), rel=1e-12)
        r = triangle_side(np.pi / 3, np.pi / 2, np.pi / n)
        assert r == pytest.approx(regular_inradius(n), rel=1e-12)


@pytest.mark.parametrize("n", [7, 8, 9, 10, 12, 18, 30])
def test_regular_polygon_closes(n):
    dev = develop_lengths(np.full(n, regular_side_length(n)))
    assert holonomy_deviation(dev.holonomy) < 1e-9


def test_inradius_doubled_does_not_close():
    # twice the inradius is the other natural guess; it fails to close
    s = 2 * regular_inradius(18)
    assert s == pytest.approx(3.4382142, abs=1e-6)
    with pytest.raises(NumericalOverflow):
        develop_lengths(np.full(18, s))


def test_infeasible_small_n():
    for n in (3, 6):
        with pytest.raises(Infeasible):
            regular_side_length(n)


def test_triangle_side():
    c = triangle_side(np.pi / 4, np.pi / 4, np.pi / 4)
    assert np.cosh(c) == pytest.approx(1 + np.sqrt(2))
    assert c == pytest.approx(1.52857, abs=1e-5)
    with pytest.raises(Infeasible):
        triangle_side(np.pi / 3, np.pi / 3, np.pi / 3)


@settings(max_examples=50)
@given(st.floats(0.05, 1.0), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_triangle_round_trip(a, b, c):
    total = a + b + c
    if total >= np.pi * 0.98:
        return
    A, B, C = a, b, c
    sides = (triangle_side(A, B, C), triangle_side(B, C, A), triangle_side(C, A, B))
    assert triangle_side(C, A, B) == pytest.approx(triangle_side(C, B, A))
    back = triangle_angles(*sides)
    assert back == pytest.approx((A, B, C), rel=1e-7)


def test_isometries():
    M = boost(0.7) @ rotation(1.1) @ boost(2.0)
    assert isometry_defect(M) < 1e-12
    noisy = M + 1e-6 * np.random.default_rng(1).normal(size=(3, 3))
    assert isometry_defect(reorthogonalize(noisy)) < 1e-12
    assert minkowski(ORIGIN, ORIGIN) == -1
    assert hyperbolic_distance(ORIGIN, boost(1.3) @ ORIGIN) == pytest.approx(1.3)


def test_long_chain_stays_isometric():
    rng = np.random.default_rng(5)
    L = regular_side_length(18) * (1 + 0.05 * rng.uniform(-1, 1, 18))
    for F in develop_lengths(L).frames:
        assert isometry_defect(F) < 1e-10
    # the absolute defect grows with the entries; relative to |F|^2 it stays at round-off
    L = regular_side_length(30) * (1 + 0.05 * rng.uniform(-1, 1, 30))
    for F in develop_lengths(L).frames:
        assert isometry_defect(F) / np.abs(F).max() ** 2 < 1e-12


def test_holonomy_conjugation_covariant():
    L = np.linspace(0.8, 1.3, 18)
    base = boost(0.4) @ rotation(0.9)
    H0 = develop_lengths(L).holonomy
    H1 = develop_lengths(L, base=base).holonomy
    assert np.allclose(H1, base @ H0 @ np.linalg.inv(base), atol=1e-9)
    assert holonomy_deviation(H0) > 1e-3 and holonomy_deviation(H1) > 1e-3


def test_scaled_regular_does_not_close():
    L = 1.1 * np.full(18, regular_side_length(18))
    assert holonomy_deviation(develop_lengths(L).holonomy) > 1e-3


def test_chord_is_distance_of_vertices(genus2):
    w = genus2[0].canon
    dev = develop_polygon(w, regular_lengths(w))
    assert dev.chord(0, 1) == pytest.approx(regular_side_length(18))
    assert dev.chord(2, 7) == pytest.approx(
        np.arccosh(-minkowski(dev.vertices[2], dev.vertices[7])))
    # interior angle at a vertex from the triangle of it and its neighbours
    assert dev.angle(1, 0, 2) == pytest.approx(2 * np.pi / 3, rel=1e-9)


def test_develop_errors():
    with pytest.raises(NonPositive):
        develop_lengths([1.0, 0.0, 1.0])
    with pytest.raises(NumericalOverflow):
        develop_lengths([60.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        develop_polygon(GENUS_ONE, [1.0, 1.0])


def test_residual_at_regular_point(genus2):
    for c in genus2:
        res = membership_residual(c.canon, regular_lengths(c.canon))
        assert len(res) == 12
        assert res.max_abs() < 1e-8


def test_pairing_component_isolated(genus2):
    w = genus2[0].canon
    L = regular_lengths(w)
    i = w.tokens.index(2 * 3)   # letter d
    L[i] += 0.01
    res = membership_residual(w, L)
    nonzero = np.flatnonzero(np.abs(res.pairing) > 1e-12)
    assert nonzero.tolist() == [3]


def test_jacobian_rank(genus2):
    for c in genus2:
        Jac = residual_jacobian(c.canon, regular_lengths(c.canon))
        assert Jac.shape == (12, 18)
        assert numerical_rank(Jac) == 12


def test_projection(genus2):
    rng = np.random.default_rng(2024)
    for c in genus2:
        L0 = regular_lengths(c.canon) * (1 + 0.02 * rng.uniform(-1, 1, 18))
        p = project_to_variety(c.canon, L0)
        assert p.residual < CLOSURE_TOL
        assert p.iterations <= 20
        assert np.all(p.lengths > 0)
        assert membership_residual(c.canon, p.lengths).norm() < CLOSURE_TOL


def test_projection_from_solution_is_immediate(genus2):
    w = genus2[0].canon
    p = project_to_variety(w, regular_lengths(w))
    assert p.iterations == 0
