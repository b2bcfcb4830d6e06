"""Fat-point systems, images, projections, point sampling and Galois orbits."""
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forge.algebra.ideal import Ideal, intersect
from forge.algebra.poly import Polynomial
from forge.constructions import fat_point_surface, random_plane_points
from forge.invariants import hilbert_data, sectional_genus
from forge.schemes import (DegenerateImage, FatPointSystem, Parametrization, ProjectiveScheme, SamplingError,
                           fat_point_basis, image_of_parametrization, project_from, random_point,
                           solve_zero_dim_ideal, zero_dim_orbits)

from .conftest import P, random_form, var


def test_fat_point_basis_sizes():
    r = random.Random(3)
    assert len(fat_point_basis(FatPointSystem(10, random_plane_points(10, r, P), [3] * 10, P))) == 6
    assert len(fat_point_basis(FatPointSystem(4, random_plane_points(5, r, P), [2, 1, 1, 1, 1], P))) == 8
    assert len(fat_point_basis(FatPointSystem(1, [], [], P))) == 3
    # six general points impose independent conditions on conics
    assert fat_point_basis(FatPointSystem(2, random_plane_points(6, r, P), [1] * 6, P)) == []


def test_fat_point_basis_vanishes_to_order():
    r = random.Random(4)
    pts = random_plane_points(3, r, P)
    B = fat_point_basis(FatPointSystem(5, pts, [3, 2, 1], P))
    assert len(B) == 21 - 6 - 3 - 1
    for f in B:
        assert f.evaluate(pts[2]) == 0
        for i in range(3):
            assert f.diff(i).evaluate(pts[1]) == 0
            for j in range(3):
                assert f.diff(i).diff(j).evaluate(pts[0]) == 0


def test_fat_point_rejects_repeated_points():
    with pytest.raises(ValueError):
        fat_point_basis(FatPointSystem(3, [[1, 2, 3], [2, 4, 6]], [1, 1], P))


def test_image_of_veronese_conic():
    s, t = var(2, 0), var(2, 1)
    C = image_of_parametrization(Parametrization([s * s, s * t, t * t]))
    h = C.hilbert()
    assert (h.dimension, h.degree) == (1, 2)
    q = var(3, 0) * var(3, 2) - var(3, 1) * var(3, 1)
    assert C.ideal.gb().contains(q)


def test_image_by_elimination_agrees():
    s, t = var(2, 0), var(2, 1)
    par = Parametrization([s ** 3, s * s * t, s * t * t, t ** 3])
    A = image_of_parametrization(par, method="interpolation")
    B = image_of_parametrization(par, method="elimination")
    assert A.ideal.gb() == B.ideal.gb()
    assert (A.hilbert().dimension, A.hilbert().degree) == (1, 3)


def test_degenerate_image_rejected():
    s, t = var(2, 0), var(2, 1)
    with pytest.raises(DegenerateImage):
        image_of_parametrization(Parametrization([s * s, (s * s).scale(2), (s * s).scale(5)]))


def test_octic_surface_T():
    T = fat_point_surface(4, [2, 1, 1, 1, 1], random.Random(5), P, name="T")
    h = T.hilbert()
    assert T.nvars == 8
    assert (h.dimension, h.degree) == (2, 8)
    assert sectional_genus(T.ideal, random.Random(1)) == 2


def test_project_conic_from_external_point():
    s, t = var(2, 0), var(2, 1)
    C = image_of_parametrization(Parametrization([s * s, s * t, t * t]))
    L = project_from(C, [np.array([1, 0, 1])], random.Random(2))
    assert L.nvars == 2
    assert L.hilbert().dimension == 1 and L.hilbert().degree == 1


def test_project_del_pezzo_from_general_point():
    r = random.Random(6)
    S = fat_point_surface(3, [1] * 4, r, P)
    c = np.array([r.randrange(P) for _ in range(6)])
    T = project_from(S, [c], r)
    assert T.nvars == 5
    assert (T.hilbert().dimension, T.hilbert().degree) == (2, 5)


def test_random_point_examples():
    r = random.Random(8)
    S = fat_point_surface(10, [3] * 10, r, P)
    x = random_point(S, r)
    assert all(g.evaluate(x) == 0 for g in S.ideal.gens)
    f = random_form(6, 3, r)
    X = ProjectiveScheme(Ideal([f]), 6)
    y = random_point(X, r)
    assert f.evaluate(y) == 0 and any(y)
    with pytest.raises((SamplingError, ValueError)):
        random_point(ProjectiveScheme(Ideal.unit(3, P), 3), r)


@pytest.mark.parametrize("degree,mults", [(3, [1] * 4), (4, [1] * 8), (10, [3] * 10), (4, [2, 1, 1, 1, 1])])
def test_parametrization_membership(degree, mults):
    r = random.Random(degree)
    S = fat_point_surface(degree, mults, r, P)
    _, pts = S.parametrization.sample(r, 50)
    for x in pts:
        assert S.contains(x)


# ---------------------------------------------------------------------------
# zero-dimensional schemes
# ---------------------------------------------------------------------------

def _point(pt, n=3):
    """Ideal of a rational point of P^{n-1}."""
    i = next(k for k, c in enumerate(pt) if c)
    gens = []
    for j in range(n):
        if j != i:
            co = [0] * n
            co[i], co[j] = pt[j], -pt[i]
            gens.append(Polynomial.linear(co, P))
    return Ideal(gens, n, P)


def test_two_rational_points():
    I = intersect(_point([1, 2, 3]), _point([1, 5, 7]))
    orbits = zero_dim_orbits(I, random.Random(0))
    assert sorted(o.degree for o in orbits) == [1, 1]
    pts = sorted(tuple(o.rational_point()) for o in orbits)
    norm = sorted(tuple(c * pow(q[0], P - 2, P) % P for c in q) for q in pts)
    assert norm == [(1, 2, 3), (1, 5, 7)]


def test_conjugate_pair_is_one_orbit():
    a = next(a for a in range(2, 100) if pow(a, (P - 1) // 2, P) == P - 1)
    x0, x1, x2 = (var(3, i) for i in range(3))
    I = Ideal([x1 * x1 - x0 * x0.scale(a), x2 - x0])
    orbits = zero_dim_orbits(I, random.Random(0))
    assert [o.degree for o in orbits] == [2]
    # the orbit's reduced ideal recovers the scheme
    gens = orbits[0].ideal_generators()
    assert all(Ideal(gens).gb().contains(g) for g in I.gens)


@settings(max_examples=20)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_orbit_degree_conservation(d1, d2, seed):
    r = random.Random(seed)
    f, g = random_form(3, d1, r), random_form(3, d2, r)
    res = solve_zero_dim_ideal(Ideal([f, g]), r)
    assert res.degree == d1 * d2
    assert sum(o.degree * o.multiplicity for o in res.orbits) == res.degree
    assert hilbert_data(Ideal([f, g])).degree == d1 * d2


def test_orbit_multiplicities():
    x0, x1, x2 = (var(3, i) for i in range(3))
    # double point at (1:0:0) and a simple point at (0:1:0)
    I = Ideal([x2, x1 * x1 * x0])
    res = solve_zero_dim_ideal(I, random.Random(1))
    assert res.degree == 3
    assert sorted((o.degree, o.multiplicity) for o in res.orbits) == [(1, 1), (1, 2)]
