"""Multisecant systems, lines through a point, congruence classes, secants, lattice data, U recovery."""
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from forge.algebra.ideal import Ideal
from forge.congruences import (LatticeData, classify_congruence, count_secant_lines, cubics_through,
                               discriminant, fiber_curve_data, lines_through_point, multiplicity_witness,
                               multisecant_system, recover_associated_surface, self_intersection_in_cubic,
                               trisecant_locus_dim)
from forge.constructions import fat_point_surface
from forge.invariants import graded_piece_dim, sectional_genus
from forge.schemes import random_point

from .conftest import P, bundle, var


@pytest.fixture(scope="module")
def dP5():
    return fat_point_surface(3, [1] * 4, random.Random(11), P, name="dP5")


@pytest.fixture(scope="module")
def S38():
    return bundle("iii").S


# ---------------------------------------------------------------------------
# lattice data
# ---------------------------------------------------------------------------

def test_self_intersection_examples():
    assert self_intersection_in_cubic(9, -7, 5, 7, 5) == 41
    assert self_intersection_in_cubic(5, -5, 5, 7, 0) == 13
    assert self_intersection_in_cubic(10, 0, -1, 13, 0) == 46


def test_discriminant_examples():
    assert discriminant(9, 41) == 42
    assert discriminant(5, 13) == 14
    assert discriminant(10, 46) == 38


@given(st.integers(1, 30), st.integers(-40, 40), st.integers(-20, 10), st.integers(3, 40), st.integers(0, 10))
def test_lattice_data_consistent(d, HK, K2, chi, delta):
    L = LatticeData.from_invariants(d, HK, K2, chi, delta)
    assert L.discriminant == 3 * L.self_intersection - d * d
    assert L.self_intersection == 6 * d + 3 * HK + K2 - chi + 2 * delta


# ---------------------------------------------------------------------------
# linear systems
# ---------------------------------------------------------------------------

def test_cubics_through_S38(S38):
    Phi = cubics_through(S38)
    assert Phi.target_nvars == 10
    assert all(g.degree() == 3 for g in Phi.components)


def test_cubics_through_needs_two_forms():
    # a cubic hypersurface has a single cubic through it
    f = var(4, 0) ** 3 + var(4, 1) ** 3 + var(4, 2) ** 3 + var(4, 3) ** 3
    from forge.schemes import ProjectiveScheme
    X = ProjectiveScheme(Ideal([f]), 4)
    with pytest.raises(ValueError):
        cubics_through(X)


def test_multisecant_quadrics_of_del_Pezzo(dP5):
    mu = multisecant_system(dP5, 1)
    assert mu.target_nvars == 5
    assert all(g.degree() == 2 for g in mu.components)


def test_multisecant_quintics_of_S38(S38):
    mu = multisecant_system(S38, 2, random.Random(1))
    assert mu.target_nvars == 5
    assert all(g.degree() == 5 for g in mu.components)


def test_multisecant_methods_agree(dP5):
    A = multisecant_system(dP5, 2, random.Random(2), method="points")
    B = multisecant_system(dP5, 2, random.Random(3), method="saturation")
    from forge.algebra.linalg import rank, vector_of
    from forge.algebra.monomials import monomials_of_degree
    monos = monomials_of_degree(6, 5)
    MA = np.array([vector_of(f, monos) for f in A.components])
    MB = np.array([vector_of(f, monos) for f in B.components])
    assert rank(MA, P) == rank(MB, P) == rank(np.vstack([MA, MB]), P)


def test_multisecant_rejects_bad_e(dP5):
    with pytest.raises(ValueError):
        multisecant_system(dP5, 0)


# ---------------------------------------------------------------------------
# lines through a point
# ---------------------------------------------------------------------------

def test_two_rulings_of_a_quadric():
    a, b, c, d = (var(4, i) for i in range(4))
    Q = [a * d - b * c]
    q = [1, 2, 3, 6]
    D = lines_through_point(Q, q, random.Random(0))
    assert D.degree == 2


def test_no_lines_through_general_point_of_cubic_surface():
    # a smooth cubic surface has no lines through a general point
    a, b, c, d = (var(4, i) for i in range(4))
    f = a ** 3 + b ** 3 + c ** 3 + d ** 3
    r = random.Random(1)
    from forge.schemes import point_on_hypersurface
    q = point_on_hypersurface(f, r)
    assert lines_through_point([f], q, r).degree == 0


# ---------------------------------------------------------------------------
# classification and secants on S38
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("seed", [0, 1, 2])
def test_S38_classes_stable_across_seeds(S38, seed):
    b = bundle("iii")
    r = random.Random(100 + seed)
    p = np.array([r.randrange(P) for _ in range(6)])
    rep = classify_congruence(S38, b.Phi, p, r, Z=b.Z_equations, seed=seed)
    assert rep.classes == {(1, 2): 7, (2, 5): 1}
    assert rep.total_lines == rep.scheme_degree == 8
    assert rep.congruence_class() == (2, 5)
    assert count_secant_lines(S38, p, r) == rep.classes[(1, 2)]


def test_secant_lines_del_Pezzo(dP5):
    assert count_secant_lines(dP5, None, random.Random(4)) == 1


def test_secant_lines_rejects_point_on_surface(dP5):
    x = random_point(dP5, random.Random(5))
    with pytest.raises(ValueError):
        count_secant_lines(dP5, x, random.Random(5))


def test_trisecants_of_veronese_surface_empty():
    V = fat_point_surface(2, [], random.Random(6), P, name="veronese")
    assert V.nvars == 6 and V.hilbert().degree == 4
    assert trisecant_locus_dim(V, random.Random(6)) == -1


def test_congruence_curves_through_points(S38):
    b = bundle("iii")
    r = random.Random(7)
    for _ in range(5):
        p = np.array([r.randrange(P) for _ in range(6)])
        dim, deg, meet = fiber_curve_data(S38, b.mu_ext, p, r)
        assert (dim, deg, meet) == (1, 2, 5)
        I = b.mu_ext.fiber_over(b.mu_ext(p)[0], r)
        assert all(g.evaluate(p) == 0 for g in I.gens)


def test_secant_line_is_the_fiber_for_del_Pezzo(dP5):
    mu = multisecant_system(dP5, 1)
    r = random.Random(8)
    for _ in range(5):
        p = np.array([r.randrange(P) for _ in range(6)])
        assert fiber_curve_data(dP5, mu, p, r) == (1, 1, 2)


# ---------------------------------------------------------------------------
# associated surface
# ---------------------------------------------------------------------------

def test_fano_associated_surface():
    b = bundle("fano-i")
    A = b.U
    U = A.scheme
    assert (U.hilbert().dimension, U.hilbert().degree) == (2, 9)
    assert sectional_genus(U.ideal, random.Random(1)) == 8
    assert sum(o.degree for o, _ in A.points) >= 60
    for o, pt in A.points:
        F = o.field
        assert all(F.evaluate(g, pt).is_zero() for g in U.ideal.gens)


def test_S38_associated_surface_points_and_multiplicity():
    b = bundle("iii")
    A = b.U
    U = A.scheme
    assert sum(o.degree for o, _ in A.points) >= 60
    for o, pt in A.points:
        assert all(o.field.evaluate(g, pt).is_zero() for g in U.ideal.gens)
    orders = multiplicity_witness(b.inverse, U, random.Random(2), count=20)
    assert len(orders) == 20 and min(orders) >= 2
