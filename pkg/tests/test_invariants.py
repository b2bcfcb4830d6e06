"""Hilbert data, graded pieces, sectional genus, singular schemes, condition K3."""
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forge.algebra.ideal import Ideal
from forge.constructions import fat_point_surface
from forge.invariants import (NotSaturated, check_condition_K3, graded_piece_basis, graded_piece_dim, hilbert_data,
                              hilbert_function, linear_syzygies, random_hyperplane_section, sectional_genus,
                              singular_scheme)
from forge.algebra.ideal import saturate_irrelevant

from .conftest import P, random_form, var


@pytest.fixture(scope="module")
def surfaces():
    r = random.Random(7)
    return {
        "dP5": fat_point_surface(3, [1] * 4, r, P, name="dP5"),
        "S8": fat_point_surface(4, [1] * 8, r, P, name="S8"),
        "S38": fat_point_surface(10, [3] * 10, r, P, name="S38"),
    }


def test_hilbert_data_examples():
    h = hilbert_data(Ideal([], 5, P))
    assert (h.dimension, h.degree) == (4, 1)
    f = random_form(6, 3, random.Random(1))
    h = hilbert_data(Ideal([f]))
    assert (h.dimension, h.degree) == (4, 3)


def test_hilbert_data_rejects_unsaturated():
    n = 3
    a, b, c = (var(n, i) for i in range(3))
    I = Ideal([a * a, a * b, b * b, a * c, b * c * c])
    with pytest.raises(NotSaturated):
        hilbert_data(I)
    h = hilbert_data(I, check=False)
    assert h.dimension == 0


@settings(max_examples=25)
@given(st.integers(2, 7), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_hilbert_data_hypersurfaces(n, d, seed):
    h = hilbert_data(Ideal([], n, P))
    assert (h.dimension, h.degree) == (n - 1, 1)
    f = random_form(n, d, random.Random(seed))
    h = hilbert_data(Ideal([f]))
    assert (h.dimension, h.degree) == (n - 2, d)


def test_graded_piece_dim_point_in_P1():
    # the point (1:0) in P^1: ideal (x1)
    I = Ideal([var(2, 1)])
    assert graded_piece_dim(I, 2) == 2


@pytest.mark.parametrize("name", ["dP5", "S8", "S38"])
def test_graded_piece_dim_complements_hilbert_function(surfaces, name):
    S = surfaces[name]
    n = S.nvars
    for d in range(1, 6):
        assert graded_piece_dim(S.ideal, d) + hilbert_function(S.ideal, d) == comb(n - 1 + d, d)
        assert len(graded_piece_basis(S.ideal, d)) == graded_piece_dim(S.ideal, d)


def test_registry_surface_graded_pieces(surfaces):
    assert graded_piece_dim(surfaces["dP5"].ideal, 2) == 5
    assert graded_piece_dim(surfaces["S38"].ideal, 3) == 10


def test_sectional_genus_of_plane():
    # plane x3 = x4 = x5 = 0 in P^5
    I = Ideal([var(6, 3), var(6, 4), var(6, 5)])
    assert sectional_genus(I) == 0


@pytest.mark.parametrize("name,genus", [("dP5", 1), ("S8", 3), ("S38", 6)])
def test_sectional_genus_two_slices_and_polynomial(surfaces, name, genus):
    S = surfaces[name]
    g1 = sectional_genus(S.ideal, random.Random(1))
    g2 = sectional_genus(S.ideal, random.Random(2))
    assert g1 == g2 == genus
    # cross-check against the Hilbert polynomial: HP(s) - HP(s-1) = d s + 1 - g
    h = hilbert_data(S.ideal)
    assert h.hp(10) - h.hp(9) == h.degree * 10 + 1 - genus


@pytest.mark.parametrize("name", ["dP5", "S8", "S38"])
def test_first_difference_is_section_polynomial(surfaces, name):
    S = surfaces[name]
    h = hilbert_data(S.ideal)
    C = saturate_irrelevant(random_hyperplane_section(S.ideal, random.Random(3)))
    hc = hilbert_data(C, check=False)
    assert hc.dimension == 1
    for s in range(5, 9):
        assert h.hp(s) - h.hp(s - 1) == hc.hp(s)


def test_singular_scheme_smooth_quadric_is_empty():
    a, b, c, d = (var(4, i) for i in range(4))
    sl = singular_scheme(Ideal([a * d - b * c]))
    assert sl.dimension == -1 and sl.points == 0


def test_singular_scheme_nodal_cubic_surface():
    # ordinary node at (0:0:0:1)
    a, b, c, d = (var(4, i) for i in range(4))
    f = d * (a * b - c * c) + a * a * a + b * b * b
    sl = singular_scheme(Ideal([f]))
    assert sl.dimension == 0 and sl.points == 1


def test_singular_scheme_smooth_surfaces(surfaces):
    for name in ("dP5", "S38"):
        sl = singular_scheme(surfaces[name].ideal, random.Random(0))
        assert sl.points == 0


def test_condition_K3_complete_intersection_fails():
    r = random.Random(5)
    cubics = [random_form(6, 3, r), random_form(6, 3, r)]
    assert linear_syzygies(cubics) == []
    assert check_condition_K3(cubics) is False


def test_condition_K3_rejects_mixed_degrees():
    r = random.Random(5)
    with pytest.raises(ValueError):
        check_condition_K3([random_form(4, 3, r), random_form(4, 2, r)])


def test_condition_K3_twisted_cubic_cone_cubics():
    # the twisted cubic has a linear resolution, hence so does the truncation I_{>=3}
    a, b, c, d = (var(4, i) for i in range(4))
    Q = [a * c - b * b, a * d - b * c, b * d - c * c]
    cubics = graded_piece_basis(Ideal(Q), 3)
    assert len(cubics) == 3 * 4 - 2
    assert check_condition_K3(cubics) is True


def test_condition_K3_S38(surfaces):
    cubics = graded_piece_basis(surfaces["S38"].ideal, 3)
    assert len(cubics) == 10
    assert check_condition_K3(cubics) is True
