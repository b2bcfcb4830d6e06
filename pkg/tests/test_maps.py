"""Rational maps: images, fibers, projective degrees, inverses and composition."""
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forge.algebra.ideal import Ideal
from forge.algebra.linalg import inverse, rank
from forge.algebra.poly import Polynomial
from forge.harness import build_example
from forge.invariants import hilbert_data
from forge.maps import InverseNotFound, RationalMap, compose, round_trip_ok
from forge.schemes import DegenerateImage, ProjectiveScheme

from .conftest import P, var


def Pn(n):
    return ProjectiveScheme.projective_space(n, P)


def linear_map(A):
    n = len(A)
    return RationalMap(Pn(n), [Polynomial.linear(list(row), P) for row in A], "A")


def random_invertible(n, r):
    while True:
        A = np.array([[r.randrange(P) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        if rank(A, P) == n:
            return A


def cremona():
    x0, x1, x2 = (var(3, i) for i in range(3))
    return RationalMap(Pn(3), [x1 * x2, x0 * x2, x0 * x1], "cremona")


def proportional(u, v):
    return rank(np.vstack([np.asarray(u) % P, np.asarray(v) % P]), P) == 1


def test_identity_image_and_degrees():
    f = linear_map(np.eye(5, dtype=np.int64))
    img = f.image(random.Random(0))
    assert img.hilbert().dimension == 4 and img.hilbert().degree == 1
    assert f.projective_degrees(random.Random(0)) == [1, 1, 1, 1, 1]


def test_fiber_of_linear_isomorphism_is_a_point():
    r = random.Random(1)
    A = random_invertible(4, r)
    f = linear_map(A)
    x = np.array([r.randrange(P) for _ in range(4)])
    I = f.fiber_over(f(x)[0], r)
    h = hilbert_data(I, check=False)
    assert (h.dimension, h.degree) == (0, 1)
    assert all(g.evaluate(x) == 0 for g in I.gens)


def test_inverse_of_linear_automorphism():
    r = random.Random(2)
    A = random_invertible(4, r)
    f = linear_map(A)
    g = f.inverse_by_interpolation(1, rng=r)
    B = np.array([[c.terms.get(tuple(int(i == j) for i in range(4)), 0) for j in range(4)] for c in g.components])
    # B is a scalar multiple of A^{-1}
    Ainv = inverse(A, P)
    k = next((int(B[i, j]) * pow(int(Ainv[i, j]), P - 2, P) % P for i in range(4) for j in range(4) if Ainv[i, j]))
    assert np.array_equal(B % P, Ainv * k % P)


def test_inverse_wrong_degree_reported():
    f = cremona()
    with pytest.raises(InverseNotFound):
        f.inverse_by_interpolation(1, rng=random.Random(3))


def test_cremona_degrees_and_inverse():
    f = cremona()
    assert f.projective_degrees(random.Random(4)) == [1, 2, 1]
    g = f.inverse_by_interpolation(2, rng=random.Random(5))
    assert round_trip_ok(f, g, random.Random(6), 100)


def test_compose_removes_common_factor():
    f = cremona()
    h = compose(f, f, random.Random(7))
    assert h.degree == 1
    r = random.Random(8)
    for _ in range(20):
        x = [r.randrange(1, P) for _ in range(3)]
        assert proportional(h(x)[0], x)


def test_compose_with_linear_map_matches_pointwise():
    r = random.Random(9)
    s, t = var(2, 0), var(2, 1)
    v = RationalMap(Pn(2), [s ** 3, s * s * t, s * t * t, t ** 3], "v3")
    g = linear_map(random_invertible(4, r))
    h = compose(v, g, r)
    for _ in range(20):
        x = [r.randrange(P) for _ in range(2)]
        assert proportional(h(x)[0], g(v(x)[0])[0])


def test_compose_into_base_locus_rejected():
    s, t = var(2, 0), var(2, 1)
    f = RationalMap(Pn(2), [s, t, Polynomial(2, {}, P)], "line")
    x0, x1, x2 = (var(3, i) for i in range(3))
    g = RationalMap(Pn(3), [x2 * x0, x2 * x1, x2 * x2], "g")
    with pytest.raises(DegenerateImage):
        compose(f, g, random.Random(0), check=0)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_map_properties_on_cremona(seed):
    r = random.Random(seed)
    f = cremona()
    img = f.image(r)
    for _ in range(10):
        x = np.array([r.randrange(1, P) for _ in range(3)])
        y = f(x)[0]
        assert img.contains(y)
        I = f.fiber_over(y, r)
        assert all(g.evaluate(x) == 0 for g in I.gens)


@pytest.fixture(scope="module")
def fano():
    return build_example("fano-i")


def test_fano_map_degree_reversal(fano):
    mu, inv = fano.mu, fano.inverse
    d = mu.projective_degrees(random.Random(1))
    e = inv.projective_degrees(random.Random(2))
    assert d[0] == fano.X.hilbert().degree == 3
    assert e[0] == 1
    assert d == e[::-1]
    assert round_trip_ok(mu, inv, random.Random(3), 100)


def test_fano_image_membership(fano):
    r = random.Random(4)
    mu = fano.mu_ext
    img = mu.image(r)
    _, ys = mu.sample(r, 50)
    assert all(img.contains(y) for y in ys)
    xs, ys = fano.mu.sample(r, 5)
    for x, y in zip(xs, ys):
        I = fano.mu.fiber_over(y, r)
        assert all(g.evaluate(x) == 0 for g in I.gens)
