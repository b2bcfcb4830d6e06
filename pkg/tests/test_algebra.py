"""Exact arithmetic: fields, polynomials, Groebner bases, saturation, elimination, roots."""
import random

import flint
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forge.algebra.field import FieldElement, inv, is_prime
from forge.algebra.groebner import (GroebnerBasis, OrderMismatch, buchberger, groebner_basis, normal_form,
                                    s_pairs_reduce_to_zero)
from forge.algebra.hilbert import hilbert_numerator
from forge.algebra.ideal import Ideal, colon, eliminate, intersect, saturate, saturate_irrelevant
from forge.algebra.monomials import GREVLEX, LEX, elimination_order, monomials_of_degree
from forge.algebra.poly import Polynomial
from forge.algebra.textio import format_ideal, format_polynomial, parse_ideal, parse_polynomial
from forge.algebra.univariate import factor, roots, univariate_roots
from forge.invariants import hilbert_data, hilbert_function

from .conftest import P, poly, random_form, var


def x(i, n=4):
    return var(n, i)


# ---------------------------------------------------------------------------
# field
# ---------------------------------------------------------------------------

def test_default_prime_is_prime():
    assert is_prime(P) and is_prime(32003)
    assert not is_prime(65535)


@given(st.integers(), st.integers(), st.integers())
def test_field_axioms(a, b, c):
    A, B, C = FieldElement(a, P), FieldElement(b, P), FieldElement(c, P)
    assert (A + B) + C == A + (B + C)
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert 0 <= A.value < P
    if A.value:
        assert A * A.inverse() == FieldElement(1, P)
        assert inv(A.value, P) == A.inverse().value


# ---------------------------------------------------------------------------
# Groebner bases: contract examples
# ---------------------------------------------------------------------------

def test_gb_of_variables_is_itself():
    G = groebner_basis([x(0), x(1)])
    assert set(G.polys) == {x(0), x(1)}


def twisted_cubic():
    # 2x2 minors of [[x0, x1, x2], [x1, x2, x3]]
    a, b, c, d = (x(i) for i in range(4))
    return [a * c - b * b, a * d - b * c, b * d - c * c]


def test_twisted_cubic_basis():
    G = groebner_basis(twisted_cubic())
    assert len(G) == 3
    assert all(g.degree() == 2 for g in G)
    assert s_pairs_reduce_to_zero(G.polys)


def test_principal_ideal_is_monic_generator():
    f = x(0) * x(1).scale(7) + x(2) * x(2).scale(3)
    G = groebner_basis([f])
    assert len(G) == 1
    assert G[0] == f.scale(pow(f.with_order(GREVLEX).lc, P - 2, P))
    assert G[0].lc == 1


def test_normal_form_examples():
    G = groebner_basis(twisted_cubic())
    g = twisted_cubic()[1] * x(3)
    assert normal_form(g, G).is_zero()
    one = Polynomial.constant(4, 1)
    assert normal_form(one, G) == one
    assert normal_form(x(0) * x(0), groebner_basis([x(0)])).is_zero()


def test_normal_form_order_mismatch():
    G = groebner_basis(twisted_cubic(), LEX)
    with pytest.raises(OrderMismatch):
        normal_form(x(0), G, order=GREVLEX)


def test_normal_form_is_reduced_and_congruent(rng):
    G = groebner_basis(twisted_cubic())
    f = random_form(4, 3, rng)
    r = normal_form(f, G)
    lms = G.leading_monomials()
    assert not any(all(a <= b for a, b in zip(m, t)) for t in r.terms for m in lms)
    assert G.contains(f - r)


# ---------------------------------------------------------------------------
# properties over random small ideals
# ---------------------------------------------------------------------------

@st.composite
def small_ideals(draw, homogeneous=True):
    n = draw(st.integers(3, 4))
    k = draw(st.integers(1, 3))
    seed = draw(st.integers(0, 10 ** 6))
    r = random.Random(seed)
    gens = []
    for _ in range(k):
        d = draw(st.integers(1, 3))
        f = random_form(n, d, r, density=0.5)
        if not homogeneous and d > 1:
            f = f + random_form(n, d - 1, r, density=0.5)
        gens.append(f)
    return gens


@settings(max_examples=20)
@given(small_ideals(homogeneous=True))
def test_gb_uniqueness_across_engines(gens):
    F = groebner_basis(gens, engine="f4")
    for sel in ("sugar", "normal", "fifo"):
        B = GroebnerBasis(buchberger(gens, selection=sel), GREVLEX, gens[0].nvars, P)
        assert B == F
    assert s_pairs_reduce_to_zero(F.polys)
    assert all(normal_form(g, F).is_zero() for g in gens)


@settings(max_examples=20)
@given(small_ideals(homogeneous=False))
def test_gb_uniqueness_inhomogeneous(gens):
    F = groebner_basis(gens, engine="f4")
    B = groebner_basis(gens, engine="buchberger")
    assert F == B
    assert s_pairs_reduce_to_zero(F.polys)


@settings(max_examples=10)
@given(small_ideals(homogeneous=True), st.integers(0, 1000))
def test_gb_uniqueness_lex(gens, seed):
    F = groebner_basis(gens, LEX, engine="f4")
    B = groebner_basis(gens, LEX, engine="buchberger")
    assert F == B
    assert s_pairs_reduce_to_zero(F.polys, LEX)


@settings(max_examples=15)
@given(small_ideals(homogeneous=True), st.integers(0, 1000))
def test_saturation_idempotent(gens, seed):
    n = gens[0].nvars
    I = Ideal(gens)
    J = Ideal([var(n, 0), var(n, 1)])
    S1 = saturate(I, J)
    S2 = saturate(S1, J)
    assert S1.gb() == S2.gb()
    T1 = saturate_irrelevant(I, random.Random(seed))
    T2 = saturate_irrelevant(T1, random.Random(seed + 1))
    assert T1.gb() == T2.gb()


@settings(max_examples=15)
@given(small_ideals(homogeneous=True))
def test_homogeneity_preserved(gens):
    n = gens[0].nvars
    I = Ideal(gens)
    f = gens[0]
    assert (f + gens[-1].scale(3) if f.degree() == gens[-1].degree() else f).is_homogeneous()
    assert (f * gens[-1]).is_homogeneous()
    assert all(g.is_homogeneous() for g in I.gb())
    assert colon(I, var(n, 0)).is_homogeneous()
    assert saturate(I, Ideal([var(n, 0)])).is_homogeneous()
    assert eliminate(I, 1).is_homogeneous()


# ---------------------------------------------------------------------------
# saturation / elimination examples
# ---------------------------------------------------------------------------

def test_saturate_examples():
    n = 3
    a = var(n, 0)
    assert saturate(Ideal([a * a]), Ideal([a])).is_unit()
    I = Ideal([a * var(n, 1), var(n, 2) * var(n, 2)])
    assert saturate(I, Ideal.unit(n)).gb() == I.gb()


def point_ideal(pt):
    """Linear forms vanishing at a point of P^2."""
    a, b, c = pt
    # two independent linear forms through the point
    return Ideal([Polynomial.linear([b, -a, 0]), Polynomial.linear([c, 0, -a])])


def test_saturate_two_points_unchanged():
    I = intersect(point_ideal((1, 2, 3)), point_ideal((1, 5, 7)))
    S = saturate(I, Ideal.irrelevant(3))
    assert S.gb() == I.gb()
    assert [hilbert_function(S, d) for d in range(5)] == [hilbert_function(I, d) for d in range(5)]


def test_saturate_irrelevant_removes_embedded_component():
    n = 3
    a, b, c = (var(n, i) for i in range(3))
    # point (0:0:1) with an embedded irrelevant component
    I = Ideal([a * a, a * b, b * b, a * c, b * c * c * c])
    S = saturate_irrelevant(I)
    assert S.gb() == groebner_basis([a, b])


def test_eliminate_veronese():
    # ring s, t, y0, y1, y2 with graph y0 = s^2, y1 = s t, y2 = t^2
    n = 5
    s, t, y0, y1, y2 = (var(n, i) for i in range(n))
    I = Ideal([y0 - s * s, y1 - s * t, y2 - t * t])
    E = eliminate(I, 2)
    assert len(E.gb()) == 1
    q = var(3, 0) * var(3, 2) - var(3, 1) * var(3, 1)
    assert E.gb()[0] == q or E.gb()[0] == -q


def test_eliminate_tag_variable():
    n = 3
    t, a, b = (var(n, i) for i in range(n))
    I = Ideal([Polynomial.constant(n, 1) - t * a, a * b])
    E = eliminate(I, 1)
    assert E.gb() == groebner_basis([var(2, 1)])


def test_elimination_order_refines_degree_in_blocks():
    o = elimination_order(2)
    k = o.key
    assert k((1, 0, 0, 0)) > k((0, 0, 5, 5))
    assert k((0, 0, 2, 0)) > k((0, 0, 0, 1))


# ---------------------------------------------------------------------------
# univariate roots
# ---------------------------------------------------------------------------

def test_roots_examples():
    f = flint.nmod_poly([-1, 0, 1], P)
    assert sorted(r.value for r in univariate_roots(f)) == [1, P - 1]
    # (x-3)^2 (x-5)
    g = flint.nmod_poly([-3, 1], P) ** 2 * flint.nmod_poly([-5, 1], P)
    assert roots(g) == [(3, 2), (5, 1)]
    assert [r.value for r in univariate_roots(g)] == [3, 3, 5]


def test_irreducible_quadratic_has_no_roots(rng):
    # x^2 - a for a non-residue a
    a = next(a for a in range(2, 100) if pow(a, (P - 1) // 2, P) == P - 1)
    assert univariate_roots(flint.nmod_poly([-a, 0, 1], P)) == []


@settings(max_examples=30)
@given(st.lists(st.integers(0, P - 1), min_size=1, max_size=6), st.integers(0, 10 ** 6))
def test_roots_of_products_of_linears(rs, seed):
    f = flint.nmod_poly([1], P)
    for r in rs:
        f *= flint.nmod_poly([-r, 1], P)
    # multiply by an irreducible cubic-free quadratic without roots
    got = [r.value for r in univariate_roots(f)]
    assert got == sorted(rs)
    fac = factor(f, rng=random.Random(seed))
    assert sum(q.degree() * k for q, k in fac) == len(rs)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

@settings(max_examples=30)
@given(small_ideals(homogeneous=False))
def test_text_round_trip(gens):
    n = gens[0].nvars
    for g in gens:
        assert parse_polynomial(format_polynomial(g), n) == g
    txt = format_ideal(gens, n, P)
    back = parse_ideal(txt)
    assert back.nvars == n and back.prime == P
    assert back.generators == gens
    assert format_ideal(back.generators, n, P) == txt


def test_text_format_tokens():
    f = parse_polynomial("x0^2 - 3*x1*x2 + 5", 3)
    assert f == poly(3, {(2, 0, 0): 1, (0, 1, 1): -3, (0, 0, 0): 5})
    txt = format_ideal([f], 3, P)
    assert txt.startswith("# vars: 3")


def test_hilbert_numerator_of_point():
    # ideal (x0, x1) in three variables: numerator 1 - 2t + t^2
    assert hilbert_numerator([(1, 0, 0), (0, 1, 0)])[:3] == [1, -2, 1]


def test_power_of_ideal():
    n = 3
    I = Ideal([var(n, 0), var(n, 1)])
    I2 = I.power(2)
    assert {tuple(m) for m in I2.gb().leading_monomials()} == {(2, 0, 0), (1, 1, 0), (0, 2, 0)}
    assert hilbert_data(saturate_irrelevant(I2)).degree == 3
