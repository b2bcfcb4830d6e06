"""Univariate factorization and root finding over GF(p).

Squarefree decomposition, distinct-degree factorization and Cantor-Zassenhaus
equal-degree splitting.  FLINT's ``nmod_poly`` supplies the arithmetic only.
"""
from __future__ import annotations

import random
from typing import Sequence

import flint

from .field import FieldElement
from .poly import Polynomial


def to_nmod_poly(f, p: int) -> flint.nmod_poly:
    """Accepts a univariate Polynomial, a coefficient list (constant first) or an nmod_poly."""
    if isinstance(f, flint.nmod_poly):
        return f
    if isinstance(f, Polynomial):
        if f.nvars != 1:
            raise ValueError("univariate polynomial expected")
        d = f.degree()
        coeffs = [0] * (d + 1)
        for m, c in f.terms.items():
            coeffs[m[0]] = c
        return flint.nmod_poly(coeffs, p)
    return flint.nmod_poly([int(c) % p for c in f], p)


def _monic(f: flint.nmod_poly) -> flint.nmod_poly:
    lc = int(f.leading_coefficient())
    if lc == 1:
        return f
    p = f.modulus()
    return f * pow(lc, p - 2, p)


def squarefree_decomposition(f: flint.nmod_poly) -> list:
    """[(g, k)] with f = lc * prod g^k, g squarefree and pairwise coprime (Yun, char p aware)."""
    p = f.modulus()
    f = _monic(f)
    out = []
    if f.degree() <= 0:
        return out
    df = f.derivative()
    if df.is_zero():
        # f = g(x^p)
        coeffs = [int(c) for c in f.coeffs()]
        g = flint.nmod_poly(coeffs[::p], p)
        return [(h, k * p) for h, k in squarefree_decomposition(g)]
    c = f.gcd(df)
    w = f // c
    i = 1
    while w.degree() > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree() > 0:
            out.append((_monic(z), i))
        i += 1
        w = y
        c = c // y
    if c.degree() > 0:
        # remaining part is a p-th power
        coeffs = [int(x) for x in c.coeffs()]
        g = flint.nmod_poly(coeffs[::p], p)
        out += [(h, k * p) for h, k in squarefree_decomposition(g)]
    return out


def distinct_degree(f: flint.nmod_poly) -> list:
    """For squarefree monic f: [(g_d, d)] where g_d is the product of its degree-d factors."""
    p = f.modulus()
    x = flint.nmod_poly([0, 1], p)
    out = []
    h = x
    d = 0
    rest = f
    while rest.degree() >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, p, rest)
        g = rest.gcd(h - x)
        if g.degree() > 0:
            out.append((_monic(g), d))
            rest = rest // g
            h = h % rest
    if rest.degree() > 0:
        out.append((_monic(rest), rest.degree()))
    return out


def pow_mod(a: flint.nmod_poly, e: int, m: flint.nmod_poly) -> flint.nmod_poly:
    return a.pow_mod(e, m)


def equal_degree(f: flint.nmod_poly, d: int, rng: random.Random) -> list:
    """Split a squarefree monic product of degree-d irreducibles (Cantor-Zassenhaus)."""
    p = f.modulus()
    n = f.degree()
    if n == d:
        return [f]
    if p == 2:
        raise NotImplementedError("characteristic 2 is not supported")
    e = (p ** d - 1) // 2
    while True:
        a = flint.nmod_poly([rng.randrange(p) for _ in range(n)], p)
        if a.degree() <= 0:
            continue
        g = f.gcd(a)
        if 0 < g.degree() < n:
            break
        b = pow_mod(a, e, f) - 1
        g = f.gcd(b)
        if 0 < g.degree() < n:
            break
    g = _monic(g)
    return equal_degree(g, d, rng) + equal_degree(_monic(f // g), d, rng)


def factor(f, p: int | None = None, rng: random.Random | None = None) -> list:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if p is None:
        p = f.modulus() if isinstance(f, flint.nmod_poly) else f.p
    f = to_nmod_poly(f, p)
    if f.is_zero():
        raise ValueError("cannot factor zero")
    rng = rng or random.Random(0)
    out = []
    for g, k in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for q in equal_degree(h, d, rng):
                out.append((q, k))
    out.sort(key=lambda t: (t[0].degree(), [int(c) for c in t[0].coeffs()], t[1]))
    return out


def roots(f, p: int | None = None, rng: random.Random | None = None) -> list:
    """Roots in GF(p) with multiplicities: [(r, k)], via gcd with x^p - x and splitting."""
    if p is None:
        p = f.modulus() if isinstance(f, flint.nmod_poly) else f.p
    f = to_nmod_poly(f, p)
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    rng = rng or random.Random(0)
    f = _monic(f)
    if f.degree() <= 0:
        return []
    x = flint.nmod_poly([0, 1], p)
    g = f.gcd(pow_mod(x, p, f) - x)
    if g.degree() <= 0:
        return []
    out = []
    for lin in equal_degree(_monic(g), 1, rng):
        r = (-int(lin.coeffs()[0])) % p
        k = 0
        h = f
        while True:
            q, rem = divmod(h, lin)
            if not rem.is_zero():
                break
            k += 1
            h = q
        out.append((r, k))
    out.sort()
    return out


def univariate_roots(f, p: int | None = None) -> list:
    """Roots as FieldElements, repeated according to multiplicity."""
    if p is None:
        p = f.modulus() if isinstance(f, flint.nmod_poly) else f.p
    return [FieldElement(r, p) for r, k in roots(f, p) for _ in range(k)]


def poly_from_coeffs(coeffs: Sequence[int], p: int) -> flint.nmod_poly:
    return flint.nmod_poly([int(c) % p for c in coeffs], p)
