"""Ideals in GF(p)[x0..xn]: colon, saturation, elimination, intersection."""
from __future__ import annotations

import random
from typing import Iterable, Sequence

import numpy as np

from .field import DEFAULT_PRIME
from .groebner import DEFAULT_TERM_CEILING, GroebnerBasis, groebner_basis
from .linalg import inverse
from .monomials import GREVLEX, MonomialOrder, elimination_order
from .poly import Polynomial


class Ideal:
    """Generators plus cached reduced Groebner bases (one per order)."""

    def __init__(self, gens: Iterable[Polynomial], nvars: int | None = None, p: int | None = None):
        gens = [g for g in gens]
        if nvars is None:
            if not gens:
                raise ValueError("nvars required for an ideal with no generators")
            nvars = gens[0].nvars
        if p is None:
            p = gens[0].p if gens else DEFAULT_PRIME
        for g in gens:
            if g.nvars != nvars or g.p != p:
                raise ValueError("generator outside the ring")
        self.nvars = nvars
        self.p = p
        self.gens = [g.with_order(GREVLEX) for g in gens if g]
        self._gb: dict = {}
        self.saturated = False

    @classmethod
    def unit(cls, nvars: int, p: int = DEFAULT_PRIME) -> "Ideal":
        return cls([Polynomial.constant(nvars, 1, p)], nvars, p)

    @classmethod
    def irrelevant(cls, nvars: int, p: int = DEFAULT_PRIME) -> "Ideal":
        return cls([Polynomial.var(nvars, i, p) for i in range(nvars)], nvars, p)

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def gb(self, order: MonomialOrder = GREVLEX, term_ceiling: int = DEFAULT_TERM_CEILING,
           engine: str = "f4") -> GroebnerBasis:
        if order not in self._gb:
            if not self.gens:
                self._gb[order] = GroebnerBasis([], order, self.nvars, self.p)
            else:
                self._gb[order] = groebner_basis(self.gens, order, engine=engine, term_ceiling=term_ceiling)
        return self._gb[order]

    def truncated_gb(self, max_degree: int) -> GroebnerBasis:
        """Grevlex basis correct in degrees <= max_degree (homogeneous ideals)."""
        if GREVLEX in self._gb:
            return self._gb[GREVLEX]
        if not self.gens:
            return GroebnerBasis([], GREVLEX, self.nvars, self.p)
        return groebner_basis(self.gens, GREVLEX, max_degree=max_degree)

    def contains(self, f: Polynomial) -> bool:
        return self.gb().contains(f)

    def is_unit(self) -> bool:
        return bool(self.gens) and self.gb().is_unit()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.nvars == other.nvars and self.p == other.p and self.gb() == other.gb()

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.gens + other.gens, self.nvars, self.p)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([f * g for f in self.gens for g in other.gens], self.nvars, self.p)

    def power(self, k: int) -> "Ideal":
        out = Ideal.unit(self.nvars, self.p)
        for _ in range(k):
            out = out * self
            out = Ideal(out.gb().polys, self.nvars, self.p)
        return out

    def reduced_gens(self) -> list:
        return list(self.gb().polys)

    def __repr__(self):
        return f"Ideal({len(self.gens)} generators in {self.nvars} variables mod {self.p})"


# ---------------------------------------------------------------------------
# elimination and friends
# ---------------------------------------------------------------------------

def eliminate(I: Ideal, k: int) -> Ideal:
    """I intersected with GF(p)[x_k..x_n]; the result lives in n+1-k variables."""
    if k <= 0:
        return I
    if k >= I.nvars:
        raise ValueError("cannot eliminate every variable")
    if not I.gens:
        return Ideal([], I.nvars - k, I.p)
    G = I.gb(elimination_order(k))
    keep = list(range(k, I.nvars))
    out = [g.drop_vars(keep) for g in G if all(sum(m[:k]) == 0 for m in g.terms)]
    return Ideal(out, I.nvars - k, I.p)


def _with_tag(I: Ideal) -> list:
    """Generators moved to a ring with one extra leading tag variable t (index 0)."""
    pos = list(range(1, I.nvars + 1))
    return [g.extend(I.nvars + 1, pos) for g in I.gens]


def saturate_by_element(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^infinity via I + (1 - t f) and elimination of t."""
    if not I.gens:
        return Ideal([], I.nvars, I.p)
    n = I.nvars + 1
    pos = list(range(1, n))
    t = Polynomial.var(n, 0, I.p)
    rab = Polynomial.constant(n, 1, I.p) - t * f.extend(n, pos)
    J = Ideal(_with_tag(I) + [rab], n, I.p)
    return eliminate(J, 1)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    n = I.nvars + 1
    t = Polynomial.var(n, 0, I.p)
    one_minus = Polynomial.constant(n, 1, I.p) - t
    gens = [t * g for g in _with_tag(I)] + [one_minus * g for g in _with_tag(J)]
    return eliminate(Ideal(gens, n, I.p), 1)


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f, through I intersected with (f)."""
    K = intersect(I, Ideal([f], I.nvars, I.p))
    out = []
    for g in K.gb().polys:
        q = divide_exact(g, f)
        out.append(q)
    return Ideal(out, I.nvars, I.p)


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f when f divides g (multivariate long division by leading terms)."""
    from .field import inv

    p = g.p
    rem = dict(g.terms)
    key = GREVLEX.key
    lf, cf = f.with_order(GREVLEX).lead()
    icf = inv(cf, p)
    quo = {}
    while rem:
        m = max(rem, key=key)
        c = rem[m]
        q = tuple(a - b for a, b in zip(m, lf))
        if min(q) < 0:
            raise ValueError("divisor does not divide")
        qc = c * icf % p
        quo[q] = qc
        for fm, fc in f.terms.items():
            mm = tuple(a + b for a, b in zip(fm, q))
            v = (rem.get(mm, 0) - qc * fc) % p
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial(g.nvars, quo, p, _clean=True)


def saturate(I: Ideal, J: Ideal, method: str = "exact", rng: random.Random | None = None) -> Ideal:
    """I : J^infinity.

    ``exact`` intersects I : f^infinity over the generators f of J.
    ``generic`` saturates by one random combination of the generators of J
    (equal degrees required); this agrees with the exact answer unless the
    combination lands in an associated prime of I, an event of probability
    O(deg/p).
    """
    if J.is_zero():
        return Ideal.unit(I.nvars, I.p)
    if I.is_unit():
        return I
    if len(J.gens) == I.nvars and all(len(g) == 1 and sum(next(iter(g.terms))) == 1 for g in J.gens) \
            and I.is_homogeneous():
        return saturate_irrelevant(I, rng=rng)
    if method == "generic":
        degs = {g.degree() for g in J.gens}
        if len(degs) == 1 and len(J.gens) > 1:
            rng = rng or random.Random(0)
            g = sum((h.scale(rng.randrange(1, I.p)) for h in J.gens[1:]), J.gens[0])
            return saturate_by_element(I, g)
    result = None
    for f in J.gens:
        S = saturate_by_element(I, f)
        result = S if result is None else intersect(result, S)
    return result


# ---------------------------------------------------------------------------
# saturation by the irrelevant ideal (generic linear form, Bayer-Stillman)
# ---------------------------------------------------------------------------

def random_coordinate_change(n: int, p: int, rng: random.Random) -> np.ndarray:
    while True:
        A = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        from .linalg import rank
        if rank(A, p) == n:
            return A


def apply_linear_change(gens: Sequence[Polynomial], A) -> list:
    """x_i -> sum_j A[i][j] x_j."""
    A = [[int(v) for v in row] for row in np.asarray(A)]
    return [g.linear_substitute(A) for g in gens]


def saturate_irrelevant(I: Ideal, rng: random.Random | None = None) -> Ideal:
    """I : (x0..xn)^infinity for homogeneous I.

    In generic coordinates the saturation by the irrelevant ideal equals the
    saturation by the last variable, which in grevlex just strips powers of
    the last variable from the Groebner basis.
    """
    if not I.gens:
        out = Ideal([], I.nvars, I.p)
        out.saturated = True
        return out
    rng = rng or random.Random(12345)
    n, p = I.nvars, I.p
    A = random_coordinate_change(n, p, rng)
    moved = apply_linear_change(I.gens, A)
    G = groebner_basis(moved, GREVLEX)
    stripped = []
    for g in G:
        k = min(m[-1] for m in g.terms)
        if k:
            g = Polynomial(n, {m[:-1] + (m[-1] - k,): c for m, c in g.terms.items()}, p, _clean=True)
        stripped.append(g)
    back = apply_linear_change(stripped, inverse(A, p))
    out = Ideal(back, n, p)
    out.saturated = True
    return out


def is_saturated(I: Ideal, rng: random.Random | None = None) -> bool:
    """A generic last variable is a nonzerodivisor modulo I, read off the grevlex leading terms."""
    if I.saturated:
        return True
    if not I.gens:
        I.saturated = True
        return True
    rng = rng or random.Random(12345)
    A = random_coordinate_change(I.nvars, I.p, rng)
    G = groebner_basis(apply_linear_change(I.gens, A), GREVLEX)
    ok = all(m[-1] == 0 for m in G.leading_monomials())
    I.saturated = ok
    return ok
