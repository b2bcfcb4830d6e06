"""Sparse multivariate polynomials over GF(p)."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint

from .field import DEFAULT_PRIME, FieldElement, inv
from .monomials import GREVLEX, MonomialOrder, mmul


# products with more term pairs than this go through flint's nmod_mpoly
FLINT_THRESHOLD = 400


@lru_cache(maxsize=None)
def _ctx(nvars: int, p: int):
    return flint.nmod_mpoly_ctx.get(("x", nvars), modulus=p)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over GF(p).

    ``terms`` maps exponent tuples to nonzero residues.  The order tag only
    decides what "leading" means; arithmetic is order independent and results
    inherit the left operand's tag.
    """

    __slots__ = ("nvars", "p", "terms", "order", "_lead")

    def __init__(self, nvars: int, terms: Mapping | None = None, p: int = DEFAULT_PRIME,
                 order: MonomialOrder = GREVLEX, _clean: bool = False):
        self.nvars = nvars
        self.p = p
        self.order = order
        self._lead = None
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            t = {}
            for m, c in terms.items():
                c = int(c) % p
                if c:
                    if len(m) != nvars:
                        raise ValueError("exponent vector length mismatch")
                    t[tuple(m)] = c
            self.terms = t

    # constructors --------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        c %= p
        return cls(nvars, {(0,) * nvars: c} if c else {}, p, _clean=True)

    @classmethod
    def var(cls, nvars: int, i: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, p, _clean=True)

    @classmethod
    def linear(cls, coeffs: Sequence[int], p: int = DEFAULT_PRIME) -> "Polynomial":
        n = len(coeffs)
        t = {}
        for i, c in enumerate(coeffs):
            c = int(c) % p
            if c:
                e = [0] * n
                e[i] = 1
                t[tuple(e)] = c
        return cls(n, t, p, _clean=True)

    def to_flint(self):
        return _ctx(self.nvars, self.p).from_dict(self.terms)

    @classmethod
    def from_flint(cls, f, nvars: int, p: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls(nvars, {m: int(c) for m, c in f.to_dict().items()}, p, order, _clean=True)

    def _new(self, terms) -> "Polynomial":
        return Polynomial(self.nvars, terms, self.p, self.order, _clean=True)

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        if order == self.order:
            return self
        return Polynomial(self.nvars, self.terms, self.p, order, _clean=True)

    # basic queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        it = iter(self.terms)
        d = sum(next(it))
        return all(sum(m) == d for m in it)

    def lead(self):
        """(monomial, coefficient) of the leading term under ``self.order``."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            m = max(self.terms, key=self.order.key)
            self._lead = (m, self.terms[m])
        return self._lead

    @property
    def lm(self):
        return self.lead()[0]

    @property
    def lc(self):
        return self.lead()[1]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.order.key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc
        if c == 1:
            return self
        ic = inv(c, self.p)
        p = self.p
        return self._new({m: v * ic % p for m, v in self.terms.items()})

    def homogeneous_part(self, d: int) -> "Polynomial":
        return self._new({m: c for m, c in self.terms.items() if sum(m) == d})

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars or other.p != self.p:
                raise ValueError("incompatible polynomial rings")
            return other
        if isinstance(other, FieldElement):
            other = other.value
        return Polynomial.constant(self.nvars, int(other), self.p)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.p
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return self._new({m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: int) -> "Polynomial":
        p = self.p
        c %= p
        if not c:
            return self._new({})
        return self._new({m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono, c: int = 1) -> "Polynomial":
        p = self.p
        return self._new({tuple(x + y for x, y in zip(m, mono)): v * c % p for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        other = self._coerce(other)
        p = self.p
        a, b = self.terms, other.terms
        if len(a) * len(b) > FLINT_THRESHOLD and self.nvars:
            return Polynomial.from_flint(self.to_flint() * other.to_flint(), self.nvars, p, self.order)
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                t[m] = (t.get(m, 0) + ca * cb) % p
        return self._new({m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1, self.p).with_order(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.p == other.p and self.terms == other.terms
        if isinstance(other, int):
            return self == Polynomial.constant(self.nvars, other, self.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    # calculus / substitution --------------------------------------------
    def diff(self, i: int) -> "Polynomial":
        p = self.p
        t = {}
        for m, c in self.terms.items():
            k = m[i]
            if k:
                v = c * k % p
                if v:
                    e = list(m)
                    e[i] -= 1
                    t[tuple(e)] = v
        return self._new(t)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.p
        pt = [int(x) % p for x in point]
        powers = [[1] for _ in pt]
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, k in enumerate(m):
                if k:
                    pw = powers[i]
                    while len(pw) <= k:
                        pw.append(pw[-1] * pt[i] % p)
                    v = v * pw[k] % p
            total += v
        return total % p

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_i by images[i] (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        ring0 = images[0]
        if self.nvars and ring0.nvars:
            ctx = _ctx(ring0.nvars, ring0.p)
            g = self.to_flint().compose(*[f.to_flint() for f in images], ctx=ctx)
            return Polynomial.from_flint(g, ring0.nvars, ring0.p, ring0.order)
        one = Polynomial.constant(ring0.nvars, 1, ring0.p).with_order(ring0.order)
        cache = [{0: one} for _ in images]

        def power(i, k):
            c = cache[i]
            if k not in c:
                j = max(x for x in c if x < k)
                acc = c[j]
                for step in range(j + 1, k + 1):
                    acc = acc * images[i]
                    c[step] = acc
            return c[k]

        total: dict = {}
        p = self.p
        for m, coef in self.terms.items():
            term = None
            for i, k in enumerate(m):
                if k:
                    f = power(i, k)
                    term = f if term is None else term * f
            if term is None:
                term = one
            for mm, cc in term.terms.items():
                total[mm] = (total.get(mm, 0) + cc * coef) % p
        return Polynomial(ring0.nvars, {m: c for m, c in total.items() if c}, p, ring0.order, _clean=True)

    def linear_substitute(self, matrix: Sequence[Sequence[int]], new_nvars: int | None = None) -> "Polynomial":
        """x_i -> sum_j matrix[i][j] y_j."""
        n2 = new_nvars if new_nvars is not None else len(matrix[0])
        imgs = [Polynomial(n2, {tuple(1 if k == j else 0 for k in range(n2)): c for j, c in enumerate(row)}, self.p, self.order)
                for row in matrix]
        return self.substitute(imgs)

    def dehomogenize(self, i: int) -> "Polynomial":
        """Set x_i = 1, keeping the variable count (x_i simply disappears)."""
        p = self.p
        t: dict = {}
        for m, c in self.terms.items():
            e = list(m)
            e[i] = 0
            e = tuple(e)
            t[e] = (t.get(e, 0) + c) % p
        return self._new({m: c for m, c in t.items() if c})

    def homogenize(self, i: int) -> "Polynomial":
        """Homogenize with respect to x_i, assuming x_i does not occur."""
        d = self.degree()
        t = {}
        for m, c in self.terms.items():
            e = list(m)
            e[i] += d - sum(m)
            t[tuple(e)] = c
        return self._new(t)

    def extend(self, new_nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Embed into a ring with more variables; old var k becomes positions[k]."""
        t = {}
        for m, c in self.terms.items():
            e = [0] * new_nvars
            for k, x in enumerate(m):
                e[positions[k]] += x
            t[tuple(e)] = c
        return Polynomial(new_nvars, t, self.p, self.order, _clean=True)

    def drop_vars(self, keep: Sequence[int]) -> "Polynomial":
        """Restrict to the variables in ``keep``; other exponents must be zero."""
        t = {}
        for m, c in self.terms.items():
            t[tuple(m[k] for k in keep)] = c
        return Polynomial(len(keep), t, self.p, self.order, _clean=True)

    def __repr__(self):
        from .textio import format_polynomial
        return format_polynomial(self)


def poly_from_dict(nvars: int, d: Mapping, p: int = DEFAULT_PRIME, order: MonomialOrder = GREVLEX) -> Polynomial:
    return Polynomial(nvars, d, p, order)


def common_ring(polys: Iterable[Polynomial]):
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial list")
    n, p = polys[0].nvars, polys[0].p
    for f in polys:
        if f.nvars != n or f.p != p:
            raise ValueError("polynomials live in different rings")
    return n, p


def monomial_poly(m, p: int = DEFAULT_PRIME, c: int = 1) -> Polynomial:
    return Polynomial(len(m), {tuple(m): c}, p)


__all__ = ["Polynomial", "poly_from_dict", "common_ring", "monomial_poly", "mmul"]
