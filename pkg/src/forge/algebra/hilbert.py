"""Hilbert series of monomial ideals by pivot recursion."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .monomials import divides


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _shift(a, k):
    return [0] * k + list(a)


def _numerator(gens: tuple, memo: dict) -> list:
    """K-polynomial numerator N(t) with HS(S/I) = N(t)/(1-t)^n."""
    if gens in memo:
        return memo[gens]
    if not gens:
        return [1]
    # base case: pairwise coprime generators
    support = [set(i for i, e in enumerate(g) if e) for g in gens]
    coprime = True
    seen: set = set()
    for s in support:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        memo[gens] = out
        return out
    # pivot x_v^e: v shared by several generators, e its smallest exponent,
    # so the pivot is not in I and both branches shrink
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    v = max(range(n), key=lambda i: counts[i])
    e = min(g[v] for g in gens if g[v])
    piv = tuple(e if i == v else 0 for i in range(n))
    # N(I) = N(I + piv) + t^deg(piv) * N(I : piv)
    plus = tuple(_minimalize(list(gens) + [piv]))
    colon = tuple(_minimalize([tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens]))
    out = _padd(_numerator(plus, memo), _shift(_numerator(colon, memo), e))
    memo[gens] = out
    return out


def hilbert_numerator(lead_monomials: Sequence[tuple]) -> list:
    gens = tuple(sorted(_minimalize([tuple(m) for m in lead_monomials])))
    if any(sum(g) == 0 for g in gens):
        return [0]
    out = _numerator(gens, {})
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class HilbertData:
    dimension: int            # projective dimension; -1 for the empty scheme
    degree: int
    hilbert_polynomial: tuple  # coefficients in s, constant term first (Fractions)
    numerator: tuple
    nvars: int

    def hp(self, s: int) -> Fraction:
        return sum(c * s ** k for k, c in enumerate(self.hilbert_polynomial))

    def hf(self, d: int) -> int:
        return hilbert_function_from_numerator(self.numerator, self.nvars, d)

    @property
    def codim(self) -> int:
        return self.nvars - 1 - self.dimension

    @property
    def arithmetic_genus(self):
        """Curve genus 1 - HP(0) (meaningful for dimension 1)."""
        return 1 - self.hilbert_polynomial[0] if self.hilbert_polynomial else None


def _divide_one_minus_t(a):
    """Exact division of a polynomial by (1 - t); returns None if t=1 is not a root."""
    if sum(a) != 0:
        return None
    q = []
    acc = 0
    for c in a[:-1]:
        acc += c
        q.append(acc)
    return q


def hilbert_data_from_numerator(num: Sequence[int], nvars: int) -> HilbertData:
    num = list(num)
    if num == [0] or not any(num):
        return HilbertData(-1, 0, (), tuple(num), nvars)
    k = 0
    q = num
    while True:
        nq = _divide_one_minus_t(q)
        if nq is None:
            break
        q = nq
        k += 1
    D = nvars - k  # Krull dimension of the quotient
    degree = sum(q)
    # HP(s) = sum_i q_i * C(s - i + D - 1, D - 1)
    coeffs = [Fraction(0)] * max(D, 1)
    if D == 0:
        return HilbertData(-1, degree, (), tuple(num), nvars)
    for i, qi in enumerate(q):
        if not qi:
            continue
        poly = [Fraction(1)]
        for j in range(1, D):
            # multiply by (s - i + j) / j
            root = Fraction(-i + j)
            new = [Fraction(0)] * (len(poly) + 1)
            for a, c in enumerate(poly):
                new[a] += c * root / j
                new[a + 1] += c / j
            poly = new
        for a, c in enumerate(poly):
            coeffs[a] += qi * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return HilbertData(D - 1, degree, tuple(coeffs), tuple(num), nvars)


def hilbert_function_from_numerator(num: Sequence[int], nvars: int, d: int) -> int:
    # coefficient of t^d in N(t) / (1-t)^n
    return sum(c * comb(d - i + nvars - 1, nvars - 1) for i, c in enumerate(num) if i <= d)
