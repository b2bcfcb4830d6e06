"""Arithmetic in GF(p^k) = GF(p)[z]/(m(z)) for the coordinates of Galois orbits."""
from __future__ import annotations

from typing import Sequence

import flint
import numpy as np


class ExtensionField:
    """Elements are nmod_poly of degree < k, reduced modulo an irreducible m."""

    def __init__(self, modulus: flint.nmod_poly):
        if modulus.degree() < 1:
            raise ValueError("modulus must have positive degree")
        lc = int(modulus.leading_coefficient())
        p = modulus.modulus()
        self.p = p
        self.modulus = modulus * pow(lc, p - 2, p) if lc != 1 else modulus
        self.k = modulus.degree()

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.p, tuple(int(c) for c in self.modulus.coeffs())))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    # elements -----------------------------------------------------------
    def __call__(self, a) -> flint.nmod_poly:
        if isinstance(a, flint.nmod_poly):
            return a % self.modulus
        if isinstance(a, (list, tuple, np.ndarray)):
            return flint.nmod_poly([int(c) % self.p for c in a], self.p) % self.modulus
        return flint.nmod_poly([int(a) % self.p], self.p)

    @property
    def zero(self):
        return flint.nmod_poly([], self.p)

    @property
    def one(self):
        return flint.nmod_poly([1], self.p)

    @property
    def gen(self):
        return flint.nmod_poly([0, 1], self.p) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inv(self, a):
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        g, s, _ = a.xgcd(self.modulus)
        c = int(g.coeffs()[0])
        return (s * pow(c, self.p - 2, self.p)) % self.modulus

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        return a.pow_mod(e, self.modulus) if a.degree() >= 0 else (self.one if e == 0 else self.zero)

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p ** times)

    def coords(self, a) -> list:
        """Coefficient vector (length k) over GF(p)."""
        c = [int(x) for x in a.coeffs()]
        return c + [0] * (self.k - len(c))

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def evaluate(self, f, point: Sequence) -> flint.nmod_poly:
        """Value of a Polynomial at a point with coordinates in this field."""
        out = self.zero
        cache = {}
        for m, c in f.terms.items():
            t = self(c)
            for j, e in enumerate(m):
                if e:
                    key = (j, e)
                    if key not in cache:
                        cache[key] = self.pow(point[j], e)
                    t = self.mul(t, cache[key])
            out = out + t
        return out % self.modulus

    # linear algebra -----------------------------------------------------
    def rref(self, rows: list) -> tuple:
        """Reduced row echelon form of a matrix of field elements; returns (rows, pivots)."""
        A = [list(r) for r in rows]
        if not A:
            return [], []
        ncols = len(A[0])
        piv = []
        r = 0
        for c in range(ncols):
            k = next((i for i in range(r, len(A)) if not A[i][c].is_zero()), None)
            if k is None:
                continue
            A[r], A[k] = A[k], A[r]
            iv = self.inv(A[r][c])
            A[r] = [self.mul(x, iv) for x in A[r]]
            for i in range(len(A)):
                if i != r and not A[i][c].is_zero():
                    f = A[i][c]
                    A[i] = [(x - self.mul(f, y)) % self.modulus for x, y in zip(A[i], A[r])]
            piv.append(c)
            r += 1
            if r == len(A):
                break
        return A[:r], piv

    def nullspace(self, rows: list, ncols: int) -> list:
        R, piv = self.rref(rows) if rows else ([], [])
        free = [j for j in range(ncols) if j not in piv]
        out = []
        for j in free:
            v = [self.zero] * ncols
            v[j] = self.one
            for i, pc in enumerate(piv):
                v[pc] = (-R[i][j]) % self.modulus
            out.append(v)
        return out


def conditions_over_base(field: ExtensionField, values: list) -> np.ndarray:
    """Split GF(p^k)-linear conditions sum c_j values[j] = 0 (c_j in GF(p)) into k rows over GF(p)."""
    out = np.zeros((field.k, len(values)), dtype=np.int64)
    for j, v in enumerate(values):
        out[:, j] = field.coords(v)
    return out
