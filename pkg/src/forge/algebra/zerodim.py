"""Zero-dimensional schemes by linear algebra in graded pieces of the quotient.

For J = B + (extra) with a cheap Groebner basis of B, the pieces (S/J)_d
are computed inside the standard-monomial space of S/B.  Once the Hilbert
function is stable, multiplication by x_i/h on (S/J)_d gives commuting
matrices whose joint spectrum is the scheme.  Galois orbits come from the
factorization of a random characteristic polynomial, and their
coordinates from trace sums (a rational univariate representation).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import flint
import numpy as np

from .gfq import ExtensionField
from .groebner import groebner_basis, GroebnerBasis
from .linalg import from_nmod, inverse, matmul, rank, rref, to_nmod
from .monomials import GREVLEX, divides, monomials_of_degree
from .poly import Polynomial
from .univariate import factor


class NotZeroDimensional(ValueError):
    pass


def _sorted_monomials(n: int, d: int) -> list:
    return sorted(monomials_of_degree(n, d), key=GREVLEX.key)


class NormalForms:
    """Normal forms of monomials modulo a homogeneous grevlex basis, computed lazily.

    Only monomials actually requested (and those met while reducing them)
    are normalized, so high degrees stay cheap when the quotient is small.
    """

    def __init__(self, gb: GroebnerBasis | None, nvars: int, p: int):
        self.nvars = nvars
        self.p = p
        self.leads = []
        if gb is not None:
            for g in gb:
                g = g.with_order(GREVLEX).monic()
                lm = g.lm
                tail = [(m, c) for m, c in g.terms.items() if m != lm]
                self.leads.append((lm, tail))
        self._std: dict = {}
        self._memo: dict = {}

    def standard(self, d: int) -> tuple:
        """(standard monomials of degree d, their index)."""
        if d not in self._std:
            std = [m for m in _sorted_monomials(self.nvars, d)
                   if not any(divides(lm, m) for lm, _ in self.leads)]
            self._std[d] = (std, {m: k for k, m in enumerate(std)})
        return self._std[d]

    def _reducer(self, m):
        for lm, tail in self.leads:
            if divides(lm, m):
                return lm, tail
        return None

    def nf(self, m: tuple) -> np.ndarray:
        """Dense coordinates of NF(m) on the standard monomials of its degree."""
        memo = self._memo
        if m in memo:
            return memo[m]
        p = self.p
        d = sum(m)
        std, sidx = self.standard(d)
        key = GREVLEX.key
        stack = [m]
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            if cur in sidx:
                v = np.zeros(len(std), dtype=np.int64)
                v[sidx[cur]] = 1
                memo[cur] = v
                stack.pop()
                continue
            lm, tail = self._reducer(cur)
            u = tuple(a - b for a, b in zip(cur, lm))
            deps = [tuple(a + b for a, b in zip(t, u)) for t, _ in tail]
            missing = [x for x in deps if x not in memo]
            if missing:
                stack.extend(missing)
                continue
            v = np.zeros(len(std), dtype=np.int64)
            if deps:
                coeffs = np.array([(-c) % p for _, c in tail], dtype=np.int64)
                v = (coeffs @ np.array([memo[x] for x in deps])) % p
            memo[cur] = v
            stack.pop()
        return memo[m]

    def table(self, d: int):
        """(standard monomials, None, None); kept for callers that only need the basis."""
        return self.standard(d)[0], None, None

    def reduce(self, f: Polynomial) -> np.ndarray:
        """Coordinates of a homogeneous form in the standard monomials of its degree."""
        d = f.degree()
        std, _ = self.standard(d)
        out = np.zeros(len(std), dtype=np.int64)
        if not f.terms:
            return out
        M = np.array([self.nf(m) for m in f.terms])
        c = np.array(list(f.terms.values()), dtype=np.int64).reshape(1, -1)
        return matmul(c, M, self.p)[0]

    def times_var(self, d: int, i: int) -> np.ndarray:
        """Matrix of x_i : (S/B)_d -> (S/B)_{d+1}, rows indexed by standard monomials of degree d."""
        std, _ = self.standard(d)
        std1, _ = self.standard(d + 1)
        if not std:
            return np.zeros((0, len(std1)), dtype=np.int64)
        rows = []
        for m in std:
            e = list(m)
            e[i] += 1
            rows.append(self.nf(tuple(e)))
        return np.array(rows, dtype=np.int64)


class GradedQuotient:
    """Truncations of S/J for J = B + (extra)."""

    def __init__(self, base: GroebnerBasis | None, extra: Sequence[Polynomial], nvars: int, p: int):
        self.nvars = nvars
        self.p = p
        self.nf = NormalForms(base, nvars, p)
        self.base_degree = max((g.degree() for g in base), default=0) if base is not None else 0
        self.extra = [f for f in extra if f]
        for f in self.extra:
            if not f.is_homogeneous():
                raise ValueError("homogeneous generators expected")
        self.dmin = min((f.degree() for f in self.extra), default=0)
        self._V: dict = {}
        self._X: dict = {}

    def _mult(self, d: int, i: int):
        key = (d, i)
        if key not in self._X:
            self._X[key] = self.nf.times_var(d, i)
        return self._X[key]

    def span(self, d: int) -> np.ndarray:
        """Row-reduced basis of J_d / B_d in standard-monomial coordinates."""
        if d in self._V:
            return self._V[d]
        p = self.p
        std, _, _ = self.nf.table(d)
        blocks = []
        if d > self.dmin:
            prev = self.span(d - 1)
            if len(prev):
                for i in range(self.nvars):
                    blocks.append(matmul(prev, self._mult(d - 1, i), p))
        for f in self.extra:
            if f.degree() == d:
                blocks.append(self.nf.reduce(f).reshape(1, -1))
        if blocks and len(std):
            R, r = rref(np.vstack(blocks), p)
        else:
            R = np.zeros((0, len(std)), dtype=np.int64)
        self._V[d] = R
        return R

    def hf(self, d: int) -> int:
        std, _, _ = self.nf.table(d)
        return len(std) - len(self.span(d))

    def stable_degree(self, dmax: int = 40, start: int | None = None) -> int:
        """Smallest d (past every generator degree) with HF(d) = HF(d+1) = HF(d+2)."""
        d = max(self.dmin, self.base_degree, start or 0)
        h0, h1 = self.hf(d), self.hf(d + 1)
        while d <= dmax:
            h2 = self.hf(d + 2)
            if h0 == h1 == h2:
                return d
            d += 1
            h0, h1 = h1, h2
        raise NotZeroDimensional(f"Hilbert function not stable by degree {dmax}")

    def _projector(self, d: int):
        V = self.span(d)
        std, _, _ = self.nf.table(d)
        piv = []
        for row in V:
            piv.append(int(np.nonzero(row)[0][0]))
        free = [j for j in range(len(std)) if j not in set(piv)]
        return V, piv, free

    def _project(self, vecs: np.ndarray, d: int) -> np.ndarray:
        V, piv, free = self._projector(d)
        out = vecs[:, free] % self.p
        if piv:
            out = (out - matmul(vecs[:, piv], V[:, free], self.p)) % self.p
        return out

    def multiplication_matrices(self, d: int, h: Sequence[int]) -> list:
        """Matrices (row convention) of x_i/h on (S/J)_d, i = 0..n."""
        p = self.p
        _, _, free = self._projector(d)
        T = []
        for i in range(self.nvars):
            X = self._mult(d, i)[free]
            T.append(self._project(X, d + 1))
        Th = np.zeros_like(T[0])
        for i, c in enumerate(h):
            Th = (Th + int(c) * T[i]) % p
        if rank(Th, p) < Th.shape[0]:
            raise ZeroDivisionError("chart form vanishes on the scheme")
        Thi = inverse(Th, p)
        return [matmul(Ti, Thi, p) for Ti in T]


@dataclass
class Orbit:
    """A Galois orbit of k geometric points, each of local length ``multiplicity``.

    ``coords[i]`` is x_i as a polynomial in z modulo ``field.modulus``; the
    k points are the conjugates of (coords[0] : ... : coords[n]).
    """
    degree: int
    multiplicity: int
    field: ExtensionField
    coords: list
    p: int

    def rational_point(self) -> list:
        if self.degree != 1:
            raise ValueError("orbit is not rational")
        return [int(c.coeffs()[0]) if not c.is_zero() else 0 for c in self.coords]

    def point(self) -> list:
        return list(self.coords)

    def conjugates(self) -> list:
        out = [self.point()]
        for _ in range(self.degree - 1):
            out.append([self.field.frobenius(c) for c in out[-1]])
        return out

    def ideal_generators(self) -> list:
        """Forms of degree <= k vanishing on every conjugate (they cut out the reduced orbit)."""
        from .linalg import forms_from_vectors, nullspace
        n = len(self.coords)
        F = self.field
        out = []
        for d in range(1, self.degree + 1):
            monos = monomials_of_degree(n, d)
            cols = []
            for m in monos:
                t = F.one
                for j, e in enumerate(m):
                    if e:
                        t = F.mul(t, F.pow(self.coords[j], e))
                cols.append(F.coords(t))
            A = np.array(cols, dtype=np.int64).T
            out += forms_from_vectors(nullspace(A, self.p), monos, self.p, n)
        return out

    def __repr__(self):
        return f"Orbit(degree={self.degree}, multiplicity={self.multiplicity})"


@dataclass
class ZeroDimResult:
    degree: int
    orbits: list = field(default_factory=list)
    stable_degree: int = 0

    @property
    def geometric_points(self) -> int:
        return sum(o.degree for o in self.orbits)

    @property
    def orbit_degrees(self) -> list:
        return sorted(o.degree for o in self.orbits)


def _trace_pow_table(L: flint.nmod_mat, A: list, k: int, p: int):
    """s_m = tr(L^m) for m < 2k and t_i[j] = tr(A_i L^j) for j < k."""
    s = []
    P = None
    powers = []
    r = L.nrows()
    I = flint.nmod_mat(r, r, [1 if i == j else 0 for i in range(r) for j in range(r)], p)
    P = I
    for m in range(2 * k):
        powers.append(P)
        s.append(_trace(P, p))
        P = P * L
    t = []
    for Ai in A:
        t.append([_trace(Ai * powers[j], p) for j in range(k)])
    return s, t


def _trace(M: flint.nmod_mat, p: int) -> int:
    return sum(int(M[i, i]) for i in range(M.nrows())) % p


def _restrict(Bas: np.ndarray, M: np.ndarray, p: int) -> np.ndarray:
    """Matrix of M on the row space of Bas (invariant), row convention."""
    R, r = rref(Bas, p)
    cols = [int(np.nonzero(row)[0][0]) for row in R]
    BM = matmul(R, M, p)
    return matmul(BM[:, cols], inverse(R[:, cols], p), p), R


def orbits_from_matrices(mats: list, p: int, rng: random.Random, retries: int = 4) -> list:
    """Galois orbits of the joint spectrum of commuting matrices (x_i/h for all i)."""
    c = mats[0].shape[0]
    if c == 0:
        return []
    for attempt in range(retries):
        coeffs = [rng.randrange(p) for _ in mats]
        L = np.zeros_like(mats[0])
        for a, M in zip(coeffs, mats):
            L = (L + a * M) % p
        Lf = to_nmod(L, p)
        chi = Lf.charpoly()
        out = []
        ok = True
        for q, a in factor(chi, p, rng):
            k = q.degree()
            # generalized eigenspace: left kernel of q(L)^a
            Q = _poly_at_matrix(q, Lf, p)
            Qa = Q ** a
            Bas = _nullspace_rows(Qa, p)
            if Bas.shape[0] != k * a:
                ok = False
                break
            Lr, _ = _restrict(Bas, L, p)
            Ar = [_restrict(Bas, M, p)[0] for M in mats]
            Lrf = to_nmod(Lr, p)
            s, t = _trace_pow_table(Lrf, [to_nmod(X, p) for X in Ar], k, p)
            ia = pow(a, p - 2, p)
            H = np.array([[s[i + j] * ia % p for j in range(k)] for i in range(k)], dtype=np.int64)
            if rank(H, p) < k:
                ok = False
                break
            Hi = inverse(H, p)
            F = ExtensionField(q)
            coords = []
            for ti in t:
                cvec = matmul(Hi, np.array([[x * ia % p] for x in ti], dtype=np.int64), p)[:, 0]
                coords.append(F(cvec.tolist()))
            # separation check: A_i - P_i(L) nilpotent on the eigenspace
            for Xi, Pi in zip(Ar, coords):
                D = (to_nmod(Xi, p) - _poly_at_matrix(Pi, Lrf, p))
                if not _is_nilpotent(D, p):
                    ok = False
                    break
            if not ok:
                break
            out.append(Orbit(k, a, F, coords, p))
        if ok:
            return out
    raise ArithmeticError("no separating linear form found")


def _nullspace_rows(M: flint.nmod_mat, p: int) -> np.ndarray:
    """Basis (rows) of the left kernel {v : v M = 0}."""
    from .linalg import nullspace
    return nullspace(from_nmod(M.transpose()), p)


def _poly_at_matrix(q: flint.nmod_poly, L: flint.nmod_mat, p: int) -> flint.nmod_mat:
    r = L.nrows()
    out = flint.nmod_mat(r, r, p)
    I = flint.nmod_mat(r, r, [1 if i == j else 0 for i in range(r) for j in range(r)], p)
    for c in reversed([int(x) for x in q.coeffs()]):
        out = out * L + I * c
    return out


def _is_nilpotent(D: flint.nmod_mat, p: int) -> bool:
    r = D.nrows()
    P = D
    k = 1
    while k < r:
        P = P * P
        k *= 2
    return all(int(x) == 0 for x in P.entries())


def solve_zero_dim(base: GroebnerBasis | None, extra: Sequence[Polynomial], nvars: int, p: int,
                   rng: random.Random | None = None, dmax: int = 40, start: int | None = None) -> ZeroDimResult:
    """Degree and Galois orbits of the projective scheme V(B + extra)."""
    rng = rng or random.Random(0)
    extra = list(extra)
    if base is None:
        lin = [f for f in extra if f.terms and f.degree() == 1]
        if lin:
            base = groebner_basis(lin)
            extra = [f for f in extra if not (f.terms and f.degree() == 1)]
    Q = GradedQuotient(base, extra, nvars, p)
    d = Q.stable_degree(dmax, start)
    deg = Q.hf(d)
    if deg == 0:
        return ZeroDimResult(0, [], d)
    for _ in range(6):
        h = [rng.randrange(p) for _ in range(nvars)]
        try:
            mats = Q.multiplication_matrices(d, h)
        except ZeroDivisionError:
            continue
        return ZeroDimResult(deg, orbits_from_matrices(mats, p, rng), d)
    raise ArithmeticError("no chart form avoids the scheme")
