"""Multisecant systems, lines on image varieties, congruence classes, lattice data and U recovery."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .algebra.gfq import ExtensionField, conditions_over_base
from .algebra.groebner import groebner_basis
from .algebra.ideal import Ideal, saturate_irrelevant
from .algebra.linalg import (derivative_conditions, forms_from_vectors, inverse, matmul, nullspace, rank, rref,
                             solve)
from .algebra.monomials import monomials_of_degree
from .algebra.poly import Polynomial
from .algebra.zerodim import NotZeroDimensional, ZeroDimResult, solve_zero_dim
from .invariants import graded_piece_basis, hilbert_data
from .maps import RationalMap
from .schemes import ProjectiveScheme, _new_generators, random_point


class ClassificationError(ArithmeticError):
    """A line could not be lifted or its preimage has no sensible degree; carries raw data."""

    def __init__(self, msg, data=None):
        super().__init__(msg)
        self.data = data


# ---------------------------------------------------------------------------
# linear systems
# ---------------------------------------------------------------------------

def cubics_through(S: ProjectiveScheme, name: str = "") -> RationalMap:
    """The map P^n -> P^{h0-1} given by a basis of I_S(3)."""
    forms = graded_piece_basis(S.ideal, 3)
    if len(forms) <= 1:
        raise ValueError(f"h0(I(3)) = {len(forms)}: no map")
    return RationalMap(ProjectiveScheme.projective_space(S.nvars, S.p), forms, name=name or f"cubics through {S.name}")


def _points_on(S: ProjectiveScheme, rng: random.Random, count: int) -> np.ndarray:
    return np.array([random_point(S, rng) for _ in range(count)], dtype=np.int64)


def multisecant_system(S: ProjectiveScheme, e: int, rng: random.Random | None = None, method: str = "points",
                       margin: int = 15, spot_checks: int = 5) -> RationalMap:
    """Forms of degree 3e-1 with multiplicity >= e along S, as a map on P^n.

    ``points`` imposes all derivatives of order < e at random points of S
    (needs a parametrization or another way to sample S); ``saturation``
    takes the degree 3e-1 piece of the saturation of I_S^e.
    """
    if e < 1:
        raise ValueError("e must be positive")
    rng = rng or random.Random(0)
    n, p = S.nvars, S.p
    d = 3 * e - 1
    if e == 1 or method == "saturation":
        J = S.ideal if e == 1 else saturate_irrelevant(S.ideal.power(e), rng)
        forms = graded_piece_basis(J, d)
    elif method == "points":
        monos = monomials_of_degree(n, d)
        per_point = comb(e - 1 + n - 1, n - 1)
        count = len(monos) // per_point + margin
        D = derivative_conditions(_points_on(S, rng, count), monos, e, p)
        K = nullspace(D, p)
        forms = forms_from_vectors(K, monos, p, n) if len(K) else []
    else:
        raise ValueError(f"unknown method {method!r}")
    if not forms:
        raise ValueError(f"no forms of degree {d} with multiplicity {e} along the surface")
    if spot_checks and e > 1:
        monos = monomials_of_degree(n, d)
        from .algebra.linalg import vector_of
        C = np.array([vector_of(f, monos) for f in forms], dtype=np.int64)
        D = derivative_conditions(_points_on(S, rng, spot_checks), monos, e, p)
        if np.any(matmul(D, C.T, p)):
            raise ArithmeticError("multiplicity spot-check failed at a fresh point of the surface")
    return RationalMap(ProjectiveScheme.projective_space(n, p), forms, name=f"|{d}H - {e}S|")


# ---------------------------------------------------------------------------
# pencils through a point
# ---------------------------------------------------------------------------

def pencil_coefficients(f: Polynomial, q: Sequence[int]) -> list:
    """[c_0, ..., c_d] with f(s q + v) = sum_k s^{d-k} c_k(v); c_k is a form of degree k in v."""
    n, p = f.nvars, f.p
    images = []
    for i in range(n):
        t = {tuple(1 if j == i else 0 for j in range(n + 1)): 1}
        qi = int(q[i]) % p
        if qi:
            t[tuple(1 if j == n else 0 for j in range(n + 1))] = qi
        images.append(Polynomial(n + 1, t, p))
    g = f.substitute(images)
    d = f.degree()
    parts = [dict() for _ in range(d + 1)]
    for m, c in g.terms.items():
        parts[d - m[n]][m[:n]] = c
    return [Polynomial(n, t, p) for t in parts]


@dataclass
class DirectionScheme:
    """Directions v (mod q) of lines q + t v inside a scheme, as a finite scheme in P(T_q)."""
    q: np.ndarray
    chart: int
    basis: np.ndarray
    result: ZeroDimResult

    @property
    def degree(self) -> int:
        return self.result.degree

    @property
    def lines(self) -> int:
        return self.result.geometric_points

    def directions(self) -> list:
        """[(orbit, v)] with v a vector over the orbit field in ambient coordinates."""
        out = []
        n = len(self.q)
        free = [j for j in range(n) if j != self.chart]
        for o in self.result.orbits:
            F = o.field
            v = [F.zero for _ in range(n)]
            for a, w in enumerate(o.coords):
                if w.is_zero():
                    continue
                for jj, j in enumerate(free):
                    c = int(self.basis[a, jj])
                    if c:
                        v[j] = (v[j] + w * c) % F.modulus
            out.append((o, v))
        return out


def lines_through_point(Z, q, rng: random.Random | None = None, dmax: int = 30) -> DirectionScheme:
    """All lines through q contained in Z (a scheme or a list of generators).

    Every t-coefficient of g(q + t v) must vanish; the linear ones confine v
    to the tangent space, the rest cut a finite scheme of directions.
    """
    rng = rng or random.Random(0)
    gens = list(Z.ideal.gens) if isinstance(Z, ProjectiveScheme) else list(Z)
    p = gens[0].p
    n = gens[0].nvars
    q = np.asarray(q, dtype=np.int64) % p
    if any(g.evaluate(q) for g in gens):
        raise ValueError("q is not on the scheme")
    chart = int(np.flatnonzero(q)[0])
    free = [j for j in range(n) if j != chart]
    coeffs = [pencil_coefficients(g, q) for g in gens]
    T = np.array([[c[1].terms.get(tuple(1 if k == j else 0 for k in range(n)), 0) for j in free]
                  for c in coeffs if len(c) > 1], dtype=np.int64)
    N = nullspace(T, p) if len(T) else np.eye(len(free), dtype=np.int64)
    r = len(N)
    if r == 0:
        return DirectionScheme(q, chart, N, ZeroDimResult(0, [], 0))
    # v_free = sum_a w_a N[a]
    M = [[0] * r for _ in range(n)]
    for jj, j in enumerate(free):
        for a in range(r):
            M[j][a] = int(N[a, jj])
    eqs = []
    for c in coeffs:
        for ck in c[2:]:
            h = ck.linear_substitute(M, r)
            if h:
                eqs.append(h)
    try:
        res = solve_zero_dim(None, eqs, r, p, rng, dmax=dmax)
    except NotZeroDimensional as exc:
        raise NotZeroDimensional("lines through the point form a positive-dimensional family") from exc
    return DirectionScheme(q, chart, N, res)


# ---------------------------------------------------------------------------
# truncated power series and polynomials over GF(p^k)
# ---------------------------------------------------------------------------

class _SeriesRing:
    """GF(p^k)[t] / t^K with Kronecker-packed multiplication."""

    def __init__(self, F: ExtensionField, K: int):
        self.F = F
        self.K = K
        self.w = 2 * F.k - 1

    def pack(self, a):
        import flint
        w, k = self.w, self.F.k
        c = [0] * (len(a) * w)
        for i, x in enumerate(a):
            for l, y in enumerate(x.coeffs()):
                c[i * w + l] = int(y)
        return flint.nmod_poly(c, self.F.p)

    def unpack(self, P, length):
        import flint
        F, w = self.F, self.w
        c = [int(x) for x in P.coeffs()]
        out = []
        for i in range(length):
            blk = c[i * w:(i + 1) * w]
            out.append(flint.nmod_poly(blk, F.p) % F.modulus if blk else F.zero)
        return out

    def mul(self, a, b, length=None):
        length = self.K if length is None else length
        return self.unpack(self.pack(a) * self.pack(b), length)

    def evaluate(self, f: Polynomial, x: list, length=None) -> list:
        """f(x(t)) truncated to ``length`` coefficients."""
        length = self.K if length is None else length
        F = self.F
        cache = {}

        def power(j, e):
            if (j, e) not in cache:
                cache[(j, e)] = x[j] if e == 1 else self.mul(power(j, e - 1), x[j], length)
            return cache[(j, e)]

        acc = [F.zero] * length
        for m, c in f.terms.items():
            term = None
            for j, e in enumerate(m):
                if e:
                    term = power(j, e) if term is None else self.mul(term, power(j, e), length)
            for i in range(length):
                if not term[i].is_zero():
                    acc[i] = (acc[i] + term[i] * c) % F.modulus
        return acc


def _fpoly_trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _fpoly_rem(F, a, b):
    a = _fpoly_trim(a)
    b = _fpoly_trim(b)
    ib = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], ib)
        s = len(a) - len(b)
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - F.mul(c, y)) % F.modulus
        a = _fpoly_trim(a)
    return a


def fpoly_gcd(F, polys: list) -> list:
    """Monic gcd of univariate polynomials over F (coefficient lists, constant first)."""
    g = []
    for f in polys:
        f = _fpoly_trim(f)
        while f:
            g, f = f, (_fpoly_rem(F, g, f) if g else [])
        g = _fpoly_trim(g)
    if g:
        il = F.inv(g[-1])
        g = [F.mul(c, il) for c in g]
    return g


# ---------------------------------------------------------------------------
# classification of the lines through an image point
# ---------------------------------------------------------------------------

@dataclass
class CongruenceCurve:
    """Preimage of one Galois orbit of lines: k conjugate curves of degree e and secancy ell."""
    orbit_degree: int
    multiplicity: int
    e: int
    secancy: int
    field: ExtensionField = dc_field(repr=False)
    numerators: list = dc_field(repr=False)


@dataclass
class CongruenceReport:
    surface: str
    classes: dict
    total_lines: int
    scheme_degree: int
    curves: list = dc_field(default_factory=list, repr=False)
    seed: int | None = None
    prime: int | None = None

    def congruence_class(self):
        """The class (e, 3e-1) with count 1 and largest e, or None."""
        cands = [k for k, v in self.classes.items() if v == 1 and k[1] == 3 * k[0] - 1]
        return max(cands) if cands else None

    def as_table(self) -> dict:
        return {f"({e},{s})": c for (e, s), c in sorted(self.classes.items())}

    def to_dict(self) -> dict:
        return {"surface": self.surface, "classes": self.as_table(), "total_lines": self.total_lines,
                "scheme_degree": self.scheme_degree, "seed": self.seed, "prime": self.prime}


def lift_line(Phi: RationalMap, x0, q, v, F: ExtensionField, K: int) -> list:
    """Series x(t) over F with Phi(x(t)) proportional to q + t v and x(0) = x0; x_c(t) fixed for one chart c."""
    p = Phi.p
    n = Phi.source_nvars
    x0 = [int(a) % p for a in x0]
    c = next(j for j in range(n) if x0[j])
    J = np.array([[f.diff(i).evaluate(x0) for i in range(n)] for f in Phi.components], dtype=np.int64) % p
    qv = np.asarray(q, dtype=np.int64) % p
    cols = [i for i in range(n) if i != c]
    M = np.concatenate([J[:, cols], (-qv[:, None]) % p], axis=1)
    _, piv = _row_pivots(M, p)
    if len(piv) < n:
        raise ClassificationError("the map is not an immersion at the chosen point")
    Minv = inverse(M[piv], p)
    R = _SeriesRing(F, K)
    x = [[F(a)] + [F.zero] * (K - 1) for a in x0]
    lam = [F.one] + [F.zero] * (K - 1)
    for k in range(1, K):
        val = [R.evaluate(f, x, k + 1)[k] for f in Phi.components]
        res = [(val[i] - F.mul(lam[k - 1], v[i])) % F.modulus for i in range(len(val))]
        rhs = [(-r) % F.modulus for r in res]
        sol = []
        for row in Minv:
            acc = F.zero
            for cf, idx in zip(row, piv):
                if int(cf):
                    acc = (acc + rhs[idx] * int(cf)) % F.modulus
            sol.append(acc)
        for a, i in zip(sol[:-1], cols):
            x[i][k] = a
        lam[k] = sol[-1]
    # every target coordinate must agree, not just the pivot rows
    full = [R.evaluate(f, x) for f in Phi.components]
    for i, s in enumerate(full):
        lin = [F.mul(lam[k], int(qv[i])) for k in range(K)]
        for k in range(1, K):
            lin[k] = (lin[k] + F.mul(lam[k - 1], v[i])) % F.modulus
        if any(not ((a - b) % F.modulus).is_zero() for a, b in zip(s, lin)):
            raise ClassificationError("line does not lift: direction is not tangent to the image")
    return x


def _row_pivots(M, p):
    R, r = rref(np.asarray(M).T % p, p)
    piv = []
    for row in R[:r]:
        nz = np.flatnonzero(row)
        piv.append(int(nz[0]))
    return R, piv


def pade_degree(F: ExtensionField, x: list, emax: int) -> tuple:
    """Smallest e with x(t) = N(t)/D(t), deg N, D <= e; returns (e, N) with N a list of coefficient lists."""
    K = len(x[0])
    for e in range(1, emax + 1):
        rows = []
        for xi in x:
            for m in range(e + 1, K):
                rows.append([xi[m - l] for l in range(1, e + 1)] + [(-xi[m]) % F.modulus])
        R, piv = F.rref(rows)
        if e in piv:
            continue
        D = [F.one] + [F.zero] * e
        for i, pc in enumerate(piv):
            D[pc + 1] = R[i][e]
        N = []
        for xi in x:
            Ni = []
            for m in range(e + 1):
                acc = F.zero
                for l in range(0, m + 1):
                    acc = (acc + F.mul(D[l], xi[m - l])) % F.modulus
                Ni.append(acc)
            N.append(Ni)
        return e, N
    raise ClassificationError(f"no rational curve of degree <= {emax} fits the lifted series")


def secancy(F: ExtensionField, N: list, e: int, gens: Sequence[Polynomial]) -> int:
    """Length of the intersection of the curve t -> N(t) (degree e) with V(gens)."""
    R = _SeriesRing(F, 0)
    vals, inf = [], None
    for g in gens:
        L = g.degree() * e + 1
        pol = _fpoly_trim(R.evaluate(g, [list(c) + [F.zero] * (L - len(c)) for c in N], L))
        vals.append(pol)
        if pol:
            gap = (L - 1) - (len(pol) - 1)
            inf = gap if inf is None else min(inf, gap)
    if inf is None:
        raise ClassificationError("curve lies on the surface")
    return len(fpoly_gcd(F, vals)) - 1 + inf


def classify_congruence(S: ProjectiveScheme, Phi: RationalMap, point=None, rng: random.Random | None = None,
                        Z: ProjectiveScheme | None = None, emax: int = 5, seed: int | None = None) -> CongruenceReport:
    """Degrees and secancies of the preimages of all lines through Phi(point) on the image."""
    rng = rng or random.Random(0)
    p = S.p
    if point is None:
        point = np.array([rng.randrange(p) for _ in range(S.nvars)], dtype=np.int64)
    q = Phi(point)[0]
    Z = Z or Phi.image(rng)
    dirs = lines_through_point(Z, q, rng)
    K = 2 * emax + 4
    classes: dict = {}
    curves = []
    for orbit, v in dirs.directions():
        F = orbit.field
        x = lift_line(Phi, point, q, v, F, K)
        e, N = pade_degree(F, x, emax)
        ell = secancy(F, N, e, S.ideal.gens)
        curves.append(CongruenceCurve(orbit.degree, orbit.multiplicity, e, ell, F, N))
        classes[(e, ell)] = classes.get((e, ell), 0) + orbit.degree
    return CongruenceReport(S.name, dict(sorted(classes.items())), dirs.lines, dirs.degree, curves, seed, p)


def curve_in_fiber(curve: CongruenceCurve, mu: RationalMap, point) -> bool:
    """Whether mu is constant (= mu(point)) along the curve."""
    F = curve.field
    R = _SeriesRing(F, 0)
    L = mu.degree * curve.e + 1
    N = [list(c) + [F.zero] * (L - len(c)) for c in curve.numerators]
    vals = [R.evaluate(f, N, L) for f in mu.components]
    target = [int(a) for a in mu(point)[0]]
    i0 = next(i for i, a in enumerate(target) if a)
    for i, a in enumerate(target):
        for k in range(L):
            lhs = (vals[i][k] * target[i0] - vals[i0][k] * a) % F.modulus
            if not lhs.is_zero():
                return False
    return True


def fiber_curve_data(S: ProjectiveScheme, mu: RationalMap, point, rng: random.Random | None = None) -> tuple:
    """(degree, length of intersection with S) of the fiber of mu through a point, by Groebner bases."""
    rng = rng or random.Random(0)
    I = mu.fiber_over(mu(point)[0], rng)
    h = hilbert_data(I, check=False)
    meet = saturate_irrelevant(Ideal(list(I.gens) + list(S.ideal.gens), S.nvars, S.p), rng)
    return h.dimension, h.degree, hilbert_data(meet, check=False).degree


# ---------------------------------------------------------------------------
# secant and trisecant lines
# ---------------------------------------------------------------------------

def _minors(M: list, size: int) -> list:
    from .invariants import _det
    rows, cols = len(M), len(M[0])
    out = []
    for ri in combinations(range(rows), size):
        for ci in combinations(range(cols), size):
            d = _det([[M[i][j] for j in ci] for i in ri], None)
            if d:
                out.append(d)
    return out


def _rank_scheme(gens: Sequence[Polynomial], point, rng, dmax: int = 30) -> ZeroDimResult:
    """Directions w (mod point) where the restricted forms g(s point + u w), g vanishing at point,
    have rank <= r-2 after dividing by u: lines through the point meeting V(gens) twice more."""
    p = gens[0].p
    n = gens[0].nvars
    r = gens[0].degree()
    chart = int(np.flatnonzero(np.asarray(point) % p)[0])
    keep = [j for j in range(n) if j != chart]
    # v_chart = 0 picks a complement of the point
    emb = [[1 if j == k else 0 for k in keep] for j in range(n)]
    M = []
    for g in gens:
        c = pencil_coefficients(g, point)
        M.append([ck.linear_substitute(emb, n - 1) for ck in c[1:]])
    if r - 2 == 0:
        eqs = [f for row in M for f in row if f]
    else:
        eqs = _minors(M, r - 1)
    return solve_zero_dim(None, eqs, n - 1, p, rng, dmax=dmax)


def _cut_in_one_degree(S: ProjectiveScheme) -> list:
    r = max(g.degree() for g in S.ideal.gens)
    return graded_piece_basis(S.ideal, r) if any(g.degree() != r for g in S.ideal.gens) else list(S.ideal.gens)


def count_secant_lines(S: ProjectiveScheme, point=None, rng: random.Random | None = None) -> int:
    """Number of secant lines of S through a general point.

    With g_0 the one generator not vanishing at the point, a line meets S
    twice iff the other restricted forms span at most an (r-2)-space.
    """
    rng = rng or random.Random(0)
    p = S.p
    gens = _cut_in_one_degree(S)
    if point is None:
        point = [rng.randrange(p) for _ in range(S.nvars)]
    vals = [g.evaluate(point) for g in gens]
    i0 = next((i for i, a in enumerate(vals) if a), None)
    if i0 is None:
        raise ValueError("point lies on the surface")
    inv0 = pow(vals[i0], p - 2, p)
    rest = [g - gens[i0].scale(vals[i] * inv0 % p) for i, g in enumerate(gens) if i != i0]
    res = _rank_scheme([g for g in rest if g], point, rng)
    if res.degree != res.geometric_points:
        raise ArithmeticError("secant-line scheme is not reduced: the point is special")
    return res.degree


def trisecant_locus_dim(S: ProjectiveScheme, rng: random.Random | None = None) -> int:
    """Dimension of the union of proper trisecant lines, read off from those through a general point of S.

    Finitely many (and some) through a general point means a 2-dimensional
    family, hence a 3-fold; none means no component dominates S (-1 is
    returned); infinitely many means dimension at least 4.
    """
    rng = rng or random.Random(0)
    gens = _cut_in_one_degree(S)
    s = random_point(S, rng)
    try:
        res = _rank_scheme(gens, s, rng)
    except NotZeroDimensional:
        return 4
    return 3 if res.degree > 0 else -1


# ---------------------------------------------------------------------------
# lattice data
# ---------------------------------------------------------------------------

def self_intersection_in_cubic(d: int, HK: int, K2: int, chi_top: int, delta: int = 0) -> int:
    """S.S inside a cubic fourfold from the double point formula for the smooth model with delta nodes."""
    return 6 * d + 3 * HK + K2 - chi_top + 2 * delta


def discriminant(d: int, s2: int) -> int:
    """Determinant of the intersection form on <h^2, S> with h^4 = 3 and h^2.S = d."""
    return 3 * s2 - d * d


@dataclass
class LatticeData:
    d: int
    self_intersection: int
    discriminant: int = dc_field(init=False)

    def __post_init__(self):
        self.discriminant = discriminant(self.d, self.self_intersection)

    @classmethod
    def from_invariants(cls, d, HK, K2, chi_top, delta=0) -> "LatticeData":
        return cls(d, self_intersection_in_cubic(d, HK, K2, chi_top, delta))


# ---------------------------------------------------------------------------
# the base surface of an inverse map
# ---------------------------------------------------------------------------

@dataclass
class AssociatedSurface:
    scheme: ProjectiveScheme
    forms: dict
    points: list = dc_field(repr=False)
    slices: int = 0
    generators: list = dc_field(default_factory=list, repr=False)

    def generator_degrees(self) -> dict:
        """Minimal generator count per degree, source equations included."""
        out: dict = {}
        for g in self.generators:
            out[g.degree()] = out.get(g.degree(), 0) + 1
        return out

    def hilbert(self):
        return self.scheme.hilbert()


def _gradient_vanishes(F: ExtensionField, grads: list, pt: list, source_grads: Sequence = ()) -> bool:
    """Gradient of the combination at pt, modulo the conormal directions of the source."""
    if not grads:
        return True
    v = [F.evaluate(g, pt) for g in grads]
    if all(c.is_zero() for c in v):
        return True
    if not source_grads:
        return False
    T = [[F.evaluate(g, pt) for g in row] for row in source_grads]
    return len(F.rref(T + [v])[1]) == len(F.rref(T)[1])


def _slice_points(f_inv: RationalMap, rng: random.Random, grads: list, source_grads: Sequence = ()) -> list:
    """Points of the multiplicity >= 2 part of the base scheme on a random codim-2 slice of the source."""
    n, p = f_inv.source_nvars, f_inv.p
    m = n - 2
    A = [[rng.randrange(p) for _ in range(m)] for _ in range(n)]
    W = f_inv.source.ideal
    base_gens = [g.linear_substitute(A, m) for g in (W.gens if W is not None else [])]
    base_gens = [g for g in base_gens if g]
    base = groebner_basis(base_gens) if base_gens else None
    extra = [f.linear_substitute(A, m) for f in f_inv.components]
    res = solve_zero_dim(base, extra, m, p, rng)
    out = []
    for o in res.orbits:
        F = o.field
        pt = []
        for i in range(n):
            acc = F.zero
            for a in range(m):
                if A[i][a] and not o.coords[a].is_zero():
                    acc = (acc + o.coords[a] * A[i][a]) % F.modulus
            pt.append(acc)
        if _gradient_vanishes(F, grads, pt, source_grads):
            out.append((o, pt))
    return out


def _interpolate_through(points: list, d: int, n: int, p: int) -> list:
    monos = monomials_of_degree(n, d)
    blocks = []
    for o, pt in points:
        F = o.field
        vals = []
        for mono in monos:
            t = F.one
            for j, e in enumerate(mono):
                if e:
                    t = F.mul(t, F.pow(pt[j], e))
            vals.append(t)
        blocks.append(conditions_over_base(F, vals))
    C = np.vstack(blocks)
    K = nullspace(C, p)
    return forms_from_vectors(K, monos, p, n) if len(K) else []


def recover_associated_surface(f_inv: RationalMap, degrees: Sequence[int], rng: random.Random | None = None,
                               min_points: int = 60, max_slices: int = 60, name: str = "U",
                               multiplicity: int = 2) -> AssociatedSurface:
    """The surface along which f_inv has the given multiplicity, by slicing and interpolation.

    With multiplicity 1 every base point on a slice is kept; otherwise only
    points where a random member of the system is singular on the source.
    """
    rng = rng or random.Random(0)
    n, p = f_inv.source_nvars, f_inv.p
    combo = f_inv.base_element(rng)
    grads = [combo.diff(i) for i in range(n)] if multiplicity >= 2 else []
    src = f_inv.source.ideal if f_inv.source is not None else None
    source_grads = [[g.diff(i) for i in range(n)] for g in src.gens] if src is not None else []
    pts: list = []
    dims: list = []
    slices = 0
    while slices < max_slices:
        pts += _slice_points(f_inv, rng, grads, source_grads)
        slices += 1
        geo = sum(o.degree for o, _ in pts)
        if geo < min_points:
            continue
        dims.append(tuple(len(_interpolate_through(pts, d, n, p)) for d in degrees))
        if len(dims) >= 2 and dims[-1] == dims[-2]:
            break
    else:
        raise ArithmeticError("interpolation spaces did not stabilize")
    W = f_inv.source.ideal
    gens = [g for g in (W.gens if W is not None else [])]
    forms = {}
    for d in sorted(degrees):
        Fd = _interpolate_through(pts, d, n, p)
        forms[d] = Fd
        gens = gens + _new_generators(gens, Fd, d, n, p)
    I = saturate_irrelevant(Ideal(gens, n, p), rng)
    return AssociatedSurface(ProjectiveScheme(I, n, name=name), forms, pts, slices, gens)


# ---------------------------------------------------------------------------
# multiplicity along a surface
# ---------------------------------------------------------------------------

def rational_points(I: Ideal, rng: random.Random, count: int, max_slices: int = 200) -> list:
    """GF(p)-points of V(I) from zero-dimensional linear sections of complementary dimension."""
    n, p = I.nvars, I.p
    dim = hilbert_data(I, check=False).dimension
    out: list = []
    for _ in range(max_slices):
        m = n - dim
        A = [[rng.randrange(p) for _ in range(m)] for _ in range(n)]
        gens = [g for g in (g.linear_substitute(A, m) for g in I.gens) if g]
        res = solve_zero_dim(groebner_basis(gens), [], m, p, rng)
        for o in res.orbits:
            if o.degree == 1 and o.multiplicity == 1:
                w = o.rational_point()
                out.append(np.array([sum(A[i][a] * w[a] for a in range(m)) % p for i in range(n)], dtype=np.int64))
        if len(out) >= count:
            return out[:count]
    raise ArithmeticError(f"only {len(out)} rational points found")


def curve_germ(source_gens: list, u, order: int, rng: random.Random) -> list:
    """Coefficients c_0 = u, c_1, ... of a random smooth curve germ through u in V(source_gens), mod t^order."""
    p = source_gens[0].p
    n = len(u)
    J = np.array([[g.diff(i).evaluate(u) for i in range(n)] for g in source_gens], dtype=np.int64) % p
    T = nullspace(J, p)
    v = sum(T[k] * rng.randrange(1, p) for k in range(len(T))) % p
    cs = [np.asarray(u, dtype=np.int64) % p, v]
    for k in range(2, order):
        gam = [Polynomial(1, {(e,): int(c[i]) for e, c in enumerate(cs) if int(c[i]) % p}, p) for i in range(n)]
        r = np.array([g.substitute(gam).terms.get((k,), 0) for g in source_gens], dtype=np.int64)
        c = solve(J, (-r) % p, p)
        if c is None:
            raise ArithmeticError("source singular at the base point")
        cs.append(c % p)
    return cs


def vanishing_order_along(forms: list, source_gens: list, u, rng: random.Random, cap: int = 4) -> int:
    """min over forms of ord_t f(gamma(t)) for a random germ gamma through u (capped)."""
    p = forms[0].p
    n = len(u)
    cs = curve_germ(source_gens, u, cap + 1, rng) if source_gens else None
    if cs is None:
        v = [rng.randrange(p) for _ in range(n)]
        cs = [np.asarray(u, dtype=np.int64) % p, np.array(v, dtype=np.int64)]
    gam = [Polynomial(1, {(e,): int(c[i]) % p for e, c in enumerate(cs) if int(c[i]) % p}, p) for i in range(n)]
    best = cap
    for f in forms:
        h = f.substitute(gam).terms
        low = min((m[0] for m in h if m[0] < cap), default=cap)
        best = min(best, low)
    return best


def multiplicity_witness(f_inv: RationalMap, U: ProjectiveScheme, rng: random.Random, count: int = 20,
                         cap: int = 4) -> list:
    """Vanishing orders of f_inv along random germs at fresh rational points of U."""
    src = f_inv.source.ideal.gens if f_inv.source is not None and f_inv.source.ideal is not None else []
    return [vanishing_order_along(f_inv.components, list(src), u, rng, cap)
            for u in rational_points(U.ideal, rng, count)]
