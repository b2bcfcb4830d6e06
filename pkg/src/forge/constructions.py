"""Surface constructions for the example registry.

Everything here is a recipe step: a plane linear system, a projection, or
one of the stages of the degree-9 surface with five nodes (octic curve,
quartic scroll, Segre threefold, quintic del Pezzo, the maps alpha and beta).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .algebra.groebner import groebner_basis
from .algebra.ideal import Ideal
from .algebra.linalg import (eval_monomials, eval_polys, forms_from_vectors, interpolate_forms, inverse, matmul,
                             nullspace, rank, rref, solve, to_nmod)
from .algebra.monomials import monomials_of_degree
from .algebra.poly import Polynomial
from .algebra.zerodim import solve_zero_dim
from .congruences import _interpolate_through
from .invariants import graded_piece_basis, linear_syzygies
from .maps import _divide, poly_gcd, sample_hypersurface
from .schemes import (FatPointSystem, Parametrization, ProjectiveScheme, fat_point_basis, image_of_parametrization,
                      linear_forms_vanishing_on)


class ConstructionError(RuntimeError):
    """A recipe step produced data violating its own contract."""

    def __init__(self, step: str, msg: str):
        super().__init__(f"{step}: {msg}")
        self.step = step


def random_plane_points(k: int, rng: random.Random, p: int) -> list:
    return [[rng.randrange(p) for _ in range(3)] for _ in range(k)]


def plane_system(degree: int, multiplicities, rng: random.Random, p: int) -> list:
    """Forms of the given degree through general fat points of P^2."""
    pts = random_plane_points(len(multiplicities), rng, p)
    return fat_point_basis(FatPointSystem(degree, pts, list(multiplicities), p))


def fat_point_surface(degree: int, multiplicities, rng: random.Random, p: int, name: str = "",
                      degrees=None) -> ProjectiveScheme:
    B = plane_system(degree, multiplicities, rng, p)
    return image_of_parametrization(Parametrization(B), rng, degrees=degrees, name=name)


def secant_point(par: Parametrization, rng: random.Random) -> np.ndarray:
    """A random point on the line through two random points of the image."""
    _, img = par.sample(rng, 2)
    lam = rng.randrange(1, par.p)
    return (img[0] + lam * img[1]) % par.p


def projected_surface(par: Parametrization, centers, rng: random.Random, name: str = "",
                      degrees=None) -> ProjectiveScheme:
    """Image of the parametrized surface under projection from the span of ``centers``."""
    L = linear_forms_vanishing_on(np.array(centers, dtype=np.int64), par.p)
    return image_of_parametrization(par.then_linear(L), rng, degrees=degrees, name=name)


# ---------------------------------------------------------------------------
# the nodal octic curve and the quartic scroll
# ---------------------------------------------------------------------------

@dataclass
class NodalOctic:
    """C = projection of a hyperplane section of T from a point on a secant line of T."""
    T: Parametrization      # P^2 -> P^7, quartics with a double point, inside P^1 x P^3
    conics: list            # the pencil factor
    conics4: list           # the 4-dimensional factor
    hyperplane: np.ndarray
    center: np.ndarray
    projection: np.ndarray  # 6 x 8
    quadrics: list          # ideal of C in degree 2
    p: int

    def points(self, rng: random.Random, count: int) -> np.ndarray:
        hT = sum((f.scale(int(c)) for f, c in zip(self.T.components, self.hyperplane) if int(c)),
                 Polynomial(3, {}, self.p))
        pts = sample_hypersurface(hT, rng, count)
        return matmul(eval_polys(self.T.components, pts, self.p), self.projection.T, self.p)


def nodal_octic_curve(rng: random.Random, p: int, samples: int = 120) -> NodalOctic:
    P = random_plane_points(5, rng, p)
    c = fat_point_basis(FatPointSystem(2, [P[0], P[2], P[3], P[4]], [1] * 4, p))
    k = fat_point_basis(FatPointSystem(2, [P[0], P[1]], [1, 1], p))
    if len(c) != 2 or len(k) != 4:
        raise ConstructionError("octic", "unexpected conic systems")
    T = Parametrization([ci * kj for ci in c for kj in k])
    u, v = random_plane_points(2, rng, p)
    a, b = eval_polys(T.components, [u, v], p)
    hs = nullspace(np.array([a, b]), p)
    h = sum(hs[i] * rng.randrange(1, p) for i in range(len(hs))) % p
    ctr = (a + rng.randrange(1, p) * b) % p
    M: list = []
    for f in nullspace(np.array([ctr]), p):
        if rank(np.array(M + [h, f]), p) == len(M) + 2:
            M.append(f)
        if len(M) == 6:
            break
    M = np.array(M, dtype=np.int64)
    C = NodalOctic(T, c, k, h, ctr, M, [], p)
    C.quadrics = interpolate_forms(C.points(rng, samples), 2, p)
    if len(C.quadrics) != 7:
        raise ConstructionError("octic", f"{len(C.quadrics)} quadrics through C")
    return C


def quartic_scroll(C: NodalOctic, rng: random.Random) -> ProjectiveScheme:
    """B = projection of the hyperplane section of P^1 x P^3 containing the octic.

    Parametrized from P^4 by (s, t, v): the P^1 factor is (s, t) and the P^3
    factor runs over the kernel of the hyperplane restricted to (s, t).
    """
    p = C.p
    x = [Polynomial.var(5, i, p) for i in range(5)]
    s, t = x[0], x[1]
    zero = Polynomial(5, {}, p)
    h = C.hyperplane
    a = [s.scale(int(h[j])) + t.scale(int(h[4 + j])) for j in range(4)]
    ker = [[a[j], *([zero] * (j - 1)), -a[0], *([zero] * (3 - j))] for j in (1, 2, 3)]
    u = [sum((ker[i][j] * x[2 + i] for i in range(3)), zero) for j in range(4)]
    par = Parametrization([si * uj for si in (s, t) for uj in u]).then_linear(C.projection)
    B = image_of_parametrization(par, rng, degrees=[2, 3], name="B")
    if B.hilbert().degree != 4 or B.hilbert().dimension != 3:
        raise ConstructionError("scroll", "B is not a quartic threefold")
    return B


# ---------------------------------------------------------------------------
# the Segre threefold through C
# ---------------------------------------------------------------------------

def _jacobian_minors_on_plane(J: list, A: np.ndarray, rng: random.Random, p: int) -> list:
    """Maximal minors of the (m x n) Jacobian matrix J restricted to the plane x = A w, as forms in w."""
    m, n = len(J), len(J[0])
    deg = n * (J[0][0].degree() if J[0][0] else 1)
    monos = monomials_of_degree(3, deg)
    W = np.array([[rng.randrange(p) for _ in range(3)] for _ in range(len(monos) + 12)], dtype=np.int64)
    V = eval_monomials(W, monos, p)
    X = matmul(W, A.T, p)
    vals = np.array([[[f.evaluate(x) for f in row] for row in J] for x in X], dtype=np.int64)
    out = []
    for drop in range(m):
        dets = [int(to_nmod(np.delete(vals[i], drop, axis=0), p).det()) for i in range(len(W))]
        c = solve(V, np.array(dets, dtype=np.int64), p)
        if c is None:
            raise ConstructionError("segre", "minor interpolation failed")
        out += forms_from_vectors(np.array([c]), monos, p, 3)
    return [f for f in out if f]


def segre_points(quadrics: list, rng: random.Random, planes: int = 14) -> list:
    """Points of the threefold swept by conics contracted by the quadrics through C.

    On a random plane the Jacobian of the quadric map drops rank at finitely
    many points: those of the secant variety of C, where the kernel line is
    contracted, and those of Z, where it is not.
    """
    p = quadrics[0].p
    n = quadrics[0].nvars
    J = [[q.diff(j) for j in range(n)] for q in quadrics]
    out = []
    for _ in range(planes):
        A = np.array([[rng.randrange(p) for _ in range(3)] for _ in range(n)], dtype=np.int64)
        res = solve_zero_dim(None, _jacobian_minors_on_plane(J, A, rng, p), 3, p, rng)
        for o in res.orbits:
            F = o.field
            x = [sum((o.coords[a] * int(A[i][a]) for a in range(3)), F.zero) % F.modulus for i in range(n)]
            ker = F.nullspace([[F.evaluate(f, x) for f in row] for row in J], n)
            if len(ker) != 1:
                continue
            t = rng.randrange(1, p)
            y = [(xi + vi * t) % F.modulus for xi, vi in zip(x, ker[0])]
            a = [F.evaluate(q, x) for q in quadrics]
            b = [F.evaluate(q, y) for q in quadrics]
            i0 = next(i for i in range(len(a)) if not a[i].is_zero())
            contracted = all(((b[i] * a[i0] - b[i0] * a[i]) % F.modulus).is_zero() for i in range(len(a)))
            if not contracted:
                out.append((o, x))
    return out


@dataclass
class SegreThreefold:
    quadrics: list          # its three quadrics (2x2 minors)
    matrix: list            # 2 x 3 matrix of linear forms
    to_segre: np.ndarray    # y = L x with y = (s u, t u)
    from_segre: np.ndarray

    def parametrization(self) -> list:
        """x as bihomogeneous forms in (s, t, u0, u1, u2)."""
        q = self.quadrics[0].p
        v = [Polynomial.var(5, i, q) for i in range(5)]
        y = [v[0] * v[2 + j] for j in range(3)] + [v[1] * v[2 + j] for j in range(3)]
        return Parametrization(y).then_linear(self.from_segre).components


def segre_threefold(C: NodalOctic, rng: random.Random, planes: int = 14) -> SegreThreefold:
    p = C.p
    pts = segre_points(C.quadrics, rng, planes)
    W = _interpolate_through(pts, 2, 6, p)
    if len(W) != 3:
        raise ConstructionError("segre", f"{len(W)} quadrics through the sampled points")
    syz = linear_syzygies(W)
    if len(syz) != 2:
        raise ConstructionError("segre", "expected a 2 x 3 linear matrix")
    unit = [tuple(1 if j == i else 0 for j in range(6)) for i in range(6)]
    L = np.array([[l.terms.get(e, 0) for e in unit] for r in syz for l in r], dtype=np.int64)
    if rank(L, p) != 6:
        raise ConstructionError("segre", "matrix entries are dependent")
    Z = SegreThreefold(W, syz, L, inverse(L, p))
    if any(q.substitute(Z.parametrization()) for q in W):
        raise ConstructionError("segre", "parametrization off Z")
    return Z


# ---------------------------------------------------------------------------
# the del Pezzo surface D in Z through C
# ---------------------------------------------------------------------------

def _bidegree_part(f: Polynomial, which: int) -> Polynomial:
    """Coefficient of s (which=0) or t (which=1) in f linear in (s, t), as a form in u."""
    out = {}
    for m, c in f.terms.items():
        if m[which] == 1 and m[1 - which] == 0:
            out[m[2:]] = c
    return Polynomial(3, out, f.p)


def del_pezzo_in_segre(C: NodalOctic, Z: SegreThreefold, rng: random.Random) -> Parametrization:
    """A quintic del Pezzo D with C in D in Z, parametrized by plane cubics.

    At a point z0 of Z, the quadric through C that vanishes on the ruling
    plane of z0 and is singular at z0 restricts to Z as (plane) * e with e of
    bidegree (1, 2); D = {e = 0} is then the graph u -> (s : t) = (e_t : -e_s).
    """
    p = C.p
    xZ = Z.parametrization()
    g = [q.substitute(xZ) for q in C.quadrics]
    s0, t0 = rng.randrange(1, p), rng.randrange(1, p)
    z0 = [s0, t0] + [rng.randrange(p) for _ in range(3)]
    fix = [Polynomial.constant(3, s0, p), Polynomial.constant(3, t0, p)] + [Polynomial.var(3, j, p) for j in range(3)]
    gr = [f.substitute(fix) for f in g]
    monos = sorted({m for f in gr for m in f.terms})
    rows = [[f.terms.get(m, 0) for f in gr] for m in monos]
    rows += [[f.diff(v).evaluate(z0) for f in g] for v in range(5)]
    K = nullspace(np.array(rows, dtype=np.int64), p)
    G = None
    for kv in K:
        G = sum((g[i].scale(int(kv[i])) for i in range(len(g)) if kv[i]), Polynomial(5, {}, p))
        if G:
            break
    if not G:
        raise ConstructionError("del Pezzo", "no tangent quadric")
    s, t = Polynomial.var(5, 0, p), Polynomial.var(5, 1, p)
    e = _divide(G, s.scale(t0) - t.scale(s0))
    es, et = _bidegree_part(e, 0), _bidegree_part(e, 1)
    sub = [et, -es] + [Polynomial.var(3, j, p) for j in range(3)]
    return Parametrization([x.substitute(sub) for x in xZ])


def strip_common_factor(forms: list) -> list:
    g = forms[0]
    for f in forms[1:]:
        g = poly_gcd(g, f)
    return [_divide(f, g) for f in forms] if g.degree() > 0 else forms


# ---------------------------------------------------------------------------
# V = G(1,4) cap P^8 and the projection beta from a plane of the first family
# ---------------------------------------------------------------------------

@dataclass
class PfaffianFivefold:
    quadrics: list
    syzygies: list          # 5 x 5 linear matrix N with N(x) of rank 2 on V
    points: np.ndarray = field(repr=False, default=None)

    def matrix_at(self, x) -> np.ndarray:
        p = self.quadrics[0].p
        return np.array([[l.evaluate(x) % p for l in r] for r in self.syzygies], dtype=np.int64)

    def line_of(self, x) -> np.ndarray:
        """The 2-space of C^5 (in the syzygy frame) whose Pluecker point is x."""
        R, r = rref(self.matrix_at(x), self.quadrics[0].p)
        if r != 2:
            raise ConstructionError("beta", f"rank {r} at a point of V")
        return R[:2]


def pfaffian_fivefold(alpha: list, rng: random.Random, samples: int = 80) -> PfaffianFivefold:
    p = alpha[0].p
    _, pts = Parametrization(alpha).sample(rng, samples)
    Q = interpolate_forms(pts, 2, p)
    N = linear_syzygies(Q)
    if len(Q) != 5 or len(N) != 5:
        raise ConstructionError("alpha", f"V has {len(Q)} quadrics and {len(N)} linear syzygies")
    return PfaffianFivefold(Q, N, pts)


def first_family_plane(V: PfaffianFivefold, x0) -> np.ndarray:
    """Basis (3 x 9) of the plane of the first family through x0.

    V lies in the hyperplane omega = 0 of the Pluecker space; the plane is
    the set of lines inside the isotropic 3-space spanned by the line of x0
    and the kernel of omega.
    """
    p = V.quadrics[0].p
    conds = []
    for x in V.points[:25]:
        a, b = V.line_of(x)
        conds.append([(a[i] * b[j] - a[j] * b[i]) % p for i in range(5) for j in range(i + 1, 5)])
    om = nullspace(np.array(conds, dtype=np.int64), p)
    if len(om) != 1:
        raise ConstructionError("beta", "hyperplane of V not unique")
    Om = np.zeros((5, 5), dtype=np.int64)
    k = 0
    for i in range(5):
        for j in range(i + 1, 5):
            Om[i, j], Om[j, i] = om[0][k], (-om[0][k]) % p
            k += 1
    kern = nullspace(Om, p)
    if len(kern) != 1:
        raise ConstructionError("beta", "skew form does not have rank 4")
    ann = nullspace(np.vstack([V.line_of(x0), kern]), p)
    n = V.quadrics[0].nvars
    unit = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rows = [[sum(int(w[i]) * r[i].terms.get(unit[c], 0) for i in range(5)) % p for c in range(n)]
            for w in ann for r in V.syzygies]
    P = nullspace(np.array(rows, dtype=np.int64), p)
    if len(P) != 3:
        raise ConstructionError("beta", f"incidence locus has dimension {len(P)}")
    return P


@dataclass
class S42Construction:
    octic: NodalOctic
    scroll: ProjectiveScheme
    segre: SegreThreefold
    del_pezzo: ProjectiveScheme
    alpha: list
    fivefold: PfaffianFivefold
    beta: np.ndarray
    surface: ProjectiveScheme


def build_s42(rng: random.Random, p: int) -> S42Construction:
    C = nodal_octic_curve(rng, p)
    B = quartic_scroll(C, rng)
    alpha = graded_piece_basis(B.ideal, 3)
    if len(alpha) != 9:
        raise ConstructionError("alpha", f"{len(alpha)} cubics through B")
    Z = segre_threefold(C, rng)
    Dpar = del_pezzo_in_segre(C, Z, rng)
    D = image_of_parametrization(Dpar, rng, name="D")
    hd = D.hilbert()
    if (hd.dimension, hd.degree) != (2, 5):
        raise ConstructionError("del Pezzo", f"D has dim {hd.dimension} and degree {hd.degree}")
    Spar = Parametrization(strip_common_factor([f.substitute(Dpar.components) for f in alpha]))
    V = pfaffian_fivefold(alpha, rng)
    P = first_family_plane(V, V.points[-1])
    beta = nullspace(P, p)
    S = image_of_parametrization(Spar.then_linear(beta), rng, name="S42")
    return S42Construction(C, B, Z, D, alpha, V, beta, S)
