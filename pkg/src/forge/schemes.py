"""Projective schemes, parametrizations, fat-point systems and point sampling."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from .algebra.ideal import Ideal, apply_linear_change, eliminate, is_saturated, saturate, saturate_irrelevant
from .algebra.linalg import (derivative_conditions, eval_monomials, eval_polys, forms_from_vectors, inverse,
                             matmul, nullspace, rank, rref)
from .algebra.monomials import monomials_of_degree
from .algebra.poly import Polynomial
from .algebra.univariate import roots
from .algebra.zerodim import Orbit, ZeroDimResult, solve_zero_dim
from .invariants import hilbert_data


class SamplingError(RuntimeError):
    """No rational point found within the retry budget."""


class DegenerateImage(ValueError):
    pass


# ---------------------------------------------------------------------------
# parametrizations
# ---------------------------------------------------------------------------

@dataclass
class Parametrization:
    """x = F(t): forms of one degree on P^m, or on the ambient of a source scheme."""
    components: list
    source: "ProjectiveScheme | None" = None

    def __post_init__(self):
        comps = self.components
        if not comps:
            raise ValueError("no components")
        self.p = comps[0].p
        self.source_nvars = comps[0].nvars
        degs = {f.degree() for f in comps if f}
        if len(degs) != 1:
            raise ValueError("components must share one degree")
        self.degree = degs.pop()
        if any(f and not f.is_homogeneous() for f in comps):
            raise ValueError("components must be forms")
        if self.source is not None and self.source.nvars != self.source_nvars:
            raise ValueError("source ambient mismatch")

    @property
    def target_nvars(self) -> int:
        return len(self.components)

    def evaluate(self, pts) -> np.ndarray:
        return eval_polys(self.components, np.atleast_2d(pts), self.p)

    def source_points(self, rng: random.Random, count: int) -> np.ndarray:
        if self.source is None:
            return np.array([[rng.randrange(self.p) for _ in range(self.source_nvars)] for _ in range(count)],
                            dtype=np.int64)
        return np.array([random_point(self.source, rng) for _ in range(count)], dtype=np.int64)

    def sample(self, rng: random.Random, count: int) -> tuple:
        """(source points, image points) with every image nonzero."""
        src, img = [], []
        while len(img) < count:
            S = self.source_points(rng, count - len(img) + 4)
            V = self.evaluate(S)
            for s, v in zip(S, V):
                if np.any(v) and len(img) < count:
                    src.append(s)
                    img.append(v)
        return np.array(src, dtype=np.int64), np.array(img, dtype=np.int64)

    def then(self, forms: Sequence[Polynomial]) -> "Parametrization":
        """Parametrization of the image under the map given by ``forms`` (substitution)."""
        return Parametrization([g.substitute(self.components) for g in forms], self.source)

    def then_linear(self, A) -> "Parametrization":
        A = np.asarray(A, dtype=np.int64) % self.p
        out = []
        for row in A:
            acc = Polynomial(self.source_nvars, {}, self.p)
            for c, f in zip(row, self.components):
                if int(c):
                    acc = acc + f.scale(int(c))
            out.append(acc)
        return Parametrization(out, self.source)

    def jacobian_rank(self, rng: random.Random) -> int:
        """Rank of the affine Jacobian at a random source point (= image dimension + 1)."""
        x = self.source_points(rng, 1)[0]
        J = np.array([[f.diff(i).evaluate(x) for i in range(self.source_nvars)] for f in self.components],
                     dtype=np.int64)
        if self.source is not None and self.source.ideal is not None:
            # restrict to the tangent space of the source at x
            T = np.array([[g.diff(i).evaluate(x) for i in range(self.source_nvars)] for g in self.source.ideal.gens],
                         dtype=np.int64)
            N = nullspace(T, self.p)
            J = matmul(J, N.T, self.p)
        return rank(J, self.p)


# ---------------------------------------------------------------------------
# schemes
# ---------------------------------------------------------------------------

class ProjectiveScheme:
    """A closed subscheme of P^n: a saturated ideal and optionally a parametrization."""

    def __init__(self, ideal: Ideal | None, nvars: int | None = None, parametrization: Parametrization | None = None,
                 name: str = ""):
        if ideal is None and parametrization is None:
            raise ValueError("need an ideal or a parametrization")
        self.ideal = ideal
        self.nvars = nvars if nvars is not None else (ideal.nvars if ideal is not None else parametrization.target_nvars)
        self.p = ideal.p if ideal is not None else parametrization.p
        self.parametrization = parametrization
        self.name = name
        self._hilbert = None

    @classmethod
    def projective_space(cls, nvars: int, p: int) -> "ProjectiveScheme":
        I = Ideal([], nvars, p)
        I.saturated = True
        return cls(I, nvars, name=f"P{nvars - 1}")

    def hilbert(self):
        if self._hilbert is None:
            self._hilbert = hilbert_data(self.ideal, check=not self.ideal.saturated)
        return self._hilbert

    @property
    def dimension(self) -> int:
        return self.hilbert().dimension

    @property
    def degree(self) -> int:
        return self.hilbert().degree

    def is_hypersurface(self) -> bool:
        return self.ideal is not None and len(self.ideal.gens) == 1

    def contains(self, pt) -> bool:
        return all(g.evaluate(pt) == 0 for g in self.ideal.gens)

    def __repr__(self):
        return f"ProjectiveScheme({self.name or '?'} in P{self.nvars - 1})"


@dataclass
class FatPointSystem:
    degree: int
    points: list
    multiplicities: list
    p: int = 65537

    def __post_init__(self):
        if len(self.points) != len(self.multiplicities):
            raise ValueError("one multiplicity per point")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")


def fat_point_conditions(sys: FatPointSystem) -> np.ndarray:
    monos = monomials_of_degree(3, sys.degree)
    blocks = []
    for mult in sorted(set(sys.multiplicities)):
        pts = [pt for pt, m in zip(sys.points, sys.multiplicities) if m == mult]
        blocks.append(derivative_conditions(np.array(pts, dtype=np.int64), monos, mult, sys.p))
    return np.vstack(blocks) if blocks else np.zeros((0, len(monos)), dtype=np.int64)


def _normalized(pt, p: int) -> tuple:
    v = [int(c) % p for c in pt]
    k = next((i for i, c in enumerate(v) if c), None)
    if k is None:
        raise ValueError("zero vector is not a point")
    s = pow(v[k], p - 2, p)
    return tuple(c * s % p for c in v)


def fat_point_basis(sys: FatPointSystem) -> list:
    """Forms of degree d on P^2 with multiplicity >= m_i at each point p_i."""
    if len({_normalized(pt, sys.p) for pt in sys.points}) != len(sys.points):
        raise ValueError("points must be distinct")
    monos = monomials_of_degree(3, sys.degree)
    D = fat_point_conditions(sys)
    N = nullspace(D, sys.p) if len(D) else np.eye(len(monos), dtype=np.int64)
    if len(N) == 0:
        return []
    R, _ = rref(N, sys.p)
    return forms_from_vectors(R, monos, sys.p, 3)


# ---------------------------------------------------------------------------
# images
# ---------------------------------------------------------------------------

def interpolate_ideal(par: Parametrization, degree: int, rng: random.Random, margin: int = 20) -> list:
    """All forms of the given degree vanishing on the image (from random samples)."""
    n = par.target_nvars
    monos = monomials_of_degree(n, degree)
    _, img = par.sample(rng, len(monos) + margin)
    E = eval_monomials(img, monos, par.p)
    N = nullspace(E, par.p)
    if len(N) == 0:
        return []
    R, _ = rref(N, par.p)
    return forms_from_vectors(R, monos, par.p, n)


def _new_generators(existing: list, forms: list, degree: int, n: int, p: int) -> list:
    """Forms of ``forms`` not in the degree part of the ideal generated by ``existing``."""
    monos = monomials_of_degree(n, degree)
    idx = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in existing:
        for u in monomials_of_degree(n, degree - g.degree()):
            v = np.zeros(len(monos), dtype=np.int64)
            for m, c in g.terms.items():
                v[idx[tuple(a + b for a, b in zip(m, u))]] = c
            rows.append(v)
    base = np.array(rows, dtype=np.int64) if rows else np.zeros((0, len(monos)), dtype=np.int64)
    r = rank(base, p) if len(base) else 0
    out = []
    for f in forms:
        v = np.zeros(len(monos), dtype=np.int64)
        for m, c in f.terms.items():
            v[idx[m]] = c
        cand = np.vstack([base, v])
        r2 = rank(cand, p)
        if r2 > r:
            base, r = cand, r2
            out.append(f)
    return out


def image_of_parametrization(par: Parametrization, rng: random.Random | None = None, method: str = "interpolation",
                             degrees: Sequence[int] | None = None, max_degree: int = 6,
                             expected_dim: int | None = None, name: str = "") -> ProjectiveScheme:
    """Saturated ideal of the closure of the image, parametrization attached.

    ``interpolation`` collects minimal generators degree by degree from
    random image points until the generated ideal has the image dimension
    and no new generators appear one degree higher; the result is checked
    to be saturated.  ``elimination`` uses the graph ideal.
    """
    rng = rng or random.Random(0)
    p = par.p
    n = par.target_nvars
    J = par.jacobian_rank(rng)
    if J <= 1:
        raise DegenerateImage("image is a point")
    dim = J - 1 if expected_dim is None else expected_dim
    if dim == n - 1:
        I = Ideal([], n, p)
        I.saturated = True
        return ProjectiveScheme(I, n, par, name)
    if method == "elimination":
        I = _image_by_elimination(par)
        S = ProjectiveScheme(I, n, par, name)
        return S
    gens: list = []
    todo = list(degrees) if degrees is not None else list(range(1, max_degree + 1))
    for d in todo:
        forms = interpolate_ideal(par, d, rng)
        new = _new_generators(gens, forms, d, n, p)
        gens += new
        if degrees is not None:
            continue
        if not gens:
            continue
        I = Ideal(gens, n, p)
        if hilbert_data(I, check=False).dimension != dim:
            continue
        nxt = interpolate_ideal(par, d + 1, rng)
        if not _new_generators(gens, nxt, d + 1, n, p):
            break
    else:
        if degrees is None:
            raise DegenerateImage(f"no stable generating set up to degree {max_degree}")
    I = Ideal(gens, n, p)
    if not is_saturated(I, rng):
        I = saturate_irrelevant(I, rng)
    I.saturated = True
    return ProjectiveScheme(I, n, par, name)


def _image_by_elimination(par: Parametrization) -> Ideal:
    """Graph ideal (minors of [y; F(x)]) saturated by the components, then elimination of x."""
    p = par.p
    m = par.source_nvars
    n = par.target_nvars
    N = m + n
    xs = list(range(m))
    ys = list(range(m, N))
    F = [f.extend(N, xs) for f in par.components]
    Y = [Polynomial.var(N, j, p) for j in ys]
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            g = Y[i] * F[j] - Y[j] * F[i]
            if g:
                gens.append(g)
    if par.source is not None:
        gens += [g.extend(N, xs) for g in par.source.ideal.gens]
    G = Ideal(gens, N, p)
    G = saturate(G, Ideal([f for f in F if f], N, p), method="generic")
    out = eliminate(G, m)
    out = saturate_irrelevant(out)
    return out


# ---------------------------------------------------------------------------
# projection
# ---------------------------------------------------------------------------

def linear_forms_vanishing_on(points, p: int) -> np.ndarray:
    """Rows: a basis of the linear forms vanishing at the given points."""
    A = np.atleast_2d(np.asarray(points, dtype=np.int64)) % p
    return nullspace(A, p)


def project_from(S: ProjectiveScheme, center, rng: random.Random | None = None, method: str = "auto",
                 degrees: Sequence[int] | None = None) -> ProjectiveScheme:
    """Image of S under the projection from the span of the ``center`` points.

    The parametrization (when present) is composed through.  ``elimination``
    changes coordinates so the center becomes a coordinate subspace and
    eliminates those coordinates; ``interpolation`` images the composed
    parametrization; ``auto`` picks interpolation when a parametrization
    exists.
    """
    rng = rng or random.Random(0)
    p = S.p
    L = linear_forms_vanishing_on(center, p)
    if len(L) < 2:
        raise DegenerateImage("center is too large")
    par = S.parametrization.then_linear(L) if S.parametrization is not None else None
    if par is not None:
        _, img = par.sample(rng, 3)
    if method == "auto":
        method = "interpolation" if par is not None else "elimination"
    if method == "interpolation":
        if par is None:
            raise ValueError("interpolation needs a parametrization")
        return image_of_parametrization(par, rng, degrees=degrees)
    n = S.nvars
    k = n - len(L)
    # complete L to an invertible matrix with the complement first
    comp = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        trial = np.vstack(comp + [e] + list(L)) if comp else np.vstack([e] + list(L))
        if rank(trial, p) == len(comp) + 1 + len(L):
            comp.append(e)
        if len(comp) == k:
            break
    A = np.vstack(comp + list(L))
    Ainv = inverse(A, p)
    moved = apply_linear_change(S.ideal.gens, Ainv)
    I = eliminate(Ideal(moved, n, p), k)
    I = saturate_irrelevant(I, rng)
    if I.is_unit():
        raise DegenerateImage("projection collapsed")
    return ProjectiveScheme(I, n - k, par)


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

def random_point(S: ProjectiveScheme, rng: random.Random, retries: int = 200) -> np.ndarray:
    """A random GF(p)-point of S (parametrized, hypersurface or zero-dimensional)."""
    p = S.p
    if S.parametrization is not None:
        par = S.parametrization
        for _ in range(retries):
            x = par.source_points(rng, 1)[0]
            v = par.evaluate(x)[0]
            if np.any(v):
                return v
        raise SamplingError("parametrization vanished at every sample")
    if S.ideal is None:
        raise ValueError("scheme has no ideal")
    if not S.ideal.gens:
        return np.array([rng.randrange(p) for _ in range(S.nvars)], dtype=np.int64)
    if S.is_hypersurface():
        return point_on_hypersurface(S.ideal.gens[0], rng, retries)
    if S.hilbert().dimension == 0:
        for o in zero_dim_orbits(S.ideal, rng):
            if o.degree == 1:
                return np.array(o.rational_point(), dtype=np.int64)
        raise SamplingError("no rational point in the zero-dimensional scheme")
    raise ValueError("random points need a parametrization, a hypersurface or a finite scheme")


def line_restriction(f: Polynomial, a, b) -> list:
    """Coefficients (constant first) of t -> f(a + t b)."""
    p = f.p
    d = f.degree()
    ts = list(range(d + 1))
    vals = [f.evaluate([(int(x) + t * int(y)) % p for x, y in zip(a, b)]) for t in ts]
    # interpolate the univariate polynomial through d+1 values
    V = np.array([[pow(t, k, p) for k in range(d + 1)] for t in ts], dtype=np.int64)
    from .algebra.linalg import solve
    c = solve(V, np.array(vals, dtype=np.int64), p)
    return [int(x) for x in c]


def point_on_hypersurface(f: Polynomial, rng: random.Random, retries: int = 200) -> np.ndarray:
    p = f.p
    n = f.nvars
    for _ in range(retries):
        a = [rng.randrange(p) for _ in range(n)]
        b = [rng.randrange(p) for _ in range(n)]
        c = line_restriction(f, a, b)
        if not any(c):
            return np.array(a, dtype=np.int64)
        rts = roots(c, p)
        if rts:
            t = rts[rng.randrange(len(rts))][0]
            return np.array([(x + t * y) % p for x, y in zip(a, b)], dtype=np.int64)
    raise SamplingError("no rational point found on the hypersurface")


def zero_dim_orbits(I: Ideal, rng: random.Random | None = None) -> list:
    """Galois orbits of a zero-dimensional scheme; degrees times multiplicities sum to its degree."""
    res = solve_zero_dim_ideal(I, rng)
    return res.orbits


def solve_zero_dim_ideal(I: Ideal, rng: random.Random | None = None) -> ZeroDimResult:
    rng = rng or random.Random(0)
    return solve_zero_dim(I.gb(), [], I.nvars, I.p, rng)
