"""Rational maps given by linear systems: images, fibers, projective degrees, inverses."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra.groebner import groebner_basis
from .algebra.hilbert import hilbert_data_from_numerator, hilbert_numerator
from .algebra.ideal import (Ideal, apply_linear_change, divide_exact, intersect, random_coordinate_change,
                            saturate, saturate_irrelevant)
from .algebra.linalg import eval_monomials, eval_polys, matmul, nullspace, rank, rref, solve
from .algebra.monomials import GREVLEX, monomials_of_degree
from .algebra.poly import Polynomial
from .algebra.zerodim import NormalForms
from .invariants import hilbert_data
from .schemes import (DegenerateImage, Parametrization, ProjectiveScheme, image_of_parametrization,
                      linear_forms_vanishing_on, random_point)


# above this composite degree, images are sampled through the source scheme instead of substituted
COMPOSE_DEGREE = 16


class InverseNotFound(ArithmeticError):
    pass


class RationalMap:
    """x -> (f_0(x) : ... : f_m(x)) on a source scheme."""

    def __init__(self, source: ProjectiveScheme, components: Sequence[Polynomial], name: str = ""):
        comps = list(components)
        if not comps or not any(comps):
            raise ValueError("all components vanish")
        degs = {f.degree() for f in comps if f}
        if len(degs) != 1:
            raise ValueError("components must share one degree")
        self.degree = degs.pop()
        self.source = source
        self.components = comps
        self.p = source.p
        self.name = name
        self._image = None
        self._degrees = None

    @property
    def source_nvars(self) -> int:
        return self.source.nvars

    @property
    def target_nvars(self) -> int:
        return len(self.components)

    def __call__(self, pts) -> np.ndarray:
        return eval_polys(self.components, np.atleast_2d(pts), self.p)

    def parametrization(self) -> Parametrization:
        """The map as a parametrization of its image (composed with the source's own, if any)."""
        src = self.source
        if src.parametrization is not None and (src.ideal is None or
                                                src.parametrization.degree * self.degree <= COMPOSE_DEGREE):
            return src.parametrization.then(self.components)
        if src.ideal is not None and not src.ideal.gens:
            return Parametrization(self.components)
        return Parametrization(self.components, src)

    def sample(self, rng: random.Random, count: int) -> tuple:
        """(source points, image points) avoiding the base locus."""
        src, img = [], []
        while len(img) < count:
            xs = sample_points(self.source, rng, count - len(img) + 4)
            ys = self(xs)
            for x, y in zip(xs, ys):
                if np.any(y) and len(img) < count:
                    src.append(x)
                    img.append(y)
        return np.array(src, dtype=np.int64), np.array(img, dtype=np.int64)

    def image(self, rng: random.Random | None = None, method: str = "interpolation",
              degrees: Sequence[int] | None = None, max_degree: int = 6) -> ProjectiveScheme:
        if self._image is None:
            self._image = image_of_parametrization(self.parametrization(), rng or random.Random(0), method=method,
                                                   degrees=degrees, max_degree=max_degree)
        return self._image

    def base_element(self, rng: random.Random) -> Polynomial:
        """A random member of the linear system (vanishes on the base locus)."""
        p = self.p
        out = Polynomial(self.source_nvars, {}, p)
        for f in self.components:
            out = out + f.scale(rng.randrange(1, p))
        return out

    def pullback(self, linear_form: Sequence[int]) -> Polynomial:
        out = Polynomial(self.source_nvars, {}, self.p)
        for c, f in zip(linear_form, self.components):
            if int(c) % self.p:
                out = out + f.scale(int(c))
        return out

    def fiber_over(self, q, rng: random.Random | None = None, base: Polynomial | None = None) -> Ideal:
        """Saturated ideal of the closure of f^{-1}(q) off the base locus."""
        rng = rng or random.Random(0)
        L = linear_forms_vanishing_on([q], self.p)
        gens = [self.pullback(l) for l in L]
        if self.source.ideal is not None:
            gens = list(self.source.ideal.gens) + gens
        I = Ideal([g for g in gens if g], self.source_nvars, self.p)
        g = base if base is not None else self.base_element(rng)
        from .algebra.ideal import saturate_by_element
        J = saturate_by_element(I, g)
        return saturate_irrelevant(J, rng)

    def projective_degrees(self, rng: random.Random | None = None, base: Polynomial | None = None,
                           only: Sequence[int] | None = None, map_degree: int | None = None) -> list:
        """d_i = #(source . (k-i) general hyperplanes . i pulled-back hyperplanes) off the base locus.

        ``base`` is a form vanishing on the base locus (default: a random
        member of the system); points where it vanishes are removed by a
        Rabinowitsch variable in a random affine chart.  The top entry is
        deg(image) times the map degree; pass ``map_degree`` when it is
        certified elsewhere (a verified inverse) to skip the largest count.
        """
        rng = rng or random.Random(0)
        k = self.source.dimension
        g = base if base is not None else self.base_element(rng)
        out = []
        for i in range(k + 1):
            if only is not None and i not in only:
                out.append(None)
                continue
            if i == 0:
                out.append(self.source.degree)
                continue
            if i == k and map_degree is not None:
                img = self.image(rng)
                out.append(img.degree * map_degree)
                continue
            out.append(self._slice_count(k - i, i, g, rng))
        self._degrees = out
        return out

    def _slice_count(self, a: int, b: int, g: Polynomial, rng: random.Random, retries: int = 1) -> int:
        """Length of (a source hyperplanes, b pulled-back hyperplanes) off V(g)."""
        p = self.p
        n = self.source_nvars
        for _ in range(retries + 1):
            gens = list(self.source.ideal.gens) if self.source.ideal is not None else []
            gens += [Polynomial.linear([rng.randrange(p) for _ in range(n)], p) for _ in range(a)]
            gens += [self.pullback([rng.randrange(p) for _ in range(self.target_nvars)]) for _ in range(b)]
            cnt = affine_count(gens, g, rng)
            if cnt is not None:
                return cnt
        raise ArithmeticError("slice is not zero-dimensional")

    # inverse ----------------------------------------------------------
    def inverse_by_interpolation(self, inv_degree: int, target: ProjectiveScheme | None = None,
                                 rng: random.Random | None = None, margin: int = 30,
                                 verify: int = 100) -> "RationalMap":
        """Components G of degree ``inv_degree`` on the image with G(f(x)) proportional to x.

        Unknowns are coefficients on the standard monomials of the image's
        coordinate ring in that degree.  G_0 and G_1 are found from the
        pencil condition G_1(y) x_0 = G_0(y) x_1; the rest follow by plain
        interpolation of G_i(y) = G_0(y) x_i / x_0.  The result is verified
        by a round trip on fresh points.
        """
        rng = rng or random.Random(0)
        p = self.p
        target = target if target is not None else self.image(rng)
        m = self.target_nvars
        n = self.source_nvars
        if target.ideal is not None and target.ideal.gens:
            nf = NormalForms(target.ideal.gb(), m, p)
            std = nf.table(inv_degree)[0]
        else:
            std = monomials_of_degree(m, inv_degree)
        s = len(std)
        N = 2 * s + margin
        xs, ys = self.sample(rng, N)
        keep = xs[:, 0] % p != 0
        xs, ys = xs[keep], ys[keep]
        E = eval_monomials(ys, std, p)
        x0 = xs[:, 0:1] % p
        x1 = xs[:, 1:2] % p
        A = np.hstack([(-E * x1) % p, (E * x0) % p])
        K = nullspace(A, p)
        if len(K) == 0:
            raise InverseNotFound(f"no inverse in degree {inv_degree} (rank {rank(A, p)} of {2 * s})")
        if len(K) > 1:
            # the pencil alone admits G_0, G_1 with a common factor; impose every x_i / x_0 jointly
            comps = self._joint_inverse(E, xs, s, inv_degree)
        else:
            comps = [K[0][:s], K[0][s:]]
        c0 = comps[0]
        E1 = E[: s + margin]
        g0 = matmul(E1, c0.reshape(-1, 1), p)[:, 0]
        ix0 = np.array([pow(int(v), p - 2, p) for v in xs[: s + margin, 0]], dtype=np.int64)
        rhs = []
        for i in range(2, n):
            rhs.append(g0 * (xs[: s + margin, i] % p) % p * ix0 % p)
        if rhs and len(comps) == 2:
            aug = np.hstack([E1] + [r.reshape(-1, 1) for r in rhs])
            R, r = rref(aug, p)
            piv = [int(np.nonzero(row)[0][0]) for row in R]
            if any(pc >= s for pc in piv):
                raise InverseNotFound("inconsistent interpolation for the remaining components")
            if len(piv) < s:
                raise InverseNotFound("interpolation underdetermined")
            for j in range(len(rhs)):
                c = np.zeros(s, dtype=np.int64)
                for row, pc in zip(R, piv):
                    c[pc] = row[s + j]
                comps.append(c)
        from .algebra.linalg import forms_from_vectors
        forms = forms_from_vectors(np.array(comps), std, p, m)
        inv = RationalMap(target, forms, name=(self.name + "^-1") if self.name else "")
        if verify:
            ok = round_trip_ok(self, inv, rng, verify)
            if not ok:
                raise InverseNotFound("round trip failed on fresh points")
        return inv


    def _joint_inverse(self, E, xs, s: int, inv_degree: int) -> list:
        """Kernel of G_i(y) x_0 - G_0(y) x_i = 0 for all i at once (unknowns G_0..G_n)."""
        p = self.p
        n = self.source_nvars
        x0 = xs[:, 0:1] % p
        blocks = []
        for i in range(1, n):
            row = [np.zeros_like(E)] * n
            row[0] = (-E * (xs[:, i:i + 1] % p)) % p
            row[i] = (E * x0) % p
            blocks.append(np.hstack(row))
        K = nullspace(np.vstack(blocks), p)
        if len(K) != 1:
            raise InverseNotFound(f"inverse not unique in degree {inv_degree} ({len(K)} solutions)")
        return [K[0][i * s:(i + 1) * s] for i in range(n)]


def round_trip_ok(f: RationalMap, g: RationalMap, rng: random.Random, count: int = 100) -> bool:
    """g(f(x)) = x projectively for ``count`` fresh source points."""
    p = f.p
    xs, ys = f.sample(rng, count)
    zs = g(ys)
    for x, z in zip(xs, zs):
        M = np.vstack([x, z]) % p
        if rank(M, p) != 1:
            return False
    return True


def sample_points(S: ProjectiveScheme, rng: random.Random, count: int) -> np.ndarray:
    if S.parametrization is None and S.is_hypersurface():
        return sample_hypersurface(S.ideal.gens[0], rng, count)
    return np.array([random_point(S, rng) for _ in range(count)], dtype=np.int64)


def sample_hypersurface(f: Polynomial, rng: random.Random, count: int) -> np.ndarray:
    """Rational points of a hypersurface from random lines (batched restriction, then root finding)."""
    from .algebra.linalg import inverse
    from .algebra.univariate import roots
    p = f.p
    n = f.nvars
    d = f.degree()
    ts = np.arange(d + 1, dtype=np.int64)
    V = np.array([[pow(int(t), k, p) for k in range(d + 1)] for t in ts], dtype=np.int64)
    Vi = inverse(V, p)
    out = []
    while len(out) < count:
        batch = max(8, 2 * (count - len(out)))
        a = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(batch)], dtype=np.int64)
        b = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(batch)], dtype=np.int64)
        vals = np.zeros((batch, d + 1), dtype=np.int64)
        for j, t in enumerate(ts):
            vals[:, j] = eval_polys([f], (a + int(t) * b) % p, p)[:, 0]
        coeffs = matmul(vals, Vi.T, p)
        for ai, bi, c in zip(a, b, coeffs):
            if not np.any(c):
                continue
            rts = roots([int(x) for x in c], p)
            if rts:
                t = rts[rng.randrange(len(rts))][0]
                out.append((ai + t * bi) % p)
                if len(out) == count:
                    break
    return np.array(out, dtype=np.int64)


def affine_count(gens: Sequence[Polynomial], g: Polynomial, rng: random.Random) -> int | None:
    """Number of points (with multiplicity) of V(gens) with g != 0, in a random affine chart.

    Returns None when the localized scheme is not finite.
    """
    p = gens[0].p
    n = gens[0].nvars
    A = random_coordinate_change(n, p, rng)
    moved = apply_linear_change(list(gens) + [g], A)
    N = n  # affine variables x_1..x_n-1 plus t
    images = [Polynomial.constant(N, 1, p)] + [Polynomial.var(N, i, p) for i in range(n - 1)]
    aff = [h.substitute(images) for h in moved[:-1]]
    gaff = moved[-1].substitute(images)
    t = Polynomial.var(N, N - 1, p)
    aff = [h for h in aff if h]
    aff.append(Polynomial.constant(N, 1, p) - t * gaff)
    G = groebner_basis(aff, GREVLEX)
    if G.is_unit():
        return 0
    num = hilbert_numerator(G.leading_monomials())
    h = hilbert_data_from_numerator(num, N)
    if h.dimension >= 0:
        return None
    return h.degree


# ---------------------------------------------------------------------------
# composition and gcds
# ---------------------------------------------------------------------------

def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials."""
    if not f:
        return g
    if not g:
        return f
    h = f.to_flint().gcd(g.to_flint())
    return Polynomial.from_flint(h, f.nvars, f.p, f.order).monic()


def common_factor(forms: Sequence[Polynomial]) -> Polynomial:
    forms = [f for f in forms if f]
    h = forms[0]
    for f in forms[1:]:
        if h.degree() == 0:
            break
        h = poly_gcd(h, f)
    return h


def _divide(h: Polynomial, c: Polynomial) -> Polynomial:
    q, r = divmod(h.to_flint(), c.to_flint())
    if r != 0:
        raise ArithmeticError("inexact division")
    return Polynomial.from_flint(q, h.nvars, h.p, h.order)


def compose(f: RationalMap, g: RationalMap, rng: random.Random | None = None,
            remove_common_factor: bool = True, check: int = 5) -> RationalMap:
    """g o f, with the common factor of the substituted components removed when the source is P^n."""
    rng = rng or random.Random(0)
    if check:
        _, ys = f.sample(rng, check)
        if g.source.ideal is not None and g.source.ideal.gens:
            for y in ys:
                if not g.source.contains(y):
                    raise ValueError("image of f is not inside the source of g")
    comps = [h.substitute(f.components) for h in g.components]
    if not any(comps):
        raise DegenerateImage("f maps into the base locus of g")
    if remove_common_factor and (f.source.ideal is None or not f.source.ideal.gens):
        c = common_factor(comps)
        if c.degree() > 0:
            comps = [_divide(h, c) if h else h for h in comps]
    return RationalMap(f.source, comps, name=f"{g.name}.{f.name}" if f.name or g.name else "")
