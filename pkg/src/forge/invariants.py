"""Numerical invariants of homogeneous ideals."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
import random
from math import comb

import numpy as np

from .algebra.hilbert import HilbertData, hilbert_data_from_numerator, hilbert_numerator
from .algebra.ideal import Ideal, is_saturated, saturate_irrelevant
from .algebra.linalg import nullspace, rank, vector_of
from .algebra.monomials import monomials_of_degree
from .algebra.poly import Polynomial
from .algebra.zerodim import NotZeroDimensional, solve_zero_dim


class NotSaturated(ValueError):
    pass


def hilbert_data(I: Ideal, check: bool = True) -> HilbertData:
    """Dimension, degree and Hilbert polynomial of S/I, from the lead-term ideal.

    The ideal must be saturated; with ``check`` the saturation is verified
    (and cached on the ideal) before anything is read off.
    """
    if check and not is_saturated(I):
        raise NotSaturated("hilbert_data needs a saturated ideal")
    if not I.gens:
        return hilbert_data_from_numerator([1], I.nvars)
    G = I.gb()
    num = hilbert_numerator(G.leading_monomials())
    return hilbert_data_from_numerator(num, I.nvars)


def hilbert_function(I: Ideal, d: int) -> int:
    """dim (S/I)_d, using a basis truncated at degree d."""
    if not I.gens:
        return comb(I.nvars - 1 + d, d)
    G = I.truncated_gb(d)
    leads = [m for m in G.leading_monomials() if sum(m) <= d]
    num = hilbert_numerator(leads)
    from .algebra.hilbert import hilbert_function_from_numerator
    return hilbert_function_from_numerator(num, I.nvars, d)


def graded_piece_dim(I: Ideal, d: int, check: bool = True) -> int:
    """h^0(I(d)) for a saturated ideal: C(n+d, d) - HF(S/I, d)."""
    if check and not is_saturated(I):
        raise NotSaturated("graded_piece_dim needs a saturated ideal")
    return comb(I.nvars - 1 + d, d) - hilbert_function(I, d)


def graded_piece_basis(I: Ideal, d: int) -> list:
    """Basis of I_d as forms (echelon form of the multiples of a truncated basis)."""
    from .algebra.linalg import forms_from_vectors, rref
    monos = monomials_of_degree(I.nvars, d)
    G = I.truncated_gb(d)
    rows = []
    idx = {m: k for k, m in enumerate(monos)}
    for g in G:
        dg = g.degree()
        if dg > d:
            continue
        for m in monomials_of_degree(I.nvars, d - dg):
            v = np.zeros(len(monos), dtype=np.int64)
            for gm, c in g.terms.items():
                v[idx[tuple(a + b for a, b in zip(gm, m))]] = c
            rows.append(v)
    if not rows:
        return []
    R, r = rref(np.array(rows), I.p)
    return forms_from_vectors(R, monos, I.p, I.nvars)


# ---------------------------------------------------------------------------
# hyperplane sections
# ---------------------------------------------------------------------------

def random_hyperplane_section(I: Ideal, rng: random.Random, k: int = 1) -> Ideal:
    """Restrict to k random hyperplanes, expressed as an ideal in n+1-k variables.

    The last k coordinates are eliminated by substituting random linear forms
    in the remaining ones, so the section lives on a copy of P^{n-k}.
    """
    n, p = I.nvars, I.p
    m = n - k
    images = [Polynomial.var(m, i, p) for i in range(m)]
    for _ in range(k):
        images.append(Polynomial.linear([rng.randrange(p) for _ in range(m)], p))
    # a random coordinate change first, so the substitution is a general slice
    from .algebra.ideal import apply_linear_change, random_coordinate_change
    A = random_coordinate_change(n, p, rng)
    moved = apply_linear_change(I.gens, A)
    return Ideal([g.substitute(images) for g in moved], m, p)


def sectional_genus(I: Ideal, rng: random.Random | None = None, retries: int = 1) -> int:
    """Arithmetic genus of a random hyperplane section of a surface (or of a curve
    section of a higher-dimensional variety when the codim-k slice is used)."""
    rng = rng or random.Random(0)
    dim = hilbert_data(I).dimension
    if dim < 1:
        raise ValueError("sectional genus needs dimension >= 1")
    for attempt in range(retries + 1):
        J = saturate_irrelevant(random_hyperplane_section(I, rng, dim - 1), rng)
        h = hilbert_data(J, check=False)
        if h.dimension == 1:
            return int(h.arithmetic_genus)
    raise ValueError("hyperplane section is not a curve")


# ---------------------------------------------------------------------------
# singular locus
# ---------------------------------------------------------------------------

def _det(M, p):
    """Determinant of a small matrix of polynomials by cofactor expansion."""
    k = len(M)
    if k == 1:
        return M[0][0]
    if k == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    out = None
    for j in range(k):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, p)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out if out is not None else M[0][0].scale(0)


def jacobian_minors(gens: list, size: int) -> list:
    n = gens[0].nvars
    J = [[g.diff(i) for i in range(n)] for g in gens]
    out = []
    for rows in itertools.combinations(range(len(gens)), size):
        for cols in itertools.combinations(range(n), size):
            d = _det([[J[r][c] for c in cols] for r in rows], gens[0].p)
            if d:
                out.append(d)
    return out


@dataclass
class SingularLocus:
    """Singular scheme of a variety: its length and, when finite, the Galois orbits of its support."""
    dimension: int
    degree: int
    orbits: list = field(default_factory=list)
    ideal: Ideal | None = None

    @property
    def points(self) -> int:
        """Number of geometric points (meaningful in dimension 0)."""
        return sum(o.degree for o in self.orbits)


def singular_scheme(I: Ideal, rng: random.Random | None = None, extra: int = 2,
                    method: str = "quotient", dmax: int = 30) -> SingularLocus:
    """Singular scheme V(I + c x c Jacobian minors), c = codimension.

    When the generators share one degree the minors are taken from
    c + ``extra`` random combinations of them.  On a surface c + 1
    combinations drop rank at finitely many smooth points and c + 2 do
    not, so the default cuts exactly the rank-drop locus of the full
    Jacobian.  ``quotient`` solves the (expected finite) scheme by linear
    algebra over S/I; ``groebner`` saturates the full ideal instead and
    also handles positive-dimensional loci.
    """
    rng = rng or random.Random(0)
    h = hilbert_data(I)
    c = h.codim
    p = I.p
    if c == 0:
        return SingularLocus(-1, 0)
    gens = list(I.gens)
    if len({g.degree() for g in gens}) == 1 and len(gens) > c + extra:
        gens = [sum((g.scale(rng.randrange(1, p)) for g in gens[1:]), gens[0].scale(rng.randrange(1, p)))
                for _ in range(c + extra)]
    minors = jacobian_minors(gens, c)
    if method == "quotient":
        try:
            res = solve_zero_dim(I.gb(), minors, I.nvars, p, rng, dmax=dmax)
            return SingularLocus(0 if res.degree else -1, res.degree, res.orbits)
        except NotZeroDimensional:
            pass
    J = saturate_irrelevant(Ideal(list(I.gens) + minors, I.nvars, p), rng)
    hd = hilbert_data(J, check=False)
    return SingularLocus(hd.dimension, hd.degree, [], J)


# ---------------------------------------------------------------------------
# condition K_3
# ---------------------------------------------------------------------------

def _module_vectors(polys_tuple, monos, idx):
    """Concatenate coefficient vectors of a tuple of forms of one degree."""
    out = np.zeros(len(polys_tuple) * len(monos), dtype=np.int64)
    L = len(monos)
    for i, f in enumerate(polys_tuple):
        if f is None:
            continue
        for m, c in f.terms.items():
            out[i * L + idx[m]] = c
    return out


def linear_syzygies(cubics: list) -> list:
    """Basis of {(l_1..l_m) linear : sum l_i f_i = 0}, each as a list of linear forms."""
    n = cubics[0].nvars
    p = cubics[0].p
    m = len(cubics)
    top = monomials_of_degree(n, cubics[0].degree() + 1)
    idx = {mo: k for k, mo in enumerate(top)}
    # unknown (i, j): coefficient of x_j in l_i
    A = np.zeros((len(top), m * n), dtype=np.int64)
    for i, f in enumerate(cubics):
        for j in range(n):
            for mo, c in f.terms.items():
                e = list(mo)
                e[j] += 1
                A[idx[tuple(e)], i * n + j] = c
    N = nullspace(A, p)
    out = []
    for v in N:
        out.append([Polynomial.linear(v[i * n:(i + 1) * n].tolist(), p) for i in range(m)])
    return out


def check_condition_K3(cubics: list) -> bool:
    """Koszul syzygies of the cubics lie in the module generated by the linear syzygies.

    Both sides are compared in the degree of the Koszul relations, where
    the span of the linear syzygies is the span of their quadric multiples.
    """
    if not cubics:
        raise ValueError("no generators")
    if any(not f.is_homogeneous() or f.degree() != 3 for f in cubics):
        raise ValueError("all generators must be cubic forms")
    n = cubics[0].nvars
    p = cubics[0].p
    m = len(cubics)
    lin = linear_syzygies(cubics)
    monos3 = monomials_of_degree(n, 3)
    idx3 = {mo: k for k, mo in enumerate(monos3)}
    quads = [Polynomial(n, {mo: 1}, p) for mo in monomials_of_degree(n, 2)]
    span = [_module_vectors([q * l for l in s], monos3, idx3) for s in lin for q in quads]
    koszul = []
    for i, j in itertools.combinations(range(m), 2):
        t = [None] * m
        t[i] = cubics[j]
        t[j] = -cubics[i]
        koszul.append(_module_vectors(t, monos3, idx3))
    if not span:
        return not any(np.any(k % p) for k in koszul)
    S = np.array(span)
    r = rank(S, p)
    return rank(np.vstack([S, np.array(koszul)]), p) == r
