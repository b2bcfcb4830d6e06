"""Dense linear algebra mod p (FLINT backed) and monomial evaluation matrices."""
from __future__ import annotations

from typing import Sequence

import flint
import numpy as np

from .monomials import monomials_of_degree
from .poly import Polynomial


def to_nmod(A, p: int) -> flint.nmod_mat:
    A = np.asarray(A, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("matrix expected")
    r, c = A.shape
    return flint.nmod_mat(r, c, A.ravel().tolist(), p)


def from_nmod(M: flint.nmod_mat) -> np.ndarray:
    r, c = M.nrows(), M.ncols()
    if r == 0 or c == 0:
        return np.zeros((r, c), dtype=np.int64)
    return np.array([int(x) for x in M.entries()], dtype=np.int64).reshape(r, c)


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return to_nmod(A, p).rank()


def rref(A, p: int):
    A = np.asarray(A)
    if A.size == 0:
        return A.astype(np.int64), 0
    R, r = to_nmod(A, p).rref()
    return from_nmod(R)[:r], r


def nullspace(A, p: int) -> np.ndarray:
    """Rows form a basis of {v : A v = 0}."""
    A = np.asarray(A, dtype=np.int64)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, r = rref(A, p)
    pivots = []
    for i in range(r):
        nz = np.nonzero(R[i])[0]
        pivots.append(int(nz[0]))
    free = [j for j in range(ncols) if j not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, j in enumerate(free):
        out[k, j] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-R[i, j]) % p
    return out


def solve(A, b, p: int):
    """One solution x of A x = b, or None."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    aug = np.hstack([A, b])
    R, r = rref(aug, p)
    n = A.shape[1]
    x = np.zeros(n, dtype=np.int64)
    for i in range(r):
        nz = np.nonzero(R[i])[0]
        piv = int(nz[0])
        if piv == n:
            return None
        x[piv] = R[i, n]
    return x


def inverse(A, p: int) -> np.ndarray:
    return from_nmod(to_nmod(A, p).inv())


def matmul(A, B, p: int) -> np.ndarray:
    """Exact product mod p without int64 overflow."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if p < 2**20 and A.shape[1] < 2**20:
        # split B at bit 8 so every partial dot product stays below 2^63
        lo = B & 0xFF
        hi = B >> 8
        return ((A @ lo) % p + ((A @ hi) % p) * 256) % p
    return from_nmod(to_nmod(A, p) * to_nmod(B, p))


# ---------------------------------------------------------------------------
# monomials evaluated at points
# ---------------------------------------------------------------------------

def power_table(points: np.ndarray, dmax: int, p: int) -> np.ndarray:
    """T[k, i, j] = points[i, j]^k mod p."""
    pts = np.asarray(points, dtype=np.int64) % p
    T = np.empty((dmax + 1,) + pts.shape, dtype=np.int64)
    T[0] = 1
    for k in range(1, dmax + 1):
        T[k] = T[k - 1] * pts % p
    return T


def eval_monomials(points, monos: Sequence[tuple], p: int) -> np.ndarray:
    """E[i, k] = monos[k](points[i])."""
    pts = np.asarray(points, dtype=np.int64)
    if not len(monos):
        return np.zeros((len(pts), 0), dtype=np.int64)
    dmax = max(max(m) for m in monos)
    T = power_table(pts, dmax, p)
    E = np.ones((len(pts), len(monos)), dtype=np.int64)
    for k, m in enumerate(monos):
        col = np.ones(len(pts), dtype=np.int64)
        for j, e in enumerate(m):
            if e:
                col = col * T[e, :, j] % p
        E[:, k] = col
    return E


def eval_polys(polys: Sequence[Polynomial], points, p: int) -> np.ndarray:
    """V[i, k] = polys[k](points[i])."""
    pts = np.asarray(points, dtype=np.int64)
    monos = sorted({m for f in polys for m in f.terms})
    if not monos:
        return np.zeros((len(pts), len(polys)), dtype=np.int64)
    idx = {m: k for k, m in enumerate(monos)}
    E = eval_monomials(pts, monos, p)
    C = np.zeros((len(monos), len(polys)), dtype=np.int64)
    for k, f in enumerate(polys):
        for m, c in f.terms.items():
            C[idx[m], k] = c
    return matmul(E, C, p)


def forms_from_vectors(vectors, monos: Sequence[tuple], p: int, nvars: int | None = None) -> list:
    nv = nvars if nvars is not None else len(monos[0])
    out = []
    for v in np.asarray(vectors):
        out.append(Polynomial(nv, {m: int(c) for m, c in zip(monos, v) if int(c) % p}, p))
    return out


def interpolate_forms(points, degree: int, p: int) -> list:
    """Basis of the degree-d forms vanishing at all given points."""
    pts = np.asarray(points)
    n = pts.shape[1]
    monos = monomials_of_degree(n, degree)
    E = eval_monomials(pts, monos, p)
    N = nullspace(E, p)
    return forms_from_vectors(N, monos, p, n)


def vector_of(f: Polynomial, monos: Sequence[tuple]) -> np.ndarray:
    return np.array([f.terms.get(m, 0) for m in monos], dtype=np.int64)


def _falling(e: int, a: int) -> int:
    out = 1
    for k in range(a):
        out *= e - k
    return out


def derivative_conditions(points, monos: Sequence[tuple], order: int, p: int) -> np.ndarray:
    """Rows: every partial derivative of order < ``order`` of each monomial at each point.

    A form with coefficient vector c has multiplicity >= order at all points
    iff ``D @ c == 0``.
    """
    pts = np.asarray(points, dtype=np.int64) % p
    n = pts.shape[1]
    dmax = max(max(m) for m in monos) if monos else 0
    T = power_table(pts, dmax, p)
    blocks = []
    for k in range(order):
        for alpha in monomials_of_degree(n, k):
            coeff = np.array([[_falling(e, a) % p for e, a in zip(m, alpha)] for m in monos], dtype=np.int64)
            scal = np.prod(coeff, axis=1) % p
            B = np.zeros((len(pts), len(monos)), dtype=np.int64)
            for c, m in enumerate(monos):
                if scal[c] == 0:
                    continue
                col = np.full(len(pts), scal[c], dtype=np.int64)
                for j in range(n):
                    ex = m[j] - alpha[j]
                    if ex:
                        col = col * T[ex, :, j] % p
                B[:, c] = col
            blocks.append(B)
    return np.vstack(blocks) if blocks else np.zeros((0, len(monos)), dtype=np.int64)
