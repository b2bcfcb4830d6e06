"""Reduced Groebner bases over GF(p).

Two engines share the Gebauer-Moeller pair bookkeeping and sugar selection:

* :func:`buchberger` reduces one S-polynomial at a time (reference engine);
* :func:`f4` reduces all pairs of minimal sugar together as one matrix mod p,
  with the row echelon form delegated to FLINT.

Both return the same reduced basis; :func:`groebner_basis` is the front door.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import flint
import numpy as np

from .field import inv
from .monomials import GREVLEX, MonomialOrder, coprime, divides, mlcm
from .poly import Polynomial

log = logging.getLogger(__name__)

DEFAULT_TERM_CEILING = 5_000_000


class CapacityError(RuntimeError):
    """The computation outgrew the configured term ceiling."""


class OrderMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def _reduce_terms(terms: dict, basis_lead: list, basis_terms: list, p: int, key, full: bool = True) -> dict:
    """Remainder of ``terms`` modulo the basis (given as parallel lead/terms lists)."""
    f = dict(terms)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for (lm, lc), gt in zip(basis_lead, basis_terms):
            if divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                factor = c * inv(lc, p) % p
                for gm, gc in gt.items():
                    mm = tuple(a + b for a, b in zip(gm, q))
                    v = (f.get(mm, 0) - factor * gc) % p
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            rem[m] = c
            del f[m]
            if not full:
                rem.update(f)
                break
    return rem


def normal_form(f: Polynomial, basis: "GroebnerBasis | Sequence[Polynomial]", order: MonomialOrder | None = None) -> Polynomial:
    """Fully reduced remainder of f modulo a Groebner basis."""
    if isinstance(basis, GroebnerBasis):
        if order is not None and order != basis.order:
            raise OrderMismatch(f"requested {order}, basis is {basis.order}")
        if f.order != basis.order and f.order != GREVLEX:
            raise OrderMismatch(f"polynomial tagged {f.order}, basis is {basis.order}")
        order = basis.order
        gens = basis.polys
    else:
        gens = list(basis)
        order = order or (gens[0].order if gens else f.order)
    if not gens:
        return f.with_order(order)
    lead = [g.with_order(order).lead() for g in gens]
    rem = _reduce_terms(f.terms, lead, [g.terms for g in gens], f.p, order.key)
    return Polynomial(f.nvars, rem, f.p, order, _clean=True)


# ---------------------------------------------------------------------------
# pair bookkeeping (Gebauer-Moeller)
# ---------------------------------------------------------------------------

@dataclass
class _Pair:
    i: int
    j: int
    lcm: tuple
    sugar: int


def _gm_update(polys, leads, sugars, active: list, pairs: list, h: int):
    """Insert basis element h; returns new (active, pairs)."""
    lh = leads[h]
    cand = []
    for g in active:
        lg = leads[g]
        l = mlcm(lh, lg)
        s = max(sugars[h] + sum(l) - sum(lh), sugars[g] + sum(l) - sum(lg))
        cand.append(_Pair(g, h, l, s))
    # chain criterion among the new pairs
    kept = []
    for idx, pr in enumerate(cand):
        gi = pr.i
        if coprime(lh, leads[gi]):
            kept.append(pr)
            continue
        dominated = False
        for jdx, other in enumerate(cand):
            if jdx == idx:
                continue
            if divides(other.lcm, pr.lcm) and (other.lcm != pr.lcm or jdx < idx):
                dominated = True
                break
        if not dominated:
            kept.append(pr)
    # product criterion
    new_pairs = [pr for pr in kept if not coprime(lh, leads[pr.i])]
    # old pairs whose lcm is divisible by LM(h) strictly (Buchberger triangle)
    survivors = []
    for pr in pairs:
        if divides(lh, pr.lcm):
            l1 = mlcm(leads[pr.i], lh)
            l2 = mlcm(leads[pr.j], lh)
            if l1 != pr.lcm and l2 != pr.lcm:
                continue
        survivors.append(pr)
    survivors.extend(new_pairs)
    new_active = [g for g in active if not divides(lh, leads[g])]
    new_active.append(h)
    return new_active, survivors


def _interreduce(polys: list, order: MonomialOrder, p: int) -> list:
    """Minimal, tail-reduced, monic basis sorted by leading monomial (descending)."""
    key = order.key
    polys = [f.with_order(order).monic() for f in polys if f]
    polys.sort(key=lambda f: key(f.lm))
    minimal = []
    for f in polys:
        if not any(divides(g.lm, f.lm) for g in minimal):
            minimal.append(f)
    out = []
    for k, f in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lead = [g.lead() for g in others]
        rem = _reduce_terms(f.terms, lead, [g.terms for g in others], p, key)
        out.append(Polynomial(f.nvars, rem, p, order, _clean=True).monic())
    out.sort(key=lambda f: key(f.lm), reverse=True)
    return out


def _prepare(gens: Sequence[Polynomial], order: MonomialOrder):
    gens = [g.with_order(order) for g in gens if g]
    if not gens:
        return []
    n, p = gens[0].nvars, gens[0].p
    for g in gens:
        if g.nvars != n or g.p != p:
            raise ValueError("generators live in different rings")
    return gens


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

def buchberger(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, selection: str = "sugar",
               term_ceiling: int = DEFAULT_TERM_CEILING, max_degree: int | None = None) -> list:
    """Buchberger's algorithm with Gebauer-Moeller criteria.

    ``selection`` picks the next pair: ``"sugar"`` (default), ``"normal"``
    (smallest lcm) or ``"fifo"``; the reduced output does not depend on it.
    """
    gens = _prepare(gens, order)
    if not gens:
        return []
    p = gens[0].p
    key = order.key
    polys, leads, lcs, sugars = [], [], [], []
    active: list = []
    pairs: list = []

    def add(f: Polynomial, sugar: int):
        nonlocal active, pairs
        f = f.monic()
        polys.append(f)
        leads.append(f.lm)
        lcs.append(1)
        sugars.append(sugar)
        active, pairs = _gm_update(polys, leads, sugars, active, pairs, len(polys) - 1)

    for g in sorted(gens, key=lambda f: (f.degree(), key(f.lm))):
        r = _reduce_terms(g.terms, [polys[a].lead() for a in active], [polys[a].terms for a in active], p, key)
        if r:
            add(Polynomial(g.nvars, r, p, order, _clean=True), g.degree())
    total = 0
    while pairs:
        if selection == "sugar":
            idx = min(range(len(pairs)), key=lambda k: (pairs[k].sugar, key(pairs[k].lcm)))
        elif selection == "normal":
            idx = min(range(len(pairs)), key=lambda k: key(pairs[k].lcm))
        elif selection == "fifo":
            idx = 0
        else:
            raise ValueError(f"unknown selection {selection!r}")
        pr = pairs.pop(idx)
        if max_degree is not None and pr.sugar > max_degree:
            continue
        f, g = polys[pr.i], polys[pr.j]
        s = _spoly(f, g, pr.lcm)
        r = _reduce_terms(s, [polys[a].lead() for a in active], [polys[a].terms for a in active], p, key)
        if r:
            h = Polynomial(f.nvars, r, p, order, _clean=True)
            add(h, pr.sugar)
            total += len(r)
            if sum(len(polys[a]) for a in active) > term_ceiling:
                raise CapacityError(f"basis exceeded {term_ceiling} terms")
    return _interreduce([polys[a] for a in active], order, p)


def _spoly(f: Polynomial, g: Polynomial, l: tuple) -> dict:
    p = f.p
    (lf, cf), (lg, cg) = f.lead(), g.lead()
    qf = tuple(a - b for a, b in zip(l, lf))
    qg = tuple(a - b for a, b in zip(l, lg))
    a, b = inv(cf, p), inv(cg, p)
    out: dict = {}
    for m, c in f.terms.items():
        mm = tuple(x + y for x, y in zip(m, qf))
        out[mm] = c * a % p
    for m, c in g.terms.items():
        mm = tuple(x + y for x, y in zip(m, qg))
        v = (out.get(mm, 0) - c * b) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def f4(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, term_ceiling: int = DEFAULT_TERM_CEILING,
       max_degree: int | None = None) -> list:
    """F4-style Groebner basis: all pairs of minimal sugar reduced as one matrix."""
    gens = _prepare(gens, order)
    if not gens:
        return []
    nvars, p = gens[0].nvars, gens[0].p
    key = order.key
    polys: list = []
    leads: list = []
    sugars: list = []
    active: list = []
    pairs: list = []

    def add(f: Polynomial, sugar: int):
        nonlocal active, pairs
        f = f.monic()
        polys.append(f)
        leads.append(f.lm)
        sugars.append(sugar)
        active, pairs = _gm_update(polys, leads, sugars, active, pairs, len(polys) - 1)

    # input generators are fed through the matrix too, lowest sugar first
    pending = {}
    for g in gens:
        pending.setdefault(g.degree() if order.is_graded() or g.is_homogeneous() else g.degree(), []).append(g)

    while pairs or pending:
        cand_sugar = min([pr.sugar for pr in pairs] + list(pending))
        if max_degree is not None and cand_sugar > max_degree:
            break
        sel = [pr for pr in pairs if pr.sugar == cand_sugar]
        pairs = [pr for pr in pairs if pr.sugar != cand_sugar]
        inputs = pending.pop(cand_sugar, [])
        rows = {}
        for pr in sel:
            for idx in (pr.i, pr.j):
                q = tuple(a - b for a, b in zip(pr.lcm, leads[idx]))
                rows[(q, idx)] = None
        row_polys = [polys[idx].mul_term(q).terms for (q, idx) in rows]
        row_polys += [g.terms for g in inputs]
        if not row_polys:
            continue
        new = _f4_reduce(row_polys, [polys[a] for a in active], leads, active, key, p, nvars,
                         n_input=len(inputs), term_ceiling=term_ceiling)
        for t in new:
            add(Polynomial(nvars, t, p, order, _clean=True), cand_sugar)
        if sum(len(polys[a]) for a in active) > term_ceiling:
            raise CapacityError(f"basis exceeded {term_ceiling} terms")
    return _interreduce([polys[a] for a in active], order, p)


def _f4_reduce(rows: list, basis: list, leads: list, active: list, key, p: int, nvars: int,
               n_input: int, term_ceiling: int) -> list:
    """Symbolic preprocessing + echelon form; returns new leading-term-reduced rows."""
    lead_map = [(leads[a], polys_terms) for a, polys_terms in zip(active, (b.terms for b in basis))]
    monos = set()
    for r in rows:
        monos.update(r)
    orig_leads = set(max(r, key=key) for r in rows[:len(rows) - n_input]) if len(rows) > n_input else set()
    done = set()
    todo = list(monos)
    reducers = []
    reducer_leads = set()
    while todo:
        m = todo.pop()
        if m in done:
            continue
        done.add(m)
        best = None
        for lm, gt in lead_map:
            if divides(lm, m):
                if best is None or len(gt) < len(best[1]):
                    best = (lm, gt)
        if best is None:
            continue
        lm, gt = best
        q = tuple(a - b for a, b in zip(m, lm))
        r = {tuple(a + b for a, b in zip(gm, q)): c for gm, c in gt.items()}
        reducers.append((m, r))
        reducer_leads.add(m)
        for mm in r:
            if mm not in done and mm not in monos:
                monos.add(mm)
                todo.append(mm)
    cols = sorted(monos, key=key, reverse=True)
    ncols = len(cols)
    col_of = {m: k for k, m in enumerate(cols)}
    k = len(rows)
    if k * ncols > 4 * term_ceiling * 10:
        raise CapacityError(f"F4 matrix {k}x{ncols} exceeds capacity")
    # reducers are monic with distinct leads: eliminate their columns from the
    # new rows by back substitution, then echelonize what is left
    C = np.zeros((k, ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for m, c in r.items():
            C[i, col_of[m]] = c
    red = sorted(((col_of[m], np.fromiter((col_of[mm] for mm in r), dtype=np.int64, count=len(r)),
                   np.fromiter(r.values(), dtype=np.int64, count=len(r))) for m, r in reducers),
                 key=lambda t: t[0])
    for j, idx, vals in red:
        nz = np.flatnonzero(C[:, j])
        if nz.size:
            blk = np.ix_(nz, idx)
            C[blk] = (C[blk] - np.outer(C[nz, j], vals)) % p
    free = np.array([c for c in range(ncols) if cols[c] not in reducer_leads], dtype=np.int64)
    if not free.size:
        return []
    D = C[:, free]
    D = D[np.any(D != 0, axis=1)]
    if not len(D):
        return []
    M = flint.nmod_mat(len(D), len(free), p)
    for i, j in zip(*np.nonzero(D)):
        M[int(i), int(j)] = int(D[i, j])
    R, rank = M.rref()
    out = []
    if rank == 0:
        return out
    E = np.fromiter(map(int, R.entries()[:rank * len(free)]), dtype=np.int64,
                    count=rank * len(free)).reshape(rank, len(free))
    for i in range(rank):
        nz = np.flatnonzero(E[i])
        out.append({cols[free[c]]: int(E[i, c]) for c in nz})
    return out


# ---------------------------------------------------------------------------
# front end
# ---------------------------------------------------------------------------

class GroebnerBasis:
    """A reduced Groebner basis together with its order."""

    def __init__(self, polys: list, order: MonomialOrder, nvars: int, p: int):
        self.polys = polys
        self.order = order
        self.nvars = nvars
        self.p = p

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, k):
        return self.polys[k]

    def leading_monomials(self) -> list:
        return [g.lm for g in self.polys]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f.with_order(self.order), self)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def is_unit(self) -> bool:
        return any(sum(g.lm) == 0 for g in self.polys)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.order == other.order and [g.terms for g in self.polys] == [g.terms for g in other.polys]

    def __repr__(self):
        return f"GroebnerBasis({len(self.polys)} elements, {self.order})"


def groebner_basis(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, engine: str = "f4",
                   term_ceiling: int = DEFAULT_TERM_CEILING, max_degree: int | None = None) -> GroebnerBasis:
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator (use an explicit ring for the zero ideal)")
    n, p = gens[0].nvars, gens[0].p
    if engine == "f4":
        polys = f4(gens, order, term_ceiling=term_ceiling, max_degree=max_degree)
    elif engine == "buchberger":
        polys = buchberger(gens, order, term_ceiling=term_ceiling, max_degree=max_degree)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return GroebnerBasis(polys, order, n, p)


def s_pairs_reduce_to_zero(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Buchberger criterion checked on every pair (no criteria used)."""
    basis = [g.with_order(order) for g in basis]
    lead = [g.lead() for g in basis]
    terms = [g.terms for g in basis]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            s = _spoly(basis[a], basis[b], mlcm(lead[a][0], lead[b][0]))
            if s and _reduce_terms(s, lead, terms, basis[a].p, order.key, full=False):
                return False
    return True
