"""Exponent-vector monomials and monomial orders."""
from __future__ import annotations

from operator import neg

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Iterator

Monomial = tuple  # exponent vector over x0..xn


def mdeg(m: Monomial) -> int:
    return sum(m)


def mmul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mdiv(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff a | b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mlcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> tuple:
    """All exponent vectors of total degree d, in descending grevlex order."""
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_grevlex_key, reverse=True)
    return tuple(out)


def monomials_up_to_degree(nvars: int, d: int) -> Iterator[Monomial]:
    for k in range(d, -1, -1):
        yield from monomials_of_degree(nvars, k)


def _grevlex_key(e):
    return (sum(e), tuple(map(neg, e[::-1])))


def _lex_key(e):
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order tag.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.  A block order compares
    the first ``block`` variables by grevlex and breaks ties with grevlex on the
    remaining ones; it eliminates the leading block and refines total degree
    inside each block.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and self.block <= 0:
            raise ValueError("block order needs a positive block size")

    @property
    def key(self) -> Callable:
        if self.kind == "grevlex":
            return _grevlex_key
        if self.kind == "lex":
            return _lex_key
        k = self.block

        def block_key(e, k=k):
            a, b = e[:k], e[k:]
            return (sum(a), tuple(-x for x in reversed(a)), sum(b), tuple(-x for x in reversed(b)))

        return block_key

    def is_graded(self) -> bool:
        return self.kind == "grevlex"

    def __str__(self):
        return self.kind if self.kind != "block" else f"block({self.block})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)
