"""Plain-text ideal format.

One polynomial per line in variables ``x0 .. xn`` with integer coefficients and
the tokens ``+ - * ^``.  Lines starting with ``#`` are comments, except for the
directive comments ``# vars: N``, ``# prime: P`` and ``# parametrization vars: M``
which this module writes and reads back.  Formatting is canonical, so
``format_ideal(parse_ideal(text)) == text`` for any text this module produced.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .field import DEFAULT_PRIME
from .monomials import GREVLEX
from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|([-+*^()]))")


def _signed(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    parts = []
    for m, c in sorted(f.terms.items(), key=lambda t: GREVLEX.key(t[0]), reverse=True):
        c = _signed(c, f.p)
        factors = []
        for i, k in enumerate(m):
            if k == 1:
                factors.append(f"x{i}")
            elif k > 1:
                factors.append(f"x{i}^{k}")
        mono = "*".join(factors)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


class ParseError(ValueError):
    pass


def parse_polynomial(text: str, nvars: int, p: int = DEFAULT_PRIME) -> Polynomial:
    """Parse a polynomial; products, powers of variables and parentheses allowed."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            i = int(m.group(2))
            if i >= nvars:
                raise ParseError(f"variable x{i} outside ring with {nvars} variables")
            toks.append(("var", i))
        else:
            toks.append(("op", m.group(3)))
    toks.append(("end", None))
    idx = 0

    def peek():
        return toks[idx]

    def take():
        nonlocal idx
        t = toks[idx]
        idx += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term().scale(sign)
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() == ("op", "*"):
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, k = take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            base = base ** k
        return base

    def atom():
        kind, v = take()
        if kind == "num":
            return Polynomial.constant(nvars, v, p)
        if kind == "var":
            return Polynomial.var(nvars, v, p)
        if (kind, v) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return e
        if (kind, v) == ("op", "-"):
            return -atom()
        raise ParseError(f"unexpected token {v!r}")

    f = expr()
    if peek()[0] != "end":
        raise ParseError(f"trailing input near token {peek()!r}")
    return f


@dataclass
class IdealText:
    nvars: int
    prime: int
    generators: list
    param_vars: int | None = None
    parametrization: list = field(default_factory=list)


def format_ideal(gens: Sequence[Polynomial], nvars: int | None = None, prime: int | None = None,
                 parametrization: Sequence[Polynomial] | None = None) -> str:
    if nvars is None:
        nvars = gens[0].nvars
    if prime is None:
        prime = gens[0].p if gens else DEFAULT_PRIME
    lines = [f"# vars: {nvars}", f"# prime: {prime}"]
    lines += [format_polynomial(g) for g in gens]
    if parametrization:
        lines.append(f"# parametrization vars: {parametrization[0].nvars}")
        lines += [format_polynomial(g) for g in parametrization]
    return "\n".join(lines) + "\n"


def parse_ideal(text: str, nvars: int | None = None, p: int | None = None) -> IdealText:
    lines = text.splitlines()
    n, prime, pvars = nvars, p, None
    gens_txt, par_txt = [], []
    target = gens_txt
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("vars:") and n is None:
                n = int(body.split(":")[1])
            elif body.startswith("prime:") and prime is None:
                prime = int(body.split(":")[1])
            elif body.startswith("parametrization vars:"):
                pvars = int(body.split(":")[1])
                target = par_txt
            continue
        target.append(line)
    prime = prime or DEFAULT_PRIME
    if n is None:
        idx = [int(k) for t in gens_txt for k in re.findall(r"x(\d+)", t)]
        n = max(idx) + 1 if idx else 1
    gens = [parse_polynomial(t, n, prime) for t in gens_txt]
    par = [parse_polynomial(t, pvars, prime) for t in par_txt] if pvars else []
    return IdealText(n, prime, gens, pvars, par)
