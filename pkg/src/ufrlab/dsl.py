"""Textual ring-construction expressions.

Grammar (whitespace is ignored)::

    expr     := factor ('x' factor)*
    factor   := primary ( '[' idents ']' '/' '(' relation (',' relation)* ')' )?
    primary  := 'Z(' int ')' | 'Id(' expr ',' int ')'
    relation := integer polynomial in the listed variables, using + - * ^ and parentheses

Variable names are lowercase identifiers that never contain the letter ``x``
(reserved as the product separator).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

GRAMMAR = (
    "expr := factor ('x' factor)* ; "
    "factor := 'Z(' int ')' | factor '[' idents ']/(' polyexprs ')' | 'Id(' expr ',' int ')'"
)

Monomial = tuple  # exponent tuple, one entry per variable
# A relation is a tuple of (exponents, coefficient) pairs, largest term first.
Relation = tuple


class RingSpecError(ValueError):
    """Base class for problems with a ring expression."""


class RingSpecSyntaxError(RingSpecError):
    def __init__(self, text: str, position: int, expected: list[str]):
        self.text = text
        self.position = position
        self.expected = list(expected)
        found = text[position] if position < len(text) else "end of input"
        super().__init__(
            f"syntax error at position {position}: expected {' or '.join(self.expected)}, "
            f"found {found!r}"
        )


class RingSpecSemanticError(RingSpecError):
    pass


@dataclass(frozen=True)
class Modular:
    n: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class PolyQuotient:
    base: "RingSpec"
    vars: tuple
    relations: tuple


@dataclass(frozen=True)
class Idealization:
    base: "RingSpec"
    module_modulus: int


RingSpec = Union[Modular, Product, PolyQuotient, Idealization]


def monomial_order_key(exps: tuple) -> tuple:
    """Graded lexicographic key; larger keys are larger monomials."""
    return (sum(exps), exps)


def normalize_relation(terms: dict) -> Relation:
    items = [(e, c) for e, c in terms.items() if c != 0]
    items.sort(key=lambda t: monomial_order_key(t[0]), reverse=True)
    return tuple(items)


# ---------------------------------------------------------------- tokenizer

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class _Tok:
    kind: str  # 'int', 'name', 'sym', 'end'
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.extend(_split_name(m.group(2), m.start(2)))
        elif m.group(3) is not None:
            if not m.group(3).isspace():
                toks.append(_Tok("sym", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _split_name(word: str, start: int) -> list[_Tok]:
    # 'x' separates factors even when glued to neighbours, e.g. "Z(2)xZ(3)".
    out = []
    buf = ""
    bstart = start
    for i, ch in enumerate(word):
        if ch == "x":
            if buf:
                out.append(_Tok("name", buf, bstart))
            out.append(_Tok("name", "x", start + i))
            buf = ""
            bstart = start + i + 1
        else:
            if not buf:
                bstart = start + i
            buf += ch
    if buf:
        out.append(_Tok("name", buf, bstart))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, *expected: str):
        raise RingSpecSyntaxError(self.text, self.tok.pos, list(expected))

    def eat_sym(self, sym: str):
        if self.tok.kind == "sym" and self.tok.value == sym:
            self.i += 1
            return
        self.fail(repr(sym))

    def at_sym(self, sym: str) -> bool:
        return self.tok.kind == "sym" and self.tok.value == sym

    def eat_int(self) -> int:
        if self.tok.kind != "int":
            self.fail("integer")
        v = int(self.tok.value)
        self.i += 1
        return v

    # expr := factor ('x' factor)*
    def expr(self) -> RingSpec:
        factors = [self.factor()]
        while self.tok.kind == "name" and self.tok.value == "x":
            self.i += 1
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factor(self) -> RingSpec:
        base = self.primary()
        if self.at_sym("["):
            base = self.quotient(base)
            if self.at_sym("["):
                raise RingSpecSemanticError(
                    f"nested polynomial quotient at position {self.tok.pos} is not supported"
                )
        return base

    def primary(self) -> RingSpec:
        t = self.tok
        if t.kind == "name" and t.value == "Z":
            self.i += 1
            self.eat_sym("(")
            n = self.eat_int()
            self.eat_sym(")")
            if n < 2:
                raise RingSpecSemanticError(f"Z(n) needs n >= 2, got {n}")
            return Modular(n)
        if t.kind == "name" and t.value == "Id":
            self.i += 1
            self.eat_sym("(")
            base = self.expr()
            self.eat_sym(",")
            m = self.eat_int()
            self.eat_sym(")")
            if m < 1:
                raise RingSpecSemanticError(f"Id(base, m) needs m >= 1, got {m}")
            return Idealization(base, m)
        self.fail("'Z('", "'Id('")

    def quotient(self, base: RingSpec) -> PolyQuotient:
        if isinstance(base, PolyQuotient):
            raise RingSpecSemanticError("nested polynomial quotient is not supported")
        self.eat_sym("[")
        names: list[str] = []
        if self.at_sym("]"):
            raise RingSpecSemanticError("empty variable list")
        while True:
            t = self.tok
            if t.kind != "name" or t.value in ("x", "X", "Z", "Id") or not re.fullmatch(
                r"[a-wyz][a-wyz0-9_]*", t.value
            ):
                self.fail("variable name")
            if t.value in names:
                raise RingSpecSemanticError(f"duplicate variable {t.value!r}")
            names.append(t.value)
            self.i += 1
            if self.at_sym(","):
                self.i += 1
                continue
            break
        self.eat_sym("]")
        self.eat_sym("/")
        self.eat_sym("(")
        if self.at_sym(")"):
            raise RingSpecSemanticError("empty relation list")
        rels = [self.polyexpr(names)]
        while self.at_sym(","):
            self.i += 1
            rels.append(self.polyexpr(names))
        self.eat_sym(")")
        return PolyQuotient(base, tuple(names), tuple(normalize_relation(r) for r in rels))

    # integer polynomials as dicts {exponents: coefficient}
    def polyexpr(self, names: list[str]) -> dict:
        sign = 1
        if self.at_sym("-"):
            self.i += 1
            sign = -1
        elif self.at_sym("+"):
            self.i += 1
        acc = _scale(self.term(names), sign)
        while self.at_sym("+") or self.at_sym("-"):
            sign = 1 if self.tok.value == "+" else -1
            self.i += 1
            acc = _add(acc, _scale(self.term(names), sign))
        return acc

    def term(self, names: list[str]) -> dict:
        acc = self.atom(names)
        while self.at_sym("*"):
            self.i += 1
            acc = _mul(acc, self.atom(names))
        return acc

    def atom(self, names: list[str]) -> dict:
        nv = len(names)
        t = self.tok
        if t.kind == "int":
            self.i += 1
            base = {(0,) * nv: int(t.value)}
        elif t.kind == "name" and t.value != "x":
            if t.value not in names:
                raise RingSpecSemanticError(
                    f"unknown variable {t.value!r} at position {t.pos}; declared: {', '.join(names)}"
                )
            e = [0] * nv
            e[names.index(t.value)] = 1
            self.i += 1
            base = {tuple(e): 1}
        elif self.at_sym("("):
            self.i += 1
            base = self.polyexpr(names)
            self.eat_sym(")")
        else:
            self.fail("integer", "variable", "'('")
        if self.at_sym("^"):
            self.i += 1
            k = self.eat_int()
            out = {(0,) * nv: 1}
            for _ in range(k):
                out = _mul(out, base)
            base = out
        return base


def _add(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _scale(f: dict, k: int) -> dict:
    return {e: c * k for e, c in f.items() if c * k}


def _mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def parse_int_poly(text: str, names: list[str] | tuple) -> dict:
    """Parse an integer polynomial in the given variables into {exponents: coeff}."""
    p = _Parser(text)
    out = p.polyexpr(list(names))
    if p.tok.kind != "end":
        p.fail("'+'", "'-'", "'*'", "end of input")
    return out


def parse_ring_spec(text: str) -> RingSpec:
    p = _Parser(text)
    spec = p.expr()
    if p.tok.kind != "end":
        p.fail("'x'", "'['", "end of input")
    return spec


# ---------------------------------------------------------------- rendering


def render_monomial(exps: tuple, names) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_int_poly(terms, names) -> str:
    """Render (exponents, coeff) pairs in the order given."""
    terms = list(terms)
    if not terms:
        return "0"
    out = ""
    for idx, (e, c) in enumerate(terms):
        mono = render_monomial(e, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if c < 0:
            out += "-" + body
        elif idx:
            out += "+" + body
        else:
            out += body
    return out


def render_ring_spec(spec: RingSpec) -> str:
    if isinstance(spec, Modular):
        return f"Z({spec.n})"
    if isinstance(spec, Product):
        return "x".join(render_ring_spec(f) for f in spec.factors)
    if isinstance(spec, PolyQuotient):
        rels = ",".join(render_int_poly(r, spec.vars) for r in spec.relations)
        return f"{render_ring_spec(spec.base)}[{','.join(spec.vars)}]/({rels})"
    if isinstance(spec, Idealization):
        return f"Id({render_ring_spec(spec.base)},{spec.module_modulus})"
    raise TypeError(f"not a ring spec: {spec!r}")
