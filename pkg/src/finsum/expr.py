"""Expression grammar over the summation index k.

    additive       := multiplicative (('+' | '-') multiplicative)*
    multiplicative := unary (('*' | '/') unary)*
    unary          := '-' unary | power
    power          := atom ('^' unary)?          # right-associative
    atom           := NUMBER | 'pi' | 'e' | 'k'
                    | ('sin'|'cos'|'exp'|'log'|'sqrt') '(' additive ')'
                    | '(' additive ')'

Precedence (low to high): additive, multiplicative, unary minus, power,
atoms -- so ``-k^2`` is ``-(k^2)`` and ``2^3^2`` is 512.  Parse errors carry
the byte offset and the expected-token set.  Evaluation is polymorphic: the
same tree evaluates at complex scalars, complex128 arrays and jets, which is
how one closure serves the oracle, the quadrature grids and the derivative
machinery.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import jets
from .errors import ParseError

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")
CONSTANTS = {"pi": math.pi, "e": math.e}


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str  # 'pi' | 'e'


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


Node = Union[Num, Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call]


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?|([A-Za-z_]\w*)|([()+\-*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unrecognized character {stripped[0]!r}",
                             len(text) - len(stripped),
                             frozenset({"number", "name", "operator"}))
        if m.group(1) is not None:
            tokens.append(("num", m.group(1) + (m.group(2) or ""), m.start(1)))
        elif m.group(3) is not None:
            tokens.append(("name", m.group(3), m.start(3)))
        else:
            tokens.append(("op", m.group(4), m.start(4)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", off, frozenset({repr(op)}))
        return self.advance()

    def parse(self) -> Node:
        node = self.additive()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", off,
                             frozenset({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"}))
        return node

    def additive(self) -> Node:
        node = self.multiplicative()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.multiplicative()
                node = Add(node, rhs) if val == "+" else Sub(node, rhs)
            else:
                return node

    def multiplicative(self) -> Node:
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                rhs = self.unary()
                node = Mul(node, rhs) if val == "*" else Div(node, rhs)
            else:
                return node

    def unary(self) -> Node:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self) -> Node:
        kind, val, off = self.peek()
        if kind == "num":
            self.advance()
            return Num(float(val))
        if kind == "name":
            self.advance()
            if val == "k":
                return Var()
            if val in CONSTANTS:
                return Const(val)
            if val in FUNCTIONS:
                self.expect_op("(")
                arg = self.additive()
                self.expect_op(")")
                return Call(val, arg)
            raise ParseError(f"unknown name {val!r}", off,
                             frozenset({"'k'", "'pi'", "'e'"} | {f"'{f}'" for f in FUNCTIONS}))
        if kind == "op" and val == "(":
            self.advance()
            node = self.additive()
            self.expect_op(")")
            return node
        raise ParseError("expected a value", off,
                         frozenset({"number", "'k'", "'pi'", "'e'", "function", "'('"}))


def parse_expression(text: str) -> Node:
    """Parse an expression in k; raises ParseError with offset on bad input."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation

_FUNCS = {"sin": jets.sin, "cos": jets.cos, "exp": jets.exp,
          "log": jets.log, "sqrt": jets.sqrt}


def evaluate(node: Node, k):
    """Evaluate at k, which may be a complex scalar, a complex array or a jet."""
    match node:
        case Num(value=v):
            return v
        case Const(name=name):
            return CONSTANTS[name]
        case Var():
            return k
        case Neg(arg=a):
            return -evaluate(a, k)
        case Add(left=l, right=r):
            return evaluate(l, k) + evaluate(r, k)
        case Sub(left=l, right=r):
            return evaluate(l, k) - evaluate(r, k)
        case Mul(left=l, right=r):
            return evaluate(l, k) * evaluate(r, k)
        case Div(left=l, right=r):
            return evaluate(l, k) / evaluate(r, k)
        case Pow(base=b, exponent=e):
            be = evaluate(b, k)
            ee = evaluate(e, k)
            if isinstance(be, jets.Jet) or isinstance(ee, jets.Jet):
                if isinstance(be, jets.Jet):
                    return be ** ee
                return jets.exp(jets.log(jets.Jet((complex(be),) + (0,) * ee.order)) * ee)
            if isinstance(be, np.ndarray) or isinstance(ee, np.ndarray):
                return np.asarray(be, dtype=complex) ** ee
            return complex(be) ** ee
        case Call(fn=fn, arg=a):
            return _FUNCS[fn](evaluate(a, k))
    raise TypeError(f"unknown node {node!r}")


def as_function(node: Node):
    """A closure k -> value that accepts scalars, arrays and jets.

    The source tree stays reachable as ``.node`` and its rendered text as
    ``.expression``, so recognizers can work from the closure alone.
    """
    def g(k):
        return evaluate(node, k)
    g.node = node
    g.expression = pretty(node)
    return g


def substitute_index(node: Node, replacement: Node) -> Node:
    """The tree with every occurrence of k replaced by the given subtree."""
    match node:
        case Num() | Const():
            return node
        case Var():
            return replacement
        case Neg(arg=a):
            return Neg(substitute_index(a, replacement))
        case Add(left=l, right=r):
            return Add(substitute_index(l, replacement), substitute_index(r, replacement))
        case Sub(left=l, right=r):
            return Sub(substitute_index(l, replacement), substitute_index(r, replacement))
        case Mul(left=l, right=r):
            return Mul(substitute_index(l, replacement), substitute_index(r, replacement))
        case Div(left=l, right=r):
            return Div(substitute_index(l, replacement), substitute_index(r, replacement))
        case Pow(base=b, exponent=e):
            return Pow(substitute_index(b, replacement), substitute_index(e, replacement))
        case Call(fn=fn, arg=a):
            return Call(fn, substitute_index(a, replacement))
    raise TypeError(f"unknown node {node!r}")


def is_constant(node: Node) -> bool:
    """True when the tree does not reference k."""
    match node:
        case Num() | Const():
            return True
        case Var():
            return False
        case Neg(arg=a):
            return is_constant(a)
        case Add(left=l, right=r) | Sub(left=l, right=r) | Mul(left=l, right=r) \
                | Div(left=l, right=r):
            return is_constant(l) and is_constant(r)
        case Pow(base=b, exponent=e):
            return is_constant(b) and is_constant(e)
        case Call(arg=a):
            return is_constant(a)
    return False


def constant_value(node: Node) -> complex:
    """Numeric value of a k-free subtree."""
    return complex(evaluate(node, 0.0))


def poly_coefficients(node: Node, max_degree: int = 2) -> list[complex] | None:
    """[c0, c1, ...] with node == sum c_j k^j, or None if not such a polynomial."""

    def combine(a, b, mul):
        if a is None or b is None:
            return None
        if not mul:
            out = [0j] * max(len(a), len(b))
            for i, v in enumerate(a):
                out[i] += v
            for i, v in enumerate(b):
                out[i] += v
            return out
        if (len(a) - 1) + (len(b) - 1) > max_degree:
            return None
        out = [0j] * (len(a) + len(b) - 1)
        for i, va in enumerate(a):
            for j, vb in enumerate(b):
                out[i + j] += va * vb
        return out

    match node:
        case _ if is_constant(node):
            return [constant_value(node)]
        case Var():
            return [0j, 1 + 0j]
        case Neg(arg=a):
            p = poly_coefficients(a, max_degree)
            return None if p is None else [-c for c in p]
        case Add(left=l, right=r):
            return combine(poly_coefficients(l, max_degree), poly_coefficients(r, max_degree), False)
        case Sub(left=l, right=r):
            rp = poly_coefficients(r, max_degree)
            rp = None if rp is None else [-c for c in rp]
            return combine(poly_coefficients(l, max_degree), rp, False)
        case Mul(left=l, right=r):
            return combine(poly_coefficients(l, max_degree), poly_coefficients(r, max_degree), True)
        case Div(left=l, right=r):
            if not is_constant(r):
                return None
            d = constant_value(r)
            p = poly_coefficients(l, max_degree)
            return None if p is None else [c / d for c in p]
        case Pow(base=b, exponent=e):
            if not is_constant(e):
                return None
            ev = constant_value(e)
            if ev.imag != 0 or ev.real != int(ev.real) or ev.real < 0:
                return None
            p = poly_coefficients(b, max_degree)
            if p is None:
                return None
            out = [1 + 0j]
            for _ in range(int(ev.real)):
                out = combine(out, p, True)
                if out is None:
                    return None
            return out
    return None


# ---------------------------------------------------------------------------
# pretty printer

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _prec(node: Node) -> int:
    return _PREC.get(type(node), 5)


def _fmt_num(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def pretty(node: Node) -> str:
    """Canonical text form; parse(pretty(parse(s))) == parse(s)."""
    match node:
        case Num(value=v):
            return _fmt_num(v)
        case Const(name=name):
            return name
        case Var():
            return "k"
        case Neg(arg=a):
            inner = pretty(a)
            if _prec(a) < 3:
                inner = f"({inner})"
            return f"-{inner}"
        case Add(left=l, right=r):
            rs = pretty(r)
            if _prec(r) <= 1:
                rs = f"({rs})"
            ls = pretty(l)
            if _prec(l) < 1:
                ls = f"({ls})"
            return f"{ls} + {rs}"
        case Sub(left=l, right=r):
            rs = pretty(r)
            if _prec(r) <= 1 or isinstance(r, Neg):
                rs = f"({rs})"
            ls = pretty(l)
            if _prec(l) < 1:
                ls = f"({ls})"
            return f"{ls} - {rs}"
        case Mul(left=l, right=r):
            ls = pretty(l)
            if _prec(l) < 2:
                ls = f"({ls})"
            rs = pretty(r)
            if _prec(r) <= 2 and not isinstance(r, Mul):
                rs = rs if _prec(r) > 2 else f"({rs})"
            elif isinstance(r, Mul):
                rs = f"({rs})"
            return f"{ls}*{rs}"
        case Div(left=l, right=r):
            ls = pretty(l)
            if _prec(l) < 2:
                ls = f"({ls})"
            rs = pretty(r)
            if _prec(r) <= 2:
                rs = f"({rs})"
            return f"{ls}/{rs}"
        case Pow(base=b, exponent=e):
            bs = pretty(b)
            if _prec(b) <= 4:
                bs = f"({bs})"
            es = pretty(e)
            if _prec(e) < 3:
                es = f"({es})"
            return f"{bs}^{es}"
        case Call(fn=fn, arg=a):
            return f"{fn}({pretty(a)})"
    raise TypeError(f"unknown node {node!r}")
