"""Expression grammar for job files: tokenizer, parser and evaluator.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)?
    exponent:= ['-'] INT | '(' ['-'] INT ')'
    atom    := INT | NAME | '(' expr ')' | sqrt | root
    sqrt    := 'sqrt' '(' expr ';' expr ')'
    root    := 'root' '(' NAME ':' expr ';' expr ')'

Names resolve against an environment of ring elements. Inside root(...)
the bound name is a polynomial indeterminate.
"""

import re

from ..errors import MissingWitnessError, ParseError
from ..rings import Elem, algebraic_root, sqrt_hensel

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_PUNCT = set("+-*/^()[];:,")


class Token:
    __slots__ = ("kind", "value", "col")

    def __init__(self, kind, value, col):
        self.kind = kind
        self.value = value
        self.col = col

    def __repr__(self):
        return f"{self.kind}:{self.value}"


def tokenize(text, line=None, col0=0):
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, other = m.groups()
        col = col0 + m.start(m.lastindex) + 1
        if num is not None:
            out.append(Token("int", int(num), col))
        elif name is not None:
            out.append(Token("name", name, col))
        elif other is not None:
            if other not in _PUNCT:
                raise ParseError(f"column {col}: unexpected character {other!r}", line)
            out.append(Token(other, other, col))
        pos = m.end()
    out.append(Token("end", None, col0 + n + 1))
    return out


class Parser:
    """Recursive-descent parser producing nested tuples."""

    def __init__(self, text, line=None, col0=0):
        self.text = text
        self.line = line
        self.toks = tokenize(text, line, col0)
        self.i = 0

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(f"column {tok.col}: {msg}", self.line)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "end of expression" if kind == "end" else repr(kind)
            got = "end of expression" if tok.kind == "end" else repr(tok.value)
            raise self.error(f"expected {want}, found {got}", tok)
        self.i += 1
        return tok

    def at(self, kind):
        return self.peek().kind == kind

    def parse_all(self):
        e = self.expr()
        self.take("end")
        return e

    def expr(self):
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().kind
            e = ("add" if op == "+" else "sub", e, self.term())
        return e

    def term(self):
        e = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take().kind
            e = ("mul" if op == "*" else "div", e, self.unary())
        return e

    def unary(self):
        if self.at("-"):
            self.take()
            return ("neg", self.unary())
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        e = self.atom()
        if self.at("^"):
            self.take()
            e = ("pow", e, self.exponent())
        return e

    def exponent(self):
        paren = self.at("(")
        if paren:
            self.take()
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        if not self.at("int"):
            raise self.error("exponents must be integer literals")
        n = sign * self.take().value
        if paren:
            self.take(")")
        return n

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return ("int", tok.value)
        if tok.kind == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if tok.kind == "name":
            self.take()
            if tok.value == "sqrt" and self.at("("):
                return self.sqrt_call(tok)
            if tok.value == "root" and self.at("("):
                return self.root_call(tok)
            return ("name", tok.value, tok.col)
        if tok.kind == "end":
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {tok.value!r}")

    def _witness(self, fname, tok):
        if not self.at(";"):
            raise MissingWitnessError(
                f"column {tok.col}: {fname}(...) needs a witness: write {fname}(... ; w) with the residue of the chosen root",
                self.line)
        self.take(";")
        return self.expr()

    def sqrt_call(self, tok):
        self.take("(")
        arg = self.expr()
        wit = self._witness("sqrt", tok)
        self.take(")")
        return ("sqrt", arg, wit, tok.col)

    def root_call(self, tok):
        self.take("(")
        var = self.take("name").value
        self.take(":")
        poly = self.expr()
        wit = self._witness("root", tok)
        self.take(")")
        return ("root", var, poly, wit, tok.col)


def parse_expr(text, line=None, col0=0):
    return Parser(text, line, col0).parse_all()


def free_names(node, bound=()):
    """Names referenced by an expression tree (excluding root-bound variables)."""
    kind = node[0]
    if kind == "int":
        return set()
    if kind == "name":
        return set() if node[1] in bound else {node[1]}
    if kind == "neg":
        return free_names(node[1], bound)
    if kind == "pow":
        return free_names(node[1], bound)
    if kind in ("add", "sub", "mul", "div"):
        return free_names(node[1], bound) | free_names(node[2], bound)
    if kind == "sqrt":
        return free_names(node[1], bound) | free_names(node[2], bound)
    if kind == "root":
        return free_names(node[2], bound + (node[1],)) | free_names(node[3], bound)
    raise ValueError(kind)


class Poly:
    """Univariate polynomial with ring-element coefficients (low to high)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        c = [ring(x) for x in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs = c

    @classmethod
    def _wrap(cls, ring, x):
        return x if isinstance(x, Poly) else Poly(ring, [x])

    def __add__(self, other):
        o = self._wrap(self.ring, other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.ring.zero_elem
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = o.coeffs + [z] * (n - len(o.coeffs))
        return Poly(self.ring, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._wrap(self.ring, other))

    def __rsub__(self, other):
        return self._wrap(self.ring, other) - self

    def __mul__(self, other):
        o = self._wrap(self.ring, other)
        if not self.coeffs or not o.coeffs:
            return Poly(self.ring, [])
        out = [self.ring.zero_elem] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(o.coeffs):
                out[i + j] = out[i + j] + x * y
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if len(other.coeffs) != 1:
                raise TypeError("division by a non-constant polynomial")
            other = other.coeffs[0]
        return Poly(self.ring, [x / other for x in self.coeffs])

    def __pow__(self, n):
        if n < 0:
            raise TypeError("negative power of a polynomial")
        out = Poly(self.ring, [1])
        for _ in range(n):
            out = out * self
        return out


class Evaluator:
    """Evaluates expression trees to elements of a fixed ring."""

    def __init__(self, ring, env, line=None):
        self.ring = ring
        self.env = env
        self.line = line

    def error(self, msg, col=None):
        where = f"column {col}: " if col else ""
        return ParseError(where + msg, self.line)

    def __call__(self, node, local=None):
        local = local or {}
        kind = node[0]
        if kind == "int":
            return self.ring(node[1])
        if kind == "name":
            name = node[1]
            if name in local:
                return local[name]
            if name not in self.env:
                raise self.error(f"undeclared name {name!r}", node[2])
            v = self.env[name]
            return self.ring(v) if isinstance(v, Elem) else v
        if kind == "neg":
            return -self(node[1], local)
        if kind == "pow":
            base = self(node[1], local)
            if node[2] < 0 and isinstance(base, Poly):
                raise self.error("negative power of a polynomial")
            return base ** node[2]
        if kind in ("add", "sub", "mul", "div"):
            a = self(node[1], local)
            b = self(node[2], local)
            if isinstance(b, Poly) and not isinstance(a, Poly):
                a = Poly(self.ring, [a])
            if kind == "add":
                return a + b
            if kind == "sub":
                return a - b
            if kind == "mul":
                return a * b
            if isinstance(b, Poly) and len(b.coeffs) != 1:
                raise self.error("division by a polynomial in a bound variable")
            return a / b
        if kind == "sqrt":
            a = self._scalar(self(node[1], local), "sqrt", node[3])
            w = self._scalar(self(node[2], local), "sqrt witness", node[3])
            return sqrt_hensel(a, w)
        if kind == "root":
            var = node[1]
            if var in self.env:
                raise self.error(f"root variable {var!r} shadows a declared name", node[4])
            gen = Poly(self.ring, [0, 1])
            p = self(node[2], {**local, var: gen})
            if not isinstance(p, Poly) or len(p.coeffs) < 2:
                raise self.error(f"root(...) needs a non-constant polynomial in {var}", node[4])
            seed = self._scalar(self(node[3], local), "root seed", node[4])
            return algebraic_root(p.coeffs, seed)
        raise self.error(f"unknown node {kind}")

    def _scalar(self, v, what, col):
        if isinstance(v, Poly):
            if len(v.coeffs) > 1:
                raise self.error(f"{what} must not depend on a bound variable", col)
            return v.coeffs[0] if v.coeffs else self.ring.zero_elem
        return v

    def scalar(self, node):
        return self._scalar(self(node), "expression", None)
