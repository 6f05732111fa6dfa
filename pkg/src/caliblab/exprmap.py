"""Small expression language for maps R^m -> R with exact jets to order 2.

Grammar (standard precedence, ^ right-associative and binding tighter than
unary minus):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := number | 'x1'..'x9' | name '(' expr ')' | '(' expr ')'

Evaluation propagates (value, gradient, hessian) forward through the tree,
so first and second derivatives are exact up to rounding.  Third-order
data is obtained elsewhere by differencing jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

UNARY_FUNCTIONS = (
    "sin",
    "cos",
    "sinh",
    "cosh",
    "tanh",
    "exp",
    "log",
    "sqrt",
    "atan",
)


class ParseError(ValueError):
    """Syntax error with byte offset and the token set that was expected."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        suffix = f" (expected one of {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at offset {offset}{suffix}")


class EvalDomainError(ValueError):
    """Evaluation left the real domain of some node (log/sqrt/0-division)."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (expression offset {offset})")


@dataclass(frozen=True)
class Node:
    kind: str  # "const" | "var" | "unary" | "binary"
    offset: int
    value: float = 0.0
    index: int = 0
    op: str = ""
    args: tuple = ()


# -- tokenizer ---------------------------------------------------------


def _tokenize(src: str):
    tokens = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/^()":
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            seen_e = False
            while j < n and (
                src[j].isdigit()
                or src[j] == "."
                or src[j] in "eE"
                or (seen_e and src[j] in "+-" and src[j - 1] in "eE")
            ):
                if src[j] in "eE":
                    seen_e = True
                j += 1
            text = src[i:j]
            try:
                val = float(text)
            except ValueError:
                raise ParseError(f"bad number literal {text!r}", i) from None
            tokens.append(("num", val, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("name", src[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, m: int):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.m = m

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], (kind,))
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], ("end of input",))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, off = self.advance()
            rhs = self.term()
            node = Node("binary", off, op=op, args=(node, rhs))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, off = self.advance()
            rhs = self.factor()
            node = Node("binary", off, op=op, args=(node, rhs))
        return node

    def factor(self) -> Node:
        if self.peek()[0] == "-":
            _, _, off = self.advance()
            return Node("unary", off, op="neg", args=(self.factor(),))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, off = self.advance()
            exponent = self.factor()  # right associative, allows unary minus
            return Node("binary", off, op="^", args=(base, exponent))
        return base

    def atom(self) -> Node:
        kind, value, off = self.peek()
        if kind == "num":
            self.advance()
            return Node("const", off, value=float(value))
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            self.advance()
            if len(value) == 2 and value[0] == "x" and value[1].isdigit():
                idx = int(value[1])
                if idx < 1 or idx > 9:
                    raise ParseError(f"variable {value!r} out of range", off)
                if idx > self.m:
                    raise ParseError(
                        f"variable {value!r} exceeds declared arity {self.m}", off
                    )
                return Node("var", off, index=idx - 1)
            if value in UNARY_FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Node("unary", off, op=value, args=(arg,))
            raise ParseError(f"unknown identifier {value!r}", off,
                             ("x1..x9",) + UNARY_FUNCTIONS)
        raise ParseError(
            f"unexpected token {value!r}", off, ("number", "variable", "(", "-")
        )


def parse(src: str, m: int) -> Node:
    """Parse a scalar expression in m variables; raises ParseError on failure."""
    if m < 0 or m > 9:
        raise ValueError("arity must be between 0 and 9")
    return _Parser(src, m).parse()


def to_source(node: Node) -> str:
    """Fully parenthesized source; parse(to_source(ast)) reproduces the tree."""
    if node.kind == "const":
        return repr(node.value)
    if node.kind == "var":
        return f"x{node.index + 1}"
    if node.kind == "unary":
        if node.op == "neg":
            return f"(-{to_source(node.args[0])})"
        return f"{node.op}({to_source(node.args[0])})"
    lhs, rhs = node.args
    return f"({to_source(lhs)}{node.op}{to_source(rhs)})"


# -- second-order jets -------------------------------------------------


class Jet2:
    """Value, gradient and (symmetric) hessian of a scalar at one point."""

    __slots__ = ("value", "grad", "hess")

    def __init__(self, value: float, grad: np.ndarray, hess: np.ndarray):
        self.value = float(value)
        self.grad = grad
        self.hess = hess

    @staticmethod
    def constant(value: float, m: int) -> "Jet2":
        return Jet2(value, np.zeros(m), np.zeros((m, m)))

    @staticmethod
    def variable(value: float, index: int, m: int) -> "Jet2":
        g = np.zeros(m)
        g[index] = 1.0
        return Jet2(value, g, np.zeros((m, m)))

    def compose(self, f0: float, f1: float, f2: float) -> "Jet2":
        """Jet of f(self) given f, f', f'' at self.value."""
        outer = np.outer(self.grad, self.grad)
        return Jet2(f0, f1 * self.grad, f1 * self.hess + f2 * outer)

    def __add__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.value + other.value, self.grad + other.grad, self.hess + other.hess)

    def __sub__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.value - other.value, self.grad - other.grad, self.hess - other.hess)

    def __neg__(self) -> "Jet2":
        return Jet2(-self.value, -self.grad, -self.hess)

    def __mul__(self, other: "Jet2") -> "Jet2":
        cross = np.outer(self.grad, other.grad)
        return Jet2(
            self.value * other.value,
            self.value * other.grad + other.value * self.grad,
            self.value * other.hess + other.value * self.hess + cross + cross.T,
        )

    def reciprocal(self, offset: int) -> "Jet2":
        if self.value == 0.0:
            raise EvalDomainError("division by zero", offset)
        inv = 1.0 / self.value
        return self.compose(inv, -inv * inv, 2.0 * inv**3)


_UNARY_JET = {
    "sin": lambda v: (math.sin(v), math.cos(v), -math.sin(v)),
    "cos": lambda v: (math.cos(v), -math.sin(v), -math.cos(v)),
    "sinh": lambda v: (math.sinh(v), math.cosh(v), math.sinh(v)),
    "cosh": lambda v: (math.cosh(v), math.sinh(v), math.cosh(v)),
    "tanh": lambda v: (
        math.tanh(v),
        1.0 - math.tanh(v) ** 2,
        -2.0 * math.tanh(v) * (1.0 - math.tanh(v) ** 2),
    ),
    "exp": lambda v: (math.exp(v), math.exp(v), math.exp(v)),
    "atan": lambda v: (
        math.atan(v),
        1.0 / (1.0 + v * v),
        -2.0 * v / (1.0 + v * v) ** 2,
    ),
}


def eval_jet2(node: Node, p) -> Jet2:
    """Forward jet propagation at point ``p`` (length-m array)."""
    p = np.asarray(p, dtype=float)
    m = p.shape[0]
    return _eval(node, p, m)


def _eval(node: Node, p: np.ndarray, m: int) -> Jet2:
    if node.kind == "const":
        return Jet2.constant(node.value, m)
    if node.kind == "var":
        return Jet2.variable(p[node.index], node.index, m)
    if node.kind == "unary":
        arg = _eval(node.args[0], p, m)
        if node.op == "neg":
            return -arg
        if node.op == "log":
            if arg.value <= 0.0:
                raise EvalDomainError("log of non-positive value", node.offset)
            return arg.compose(
                math.log(arg.value), 1.0 / arg.value, -1.0 / arg.value**2
            )
        if node.op == "sqrt":
            if arg.value < 0.0:
                raise EvalDomainError("sqrt of negative value", node.offset)
            if arg.value == 0.0:
                raise EvalDomainError("sqrt not differentiable at zero", node.offset)
            root = math.sqrt(arg.value)
            return arg.compose(root, 0.5 / root, -0.25 / root**3)
        f0, f1, f2 = _UNARY_JET[node.op](arg.value)
        return arg.compose(f0, f1, f2)
    lhs = _eval(node.args[0], p, m)
    if node.op == "^":
        return _power(lhs, node.args[1], p, m, node.offset)
    rhs = _eval(node.args[1], p, m)
    if node.op == "+":
        return lhs + rhs
    if node.op == "-":
        return lhs - rhs
    if node.op == "*":
        return lhs * rhs
    if node.op == "/":
        return lhs * rhs.reciprocal(node.offset)
    raise AssertionError(f"unhandled operator {node.op!r}")


def _power(base: Jet2, exp_node: Node, p: np.ndarray, m: int, offset: int) -> Jet2:
    exponent = _eval(exp_node, p, m)
    if np.any(exponent.grad != 0.0) or np.any(exponent.hess != 0.0):
        # general u^v = exp(v log u); requires positive base
        if base.value <= 0.0:
            raise EvalDomainError("power with variable exponent needs positive base", offset)
        log_base = base.compose(
            math.log(base.value), 1.0 / base.value, -1.0 / base.value**2
        )
        prod = exponent * log_base
        return prod.compose(math.exp(prod.value), math.exp(prod.value), math.exp(prod.value))
    e = exponent.value
    if e == int(e):
        k = int(e)
        if base.value == 0.0 and k < 0:
            raise EvalDomainError("zero base with negative exponent", offset)
        f0 = base.value**k
        f1 = k * base.value ** (k - 1) if k != 0 else 0.0
        f2 = k * (k - 1) * base.value ** (k - 2) if k not in (0, 1) else 0.0
        return base.compose(f0, f1, f2)
    if base.value <= 0.0:
        raise EvalDomainError("non-integer power of non-positive base", offset)
    f0 = base.value**e
    return base.compose(f0, e * f0 / base.value, e * (e - 1) * f0 / base.value**2)


class ExprMap:
    """Map R^m -> R^n from one expression string per output coordinate."""

    def __init__(self, sources, m: int):
        if isinstance(sources, str):
            sources = [sources]
        self.sources = list(sources)
        self.m = m
        self.nodes = [parse(src, m) for src in self.sources]
        self.n = len(self.nodes)

    def jet(self, p):
        """Returns (value (n,), jacobian (n, m), hessians (n, m, m))."""
        p = np.asarray(p, dtype=float)
        vals = np.empty(self.n)
        jac = np.empty((self.n, self.m))
        hess = np.empty((self.n, self.m, self.m))
        for i, node in enumerate(self.nodes):
            jt = eval_jet2(node, p)
            vals[i] = jt.value
            jac[i] = jt.grad
            hess[i] = 0.5 * (jt.hess + jt.hess.T)
        return vals, jac, hess

    def __call__(self, p):
        return self.jet(p)[0]
