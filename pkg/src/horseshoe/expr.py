"""Expression trees for the one-variable functions h and w.

Grammar (see docs/grammar.md)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom (('^' | '**') exponent)?
    exponent := ['-'] INT | '(' ['-'] INT ')'
    atom   := NUMBER | 'pi' | 'x' | 'y' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := sin | cos | tan | exp | ln

Numbers are decimal or C99 hex floats; each literal becomes the nearest
double and is then treated as exact.  Evaluation in interval mode is
rigorous; evaluation in float mode is plain numpy and only used for searches.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

import numpy as np

from .interval import PI, DomainError, Interval

__all__ = ["Expr", "Const", "Var", "ExprSyntaxError", "parse", "FUNCS"]

FUNCS = ("sin", "cos", "tan", "exp", "ln")
VARS = ("x", "y")


class ExprSyntaxError(ValueError):
    def __init__(self, offset, msg):
        super().__init__(f"at byte {offset}: {msg}")
        self.offset = offset


class Expr:
    __slots__ = ()
    prec = 100

    # operator sugar for building trees in code
    def __add__(self, o):
        return add(self, _wrap(o))

    def __radd__(self, o):
        return add(_wrap(o), self)

    def __sub__(self, o):
        return sub(self, _wrap(o))

    def __rsub__(self, o):
        return sub(_wrap(o), self)

    def __mul__(self, o):
        return mul(self, _wrap(o))

    def __rmul__(self, o):
        return mul(_wrap(o), self)

    def __truediv__(self, o):
        return div(self, _wrap(o))

    def __neg__(self):
        return neg(self)

    def __pow__(self, n):
        return power(self, int(n))

    def variables(self):
        out = set()
        self._vars(out)
        return out

    def _vars(self, out):
        pass

    def __repr__(self):
        return f"Expr({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, Expr) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))


class Const(Expr):
    __slots__ = ("value", "name")

    def __init__(self, value, name=None):
        self.value = float(value)
        self.name = name

    @property
    def is_number(self):
        return self.name is None

    def ieval(self, env):
        if self.name == "pi":
            return PI
        return Interval.point(self.value)

    def feval(self, env):
        return self.value

    def diff(self, var):
        return ZERO

    def substitute(self, m):
        return self

    def __str__(self):
        if self.name:
            return self.name
        v = self.value
        if v == int(v) and abs(v) < 1e15:
            s = str(int(v))
        else:
            s = repr(v)
        return s if v >= 0 else f"({s})"


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def ieval(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise ValueError(f"unbound variable {self.name}") from None

    feval = ieval

    def diff(self, var):
        return ONE if var == self.name else ZERO

    def substitute(self, m):
        return m.get(self.name, self)

    def _vars(self, out):
        out.add(self.name)

    def __str__(self):
        return self.name


class BinOp(Expr):
    __slots__ = ("op", "a", "b")
    _prec = {"+": 1, "-": 1, "*": 2, "/": 2}

    def __init__(self, op, a, b):
        self.op, self.a, self.b = op, a, b

    @property
    def prec(self):
        return self._prec[self.op]

    def ieval(self, env):
        a = self.a.ieval(env)
        b = self.b.ieval(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b

    def feval(self, env):
        a = self.a.feval(env)
        b = self.b.feval(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b

    def diff(self, var):
        a, b = self.a, self.b
        da, db = a.diff(var), b.diff(var)
        if self.op == "+":
            return add(da, db)
        if self.op == "-":
            return sub(da, db)
        if self.op == "*":
            return add(mul(da, b), mul(a, db))
        return div(sub(mul(da, b), mul(a, db)), power(b, 2))

    def substitute(self, m):
        return BinOp(self.op, self.a.substitute(m), self.b.substitute(m))

    def _vars(self, out):
        self.a._vars(out)
        self.b._vars(out)

    def __str__(self):
        p = self.prec
        left = str(self.a)
        if self.a.prec < p:
            left = f"({left})"
        right = str(self.b)
        # keep the tree shape on reparse: parenthesize equal precedence on the right
        if self.b.prec <= p:
            right = f"({right})"
        sep = f" {self.op} " if p == 1 else self.op
        return left + sep + right


class Neg(Expr):
    __slots__ = ("a",)
    prec = 3

    def __init__(self, a):
        self.a = a

    def ieval(self, env):
        return -self.a.ieval(env)

    def feval(self, env):
        return -self.a.feval(env)

    def diff(self, var):
        return neg(self.a.diff(var))

    def substitute(self, m):
        return Neg(self.a.substitute(m))

    def _vars(self, out):
        self.a._vars(out)

    def __str__(self):
        s = str(self.a)
        return f"-({s})" if self.a.prec < 4 else f"-{s}"


class Pow(Expr):
    __slots__ = ("a", "n")
    prec = 4

    def __init__(self, a, n):
        self.a, self.n = a, int(n)

    def ieval(self, env):
        return self.a.ieval(env).pow_int(self.n)

    def feval(self, env):
        return np.power(np.asarray(self.a.feval(env), dtype=float), float(self.n))

    def diff(self, var):
        return mul(mul(Const(self.n), power(self.a, self.n - 1)), self.a.diff(var))

    def substitute(self, m):
        return Pow(self.a.substitute(m), self.n)

    def _vars(self, out):
        self.a._vars(out)

    def __str__(self):
        s = str(self.a)
        if self.a.prec <= 4:
            s = f"({s})"
        e = str(self.n) if self.n >= 0 else f"({self.n})"
        return f"{s}^{e}"


class Func(Expr):
    __slots__ = ("name", "a", "_turns")
    prec = 5

    def __init__(self, name, a):
        if name not in FUNCS:
            raise ValueError(f"unknown function {name}")
        self.name, self.a = name, a
        self._turns = _as_turns(a) if name in ("sin", "cos") else None

    def ieval(self, env):
        if self._turns is not None:
            t = self._turns.ieval(env)
            return t.sin2pi() if self.name == "sin" else t.cos2pi()
        v = self.a.ieval(env)
        if self.name == "sin":
            return v.sin()
        if self.name == "cos":
            return v.cos()
        if self.name == "tan":
            return v.tan()
        if self.name == "exp":
            return v.exp()
        return v.log()

    def feval(self, env):
        v = np.asarray(self.a.feval(env), dtype=float)
        f = {"sin": np.sin, "cos": np.cos, "tan": np.tan, "exp": np.exp, "ln": np.log}[self.name]
        with np.errstate(all="ignore"):
            return f(v)

    def diff(self, var):
        a = self.a
        da = a.diff(var)
        if self.name == "sin":
            d = Func("cos", a)
        elif self.name == "cos":
            d = neg(Func("sin", a))
        elif self.name == "tan":
            d = add(ONE, power(Func("tan", a), 2))
        elif self.name == "exp":
            d = Func("exp", a)
        else:
            d = div(ONE, a)
        return mul(d, da)

    def substitute(self, m):
        return Func(self.name, self.a.substitute(m))

    def _vars(self, out):
        self.a._vars(out)

    def __str__(self):
        return f"{self.name}({self.a})"


ZERO = Const(0.0)
ONE = Const(1.0)
PI_C = Const(math.pi, "pi")


def _wrap(o):
    return o if isinstance(o, Expr) else Const(o)


def _num(e):
    return isinstance(e, Const) and e.is_number


def _exact(q):
    """Float equal to the rational q, or None."""
    try:
        f = float(q)
    except OverflowError:
        return None
    return f if math.isfinite(f) and Fraction(f) == q else None


def add(a, b):
    if _num(a) and a.value == 0:
        return b
    if _num(b) and b.value == 0:
        return a
    if _num(a) and _num(b):
        f = _exact(Fraction(a.value) + Fraction(b.value))
        if f is not None:
            return Const(f)
    return BinOp("+", a, b)


def sub(a, b):
    if _num(b) and b.value == 0:
        return a
    if _num(a) and a.value == 0:
        return neg(b)
    if _num(a) and _num(b):
        f = _exact(Fraction(a.value) - Fraction(b.value))
        if f is not None:
            return Const(f)
    return BinOp("-", a, b)


def mul(a, b):
    if (_num(a) and a.value == 0) or (_num(b) and b.value == 0):
        return ZERO
    if _num(a) and a.value == 1:
        return b
    if _num(b) and b.value == 1:
        return a
    if _num(a) and _num(b):
        f = _exact(Fraction(a.value) * Fraction(b.value))
        if f is not None:
            return Const(f)
    return BinOp("*", a, b)


def div(a, b):
    if _num(b) and b.value == 1:
        return a
    if _num(a) and a.value == 0 and not (_num(b) and b.value == 0):
        return ZERO
    return BinOp("/", a, b)


def neg(a):
    if _num(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def power(a, n):
    if n == 0:
        return ONE
    if n == 1:
        return a
    return Pow(a, n)


def _factors(e, out):
    """Flatten products; returns sign."""
    if isinstance(e, BinOp) and e.op == "*":
        return _factors(e.a, out) * _factors(e.b, out)
    if isinstance(e, Neg):
        return -_factors(e.a, out)
    out.append(e)
    return 1


def _as_turns(arg):
    """If arg == c*pi*R with a rational c such that c/2 is a double, return
    the expression (c/2)*R so that sin(arg) = sin(2*pi*((c/2)*R))."""
    fs = []
    sign = _factors(arg, fs)
    pis = [f for f in fs if isinstance(f, Const) and f.name == "pi"]
    if len(pis) != 1:
        return None
    c = Fraction(sign)
    rest = []
    for f in fs:
        if f is pis[0]:
            continue
        if _num(f):
            c *= Fraction(f.value)
        else:
            rest.append(f)
    k = _exact(c / 2)
    if k is None:
        return None
    r = Const(k)
    for f in rest:
        r = mul(r, f)
    return r


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<hex>0[xX](?:[0-9a-fA-F]+(?:\.[0-9a-fA-F]*)?|\.[0-9a-fA-F]+)[pP][+-]?\d+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>\*\*|[-+*/^()])
""", re.VERBOSE)


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(_byte_offset(text, pos), f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            toks.append((kind, m.group(), _byte_offset(text, pos)))
        pos = m.end()
    toks.append(("end", "", _byte_offset(text, pos)))
    return toks


def _byte_offset(text, pos):
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise ExprSyntaxError(t[2], f"expected {value!r}, found {t[1] or 'end of input'!r}")
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ExprSyntaxError(t[2], f"unexpected {t[1]!r}")
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            r = self.term()
            e = BinOp(op, e, r)
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            r = self.unary()
            e = BinOp(op, e, r)
        return e

    def unary(self):
        t = self.peek()
        if t[1] == "-":
            self.take()
            return neg(self.unary())
        if t[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            n = self.exponent()
            return Pow(base, n)
        return base

    def exponent(self):
        paren = self.peek()[1] == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "num" or not t[1].isdigit():
            raise ExprSyntaxError(t[2], "exponent must be an integer literal")
        if paren:
            self.expect(")")
        return sign * int(t[1])

    def atom(self):
        t = self.take()
        kind, val, off = t
        if kind == "num":
            return Const(float(val))
        if kind == "hex":
            return Const(float.fromhex(val))
        if kind == "name":
            if val == "pi":
                return PI_C
            if val in VARS:
                return Var(val)
            if val in FUNCS:
                self.expect("(")
                a = self.expr()
                self.expect(")")
                return Func(val, a)
            raise ExprSyntaxError(off, f"unknown name {val!r}")
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ExprSyntaxError(off, f"unexpected {val or 'end of input'!r}")


def parse(text: str) -> Expr:
    """Parse an infix expression; raises ExprSyntaxError with a byte offset."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return _Parser(text).parse()


def unary_function(e: Expr, what="expression"):
    """Check that e uses at most one variable; returns that name (or None)."""
    vs = e.variables()
    if len(vs) > 1:
        raise ValueError(f"{what} must use a single variable, found {sorted(vs)}")
    return next(iter(vs)) if vs else None


def bind(e: Expr, value):
    """Environment mapping every allowed variable name to value."""
    return {v: value for v in VARS}


def domain_check(e: Expr, dom: Interval):
    """Raise DomainError unless e is evaluable on every point of dom."""
    try:
        e.ieval(bind(e, dom))
    except ZeroDivisionError as exc:
        raise DomainError(str(exc)) from exc
