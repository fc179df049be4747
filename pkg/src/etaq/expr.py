"""
Expression trees over q-series builders.

Leaves are constants, monomials ``c q^e``, eta-quotients (``pi(k)`` is one),
generalized eta-quotients, the two Lambert sums and theta functions.  Nodes
are ``+ - * /``, integer powers and square roots.  Python operators build
trees, and :func:`parse_expr` reads the same language from text.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from .etaforms import EtaQuotient, GenEtaQuotient, expand, pi_quotient, theta_f
from .series import QSeries, Rational, SeriesError, as_rational, lambert_ap, lambert_sigma

__all__ = [
    "Expr",
    "Const",
    "Mono",
    "Eta",
    "GenEta",
    "LambertSigma",
    "LambertAP",
    "Theta",
    "Op",
    "Pi",
    "evaluate",
    "parse_expr",
    "ExprParseError",
]


class Expr:
    """Base class; subclasses implement ``_eval(prec)`` and ``__str__``."""

    def _eval(self, prec: Fraction):
        raise NotImplementedError

    # operator sugar ---------------------------------------------------------
    def __add__(self, other):
        return Op("+", self, _wrap(other))

    def __radd__(self, other):
        return Op("+", _wrap(other), self)

    def __sub__(self, other):
        return Op("-", self, _wrap(other))

    def __rsub__(self, other):
        return Op("-", _wrap(other), self)

    def __mul__(self, other):
        other = _wrap(other)
        folded = _fold(self, other, 1)
        return folded if folded is not None else Op("*", self, other)

    def __rmul__(self, other):
        return _wrap(other).__mul__(self)

    def __truediv__(self, other):
        other = _wrap(other)
        folded = _fold(self, other, -1)
        return folded if folded is not None else Op("/", self, other)

    def __rtruediv__(self, other):
        return _wrap(other).__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers; use sqrt() for half powers")
        if isinstance(self, Eta):
            return Eta(self.q ** k)
        if isinstance(self, GenEta):
            return GenEta(self.q ** k)
        return Op("^", self, k)

    def __neg__(self):
        return Op("*", Const(-1), self)

    def sqrt(self):
        return Op("sqrt", self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self}>"


def _wrap(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Const(as_rational(x))


def _fold(a: Expr, b: Expr, sign: int):
    """Merge products of quotient leaves into a single leaf."""
    if isinstance(a, Eta) and isinstance(b, Eta):
        return Eta(a.q * b.q if sign > 0 else a.q / b.q)
    if isinstance(a, GenEta) and isinstance(b, GenEta) and a.q.level == b.q.level:
        return GenEta(a.q * b.q if sign > 0 else a.q / b.q)
    return None


class Const(Expr):
    def __init__(self, value: Rational):
        self.value = as_rational(value)

    def _eval(self, prec):
        return self.value

    def __str__(self):
        return str(self.value) if self.value >= 0 else f"({self.value})"


class Mono(Expr):
    """``c q^e``."""

    def __init__(self, c: Rational, e: Rational):
        self.c, self.e = as_rational(c), Fraction(e)

    def _eval(self, prec):
        return _leaf(("mono", self.c, self.e), prec)

    def __str__(self):
        return f"({self.c}*q^({self.e}))"


class Eta(Expr):
    def __init__(self, q: EtaQuotient):
        self.q = q

    def _eval(self, prec):
        return _leaf(("eta", self.q.exps), prec)

    def __str__(self):
        return "(" + " * ".join(f"eta({d})^{r}" for d, r in self.q.exps) + ")" if self.q.exps else "1"


def Pi(k: int) -> Eta:
    """Gosper's ``Pi_{q^k}`` as an eta-quotient leaf."""
    return Eta(pi_quotient(k))


class GenEta(Expr):
    def __init__(self, q: GenEtaQuotient):
        self.q = q

    def _eval(self, prec):
        return _leaf(("geta", self.q.level, self.q.exps), prec)

    def __str__(self):
        return "(" + " * ".join(f"geta({self.q.level};{g})^{r}" for g, r in self.q.exps) + ")"


class LambertSigma(Expr):
    def __init__(self, k: int):
        self.k = k

    def _eval(self, prec):
        return _leaf(("L", self.k), prec)

    def __str__(self):
        return f"L({self.k})"


class LambertAP(Expr):
    def __init__(self, k: int, j: int):
        if not 0 < j < k:
            raise ValueError("LambertAP needs 0 < j < k")
        self.k, self.j = k, j

    def _eval(self, prec):
        return _leaf(("A", self.k, self.j), prec)

    def __str__(self):
        return f"A({self.k},{self.j})"


class Theta(Expr):
    def __init__(self, sa: int, ea: Rational, sb: int, eb: Rational):
        self.args = (sa, Fraction(ea), sb, Fraction(eb))

    def _eval(self, prec):
        return _leaf(("theta",) + self.args, prec)

    def __str__(self):
        sa, ea, sb, eb = self.args
        return f"theta({sa},{ea},{sb},{eb})"


class Op(Expr):
    def __init__(self, op: str, *args):
        self.op, self.args = op, args

    def _eval(self, prec):
        if self.op == "sqrt":
            x = self.args[0]._eval(prec)
            if isinstance(x, QSeries):
                return x.sqrt()
            return _rational_sqrt(x)
        if self.op == "^":
            x = self.args[0]._eval(prec)
            k = self.args[1]
            if isinstance(x, QSeries):
                return x.int_pow(k)
            return as_rational(Fraction(x) ** k)
        a = self.args[0]._eval(prec)
        b = self.args[1]._eval(prec)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            if not isinstance(a, QSeries) and not isinstance(b, QSeries):
                return as_rational(Fraction(a) / b)
            return a / b
        raise ValueError(f"unknown operator {self.op}")

    def __str__(self):
        if self.op == "sqrt":
            return f"sqrt({self.args[0]})"
        if self.op == "^":
            return f"{self.args[0]}^{self.args[1]}"
        return f"({self.args[0]} {self.op} {self.args[1]})"


def _rational_sqrt(x: Rational) -> Rational:
    x = Fraction(x)
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if x < 0 or n * n != x.numerator or d * d != x.denominator:
        raise ValueError(f"{x} is not the square of a rational")
    return as_rational(Fraction(n, d))


@lru_cache(maxsize=512)
def _leaf(key: Tuple, prec: Fraction) -> QSeries:
    kind = key[0]
    if kind == "mono":
        return QSeries.monomial(key[1], key[2], max(prec, key[2] + 1))
    if kind == "eta":
        return expand(EtaQuotient.from_exps(dict(key[1])), prec)
    if kind == "geta":
        return expand(GenEtaQuotient(key[1], dict(key[2])), prec)
    if kind == "L":
        return lambert_sigma(key[1], prec)
    if kind == "A":
        return lambert_ap(key[1], key[2], prec)
    if kind == "theta":
        return theta_f(*key[1:], prec)
    raise ValueError(kind)


def evaluate(e: Expr, trunc: Rational) -> QSeries:
    """Series of ``e`` exact below ``trunc`` (leaf precision is raised until it is)."""
    trunc = Fraction(trunc)
    prec = trunc
    for _ in range(64):
        try:
            s = e._eval(prec)
        except SeriesError as exc:
            # a divisor may only look like zero at low leaf precision
            if "non-invertible" not in str(exc) or prec > trunc + 48:
                raise
            prec += 8
            continue
        if not isinstance(s, QSeries):
            return QSeries.constant(s, trunc)
        if s.precision >= trunc:
            return s.truncate(trunc)
        prec += trunc - s.precision + 1
    raise RuntimeError("precision did not converge")


# ---------------------------------------------------------------------------
# text form

class ExprParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def parse_expr(text: str) -> Expr:
    """Parse e.g. ``"(A(2,1) - 6*A(12,6)) / pi(6)^2"``.

    Names: ``pi(k)``, ``eta(d)``, ``geta(N;g)``, ``L(k)``, ``A(k,j)``,
    ``theta(sa,ea,sb,eb)``, ``sqrt(x)`` and the variable ``q``.
    ``^`` and ``**`` both mean power.
    """
    src = text.replace("^", "**").replace(";", ",")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExprParseError(f"syntax error: {exc.msg}", (exc.offset or 1) - 1) from None
    return _build(tree.body)


def _number(node) -> Fraction:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_number(node.operand)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        return _number(node.left) / _number(node.right)
    raise ExprParseError("expected an integer or fraction", getattr(node, "col_offset", 0))


def _build(node) -> Expr:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return Const(node.value)
        raise ExprParseError(f"unsupported literal {node.value!r}", node.col_offset)
    if isinstance(node, ast.Name):
        if node.id == "q":
            return Mono(1, 1)
        raise ExprParseError(f"unknown name {node.id!r}", node.col_offset)
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return -_build(node.operand)
        if isinstance(node.op, ast.UAdd):
            return _build(node.operand)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            k = _number(node.right)
            base = _build(node.left)
            if k.denominator == 1:
                return base ** int(k)
            if k.denominator == 2:
                root = base.sqrt()
                return root ** int(k.numerator) if k.numerator != 1 else root
            raise ExprParseError("only integer or half-integer powers", node.right.col_offset)
        a, b = _build(node.left), _build(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        args = node.args
        if name == "sqrt" and len(args) == 1:
            return _build(args[0]).sqrt()
        nums = [_number(a) for a in args]
        ints = [int(x) for x in nums if x.denominator == 1]
        try:
            if name == "pi" and len(ints) == len(nums) == 1:
                return Pi(ints[0])
            if name == "eta" and len(ints) == len(nums) == 1:
                return Eta(EtaQuotient(ints[0], {ints[0]: 1}))
            if name == "geta" and len(ints) == len(nums) == 2:
                return GenEta(GenEtaQuotient(ints[0], {ints[1]: 1}))
            if name == "L" and len(ints) == len(nums) == 1:
                return LambertSigma(ints[0])
            if name == "A" and len(ints) == len(nums) == 2:
                return LambertAP(ints[0], ints[1])
            if name == "theta" and len(nums) == 4:
                return Theta(int(nums[0]), nums[1], int(nums[2]), nums[3])
        except ValueError as exc:
            raise ExprParseError(str(exc), node.col_offset) from None
        raise ExprParseError(f"bad call {name}() with {len(args)} arguments", node.col_offset)
    raise ExprParseError(f"unsupported syntax {type(node).__name__}", getattr(node, "col_offset", 0))
