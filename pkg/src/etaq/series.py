"""
Truncated Laurent-Puiseux series over the rationals.

A :class:`QSeries` holds coefficients on the exponent grid ``(1/M)Z``.  The
integer ``trunc`` records the precision: the series is exact for every
exponent ``k/M`` with ``k < trunc``, i.e. it stands for ``f + O(q^(trunc/M))``.
Coefficients are Python ints whenever possible and ``Fraction`` otherwise.

All operations are pure and return new objects.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

Rational = Union[int, Fraction]

__all__ = [
    "QSeries",
    "SeriesError",
    "as_rational",
    "qpochhammer",
    "euler_product",
    "eta_series",
    "lambert_sigma",
    "lambert_ap",
    "unit_power",
]


class SeriesError(ArithmeticError):
    pass


def as_rational(x) -> Rational:
    """Coerce ``x`` to an int or a reduced Fraction (int when integral)."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not supported")
    return as_rational(Fraction(x))


def _ceil_grid(x: Rational, grid: int) -> int:
    """Smallest integer k with k/grid >= x."""
    x = Fraction(x) * grid
    return -((-x.numerator) // x.denominator)


def _frac_grid(x: Rational) -> int:
    return Fraction(x).denominator


def _clean(coeffs: Dict[int, Rational], trunc: int) -> Dict[int, Rational]:
    out = {}
    for k, c in coeffs.items():
        if k < trunc and c:
            if isinstance(c, Fraction) and c.denominator == 1:
                c = c.numerator
            out[k] = c
    return out


class QSeries:
    """Sparse truncated series ``sum c_k q^(k/grid) + O(q^(trunc/grid))``."""

    __slots__ = ("grid", "trunc", "coeffs")

    def __init__(self, coeffs: Dict[int, Rational] | None = None, grid: int = 1, trunc: int = 0):
        if grid < 1:
            raise ValueError("grid must be a positive integer")
        self.grid = int(grid)
        self.trunc = int(trunc)
        self.coeffs = _clean({int(k): as_rational(c) for k, c in (coeffs or {}).items()}, self.trunc)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Dict[Rational, Rational] | Iterable[Tuple[Rational, Rational]], trunc: Rational) -> "QSeries":
        """Build from ``{exponent: coefficient}`` with rational exponents."""
        items = list(terms.items()) if isinstance(terms, dict) else list(terms)
        grid = 1
        for e, _ in items:
            grid = math.lcm(grid, _frac_grid(e))
        grid = math.lcm(grid, _frac_grid(trunc))
        coeffs: Dict[int, Rational] = {}
        for e, c in items:
            k = int(Fraction(e) * grid)
            coeffs[k] = coeffs.get(k, 0) + as_rational(c)
        return cls(coeffs, grid, _ceil_grid(trunc, grid))

    @classmethod
    def constant(cls, c: Rational, trunc: Rational, grid: int = 1) -> "QSeries":
        return cls({0: c}, grid, _ceil_grid(trunc, grid))

    @classmethod
    def monomial(cls, c: Rational, exponent: Rational, trunc: Rational) -> "QSeries":
        return cls.from_terms({exponent: c}, trunc)

    # -- inspection ---------------------------------------------------------

    @property
    def precision(self) -> Fraction:
        """Exponent bound below which the series is exact."""
        return Fraction(self.trunc, self.grid)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation_key(self) -> int:
        """Smallest stored key, or ``trunc`` if the series is zero to precision."""
        return min(self.coeffs) if self.coeffs else self.trunc

    def valuation(self) -> Fraction:
        return Fraction(self.valuation_key(), self.grid)

    def leading(self) -> Tuple[Fraction, Rational]:
        if not self.coeffs:
            raise SeriesError("zero series has no leading term")
        k = min(self.coeffs)
        return Fraction(k, self.grid), self.coeffs[k]

    def coefficient(self, exponent: Rational) -> Rational:
        e = Fraction(exponent)
        if e >= self.precision:
            raise SeriesError(f"beyond truncation: q^{e} is not known (precision q^{self.precision})")
        k = e * self.grid
        if k.denominator != 1:
            return 0
        return self.coeffs.get(int(k), 0)

    def __getitem__(self, exponent: Rational) -> Rational:
        return self.coefficient(exponent)

    def terms(self) -> list:
        """Sorted ``(exponent, coefficient)`` pairs of the nonzero terms."""
        return [(Fraction(k, self.grid), c) for k, c in sorted(self.coeffs.items())]

    def coefficient_list(self, start: Rational, stop: Rational, step: Rational = 1) -> list:
        out, e = [], Fraction(start)
        while e < stop:
            out.append(self.coefficient(e))
            e += step
        return out

    def support_grid(self) -> int:
        """Smallest M with every nonzero exponent in (1/M)Z (1 for the zero series)."""
        g = 0
        for k in self.coeffs:
            g = math.gcd(g, k)
        return self.grid // math.gcd(g, self.grid) if g else 1

    # -- regridding / truncation -------------------------------------------

    def regrid(self, grid: int) -> "QSeries":
        """Move to a grid ``grid`` that is a multiple or divisor of the current one.

        Refining is always allowed.  Coarsening requires every stored key and
        the truncation to land on the coarser grid; it exists to undo a refine.
        """
        if grid == self.grid:
            return self
        if grid % self.grid == 0:
            f = grid // self.grid
            return QSeries({k * f: c for k, c in self.coeffs.items()}, grid, self.trunc * f)
        if self.grid % grid == 0:
            f = self.grid // grid
            if any(k % f for k in self.coeffs):
                raise SeriesError("cannot coarsen: coefficients off the target grid")
            return QSeries({k // f: c for k, c in self.coeffs.items()}, grid, self.trunc // f)
        raise SeriesError(f"regrid target {grid} is not a multiple of {self.grid}")

    def truncate(self, precision: Rational) -> "QSeries":
        """Drop information at exponents >= ``precision`` (never extends)."""
        t = min(self.trunc, _ceil_grid(precision, self.grid))
        return QSeries(self.coeffs, self.grid, t)

    def shift(self, exponent: Rational) -> "QSeries":
        """Multiply by ``q^exponent``."""
        grid = math.lcm(self.grid, _frac_grid(exponent))
        s = self.regrid(grid)
        d = int(Fraction(exponent) * grid)
        return QSeries({k + d: c for k, c in s.coeffs.items()}, grid, s.trunc + d)

    def substitute(self, k: int) -> "QSeries":
        """Replace ``q`` by ``q^k`` for a positive integer ``k``."""
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        return QSeries({key * k: c for key, c in self.coeffs.items()}, self.grid, self.trunc * k)

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries({0: as_rational(other)}, self.grid, max(self.trunc, 0) if self.trunc > 0 else self.trunc)

    def _unified(self, other: "QSeries") -> Tuple["QSeries", "QSeries"]:
        g = math.lcm(self.grid, other.grid)
        return self.regrid(g), other.regrid(g)

    def __add__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self._add_scalar(as_rational(other))
        a, b = self._unified(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out.get(k, 0) + c
        return QSeries(out, a.grid, min(a.trunc, b.trunc))

    __radd__ = __add__

    def _add_scalar(self, c: Rational) -> "QSeries":
        if self.trunc <= 0:
            return self
        out = dict(self.coeffs)
        out[0] = out.get(0, 0) + c
        return QSeries(out, self.grid, self.trunc)

    def __neg__(self) -> "QSeries":
        return QSeries({k: -c for k, c in self.coeffs.items()}, self.grid, self.trunc)

    def __sub__(self, other) -> "QSeries":
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, c: Rational) -> "QSeries":
        c = as_rational(c)
        if c == 0:
            return QSeries({}, self.grid, self.trunc)
        return QSeries({k: c * v for k, v in self.coeffs.items()}, self.grid, self.trunc)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b = self._unified(other)
        trunc = min(a.trunc + b.valuation_key(), b.trunc + a.valuation_key())
        if not a.coeffs or not b.coeffs:
            return QSeries({}, a.grid, trunc)
        if len(a.coeffs) > len(b.coeffs):
            a, b = b, a
        bkeys = sorted(b.coeffs)
        bvals = [b.coeffs[k] for k in bkeys]
        out: Dict[int, Rational] = {}
        get = out.get
        for i, ca in a.coeffs.items():
            stop = bisect_left(bkeys, trunc - i)
            for idx in range(stop):
                k = i + bkeys[idx]
                out[k] = get(k, 0) + ca * bvals[idx]
        return QSeries(out, a.grid, trunc)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            other = as_rational(other)
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1) / other)
        return self * other.invert()

    def __rtruediv__(self, other) -> "QSeries":
        return self.invert() * as_rational(other)

    def __pow__(self, k: int) -> "QSeries":
        return self.int_pow(k)

    def invert(self) -> "QSeries":
        if not self.coeffs:
            raise SeriesError("non-invertible series: zero to precision")
        return unit_power_series(self, -1)

    def int_pow(self, k: int) -> "QSeries":
        """``self**k`` by repeated squaring (after inversion when ``k < 0``)."""
        if not isinstance(k, int):
            raise TypeError("integer exponent expected")
        base = self
        if k < 0:
            base, k = self.invert(), -k
        if k == 0:
            if not self.coeffs:
                raise SeriesError("0**0 of a series is undefined")
            return QSeries({0: 1}, self.grid, max(self.trunc - self.valuation_key(), 1))
        result = None
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def sqrt(self) -> "QSeries":
        """Square root with positive leading coefficient."""
        if not self.coeffs:
            raise SeriesError("square root of a series that is zero to precision")
        _, c = self.leading()
        c = Fraction(c)
        if c <= 0 or not (_is_square(c.numerator) and _is_square(c.denominator)):
            raise SeriesError(f"non-square leading term: coefficient {c}")
        return unit_power_series(self, Fraction(1, 2))

    # -- comparison / display ------------------------------------------------

    def agrees_with(self, other: "QSeries") -> bool:
        a, b = self._unified(other)
        t = min(a.trunc, b.trunc)
        return a.truncate(Fraction(t, a.grid)).coeffs == b.truncate(Fraction(t, b.grid)).coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self.agrees_with(other)
        if isinstance(other, (int, Fraction)):
            return self.agrees_with(self._coerce(other))
        return NotImplemented

    __hash__ = None

    def first_difference(self, other: "QSeries"):
        """First ``(exponent, difference)`` in the common window, or None."""
        d = self - other
        if not d.coeffs:
            return None
        return d.leading()

    def __repr__(self) -> str:
        return f"QSeries({format_series(self, max_terms=8)})"

    def __str__(self) -> str:
        return format_series(self)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "grid": self.grid,
            "trunc": self.trunc,
            "coeffs": [[k, str(c)] for k, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls({int(k): Fraction(c) for k, c in data["coeffs"]}, data["grid"], data["trunc"])


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _sqrt_rational(c: Fraction) -> Rational:
    return as_rational(Fraction(math.isqrt(c.numerator), math.isqrt(c.denominator)))


def format_series(s: QSeries, max_terms: int | None = None) -> str:
    parts = []
    terms = s.terms()
    shown = terms if max_terms is None else terms[:max_terms]
    for e, c in shown:
        parts.append(_format_term(c, e))
    if max_terms is not None and len(terms) > max_terms:
        parts.append("...")
    parts.append(f"O({_format_power(s.precision)})")
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def _format_power(e: Fraction) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return "q"
    return f"q^{e}" if e > 0 and e.denominator == 1 else f"q^({e})"


def _format_term(c: Rational, e: Fraction) -> str:
    if e == 0:
        return str(c)
    p = _format_power(e)
    if c == 1:
        return p
    if c == -1:
        return "-" + p
    return f"{c}*{p}"


# ---------------------------------------------------------------------------
# power series with unit constant term

def unit_power(f: Dict[int, Rational], r: Rational, n_terms: int, stride: int = 1) -> Dict[int, Rational]:
    """Coefficients of ``F**r`` for ``F = 1 + sum_{k>0} f[k] x^k``.

    Uses the recurrence ``n g_n = sum_{k=1}^n ((r+1)k - n) f_k g_{n-k}`` which
    costs one pass over the nonzero ``f_k`` per output coefficient.  Only
    multiples of ``stride`` are visited; ``stride`` must divide every key of f.
    Returns keys ``0 <= n < n_terms``.
    """
    r = as_rational(r)
    fk = sorted((k, c) for k, c in f.items() if k > 0 and c)
    g: Dict[int, Rational] = {0: 1}
    integral = isinstance(r, int) and all(isinstance(c, int) for _, c in fk)
    rp1 = r + 1
    for n in range(stride, n_terms, stride):
        acc = 0
        for k, c in fk:
            if k > n:
                break
            gv = g.get(n - k)
            if gv:
                acc += (rp1 * k - n) * c * gv
        if acc:
            if integral:
                q, rem = divmod(acc, n)
                g[n] = q if not rem else Fraction(acc, n)
            else:
                g[n] = as_rational(Fraction(acc) / n)
    return g


def unit_power_series(s: QSeries, r: Rational) -> QSeries:
    """``s**r`` for rational ``r`` with the principal branch at the leading term."""
    if not s.coeffs:
        raise SeriesError("non-invertible series: zero to precision")
    v = s.valuation_key()
    c0 = s.coeffs[v]
    rel = {k - v: c for k, c in s.coeffs.items()}
    n_terms = s.trunc - v
    stride = 0
    for k in rel:
        stride = math.gcd(stride, k)
    stride = stride or max(n_terms, 1)
    inv0 = Fraction(1) / Fraction(c0)
    f = {k: as_rational(c * inv0) for k, c in rel.items() if k}
    body = unit_power(f, r, n_terms, stride)
    r = Fraction(r)
    if r.denominator == 1:
        lead = as_rational(Fraction(c0) ** int(r))
    elif r.denominator == 2:
        root = _sqrt_rational(Fraction(c0))
        lead = as_rational(Fraction(root) ** r.numerator)
    else:
        raise SeriesError("only integer and half-integer powers are supported")
    # new valuation r*v on a grid fine enough to hold it
    new_v = r * v
    grid = s.grid * new_v.denominator
    scale = new_v.denominator
    shift = int(new_v * scale)
    coeffs = {k * scale + shift: lead * c for k, c in body.items()}
    return QSeries(coeffs, grid, n_terms * scale + shift)


# ---------------------------------------------------------------------------
# builders

def euler_product(n_terms: int) -> Dict[int, int]:
    """Coefficients of ``(x;x)_inf`` below ``x^n_terms`` via pentagonal numbers."""
    out: Dict[int, int] = {}
    k = 0
    while True:
        p1 = k * (3 * k - 1) // 2
        if p1 >= n_terms:
            break
        sign = -1 if k % 2 else 1
        out[p1] = sign
        if k:
            p2 = k * (3 * k + 1) // 2
            if p2 < n_terms:
                out[p2] = sign
        k += 1
    return out


def qpochhammer(a: Rational, b: Rational, trunc: Rational) -> QSeries:
    """Expansion of ``(q^a; q^b)_inf = prod_{n>=0} (1 - q^(a+bn))`` exact below ``trunc``."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise SeriesError("qpochhammer needs positive exponents a and b")
    grid = math.lcm(a.denominator, b.denominator, _frac_grid(trunc))
    T = _ceil_grid(trunc, grid)
    ka, kb = int(a * grid), int(b * grid)
    if T <= 0:
        return QSeries({}, grid, T)
    dense = [0] * T
    dense[0] = 1
    e = ka
    while e < T:
        for i in range(T - 1, e - 1, -1):
            if dense[i - e]:
                dense[i] -= dense[i - e]
        e += kb
    return QSeries({i: c for i, c in enumerate(dense) if c}, grid, T)


def eta_series(delta: int, trunc: Rational) -> QSeries:
    """``eta(delta*tau) = q^(delta/24) (q^delta; q^delta)_inf`` exact below ``trunc``."""
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    v = Fraction(delta, 24)
    grid = math.lcm(v.denominator, _frac_grid(trunc))
    T = _ceil_grid(trunc, grid)
    off = int(v * grid)
    n = -(-(T - off) // (delta * grid)) if T > off else 0
    body = euler_product(n)
    coeffs = {off + k * delta * grid: c for k, c in body.items()}
    return QSeries(coeffs, grid, T)


def _sigma_table(n: int) -> list:
    sig = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            sig[m] += d
    return sig


def lambert_sigma(k: int, trunc: Rational) -> QSeries:
    """``sum_{n>=1} q^(kn)/(1-q^(kn))^2 = sum sigma(n) q^(kn)`` below ``trunc``."""
    if k < 1:
        raise ValueError("k must be positive")
    T = _ceil_grid(trunc, 1)
    n = -(-T // k) if T > 0 else 0
    sig = _sigma_table(n)
    return QSeries({m * k: sig[m] for m in range(1, n)}, 1, T)


def lambert_ap(k: int, j: int, trunc: Rational) -> QSeries:
    """``sum_{n>=1} q^(kn-j)/(1-q^(kn-j))^2`` below ``trunc`` (requires 0 < j < k)."""
    if not 0 < j < k:
        raise ValueError("lambert_ap needs 0 < j < k")
    T = _ceil_grid(trunc, 1)
    out: Dict[int, int] = {}
    d = k - j
    while d < T:
        for m in range(1, -(-T // d)):
            out[m * d] = out.get(m * d, 0) + m
        d += k
    return QSeries(out, 1, T)
