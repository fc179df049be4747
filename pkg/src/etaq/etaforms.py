"""
Eta-quotients, generalized eta-quotients and theta series.

An :class:`EtaQuotient` is ``prod eta(delta*tau)^r_delta`` over divisors of its
level; a :class:`GenEtaQuotient` is ``prod eta_{N,g}^r_g`` with
``eta_{N,g} = q^(N B_2(g/N)/2) (q^g, q^(N-g); q^N)_inf``.  Both know their
modularity conditions, their orders at cusps and their q-expansions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from .modgroup import (
    INF,
    Cusp,
    bernoulli2,
    canonical_representative,
    cusp_set,
    kronecker,
    squarefree_kernel,
)
from .series import (
    QSeries,
    SeriesError,
    _ceil_grid,
    euler_product,
    lambert_ap,
    qpochhammer,
    unit_power,
)

__all__ = [
    "Bound",
    "OrderTable",
    "EtaQuotient",
    "GenEtaQuotient",
    "Gamma0Check",
    "pi_quotient",
    "check_gamma0",
    "eta_order_at_cusp",
    "check_gamma1",
    "gen_eta_ord",
    "order_table",
    "expand",
    "theta_f",
    "theta_product",
    "psi_series",
    "bailey_pair",
    "bailey_lhs",
    "bailey_rhs",
    "parse_quotient",
    "QuotientParseError",
]


@dataclass(frozen=True)
class Bound:
    """An order at a cusp: exact value, or a lower bound when ``exact`` is false."""

    value: Fraction
    exact: bool = True

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"

    def to_json(self) -> dict:
        return {"value": str(self.value), "exact": self.exact}

    @classmethod
    def from_json(cls, data: dict) -> "Bound":
        return cls(Fraction(data["value"]), bool(data["exact"]))


@dataclass
class OrderTable:
    """Orders of several named objects at the cusps of Gamma_0(level).

    ``kind`` distinguishes modular orders ("ord") from the scaled first
    exponents of not-necessarily-modular functions ("Ord").
    """

    level: int
    rows: Dict[Tuple[str, Cusp], Bound] = field(default_factory=dict)
    kinds: Dict[str, str] = field(default_factory=dict)

    @property
    def names(self) -> List[str]:
        seen = []
        for name, _ in self.rows:
            if name not in seen:
                seen.append(name)
        return seen

    def row(self, name: str) -> Dict[Cusp, Bound]:
        return {r: b for (n, r), b in self.rows.items() if n == name}

    def add_row(self, name: str, values: Dict[Cusp, Bound], kind: str = "ord") -> None:
        for r, b in values.items():
            self.rows[(name, r)] = b
        self.kinds[name] = kind

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "cusps": [str(r) for r in cusp_set(self.level).cusps],
            "rows": [
                {
                    "name": name,
                    "kind": self.kinds.get(name, "ord"),
                    "values": {str(r): b.to_json() for r, b in self.row(name).items()},
                }
                for name in self.names
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OrderTable":
        t = cls(data["level"])
        for row in data["rows"]:
            t.add_row(
                row["name"],
                {Cusp.parse(k): Bound.from_json(v) for k, v in row["values"].items()},
                row["kind"],
            )
        return t

    def render(self) -> str:
        cusps = cusp_set(self.level).cusps
        head = ["cusp r"] + [str(r) for r in cusps]
        lines = [head]
        for name in self.names:
            row = self.row(name)
            lines.append([f"{self.kinds.get(name, 'ord')}_r {name}"] + [str(row[r]) for r in cusps])
        widths = [max(len(line[i]) for line in lines) for i in range(len(head))]
        return "\n".join("  ".join(s.rjust(w) for s, w in zip(line, widths)) for line in lines)


def _clean_exps(exps) -> Dict[int, int]:
    return {int(k): int(v) for k, v in dict(exps).items() if v}


@dataclass(frozen=True)
class EtaQuotient:
    level: int
    exps: Tuple[Tuple[int, int], ...]

    def __init__(self, level: int, exps):
        exps = _clean_exps(exps)
        for d in exps:
            if d < 1 or level % d:
                raise ValueError(f"eta({d}) does not divide the level {level}")
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "exps", tuple(sorted(exps.items())))

    @classmethod
    def from_exps(cls, exps) -> "EtaQuotient":
        exps = _clean_exps(exps)
        return cls(math.lcm(*exps) if exps else 1, exps)

    @property
    def exp_map(self) -> Dict[int, int]:
        return dict(self.exps)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.exps), 2)

    def valuation(self) -> Fraction:
        return Fraction(sum(d * r for d, r in self.exps), 24)

    def _combine(self, other: "EtaQuotient", sign: int) -> "EtaQuotient":
        m = self.exp_map
        for d, r in other.exps:
            m[d] = m.get(d, 0) + sign * r
        return EtaQuotient(math.lcm(self.level, other.level), m)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        return self._combine(other, 1)

    def __truediv__(self, other: "EtaQuotient") -> "EtaQuotient":
        return self._combine(other, -1)

    def __pow__(self, k: int) -> "EtaQuotient":
        return EtaQuotient(self.level, {d: r * k for d, r in self.exps})

    def inverse(self) -> "EtaQuotient":
        return self ** -1

    def at_level(self, N: int) -> "EtaQuotient":
        return EtaQuotient(N, self.exp_map)

    def __str__(self) -> str:
        return " * ".join(f"eta({d})^{r}" for d, r in self.exps) or "1"

    def to_json(self) -> dict:
        return {"type": "eta", "level": self.level, "exps": {str(d): r for d, r in self.exps}}


@dataclass(frozen=True)
class GenEtaQuotient:
    level: int
    exps: Tuple[Tuple[int, int], ...]

    def __init__(self, level: int, exps):
        exps = _clean_exps(exps)
        for g in exps:
            if not 1 <= g <= level // 2:
                raise ValueError(f"eta_({level},{g}) needs 1 <= g <= {level // 2}")
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "exps", tuple(sorted(exps.items())))

    @property
    def exp_map(self) -> Dict[int, int]:
        return dict(self.exps)

    def valuation(self) -> Fraction:
        N = self.level
        return sum((r * N * bernoulli2(Fraction(g, N)) / 2 for g, r in self.exps), Fraction(0))

    def sums(self) -> Tuple[int, int, int]:
        return (
            sum(r for _, r in self.exps),
            sum(g * r for g, r in self.exps),
            sum(g * g * r for g, r in self.exps),
        )

    def __mul__(self, other: "GenEtaQuotient") -> "GenEtaQuotient":
        if other.level != self.level:
            raise ValueError("generalized eta-quotients of different levels")
        m = self.exp_map
        for g, r in other.exps:
            m[g] = m.get(g, 0) + r
        return GenEtaQuotient(self.level, m)

    def __pow__(self, k: int) -> "GenEtaQuotient":
        return GenEtaQuotient(self.level, {g: r * k for g, r in self.exps})

    def __truediv__(self, other: "GenEtaQuotient") -> "GenEtaQuotient":
        return self * other ** -1

    def inverse(self) -> "GenEtaQuotient":
        return self ** -1

    def __str__(self) -> str:
        return " * ".join(f"geta({self.level};{g})^{r}" for g, r in self.exps) or "1"

    def to_json(self) -> dict:
        return {"type": "geta", "level": self.level, "exps": {str(g): r for g, r in self.exps}}


Quotient = Union[EtaQuotient, GenEtaQuotient]


def pi_quotient(k: int) -> EtaQuotient:
    """``Pi_{q^k} = q^(k/4) psi(q^k)^2 = eta(2k tau)^4 / eta(k tau)^2``."""
    if k < 1:
        raise ValueError("k must be positive")
    return EtaQuotient(2 * k, {2 * k: 4, k: -2})


# ---------------------------------------------------------------------------
# modularity and orders

@dataclass(frozen=True)
class Gamma0Check:
    weight: Fraction
    conditions: Tuple[bool, bool]
    sums: Tuple[int, int]
    character_kernel: int

    @property
    def ok(self) -> bool:
        return all(self.conditions) and self.weight.denominator == 1

    @property
    def character(self) -> str:
        if self.character_kernel == 1:
            return "trivial"
        return f"({self.character_kernel}/d)"

    def chi(self, d: int) -> int:
        return kronecker(self.character_kernel, d)


def check_gamma0(f: EtaQuotient, N: int | None = None) -> Gamma0Check:
    """Weight, the two mod-24 conditions, and the character kernel."""
    N = f.level if N is None else N
    for d, _ in f.exps:
        if N % d:
            raise ValueError(f"eta({d}) does not divide the level {N}")
    k = f.weight
    s1 = sum(d * r for d, r in f.exps)
    s2 = sum((N // d) * r for d, r in f.exps)
    prod = Fraction(1)
    for d, r in f.exps:
        prod *= Fraction(d) ** r
    if k.denominator == 1 and k.numerator % 2:
        prod = -prod
    return Gamma0Check(k, (s1 % 24 == 0, s2 % 24 == 0), (s1, s2), squarefree_kernel(prod))


def eta_order_at_cusp(f: EtaQuotient, r: Cusp, N: int | None = None) -> Fraction:
    """Order of an eta-quotient at ``r = c/d`` with ``d | N`` (infinity uses d = N)."""
    N = f.level if N is None else N
    d = N if r.is_infinity else r.c
    if N % d:
        raise ValueError(f"non-divisor denominator {d} of level {N}; canonicalize first")
    total = sum(Fraction(math.gcd(d, delta) ** 2 * rd, delta) for delta, rd in f.exps)
    return Fraction(N, 24 * d * math.gcd(d, N // d)) * total


def check_gamma1(f: GenEtaQuotient) -> Tuple[bool, bool, bool]:
    s0, s1, s2 = f.sums()
    return (s0 % 12 == 0, s1 % 2 == 0, s2 % (2 * f.level) == 0)


def gen_eta_ord(f: GenEtaQuotient, r: Cusp, N: int | None = None) -> Fraction:
    """Scaled first exponent of ``f`` at the cusp ``r = a/c`` of Gamma_0(N).

    ``N`` defaults to the level of ``f``.  The first exponent at a/c is
    ``sum_g r_g gcd(c,L)^2/(2L) P_2(a g / gcd(c,L))`` where ``L`` is the level of
    ``f``; it is then scaled by ``N / gcd(c^2, N)``.  The value depends on the
    representative ``a/c`` when ``f`` is not modular on Gamma_0(N).
    """
    N = f.level if N is None else N
    L = f.level
    a, c = r.a, r.c
    gl = math.gcd(c, L)
    m0 = sum(
        (rg * Fraction(gl * gl, 2 * L) * bernoulli2(Fraction(a * g, gl), periodic=True) for g, rg in f.exps),
        Fraction(0),
    )
    return Fraction(N, math.gcd(c * c, N)) * m0


def order_table(f: Quotient, N: int | None = None, name: str | None = None) -> OrderTable:
    """One row of orders at every cusp of Gamma_0(N).

    Eta-quotients use the Ligozat-type formula (modular order); generalized
    eta-quotients use the scaled first exponent at the representative a/c
    with c | N (infinity as 1/N, zero as 1/1).
    """
    N = f.level if N is None else N
    name = name or str(f)
    table = OrderTable(N)
    values = {}
    for r in cusp_set(N).cusps:
        rep = canonical_representative(N, r)
        if isinstance(f, EtaQuotient):
            values[r] = Bound(eta_order_at_cusp(f, rep, N))
        else:
            values[r] = Bound(gen_eta_ord(f, rep, N))
    table.add_row(name, values, "ord" if isinstance(f, EtaQuotient) else "Ord")
    return table


# ---------------------------------------------------------------------------
# expansions

def _unit_series_power(f: QSeries, r: int, n_terms: int) -> QSeries:
    """Power of a grid-1 series with constant term 1, exact below q^n_terms."""
    return QSeries(unit_power(f.coeffs, r, n_terms), 1, n_terms)


def _attach(body: QSeries, v: Fraction) -> QSeries:
    """Multiply an integral power series by q^v, landing on the grid of v."""
    M = v.denominator
    off = int(v * M)
    return QSeries({k * M + off: c for k, c in body.coeffs.items()}, M, body.trunc * M + off)


def expand(f: Quotient, trunc) -> QSeries:
    """q-expansion of an eta-quotient or generalized eta-quotient below ``trunc``."""
    v = f.valuation()
    B = _ceil_grid(Fraction(trunc) - v, 1)
    if B <= 0:
        return QSeries({}, v.denominator, B * v.denominator + int(v * v.denominator))
    body = QSeries({0: 1}, 1, B)
    if isinstance(f, EtaQuotient):
        for delta, r in f.exps:
            n = -(-B // delta)
            factor = QSeries(unit_power(euler_product(n), r, n), 1, n).substitute(delta)
            body = body * factor
    else:
        N = f.level
        for g, r in f.exps:
            base = qpochhammer(g, N, B) * qpochhammer(N - g, N, B)
            body = body * _unit_series_power(base, r, B)
    return _attach(body.truncate(B), v)


def _theta_exponent(ea: Fraction, eb: Fraction, n: int) -> Fraction:
    return ea * (n * (n + 1) // 2) + eb * (n * (n - 1) // 2)


def _theta_sign(sa: int, sb: int, n: int) -> int:
    s = 1
    if sa < 0 and (n * (n + 1) // 2) % 2:
        s = -s
    if sb < 0 and (n * (n - 1) // 2) % 2:
        s = -s
    return s


def theta_f(sa: int, ea, sb: int, eb, trunc) -> QSeries:
    """Ramanujan's ``f(sa q^ea, sb q^eb)`` from its bilateral sum, exact below ``trunc``."""
    ea, eb = Fraction(ea), Fraction(eb)
    if sa not in (1, -1) or sb not in (1, -1):
        raise ValueError("theta signs must be +1 or -1")
    if ea + eb <= 0:
        raise SeriesError("divergent theta parameters: need ea + eb > 0")
    grid = math.lcm(ea.denominator, eb.denominator, Fraction(trunc).denominator)
    T = _ceil_grid(trunc, grid)
    # exponent is a convex quadratic in n; walk outward from its minimum
    centre = math.floor((eb - ea) / (2 * (ea + eb)))
    coeffs: Dict[int, int] = {}
    for step in (1, -1):
        n = centre if step == 1 else centre - 1
        while True:
            e = _theta_exponent(ea, eb, n)
            if e * grid >= T:
                break
            k = int(e * grid)
            coeffs[k] = coeffs.get(k, 0) + _theta_sign(sa, sb, n)
            n += step
    return QSeries(coeffs, grid, T)


def _product_of_binomials(factors: Iterable[Tuple[int, int]], grid: int, T: int, lowest: int = 0) -> QSeries:
    """prod (1 + s q^(k/grid)) over (s, k) with k > 0, exact below T."""
    if T <= 0:
        return QSeries({}, grid, T)
    dense = [0] * T
    dense[0] = 1
    for s, k in factors:
        if k >= T:
            continue
        for i in range(T - 1, k - 1, -1):
            if dense[i - k]:
                dense[i] += s * dense[i - k]
    return QSeries({i: c for i, c in enumerate(dense) if c}, grid, T)


def theta_product(sa: int, ea, sb: int, eb, trunc) -> QSeries:
    """``(-a, -b, ab; ab)_inf`` for ``a = sa q^ea``, ``b = sb q^eb`` with ea, eb > 0."""
    ea, eb = Fraction(ea), Fraction(eb)
    if ea <= 0 or eb <= 0:
        raise SeriesError("triple product form needs positive exponents")
    grid = math.lcm(ea.denominator, eb.denominator, Fraction(trunc).denominator)
    T = _ceil_grid(trunc, grid)
    ka, kb = int(ea * grid), int(eb * grid)
    step = ka + kb
    factors = []
    for n in range(0, T // step + 1):
        factors.append((sa, ka + n * step))
        factors.append((sb, kb + n * step))
        factors.append((-1, (n + 1) * step))
    return _product_of_binomials(factors, grid, T)


def psi_series(trunc) -> QSeries:
    """``psi(q) = f(q, q^3)``."""
    return theta_f(1, 1, 1, 3, trunc)


def _lambert_term(e: int, T: int, out: Dict[int, int], sign: int) -> None:
    """Add sign * x/(1-x)^2 for x = q^e, folding e < 0 through x -> 1/x."""
    e = abs(e)
    m = 1
    while m * e < T:
        out[m * e] = out.get(m * e, 0) + sign * m
        m += 1


def bailey_lhs(L: int, j: int, trunc) -> QSeries:
    """Bilateral sum of ``x/(1-x)^2`` at ``x = q^(Ln+j)`` minus the same at ``q^(Ln+L/2)``."""
    T = _ceil_grid(trunc, 1)
    out: Dict[int, int] = {}
    for shift, sign in ((j, 1), (L // 2, -1)):
        n = 0
        while L * n + shift < T:
            _lambert_term(L * n + shift, T, out, sign)
            n += 1
        n = -1
        while -(L * n + shift) < T:
            _lambert_term(L * n + shift, T, out, sign)
            n -= 1
    return QSeries(out, 1, T)


def bailey_rhs(L: int, j: int, trunc) -> QSeries:
    """Theta-quotient side of Bailey's formula at q -> q^L, a = q^j, b = q^(L/2)."""
    h = L // 2
    # q^j (q^L;q^L)^6 f(-q^(h+j), -q^(h-j))^2 / (f(-q^j, -q^(L-j))^2 f(-q^h, -q^h)^2)
    pad = 2 * L + j
    t = Fraction(trunc) + pad
    num = theta_f(-1, h + j, -1, h - j, t) ** 2
    den = theta_f(-1, j, -1, L - j, t) ** 2 * theta_f(-1, h, -1, h, t) ** 2
    n = _ceil_grid(t, 1) // L + 1
    eul = QSeries(unit_power(euler_product(n), 6, n), 1, n).substitute(L)
    out = (eul * num / den).shift(j)
    return out.truncate(trunc)


def bailey_pair(L: int, j: int, trunc) -> Tuple[QSeries, QSeries]:
    """Both sides of Bailey's bilateral Lambert sum for the pair (L, j), as q-series."""
    if L < 2 or L % 2:
        raise ValueError("L must be an even positive integer")
    if not 0 < j < L or 2 * j == L:
        raise ValueError("need 0 < j < L and j != L/2 (a = b makes both sides vanish)")
    return bailey_lhs(L, j, trunc), bailey_rhs(L, j, trunc)


# ---------------------------------------------------------------------------
# text grammar:  eta(d)^r * ...   or   geta(N;g)^r * ...

class QuotientParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


_FACTOR = re.compile(
    r"\s*(?:(eta)\(\s*(\d+)\s*\)|(geta)\(\s*(\d+)\s*[;,]\s*(\d+)\s*\))(?:\s*\^\s*(\(\s*-?\d+\s*\)|-?\d+))?\s*"
)


def parse_quotient(text: str, level: int | None = None) -> Quotient:
    """Parse ``eta(d)^r * ...`` or ``geta(N;g)^r * ...`` (``/`` also allowed)."""
    pos, sign = 0, 1
    eta: Dict[int, int] = {}
    geta: Dict[int, int] = {}
    geta_level = None
    while True:
        m = _FACTOR.match(text, pos)
        if not m:
            at = len(text) - len(text[pos:].lstrip())
            raise QuotientParseError("expected eta(d) or geta(N;g)", at, text[at:at + 12])
        exp = int(m.group(6).strip("() ")) if m.group(6) else 1
        if m.group(1):
            d = int(m.group(2))
            if d < 1:
                raise QuotientParseError("eta argument must be positive", m.start(2), m.group(2))
            eta[d] = eta.get(d, 0) + sign * exp
        else:
            N, g = int(m.group(4)), int(m.group(5))
            if geta_level is not None and N != geta_level:
                raise QuotientParseError("mixed generalized eta levels", m.start(4), m.group(4))
            geta_level = N
            geta[g] = geta.get(g, 0) + sign * exp
        pos = m.end()
        if pos >= len(text):
            break
        op = text[pos]
        if op not in "*/":
            raise QuotientParseError("expected '*' or '/'", pos, text[pos:pos + 12])
        sign = 1 if op == "*" else -1
        pos += 1
    if eta and geta:
        raise QuotientParseError("cannot mix eta and geta factors", 0, text)
    if geta:
        return GenEtaQuotient(geta_level, geta)
    q = EtaQuotient.from_exps(eta)
    return q.at_level(level) if level is not None and level % q.level == 0 else q
