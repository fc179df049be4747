"""Cusps of Gamma_0(N), their widths, the genus of X_0(N), and small number-theory helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from sympy import factorint

__all__ = [
    "Cusp",
    "CuspTable",
    "INF",
    "ZERO",
    "cusp_set",
    "are_equivalent",
    "width",
    "index",
    "genus",
    "divisors",
    "kronecker",
    "squarefree_kernel",
    "bernoulli2",
    "canonical_representative",
    "find_cusp",
    "act",
]


@dataclass(frozen=True, order=True)
class Cusp:
    """The boundary point a/c, with infinity stored as 1/0."""

    a: int
    c: int

    def __post_init__(self):
        a, c = self.a, self.c
        if c < 0:
            a, c = -a, -c
        if c == 0:
            a = 1
        g = math.gcd(a, c)
        if g != 1:
            a, c = a // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    @property
    def is_infinity(self) -> bool:
        return self.c == 0

    def __str__(self) -> str:
        if self.c == 0:
            return "inf"
        if self.c == 1:
            return str(self.a)
        return f"{self.a}/{self.c}"

    @classmethod
    def parse(cls, text: str) -> "Cusp":
        text = text.strip()
        if text in ("inf", "oo", "∞", "1/0"):
            return INF
        if "/" in text:
            a, c = text.split("/")
            return cls(int(a), int(c))
        return cls(int(text), 1)


INF = Cusp(1, 0)
ZERO = Cusp(0, 1)


@dataclass(frozen=True)
class CuspTable:
    level: int
    entries: Tuple[Tuple[Cusp, int], ...]

    @property
    def cusps(self) -> List[Cusp]:
        return [c for c, _ in self.entries]

    def width_of(self, r: Cusp) -> int:
        return dict(self.entries)[r]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> list:
        return [{"cusp": str(c), "width": w} for c, w in self.entries]


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def width(N: int, r: Cusp) -> int:
    """Width ``N / gcd(c^2, N)`` of the cusp ``r`` on Gamma_0(N)."""
    return N // math.gcd(r.c * r.c, N)


def index(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z)."""
    out = N
    for p in factorint(N):
        out = out // p * (p + 1)
    return out


def are_equivalent(N: int, r1: Cusp, r2: Cusp) -> bool:
    """Gamma_0(N)-equivalence by exhaustive search over units s and shifts n.

    a'/c' ~ a/c iff (a', c') = (s^-1 a + n c, s c) mod N for some unit s and
    integer n.  Both sign representatives of the target are tried, since a/c
    and -a/-c are the same point.
    """
    if N == 1:
        return True
    a, c = r1.a % N, r1.c % N
    g = math.gcd(c, N)
    for sign in (1, -1):
        a2, c2 = (sign * r2.a) % N, (sign * r2.c) % N
        for s in range(1, N):
            if math.gcd(s, N) != 1 or (s * c) % N != c2:
                continue
            # some n with s^-1 a + n c = a2 (mod N) exists iff gcd(c, N) divides the gap
            if (a2 - pow(s, -1, N) * a) % g == 0:
                return True
    return False


@lru_cache(maxsize=None)
def _class_representatives(N: int) -> Tuple[Cusp, ...]:
    """Representatives a/c with 0 < c | N, gcd(a, N) = 1, a distinct mod gcd(c, N/c)."""
    reps = []
    for c in divisors(N):
        m = math.gcd(c, N // c)
        seen = set()
        for a in range(1, N + 1):
            if math.gcd(a, N) != 1 or math.gcd(a, c) != 1:
                continue
            if a % m in seen:
                continue
            seen.add(a % m)
            reps.append(Cusp(a, c))
    return tuple(reps)


def _display(N: int, rep: Cusp) -> Cusp:
    if rep.c == N:
        return INF
    if rep.c == 1:
        return ZERO
    return rep


def canonical_representative(N: int, r: Cusp) -> Cusp:
    """The representative a/c (0 < c | N) of the class of ``r``.

    Infinity becomes 1/N and 0 becomes 1/1, matching the representative
    system used for the order formulas.
    """
    for rep in _class_representatives(N):
        if are_equivalent(N, r, rep):
            return rep
    raise ValueError(f"no representative found for {r} on Gamma_0({N})")


def _sort_key(r: Cusp):
    # infinity first, then 0, then by denominator and numerator
    if r.is_infinity:
        return (0, 0, 0)
    if r.c == 1:
        return (1, 0, 0)
    return (2, r.c, r.a)


@lru_cache(maxsize=None)
def cusp_set(N: int) -> CuspTable:
    """One cusp per Gamma_0(N)-class with its width.

    The class of 1/N is labelled infinity and the class of 1/1 is labelled 0.
    """
    if N < 1:
        raise ValueError("level must be positive")
    if N == 1:
        return CuspTable(1, ((INF, 1),))
    cusps = sorted((_display(N, rep) for rep in _class_representatives(N)), key=_sort_key)
    return CuspTable(N, tuple((r, width(N, r)) for r in cusps))


def find_cusp(N: int, r: Cusp) -> Cusp:
    """The entry of ``cusp_set(N)`` equivalent to ``r``."""
    for s in cusp_set(N).cusps:
        if are_equivalent(N, r, s):
            return s
    raise ValueError(f"{r} matches no cusp of Gamma_0({N})")


def act(matrix, r: Cusp) -> Cusp:
    """Image of the cusp ``r`` under the integer matrix [[a, b], [c, d]]."""
    (a, b), (c, d) = matrix
    return Cusp(a * r.a + b * r.c, c * r.a + d * r.c)


def _count_elliptic(N: int, disc: int) -> int:
    fac = factorint(N)
    if disc == -4 and fac.get(2, 0) >= 2:
        return 0
    if disc == -3 and fac.get(3, 0) >= 2:
        return 0
    out = 1
    for p in fac:
        out *= 1 + kronecker(disc, p)
    return out


def genus(N: int) -> int:
    """Genus of X_0(N) from the index, elliptic points and cusp count."""
    mu = index(N)
    nu2 = _count_elliptic(N, -4)
    nu3 = _count_elliptic(N, -3)
    nu_inf = sum(_phi(math.gcd(d, N // d)) for d in divisors(N))
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)
    assert g.denominator == 1
    return int(g)


def _phi(n: int) -> int:
    out = n
    for p in factorint(n):
        out = out // p * (p - 1)
    return out


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_kernel(x) -> int:
    """Squarefree part of a nonzero rational, sign kept (p/q -> squarefree part of p*q)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no squarefree kernel")
    sign = -1 if x < 0 else 1
    out = 1
    for p, e in factorint(abs(x.numerator * x.denominator)).items():
        if e % 2:
            out *= p
    return sign * out


def bernoulli2(t, periodic: bool = False) -> Fraction:
    """B_2(t) = t^2 - t + 1/6, or its periodic version B_2({t})."""
    t = Fraction(t)
    if periodic:
        t -= math.floor(t)
    return t * t - t + Fraction(1, 6)
