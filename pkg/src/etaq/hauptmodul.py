"""
Pole bounds for sums of non-modular pieces and polynomial expressions in a Hauptmodul.

On a genus-zero Gamma_0(N) a modular function with poles only at infinity,
of order m there, is a polynomial of degree m in a Hauptmodul g (a function
with a simple pole at infinity and no other poles).  The coefficients are
recovered by greedy elimination of the principal part, and the identity is
accepted once the remainder vanishes on a guard window past the constant term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Union

from .etaforms import Bound, EtaQuotient, OrderTable, check_gamma0, eta_order_at_cusp, expand
from .modgroup import INF, Cusp, canonical_representative, cusp_set, genus
from .series import QSeries, SeriesError, as_rational

__all__ = [
    "PROVED",
    "VERIFIED",
    "REFUTED",
    "INCONCLUSIVE",
    "PoleBoundTable",
    "HauptPoly",
    "Certificate",
    "combine_order_bounds",
    "multiply_order_bounds",
    "express_in_generator",
    "certify_expression",
    "hauptmodul_check",
    "GUARD",
]

PROVED = "proved-conditional"
VERIFIED = "verified-to-depth"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

# vanishing is required on deg + GUARD grid steps past the constant term
GUARD = 2


@dataclass(frozen=True)
class PoleBoundTable:
    level: int
    bounds: Dict[Cusp, Bound]

    def __post_init__(self):
        expected = set(cusp_set(self.level).cusps)
        if set(self.bounds) != expected:
            raise ValueError(f"bound table must cover exactly the cusps of Gamma_0({self.level})")

    @classmethod
    def from_orders(cls, table: OrderTable, name: Optional[str] = None) -> "PoleBoundTable":
        name = name or table.names[0]
        return cls(table.level, table.row(name))

    @classmethod
    def holomorphic(cls, level: int, at_infinity: Bound) -> "PoleBoundTable":
        """Nonnegative bounds everywhere except a given entry at infinity."""
        b = {r: Bound(Fraction(0), False) for r in cusp_set(level).cusps}
        b[INF] = at_infinity
        return cls(level, b)

    def negate(self) -> "PoleBoundTable":
        for b in self.bounds.values():
            if not b.exact:
                raise ValueError("only exact orders can be negated")
        return PoleBoundTable(self.level, {r: Bound(-b.value, True) for r, b in self.bounds.items()})

    def __getitem__(self, r: Cusp) -> Bound:
        return self.bounds[r]

    def to_json(self) -> dict:
        return {str(r): b.to_json() for r, b in self.bounds.items()}

    @classmethod
    def from_json(cls, level: int, data: dict) -> "PoleBoundTable":
        return cls(level, {Cusp.parse(k): Bound.from_json(v) for k, v in data.items()})

    def render(self) -> str:
        return ", ".join(f"{r}: {self.bounds[r]}" for r in cusp_set(self.level).cusps)


def _same_level(parts: Sequence[PoleBoundTable]) -> int:
    if not parts:
        raise ValueError("no parts to combine")
    levels = {p.level for p in parts}
    if len(levels) != 1:
        raise ValueError(f"mismatched levels {sorted(levels)}")
    return levels.pop()


def combine_order_bounds(parts: Sequence[PoleBoundTable]) -> PoleBoundTable:
    """Bound for the order of a sum: the minimum, exact only when uniquely attained by an exact entry."""
    N = _same_level(parts)
    out = {}
    for r in cusp_set(N).cusps:
        entries = [p.bounds[r] for p in parts]
        low = min(b.value for b in entries)
        at_min = [b for b in entries if b.value == low]
        out[r] = Bound(low, len(at_min) == 1 and at_min[0].exact)
    return PoleBoundTable(N, out)


def multiply_order_bounds(parts: Sequence[PoleBoundTable]) -> PoleBoundTable:
    """Bound for the order of a product: orders add; exact only if every factor is exact."""
    N = _same_level(parts)
    out = {}
    for r in cusp_set(N).cusps:
        entries = [p.bounds[r] for p in parts]
        out[r] = Bound(sum((b.value for b in entries), Fraction(0)), all(b.exact for b in entries))
    return PoleBoundTable(N, out)


@dataclass(frozen=True)
class HauptPoly:
    """Polynomial sum_i coeffs[i] g^i (constant term first)."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, g: QSeries) -> QSeries:
        # a constant is exact to any order; give it more room than g has
        room = g.trunc + abs(g.valuation_key()) * (self.degree + 1) + 1
        if not self.coeffs:
            return QSeries({}, g.grid, g.trunc)
        out = QSeries({0: self.coeffs[-1]}, g.grid, room)
        for c in reversed(self.coeffs[:-1]):
            out = out * g + c
        return out

    def to_json(self) -> list:
        # integers stay JSON numbers; other rationals become "p/q" strings
        return [int(c) if Fraction(c).denominator == 1 else str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list) -> "HauptPoly":
        return cls(Fraction(c) for c in data)

    def format(self, var: str = "g") -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and c in (1, -1):
                text = ("-" if c == -1 else "") + mono
            else:
                text = f"{c}{mono}" if mono else str(c)
            parts.append(text)
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()


def express_in_generator(f: QSeries, g: QSeries, m: int):
    """Greedy elimination of the principal part of ``f`` by powers of ``g``.

    Returns ``(poly, remainder)`` with ``remainder = f - poly(g)``.
    """
    if m < 0:
        raise ValueError("degree bound must be non-negative")
    e, lead = g.leading()
    if e != -1:
        raise ValueError(f"generator must have a simple pole at infinity, found leading exponent {e}")
    for k, c in f.coeffs.items():
        if Fraction(k, f.grid).denominator != 1:
            raise ValueError(f"grid mismatch: f has a term at q^{Fraction(k, f.grid)}")
    if f.coeffs and f.valuation() < -m:
        raise ValueError(f"degree bound exceeded: f has a pole of order {-f.valuation()} > {m}")
    if f.precision <= 0:
        raise SeriesError("f is not known through the constant term")
    powers = [None, g]
    for _ in range(2, m + 1):
        powers.append(powers[-1] * g)
    coeffs = [Fraction(0)] * (m + 1)
    rem = f
    for d in range(m, 0, -1):
        c = Fraction(rem.coefficient(-d)) / Fraction(lead) ** d
        coeffs[d] = c
        if c:
            rem = rem - powers[d] * c
    coeffs[0] = Fraction(rem.coefficient(0))
    rem = rem - coeffs[0]
    return HauptPoly(coeffs), rem


@dataclass
class Certificate:
    id: str
    mode: str
    verdict: str
    axioms: List[str] = field(default_factory=list)
    level: Optional[int] = None
    generator: Optional[str] = None
    bounds: Optional[PoleBoundTable] = None
    poly: Optional[HauptPoly] = None
    window: Optional[Dict[str, str]] = None
    reason: str = ""
    failure: Optional[Dict[str, str]] = None
    steps: List["Certificate"] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict in (PROVED, VERIFIED)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "mode": self.mode,
            "axioms": list(self.axioms),
            "level": self.level,
            "generator": self.generator,
            "bounds": self.bounds.to_json() if self.bounds else None,
            "poly": self.poly.to_json() if self.poly else None,
            "window": self.window,
            "verdict": self.verdict,
            "reason": self.reason,
            "failure": self.failure,
            "steps": [s.to_json() for s in self.steps],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        return cls(
            id=d["id"],
            mode=d["mode"],
            verdict=d["verdict"],
            axioms=list(d["axioms"]),
            level=d["level"],
            generator=d["generator"],
            bounds=PoleBoundTable.from_json(d["level"], d["bounds"]) if d["bounds"] is not None else None,
            poly=HauptPoly.from_json(d["poly"]) if d["poly"] is not None else None,
            window=d["window"],
            reason=d["reason"],
            failure=d["failure"],
            steps=[cls.from_json(s) for s in d["steps"]],
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Certificate) and self.to_json() == other.to_json()


def hauptmodul_check(g: EtaQuotient, N: int) -> Optional[str]:
    """Reason why ``g`` is not a Hauptmodul of Gamma_0(N) with a simple pole at infinity, or None."""
    try:
        chk = check_gamma0(g, N)
    except ValueError as exc:
        return str(exc)
    if not chk.ok or chk.weight != 0 or chk.character_kernel != 1:
        return f"{g} is not a weight-0 function on Gamma_0({N}) with trivial character"
    for r in cusp_set(N).cusps:
        o = eta_order_at_cusp(g, canonical_representative(N, r), N)
        if r == INF and o != -1:
            return f"{g} has order {o} at infinity, not -1"
        if r != INF and o < 0:
            return f"{g} has a pole at {r}"
    return None


def certify_expression(
    f: QSeries,
    bounds: Union[PoleBoundTable, Sequence[PoleBoundTable]],
    g: EtaQuotient,
    axioms: Sequence[str],
    ident: str = "",
    var: str = "g",
    expected: Optional[HauptPoly] = None,
) -> Certificate:
    """Certify ``f`` as a polynomial in the Hauptmodul ``g`` given pole bounds for ``f``.

    The verdict is conditional on ``axioms`` (the modularity facts not
    re-derived here).  The remainder must vanish from the pole order up to
    ``deg + GUARD`` grid steps past q^0.  When ``expected`` is given the
    remainder is taken against that polynomial, so a stated relation that is
    off in any coefficient is refuted rather than re-fitted.
    """
    if not isinstance(bounds, PoleBoundTable):
        bounds = combine_order_bounds(list(bounds))
    N = bounds.level
    cert = Certificate(
        id=ident,
        mode="conditional-rigorous",
        verdict=INCONCLUSIVE,
        axioms=list(axioms),
        level=N,
        generator=str(g),
        bounds=bounds,
    )
    if genus(N) != 0:
        cert.reason = f"Gamma_0({N}) has genus {genus(N)}"
        return cert
    bad = hauptmodul_check(g, N)
    if bad:
        cert.reason = bad
        return cert
    for r, b in bounds.bounds.items():
        if r != INF and b.value < 0:
            cert.reason = f"possible pole at cusp {r} (bound {b})"
            return cert
    inf = bounds[INF]
    if not inf.exact:
        cert.reason = "inconclusive: pole bound not exact at infinity"
        return cert
    if inf.value.denominator != 1 or inf.value > 0:
        cert.reason = f"order {inf.value} at infinity is not a non-positive integer"
        return cert
    m = -int(inf.value)
    stop = Fraction(m + GUARD)  # last exponent of the guard window
    cert.window = {"from": str(-m), "to": str(stop)}
    if f.precision <= stop:
        cert.reason = f"truncation q^{f.precision} does not cover the guard window through q^{stop}"
        return cert
    if f.coeffs and f.valuation() != -m:
        cert.reason = f"series valuation {f.valuation()} disagrees with the pole bound {-m}"
        return cert
    gs = expand(g, f.precision + m + 1)
    try:
        poly, rem = express_in_generator(f, gs, m)
    except (ValueError, SeriesError) as exc:
        cert.verdict = REFUTED
        cert.reason = str(exc)
        return cert
    cert.poly = poly
    if expected is not None and expected != poly:
        rem = f - expected.evaluate(gs)
    if rem.precision <= stop:
        cert.reason = "remainder precision does not cover the guard window"
        return cert
    for e, c in rem.terms():
        if e <= stop:
            cert.verdict = REFUTED
            cert.reason = f"refuted at exponent {e} with coefficient {c}"
            cert.failure = {"exponent": str(e), "coefficient": str(c)}
            return cert
        break
    if poly.degree != m:
        cert.verdict = REFUTED
        cert.reason = f"degree {poly.degree} differs from pole order {m}"
        return cert
    cert.verdict = PROVED
    cert.reason = f"{var}-polynomial {poly.format(var)}; remainder vanishes on q^{-m}..q^{stop}"
    return cert
