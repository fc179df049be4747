"""Acceptance suite: one PASS/FAIL line per criterion, each with a time budget.

Run under pytest (lines are printed even with output capture on) or directly:
    python3 tests/test_acceptance.py
"""
import random
import sys
import time
from fractions import Fraction

import pytest

from etaq import prover
from etaq.etaforms import bailey_pair, eta_order_at_cusp, expand, pi_quotient
from etaq.expr import evaluate
from etaq.hauptmodul import GUARD, INCONCLUSIVE, PROVED, REFUTED, VERIFIED, certify_expression, express_in_generator
from etaq.modgroup import INF, Cusp, cusp_set, index
from etaq.series import QSeries, eta_series, lambert_ap, lambert_sigma


def c1_cusps():
    want = {
        12: ["inf", "0", "1/2", "1/3", "1/4", "1/6"],
        16: ["inf", "0", "1/2", "1/4", "3/4", "1/8"],
        24: ["inf", "0", "1/2", "1/3", "1/4", "1/6", "1/8", "1/12"],
    }
    for N, labels in want.items():
        assert [str(r) for r in cusp_set(N).cusps] == labels, N
    for N in range(1, 37):
        assert sum(w for _, w in cusp_set(N)) == index(N), N


def c2_tables():
    tables = prover.build_tables()
    for key in ("table1", "table2", "table3", "table4", "table5"):
        problems = prover.compare_table(key, tables[key])
        assert not problems, problems
    h2 = tables["table2"].row("h2")
    assert [h2[Cusp.parse(c)].value for c in ("1/4", "1/6", "1/8", "1/12", "inf")] == [1, 0, -1, 3, -3]
    t5 = tables["table5"]
    assert [t5.row(n)[INF].value for n in ("s1", "s2", "1/s1", "1/s2")] == [-3, -1, 3, 1]
    # the ">= 0" cells come out as inexact lower bounds
    loose = {("table1", "j1"): ["0", "1/2", "1/3", "1/4", "1/6"],
             ("table3", "H"): ["0", "1/2", "1/3", "1/6"],
             ("table4", "j3"): ["0", "1/2", "1/3", "1/6"],
             ("table5", "z"): ["0", "1/2", "1/4", "3/4", "1/8"]}
    for (key, name), cells in loose.items():
        row = tables[key].row(name)
        for c in cells:
            b = row[Cusp.parse(c)]
            assert b.value == 0 and not b.exact, (key, name, c)


def c3_ligozat():
    h = pi_quotient(2) / pi_quotient(6)
    s = pi_quotient(4) / pi_quotient(8)
    assert eta_order_at_cusp(h, Cusp(1, 4), 12) == 1
    assert eta_order_at_cusp(h, INF, 12) == -1
    assert eta_order_at_cusp(s, INF, 16) == -1


SIX = {
    "rel-j1": (-1, 2, 1),
    "rel-hj3": (1, 0, 1),
    "rel-hH": (-3, 0, -6, 0, 1),
    "rel-z": (4, 4, 2, 1),
    "rel-j4": (2, 0, 1),
    "rel-S": (-8, 0, 0, 0, 1),
}


def c4_solver():
    for rid, coeffs in SIX.items():
        plan = prover.PLANS[rid]
        m = len(coeffs) - 1
        f = evaluate(plan.f, 50)
        assert f.precision >= 50
        g = expand(plan.generator, 60)
        poly, rem = express_in_generator(f, g, m)
        assert tuple(poly.coeffs) == coeffs, (rid, poly.coeffs)
        assert rem.is_zero()
        # remainder vanishes from q^-m up to q^50, well past the guard window
        assert rem.precision >= m + GUARD


def c5_headlines():
    for sid in ("eq1.1", "eq1.4", "eq1.7", "eq1.8", "eq1.9"):
        cert = prover.verify_conditional(prover.lookup(sid), 200)
        assert cert.verdict == PROVED, (sid, cert.reason)
        assert cert.axioms, sid
        st = prover.lookup(sid)
        M = prover.natural_grid(st.lhs, st.rhs)
        assert Fraction(cert.window["to"]) * M >= 200, (sid, cert.window)


def c6_heuristics():
    for sid in ("eq1.2", "eq1.3", "eq1.5", "eq1.6"):
        cert = prover.verify_heuristic(prover.lookup(sid), 100)
        assert cert.verdict == VERIFIED, (sid, cert.reason)
        assert cert.window["steps"] >= 100


def c7_bailey():
    for Lv, js in ((12, range(1, 6)), (16, range(1, 8))):
        for j in js:
            lhs, rhs = bailey_pair(Lv, j, 120)
            assert min(lhs.precision, rhs.precision) >= 120 and lhs == rhs, (Lv, j)
    ids = [st.id for st in prover.registry() if st.kind == "bailey"]
    assert len(ids) == 12
    for sid in ids:
        assert prover.verify_heuristic(prover.lookup(sid), 120).verdict == VERIFIED, sid


GOLDEN = {
    "j1": (prover.j1, {-2: 1, -1: 2, 0: 3, 1: 4, 2: 6}, 3),
    "h": (prover.h12, {-1: 1, 1: 2, 3: 1}, 4),
    "z": (prover.z, {-3: 1, -2: 2, -1: 4, 0: 4, 1: 6, 2: 8}, 3),
    "j3": (prover.j3, {-1: 1, 1: 3, 3: -1}, 4),
    "j4": (prover.j4, {-2: 1, 0: 2, 2: 4}, 3),
    "hH": (prover.h12 * prover.H, {-4: 1, -2: 2, 0: 1, 2: 20}, 3),
    "S": (prover.S, {-4: 1, 4: 20, 12: -62}, 13),
}


def c8_golden():
    for name, (e, want, stop) in GOLDEN.items():
        s = evaluate(e, stop)
        assert {k: v for k, v in s.terms()} == want, (name, s.terms())


def _brute_sigma(k, n):
    if n % k:
        return 0
    m = n // k
    return sum(d for d in range(1, m + 1) if m % d == 0)


def _brute_ap(k, j, n):
    return sum(n // d for d in range(1, n + 1) if n % d == 0 and d % k == (k - j) % k)


def _naive_eta_body(delta, T):
    c = [0] * T
    c[0] = 1
    for n in range(1, T):
        e = delta * n
        if e >= T:
            break
        for i in range(T - 1, e - 1, -1):
            c[i] -= c[i - e]
    return c


def _random_laurent(rng):
    grid = rng.choice([1, 2, 3, 4, 6])
    v = rng.randint(-6, 6)
    coeffs = {v: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))}
    for _ in range(rng.randint(0, 6)):
        coeffs[rng.randint(v + 1, v + 25)] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return QSeries(coeffs, grid, v + rng.randint(5, 30))


def c9_oracles():
    for k in (1, 2, 3, 8):
        s = lambert_sigma(k, 501)
        assert all(s.coefficient(n) == _brute_sigma(k, n) for n in range(1, 501)), k
    for k, j in ((2, 1), (12, 6), (16, 3), (16, 8)):
        s = lambert_ap(k, j, 501)
        assert all(s.coefficient(n) == _brute_ap(k, j, n) for n in range(1, 501)), (k, j)
    for delta in (1, 2, 6):
        body = eta_series(delta, 200).shift(-Fraction(delta, 24))
        naive = _naive_eta_body(delta, 200)
        assert [body.coefficient(n) for n in range(199)] == naive[:199], delta
    rng = random.Random(20240601)
    for _ in range(100):
        a = _random_laurent(rng)
        assert (a * a.invert()).terms() == [(0, 1)]
        sq = a * a
        r = sq.sqrt()
        assert r * r == sq
        assert r.leading()[0] == a.leading()[0]


def c10_negative_controls():
    rng = random.Random(7)
    for st in prover.registry():
        M = prover.natural_grid(st.lhs, st.rhs)
        e = Fraction(rng.randint(-4, 50), M)
        delta = rng.choice([-2, -1, 1, 3])
        cert = prover.verify_heuristic(st.perturbed(e, delta), 60)
        assert cert.verdict == REFUTED, st.id
        assert Fraction(cert.failure["exponent"]) == e, (st.id, cert.failure, e)
    for sid in ("eq1.4", "eq1.9"):
        cert = prover.verify_conditional(prover.lookup(sid).perturbed(1))
        assert cert.verdict == REFUTED and cert.failure["exponent"] == "1", sid
    for rid, plan in prover.PLANS.items():
        m = len(plan.poly) - 1
        for T in range(-m, m + GUARD):
            cert = certify_expression(evaluate(plan.f, T), plan.bounds(), plan.generator, list(plan.axioms))
            assert cert.verdict == INCONCLUSIVE, (rid, T, cert.verdict)


CRITERIA = [
    (1, "cusp lists for 12, 16, 24 and width sums up to 36", 1.0, c1_cusps),
    (2, "order tables 1-5 reproduced", 1.0, c2_tables),
    (3, "Ligozat spot values for h and s", 1.0, c3_ligozat),
    (4, "solver recovers the six relations", 5.0, c4_solver),
    (5, "headline certificates proved-conditional to 200 steps", 30.0, c5_headlines),
    (6, "heuristic identities verified to 100 steps", 30.0, c6_heuristics),
    (7, "Bailey pairs agree through 120 steps", 30.0, c7_bailey),
    (8, "golden expansions", 5.0, c8_golden),
    (9, "oracle properties", 30.0, c9_oracles),
    (10, "negative controls", 30.0, c10_negative_controls),
]


def run_criterion(n, title, limit, fn):
    t0 = time.perf_counter()
    err = None
    try:
        fn()
    except AssertionError as exc:
        err = f"assertion failed {exc.args!r}" if exc.args else "assertion failed"
    except Exception as exc:  # noqa: BLE001 - reported, then surfaced by the test
        err = f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if err is None and dt > limit:
        err = f"took {dt:.2f}s, limit {limit}s"
    status = "PASS" if err is None else "FAIL"
    line = f"{status} criterion {n}: {title} ({dt:.2f}s)"
    if err:
        line += f" -- {err}"
    return err is None, line


@pytest.mark.parametrize("n,title,limit,fn", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(n, title, limit, fn, capsys):
    ok, line = run_criterion(n, title, limit, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
