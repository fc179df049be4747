from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etaq.etaforms import (
    Bound,
    EtaQuotient,
    GenEtaQuotient,
    OrderTable,
    QuotientParseError,
    bailey_pair,
    check_gamma0,
    check_gamma1,
    eta_order_at_cusp,
    expand,
    gen_eta_ord,
    order_table,
    parse_quotient,
    pi_quotient,
    psi_series,
    theta_f,
    theta_product,
)
from etaq.modgroup import INF, Cusp, canonical_representative, cusp_set, divisors
from etaq.series import SeriesError, lambert_ap, qpochhammer

h = pi_quotient(2) / pi_quotient(6)
s = pi_quotient(4) / pi_quotient(8)
h2 = EtaQuotient(24, {12: 12, 6: -4, 24: -8})
h1 = GenEtaQuotient(12, {5: 2, 1: -2})


def orders(q, N):
    t = order_table(q, N)
    return {str(r): b.value for r, b in t.row(t.names[0]).items()}


def test_pi_quotients():
    assert h.exp_map == {4: 4, 6: 2, 2: -2, 12: -4}
    assert s.exp_map == {8: 6, 4: -2, 16: -4}
    assert pi_quotient(3).valuation() == Fraction(3, 4)


def test_pi_equals_q_quarter_psi_squared():
    p = psi_series(60)
    assert expand(pi_quotient(1), 50).agrees_with((p * p).shift(Fraction(1, 4)))


def test_check_gamma0():
    c = check_gamma0(h, 12)
    assert c.ok and c.weight == 0 and c.character == "trivial" and c.sums[0] == -24
    c2 = check_gamma0(h2)
    assert c2.ok and c2.sums == (-72, 0)
    c3 = check_gamma0(EtaQuotient(1, {1: 1}))
    assert c3.weight == Fraction(1, 2) and not c3.conditions[0]


def test_ligozat_orders():
    assert eta_order_at_cusp(h, Cusp(1, 4), 12) == 1
    assert eta_order_at_cusp(h, INF, 12) == -1
    assert eta_order_at_cusp(s, INF, 16) == -1
    want = {"0": 0, "1/2": 0, "1/3": 0, "1/4": 1, "1/6": 0, "1/8": -1, "1/12": 3, "inf": -3}
    assert orders(h2, 24) == want
    with pytest.raises(ValueError, match="non-divisor"):
        eta_order_at_cusp(h, Cusp(1, 5), 12)


def test_check_gamma1():
    assert h1.sums() == (0, 8, 48) and all(check_gamma1(h1))
    s1 = GenEtaQuotient(16, {7: 2, 1: -2})
    assert s1.sums()[2] == 96 and all(check_gamma1(s1))
    assert not check_gamma1(GenEtaQuotient(12, {1: 2}))[0]


def test_generalized_ord():
    assert orders(h1, 12) == {"inf": -2, "0": 0, "1/2": 0, "1/3": 0, "1/4": 0, "1/6": 0}
    assert orders(h1.inverse(), 12)["inf"] == 2
    assert orders(GenEtaQuotient(16, {7: 2, 1: -2}), 16)["inf"] == -3
    assert orders(GenEtaQuotient(16, {5: 2, 3: -2}), 16)["inf"] == -1
    o = orders(GenEtaQuotient(24, {12: 4, 6: -4}), 12)
    assert o["1/4"] == 1 and o["inf"] == 3


def test_ord_at_c_zero_is_the_valuation():
    # with c = 0 (so gcd(c, N) = N and width 1) the first exponent is the valuation
    q = GenEtaQuotient(24, {12: 4, 6: -4})
    assert gen_eta_ord(q, INF, 12) == q.valuation() == -3
    for g in range(1, 7):
        one = GenEtaQuotient(12, {g: 1})
        assert gen_eta_ord(one, INF) == one.valuation()


def test_expansions():
    assert expand(h, 4).terms() == [(-1, 1), (1, 2), (3, 1)]
    j1 = expand(h1, 3) + 1 + expand(h1.inverse(), 3)
    assert j1.terms() == [(-2, 1), (-1, 2), (0, 4), (1, 4), (2, 6)]
    assert expand(GenEtaQuotient(12, {1: 1}), 2).valuation() == Fraction(13, 24)
    assert expand(GenEtaQuotient(12, {5: 1}), 2).valuation() == Fraction(-11, 24)


@pytest.mark.parametrize("q", [h, s, h2, pi_quotient(5) ** 3, h1, GenEtaQuotient(16, {6: 2, 2: -2})])
def test_expand_valuation_matches_formula(q):
    assert expand(q, 5).valuation() == q.valuation()


def test_generalized_expansion_by_brute_product():
    # eta_{12,5}^2 / eta_{12,1}^2 straight from Pochhammer products
    T = 40
    num = qpochhammer(5, 12, T) * qpochhammer(7, 12, T)
    den = qpochhammer(1, 12, T) * qpochhammer(11, 12, T)
    body = (num * num) / (den * den)
    assert expand(h1, T - 2).agrees_with(body.shift(h1.valuation()))


@pytest.mark.parametrize("q,N", [(h, 12), (s, 16), (h2, 24), (pi_quotient(1) ** 4 / pi_quotient(2) ** 4, 4)])
def test_degree_zero(q, N):
    assert sum(eta_order_at_cusp(q, canonical_representative(N, r), N) for r in cusp_set(N).cusps) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([12, 16, 24]), st.data())
def test_degree_zero_property(N, data):
    ds = divisors(N)
    exps = {d: data.draw(st.integers(-6, 6)) for d in ds[:-1]}
    exps[ds[-1]] = -sum(exps.values())
    q = EtaQuotient(N, exps)
    assert sum(eta_order_at_cusp(q, canonical_representative(N, r), N) for r in cusp_set(N).cusps) == 0


def test_theta():
    p = theta_f(1, 1, 1, 3, 101)
    assert p == qpochhammer(2, 2, 101) / qpochhammer(1, 2, 101)
    assert theta_f(-1, 1, -1, 2, 101) == qpochhammer(1, 1, 101)
    assert theta_f(-1, 7, -1, 5, 200) == theta_product(-1, 7, -1, 5, 200)
    with pytest.raises(SeriesError, match="divergent theta parameters"):
        theta_f(1, 1, 1, -1, 10)


@pytest.mark.parametrize("L,j", [(12, j) for j in range(1, 6)] + [(16, j) for j in range(1, 8)])
def test_bailey_pairs(L, j):
    lhs, rhs = bailey_pair(L, j, 120)
    assert lhs.precision >= 120 and rhs.precision >= 120
    assert lhs == rhs


def test_bailey_sum_gives_odd_lambert_sums():
    total = sum((bailey_pair(16, j, 120)[0] for j in (3, 5, 7)), bailey_pair(16, 1, 120)[0])
    assert total == lambert_ap(2, 1, 120) - lambert_ap(16, 8, 120).scale(8)


def test_bailey_degenerate():
    with pytest.raises(ValueError):
        bailey_pair(12, 6, 20)


def test_parse_quotient():
    q = parse_quotient("eta(12)^12*eta(6)^-4*eta(24)^-8")
    assert q.exp_map == h2.exp_map and q.level == 24
    g = parse_quotient("geta(12;5)^2 / geta(12;1)^2")
    assert g.level == 12 and g.exp_map == {5: 2, 1: -2}
    with pytest.raises(QuotientParseError) as exc:
        parse_quotient("eta(4)^2 * zeta(3)")
    assert exc.value.position == 11


def test_order_table_json_round_trip():
    t = order_table(h1, 12, "h1")
    t.add_row("j1", {r: Bound(Fraction(0), False) for r in cusp_set(12).cusps})
    back = OrderTable.from_json(t.to_json())
    assert back.rows == t.rows and back.kinds == t.kinds
