import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etaq.modgroup import (
    INF,
    ZERO,
    Cusp,
    act,
    are_equivalent,
    bernoulli2,
    cusp_set,
    find_cusp,
    genus,
    index,
    kronecker,
    squarefree_kernel,
    width,
)


def literal_equivalent(N, r1, r2):
    """Exhaustive (s, n) search, written independently of the library."""
    a, c = r1.a, r1.c
    for a2, c2 in ((r2.a, r2.c), (-r2.a, -r2.c)):
        for s in range(1, N + 1):
            if math.gcd(s, N) != 1:
                continue
            sinv = pow(s, -1, N) if N > 1 else 0
            for n in range(N):
                if (sinv * a + n * c - a2) % N == 0 and (s * c - c2) % N == 0:
                    return True
    return False


def labels(N):
    return [str(r) for r in cusp_set(N).cusps]


def test_cusp_lists():
    assert labels(12) == ["inf", "0", "1/2", "1/3", "1/4", "1/6"]
    assert labels(16) == ["inf", "0", "1/2", "1/4", "3/4", "1/8"]
    assert labels(24) == ["inf", "0", "1/2", "1/3", "1/4", "1/6", "1/8", "1/12"]
    assert labels(1) == ["inf"]


def test_cusp_normalization():
    assert Cusp(2, 4) == Cusp(1, 2)
    assert Cusp(1, -3) == Cusp(-1, 3)
    assert Cusp(7, 0) == INF
    assert Cusp.parse("inf") == INF and Cusp.parse("0") == ZERO and Cusp.parse("3/4") == Cusp(3, 4)


def test_widths():
    assert width(12, INF) == 1
    assert width(12, ZERO) == 12
    assert width(12, Cusp(1, 2)) == 3
    assert cusp_set(12).width_of(Cusp(1, 6)) == 1


@pytest.mark.parametrize("N", range(1, 37))
def test_width_sum_is_index(N):
    t = cusp_set(N)
    assert sum(w for _, w in t) == index(N)
    cusps = t.cusps
    for i, a in enumerate(cusps):
        for b in cusps[i + 1:]:
            assert not are_equivalent(N, a, b)


def test_alpha_images_on_gamma0_24():
    alpha = ((1, 0), (12, 1))
    want = {"0": "0", "1/2": "1/2", "1/3": "1/3", "1/4": "1/8", "1/6": "1/6", "1/8": "1/4", "1/12": "inf", "inf": "1/12"}
    got = {str(r): str(find_cusp(24, act(alpha, r))) for r in cusp_set(24).cusps}
    assert got == want


def test_one_fifth_is_zero_on_12():
    assert are_equivalent(12, Cusp(1, 5), ZERO)
    assert literal_equivalent(12, Cusp(1, 5), ZERO)


@pytest.mark.parametrize("N", [12, 16, 24, 32])
def test_every_rational_lands_in_exactly_one_class(N):
    cusps = cusp_set(N).cusps
    for c in range(1, 4 * N + 1):
        for a in range(-4 * N, 4 * N + 1):
            if math.gcd(a, c) != 1:
                continue
            r = Cusp(a, c)
            hits = [s for s in cusps if are_equivalent(N, r, s)]
            assert len(hits) == 1, (r, hits)


@pytest.mark.parametrize("N", [6, 12, 16, 18])
def test_shortcut_matches_literal_search(N):
    pts = [Cusp(a, c) for c in range(1, 2 * N) for a in range(-N, N) if math.gcd(a, c) == 1] + [INF]
    for r1 in pts[::7]:
        for r2 in pts[::5]:
            assert are_equivalent(N, r1, r2) == literal_equivalent(N, r1, r2)


cusps_st = st.builds(
    lambda a, c: Cusp(a, c) if math.gcd(a, c) == 1 else INF,
    st.integers(-40, 40),
    st.integers(0, 40),
)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([12, 16, 24, 32]), cusps_st, cusps_st, cusps_st)
def test_equivalence_relation(N, x, y, z):
    assert are_equivalent(N, x, x)
    assert are_equivalent(N, x, y) == are_equivalent(N, y, x)
    if are_equivalent(N, x, y) and are_equivalent(N, y, z):
        assert are_equivalent(N, x, z)


def test_genus():
    assert genus(12) == 0 and genus(16) == 0
    assert genus(11) == 1
    assert [genus(n) for n in (1, 2, 4, 6, 8, 9, 10, 24, 32, 36, 37)] == [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 2]


def brute_legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any((x * x - a) % p == 0 for x in range(1, p)) else -1


def test_kronecker():
    assert all(kronecker(a, 1) == 1 for a in range(-10, 10))
    assert kronecker(2, 7) == 1 and kronecker(2, 3) == -1
    for p in (3, 5, 7, 11, 13):
        for a in range(-15, 15):
            assert kronecker(a, p) == brute_legendre(a, p)


@settings(max_examples=200, deadline=None)
@given(st.integers(-50, 50), st.integers(-30, 30), st.integers(-30, 30))
def test_kronecker_multiplicative(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)
    assert kronecker(m * n, a) == kronecker(m, a) * kronecker(n, a)


def test_character_kernel_of_h():
    assert squarefree_kernel(Fraction(4**4 * 6**2, 2**2 * 12**4)) == 1


def test_bernoulli():
    assert bernoulli2(0) == Fraction(1, 6)
    assert bernoulli2(Fraction(5, 4), periodic=True) == Fraction(-1, 48)


@given(st.fractions(min_value=-10, max_value=10, max_denominator=50))
def test_p2_periodic(t):
    assert bernoulli2(t + 1, periodic=True) == bernoulli2(t, periodic=True)
