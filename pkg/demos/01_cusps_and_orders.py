"""Cusps of Gamma_0(N) and the orders of eta-quotients at them."""
from etaq.etaforms import EtaQuotient, GenEtaQuotient, order_table, pi_quotient
from etaq.modgroup import cusp_set, genus, index

# Gamma_0(12) and Gamma_0(16) both have genus zero, which is what makes
# a single generator (a Hauptmodul) possible.
for N in (12, 16, 24):
    print(f"N = {N}: index {index(N)}, genus {genus(N)}")
    for cusp, w in cusp_set(N):
        print(f"  {str(cusp):>4}  width {w}")

# h = Pi_{q^2}/Pi_{q^6} has a simple pole at infinity and a simple zero at 1/4.
h = pi_quotient(2) / pi_quotient(6)
print()
print("h as an eta-quotient:", h)
print(order_table(h, 12, "h").render())

# A generalized eta-quotient is only modular on Gamma_1(12), so its row is
# marked Ord: first-term exponents rather than true orders.
h1 = GenEtaQuotient(12, {5: 2, 1: -2})
print()
print(order_table(h1, 12, "h1").render())

# An honest eta-quotient of level 24 with poles at 1/8 and infinity.
h2 = EtaQuotient(24, {12: 12, 6: -4, 24: -8})
print()
print(order_table(h2, 24, "h2").render())
