"""Writing modular functions as polynomials in a Hauptmodul."""
from etaq import prover
from etaq.etaforms import expand
from etaq.expr import evaluate
from etaq.hauptmodul import express_in_generator
from etaq.series import format_series

# j1 = h1 + 1 + 1/h1 is invariant under Gamma_0(12) with its only pole at
# infinity, so it must be a polynomial in h. Peel off leading terms:
j1 = evaluate(prover.j1, 30)
h = expand(prover.H12_Q, 40)
print("j1 =", format_series(j1.truncate(4)))
print("h  =", format_series(h.truncate(4)))
poly, rem = express_in_generator(j1, h, 2)
print("j1 =", poly.format("h"), "  remainder zero below q^%s" % rem.precision)

# A series coincidence is not a proof. The certificate adds the pole
# bounds at every cusp and names the modularity facts it takes on trust.
for rid in prover.PLANS:
    cert = prover.verify(prover.lookup(rid))
    plan = prover.PLANS[rid]
    print(f"{rid:8} {cert.poly.format(plan.var):28} {cert.verdict}")

# What the certifier refuses: too short a truncation is inconclusive.
from etaq.hauptmodul import certify_expression

plan = prover.PLANS["rel-j1"]
short = certify_expression(evaluate(plan.f, 2), plan.bounds(), plan.generator, list(plan.axioms))
print()
print("with the series cut at q^2:", short.verdict, "|", short.reason)
