"""Checking the Lambert-series identities, then breaking one on purpose."""
from etaq import prover
from etaq.expr import evaluate
from etaq.series import format_series

# The registry holds every identity with a stable id.
for st in prover.registry()[:9]:
    print(f"{st.id:6} {st.proof_mode:11} {st.title}")

# eq1.4: the left side is a Lambert series quotient, the right side j1 + 1.
st = prover.lookup("eq1.4")
print()
print("lhs =", format_series(evaluate(st.lhs, 5)))
cert = prover.verify(st)
print(cert.verdict, "via", cert.poly.format("h"))
for ax in cert.axioms:
    print("  assumes:", ax)

# Identities without a modular route are only checked to a depth.
cert = prover.verify(prover.lookup("eq1.6"), 100)
print()
print("eq1.6:", cert.verdict, cert.window)

# Add 1 to the q^7 coefficient of the right side and watch it fail there.
bad = prover.verify(st.perturbed(7))
print("perturbed eq1.4:", bad.verdict, bad.failure)

# Everything at once.
print()
print(prover.reproduce_paper(200).render())
