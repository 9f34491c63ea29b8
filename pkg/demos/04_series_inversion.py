"""Invert the eigenvalue series for the critical field term by term.

The zeta coefficients are not known in closed form; here they are made up to
show the machinery, and the result is resubstituted to check it.
"""

from hc3 import ExpansionInputs, default_constants, invert_critical_field
from hc3.series import bernoff_sternberg, resubstitution_residual

inputs = ExpansionInputs.from_constants(default_constants(), k_max=1.0, k2=0.5,
                                        zeta=(0.2, -0.1, 0.05))
res = invert_critical_field(inputs, M=6)

print("H(kappa) =")
for e, c in res.H_terms():
    print(f"   {c:+.10f} kappa^({e})")

print("\nBernoff-Sternberg:")
for e, c in bernoff_sternberg(inputs).items():
    print(f"   {c:+.10f} kappa^({e})")

worst = max((abs(c) for _, c in resubstitution_residual(inputs, res)), default=0.0)
print(f"\nlargest resubstitution coefficient: {worst:.1e}")
