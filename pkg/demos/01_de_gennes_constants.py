"""The half-line model operator and its constants.

Walks through mu(zeta), its minimum, the boundary value of the ground state
and the second-order coefficient lambda2(delta).
"""

import numpy as np

from hc3 import default_constants, ground_state, mu

# mu(zeta) dips below 1 for negative zeta; the minimum is Theta0
for z in np.linspace(-2.0, 0.5, 6):
    print(f"mu({z:+.2f}) = {mu(z):.8f}")

c = default_constants()
print(f"\nxi0    = {c.xi0:.10f}")
print(f"Theta0 = {c.theta0:.10f}   xi0^2 = {c.xi0 ** 2:.10f}")
print(f"C1     = {c.C1:.10f}")

u = ground_state(c.xi0)
print(f"u0(0)  = {u.boundary_value:.8f}   sqrt(3 C1) = {np.sqrt(3 * c.C1):.8f}")

# lambda2 is an exact parabola in delta with vertex (delta0, a2 C0)
print(f"\ndelta0 = {c.delta0:.8f}, C0 = {c.C0:.8f}")
for d in (-1.0, 0.0, c.delta0, 1.0):
    print(f"lambda2({d:+.4f}) = {c.lambda2(d):+.8f}")
