"""Lowest eigenvalue of the unit disc in a strong field.

Compares lambda1(B) with the three-term expansion plus the oscillating
Delta_B^2 correction and shows what is lost without the oscillation.
"""

import math

from hc3 import default_constants, lambda1_disc, right_derivative
from hc3.disc import boundary_lambda1, decay_profile

c = default_constants()
print(f"{'B':>6} {'m*':>5} {'lambda1':>14} {'Delta_B':>8} {'r sqrt(B)':>10} {'no osc':>10}")
for B in (100, 200, 400, 800, 1600):
    res = lambda1_disc(B)
    r = res.residual() * math.sqrt(B)
    r0 = res.residual(oscillation=False) * math.sqrt(B)
    print(f"{B:6d} {res.m_star:5d} {res.lambda1:14.8f} {res.Delta_B:8.4f} {r:10.4f} {r0:10.4f}")

# the boundary-coordinate problem gives the same number
val, m = boundary_lambda1(400)
print(f"\nboundary route at B=400: {val:.8f} (m={m})")

# one-sided derivative stays above Theta0 - 3/2 C1 |xi0|
d = right_derivative(400.0)
print(f"right derivative at 400: {d.right:.4f}  bound {c.theta0 - 1.5 * c.C1 * abs(c.xi0):.4f}")

# the ground state lives in a layer of width B^-1/2
for B in (100, 400, 1600):
    print(f"decay slope at B={B}: {decay_profile(B).slope:.3f}")
