"""Formal expansion h(delta, B) = h0 + B^-1/2 h1 + B^-1 h2 + O(B^-3/2).

With a = tau + xi0 and c = delta - tau^2/2,

    h1 = d/dtau + 2 a c + 2 tau a^2
    h2 = tau d/dtau + c^2 + 4 tau a c + 3 tau^2 a^2

Rayleigh-Schroedinger perturbation around the ground state u0 of h0 gives
lambda1 = <u0, h1 u0> = -C1 and a second coefficient lambda2(delta) that is an
exact quadratic in delta.  Everything is evaluated with the discrete operators
of ``model_operator`` / ``collar``, so the expansion is consistent with the
discrete boundary-layer eigenvalue order by order.
"""

from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np

from .collar import apply_collar, collar_norm, collar_points
from .errors import HC3Error
from .model_operator import (DEFAULT_GRID, RegularizedResolvent, find_xi0,
                             ground_state)


def difference(v, spacing):
    """Central difference, forward at the Neumann end, v = 0 past the far end."""
    d = np.empty_like(v)
    d[1:-1] = (v[2:] - v[:-2]) / (2 * spacing)
    d[-1] = -v[-2] / (2 * spacing)
    d[0] = (v[1] - v[0]) / spacing
    return d


def apply_h1(delta, v, grid, xi0):
    tau = grid.nodes
    a = tau + xi0
    c = delta - 0.5 * tau * tau
    return difference(v, grid.spacing) + (2 * a * c + 2 * tau * a * a) * v


def apply_h2(delta, v, grid, xi0):
    tau = grid.nodes
    a = tau + xi0
    c = delta - 0.5 * tau * tau
    return (tau * difference(v, grid.spacing)
            + (c * c + 4 * tau * a * c + 3 * tau * tau * a * a) * v)


@dataclass(frozen=True)
class CorrectionPair:
    """First and second correctors u1, u2 (both orthogonal to u0)."""

    delta: float
    u1: np.ndarray = field(repr=False)
    u2: np.ndarray = field(repr=False)
    lambda2: float


def bump(x):
    """C-infinity cutoff: 1 on |x| <= 1/8, 0 on |x| >= 1/4."""
    y = np.clip(8.0 * np.abs(np.asarray(x, dtype=float)) - 1.0, 0.0, 1.0)

    def g(z):
        pos = z > 0
        out = np.zeros_like(z)
        out[pos] = np.exp(-1.0 / z[pos])
        return out

    left = g(1.0 - y)
    return left / (left + g(y))


@dataclass(frozen=True)
class TrialState:
    """chi_B (u0 + B^-1/2 u1 + B^-1 u2) on the collar grid."""

    delta: float
    B: float
    samples: np.ndarray = field(repr=False)
    predicted_eigenvalue: float
    spacing: float
    xi0: float

    def norm(self):
        return collar_norm(self.B, self.samples, self.spacing)

    def residual(self):
        """Weighted norm of (h(delta, B) - predicted) psi."""
        r = (apply_collar(self.delta, self.B, self.samples, self.spacing, self.xi0)
             - self.predicted_eigenvalue * self.samples)
        return collar_norm(self.B, r, self.spacing)


class ModelExpansion:
    """Ground state of h0, its regularized resolvent and the expansion coefficients."""

    def __init__(self, grid=DEFAULT_GRID):
        self.grid = grid
        self.xi0, self.theta0 = find_xi0(grid, extrapolate=False)
        self.u0 = ground_state(self.xi0, grid)
        self.resolvent = RegularizedResolvent(self.u0)

    def inner(self, f, g):
        return self.grid.inner(f, g)

    def h1(self, delta, v):
        return apply_h1(delta, v, self.grid, self.xi0)

    def h2(self, delta, v):
        return apply_h2(delta, v, self.grid, self.xi0)

    def lambda1_at(self, delta):
        u = self.u0.samples
        return self.inner(u, self.h1(delta, u))

    @cached_property
    def lambda1(self):
        return self.lambda1_at(0.0)

    @cached_property
    def I2(self):
        a = (self.grid.nodes + self.xi0) * self.u0.samples
        return self.inner(a, self.resolvent(a))

    def lambda2_parts(self, delta):
        """(<u0, h2 u0>, <u0, (h1 - lambda1) u1>)."""
        u = self.u0.samples
        f = self.h1(delta, u) - self.lambda1 * u
        u1 = -self.resolvent(f)
        return self.inner(u, self.h2(delta, u)), self.inner(u, self.h1(delta, u1) - self.lambda1 * u1)

    def lambda2(self, delta):
        return sum(self.lambda2_parts(delta))

    def correctors(self, delta):
        u = self.u0.samples
        l1 = self.lambda1
        u1 = -self.resolvent(self.h1(delta, u) - l1 * u)
        g = self.h1(delta, u1) - l1 * u1
        l2 = self.inner(u, self.h2(delta, u)) + self.inner(u, g)
        u2 = -self.resolvent(g + self.h2(delta, u) - l2 * u)
        return CorrectionPair(float(delta), u1, u2, l2)

    def quadratic(self, deltas=(-1.0, 0.0, 1.0)):
        """Coefficients (a2, a1, a0) of lambda2(delta) from three evaluations."""
        return quadratic_through(deltas, [self.lambda2(d) for d in deltas])

    def predicted(self, delta, B):
        eps = 1.0 / math.sqrt(B)
        return self.theta0 + self.lambda1 * eps + self.lambda2(delta) * eps * eps

    def trial_state(self, delta, B, cutoff="wall"):
        return build_trial_state(delta, B, self, cutoff)


def quadratic_through(xs, ys):
    """Exact quadratic (a2, a1, a0) through three points."""
    x0, x1, x2 = map(float, xs)
    y0, y1, y2 = map(float, ys)
    if len({x0, x1, x2}) != 3:
        raise ValueError("need three distinct abscissae")
    d01 = (y1 - y0) / (x1 - x0)
    d12 = (y2 - y1) / (x2 - x1)
    a2 = (d12 - d01) / (x2 - x0)
    a1 = d01 - a2 * (x0 + x1)
    a0 = y0 - a1 * x0 - a2 * x0 * x0
    return a2, a1, a0


def fit_delta0_C0(deltas, values):
    """Complete the square: lambda2 = a2 ((delta - delta0)^2 + C0).

    Returns ``(delta0, C0, a2)``.
    """
    a2, a1, a0 = quadratic_through(deltas, values)
    if abs(a2) < 1e-8:
        raise HC3Error(f"degenerate leading coefficient {a2:.3e}")
    delta0 = -a1 / (2 * a2)
    return delta0, a0 / a2 - delta0 * delta0, a2


def lambda2(delta, expansion):
    return expansion.lambda2(delta)


def build_trial_state(delta, B, expansion, cutoff="wall"):
    """Assemble the trial state on the collar grid of ``expansion.grid``.

    ``cutoff="wall"`` places the transition of ``bump`` in the last unit of
    tau before the Dirichlet wall at sqrt(B)/2; ``"scaled"`` uses
    chi(tau B^-1/4), whose transition sits inside the boundary layer unless B
    is astronomically large.
    """
    if B < 16:
        raise ValueError("trial state needs B >= 16")
    if abs(delta) > 10:
        raise ValueError("delta must satisfy |delta| <= 10")
    grid = expansion.grid
    h = grid.spacing
    n = collar_points(B, h)
    pair = expansion.correctors(delta)
    eps = 1.0 / math.sqrt(B)
    full = expansion.u0.samples + eps * pair.u1 + eps * eps * pair.u2
    body = np.zeros(n)
    m = min(n, full.size)
    body[:m] = full[:m]
    tau = np.arange(n) * h
    if cutoff == "wall":
        wall = n * h
        chi = bump(np.maximum(0.125 + (tau - (wall - 1.0)) / 8.0, 0.0))
    elif cutoff == "scaled":
        chi = bump(tau * B ** -0.25)
    else:
        raise ValueError(f"unknown cutoff {cutoff!r}")
    predicted = expansion.theta0 + expansion.lambda1 * eps + pair.lambda2 * eps * eps
    return TrialState(float(delta), float(B), chi * body, predicted, h, expansion.xi0)
