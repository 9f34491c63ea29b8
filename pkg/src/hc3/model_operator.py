"""The de Gennes operator h(zeta) = -d^2/dtau^2 + (tau + zeta)^2 on the half-line.

Discretized by second-order finite differences on tau_i = i * spacing with a
Neumann condition at tau = 0 (ghost-node reflection) and a Dirichlet wall one
spacing past the last node.  The discrete operator is symmetric for the
trapezoid inner product, which is the inner product used everywhere below.
"""

from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.optimize import brentq

from .errors import BracketError, ConvergenceError, GridTooSmallError
from .tridiag import lowest_generalized

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class HalfLineGrid:
    """Uniform grid on [0, length] with ``points`` nodes."""

    length: float = 20.0
    points: int = 4001

    def __post_init__(self):
        if not self.length > 0:
            raise GridTooSmallError(f"length must be positive, got {self.length}")
        if self.points < 16:
            raise GridTooSmallError(f"need at least 16 points, got {self.points}")

    @property
    def spacing(self):
        return self.length / (self.points - 1)

    @cached_property
    def nodes(self):
        return np.arange(self.points) * self.spacing

    @cached_property
    def weights(self):
        """Trapezoid weights (the wall node past the end carries a zero)."""
        w = np.full(self.points, self.spacing)
        w[0] = 0.5 * self.spacing
        return w

    def refined(self, factor=2):
        """Same length, spacing divided by ``factor``."""
        return HalfLineGrid(self.length, factor * (self.points - 1) + 1)

    def inner(self, f, g):
        return float(np.sum(self.weights * f * g))

    def norm(self, f):
        return math.sqrt(self.inner(f, f))


DEFAULT_GRID = HalfLineGrid()


def _check_grid(zeta, grid):
    wall = (grid.length + zeta) ** 2
    need = 4.0 * max(1.0, zeta * zeta)
    if grid.length + zeta <= 0 or wall < need:
        raise GridTooSmallError(
            f"potential {wall:.3g} at tau=L is below {need:.3g}; increase the length")


def laplacian(v, grid):
    """-v'' with the Neumann reflection at 0 and v = 0 past the last node."""
    h = grid.spacing
    up = np.empty_like(v)
    up[:-1] = v[1:]
    up[-1] = 0.0
    down = np.empty_like(v)
    down[1:] = v[:-1]
    down[0] = v[1]
    return (2.0 * v - up - down) / (h * h)


def apply_h0(zeta, v, grid):
    tau = grid.nodes
    return laplacian(v, grid) + (tau + zeta) ** 2 * v


def _bands(zeta, grid):
    h = grid.spacing
    c = grid.weights
    diag = c * (2.0 / h ** 2 + (grid.nodes + zeta) ** 2)
    off = np.full(grid.points - 1, -1.0 / h)
    return diag, off, c


def _richardson(f, grid, extrapolate):
    if not extrapolate:
        return f(grid)
    return (4.0 * f(grid.refined(2)) - f(grid)) / 3.0


def _mu_raw(zeta, grid):
    _check_grid(zeta, grid)
    diag, off, c = _bands(zeta, grid)
    return lowest_generalized(diag, off, c, vectors=False)


def mu(zeta, grid=DEFAULT_GRID, extrapolate=True):
    """Lowest eigenvalue of h(zeta).

    With ``extrapolate`` the O(spacing^2) error is cancelled by combining
    ``grid`` and its refinement; otherwise this is the discrete eigenvalue.
    """
    return _richardson(lambda g: _mu_raw(zeta, g), grid, extrapolate)


@dataclass(frozen=True)
class GroundMode:
    """Normalized positive ground state of h(zeta) on a grid."""

    zeta: float
    mu: float
    samples: np.ndarray = field(repr=False)
    grid: HalfLineGrid = DEFAULT_GRID

    @property
    def boundary_value(self):
        return float(self.samples[0])

    def residual(self):
        """Discrete eigen-residual norm ||h u - mu u||."""
        r = apply_h0(self.zeta, self.samples, self.grid) - self.mu * self.samples
        return self.grid.norm(r)


def ground_state(zeta, grid=DEFAULT_GRID):
    _check_grid(zeta, grid)
    diag, off, c = _bands(zeta, grid)
    lam, u = lowest_generalized(diag, off, c)
    u = u / grid.norm(u)
    mode = GroundMode(float(zeta), lam, u, grid)
    if mode.residual() > 1e-8:
        raise ConvergenceError(f"eigen-residual {mode.residual():.2e} at zeta={zeta}")
    return mode


def _mu_derivative_raw(zeta, grid):
    u = ground_state(zeta, grid)
    return 2.0 * grid.inner((grid.nodes + zeta) * u.samples, u.samples)


def mu_derivative(zeta, grid=DEFAULT_GRID, extrapolate=True):
    """d mu / d zeta = 2 <(tau + zeta) u, u> (exact for the discrete eigenvalue)."""
    return _richardson(lambda g: _mu_derivative_raw(zeta, g), grid, extrapolate)


def golden_section(f, a, b, width):
    """Minimize a unimodal ``f`` on [a, b]; returns the final bracket."""
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > width:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
    return a, b


def find_xi0(grid=DEFAULT_GRID, tol=1e-13, bracket=(-2.0, 0.0), extrapolate=True):
    """Locate the minimizer xi0 of mu and return ``(xi0, theta0)``.

    Golden-section search narrows ``bracket`` to width 1e-3; the minimizer is
    then the zero of the Feynman-Hellmann derivative, found to ``tol``.  Values
    of mu alone only pin xi0 to about the square root of the eigenvalue
    round-off, which is not enough for Theta0 = xi0^2 at 1e-6.

    ``extrapolate=False`` returns the minimizer of the discrete eigenvalue on
    ``grid`` itself, which the discrete perturbation expansion relies on.
    """
    lo, hi = bracket
    f = lambda z: _mu_raw(z, grid)
    mid = 0.5 * (lo + hi)
    if not (f(lo) > f(mid) < f(hi)):
        raise BracketError(f"mu has no interior minimum on [{lo}, {hi}]")
    a, b = golden_section(f, lo, hi, 1e-3)
    a, b = a - 1e-3, b + 1e-3
    g = lambda z: mu_derivative(z, grid, extrapolate)
    if g(a) > 0 or g(b) < 0:
        raise BracketError("derivative of mu does not change sign near the minimum")
    xi0 = brentq(g, a, b, xtol=tol, rtol=4 * np.finfo(float).eps)
    return xi0, mu(xi0, grid, extrapolate)


def compute_C1(u0):
    """C1 = u0(0)^2 / 3, with ``u0`` renormalized by its own trapezoid norm."""
    u = np.asarray(u0.samples, dtype=float)
    return (u[0] / u0.grid.norm(u)) ** 2 / 3.0


class RegularizedResolvent:
    """Inverse of (h0 - Theta0) on the complement of u0, zero on u0.

    The singular system is bordered with the orthogonality constraint and
    factorized once; each call is then a sparse triangular solve.
    """

    def __init__(self, u0):
        self.u0 = u0
        grid = u0.grid
        h = grid.spacing
        c = grid.weights
        main = c * (2.0 / h ** 2 + (grid.nodes + u0.zeta) ** 2 - u0.mu)
        off = np.full(grid.points - 1, -1.0 / h)
        stiff = sp.diags([off, main, off], [-1, 0, 1], format="csr")
        border = sp.csr_matrix((c * u0.samples)[:, None])
        system = sp.bmat([[stiff, border], [border.T, None]], format="csc")
        try:
            self._lu = spla.splu(system)
        except RuntimeError as exc:
            raise ConvergenceError("bordered resolvent system is singular") from exc

    def project(self, phi):
        g = self.u0.grid
        return phi - g.inner(phi, self.u0.samples) * self.u0.samples

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        g = self.u0.grid
        rhs = np.append(g.weights * self.project(phi), 0.0)
        w = self._lu.solve(rhs)[:-1]
        if not np.all(np.isfinite(w)):
            raise ConvergenceError("resolvent solve produced non-finite values")
        return w


def regularized_resolvent(phi, u0):
    """One-shot ``RegularizedResolvent(u0)(phi)``; reuse the class for many solves."""
    return RegularizedResolvent(u0)(phi)
