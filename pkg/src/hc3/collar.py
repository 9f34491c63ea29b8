"""The disc's boundary-layer operator h(delta, B) on (0, sqrt(B)/2).

After t = 1 - r, tau = sqrt(B) t and a Fourier mode in s, the magnetic form on
the collar 1/2 < r < 1 becomes

    q[phi] = int (1 - tau/sqrt(B))^-1 ((tau + xi0) + B^-1/2 (delta - tau^2/2))^2 phi^2
             + (1 - tau/sqrt(B)) phi'^2  dtau

on L^2((1 - tau/sqrt(B)) dtau), Neumann at 0 and Dirichlet at sqrt(B)/2.  The
discretization is the weighted analogue of the one in ``model_operator``
(nodes i*h, flux weights at midpoints, trapezoid mass), so with eps = B^-1/2
it equals exactly

    -Lap_h + eps (1 - eps tau)^-1 D + (1 - eps tau)^-2 (a + eps c)^2,

where D is the central difference (forward at tau = 0).  That identity is
what makes the discrete perturbation expansion hold order by order.
"""

import math

import numpy as np

from .gauge import disc_weights


def collar_points(B, spacing):
    """Number of unknowns on (0, sqrt(B)/2) with the wall at ``points*spacing``."""
    return max(16, int(round(0.5 * math.sqrt(B) / spacing)))


def collar_nodes(B, spacing):
    return np.arange(collar_points(B, spacing)) * spacing


def _potential(delta, B, tau, xi0, shift=0.0):
    eps = 1.0 / math.sqrt(B)
    return ((tau + xi0) + eps * (delta - 0.5 * tau * tau) + shift) ** 2


def collar_bands(delta, B, spacing, xi0, shift=0.0):
    """Stiffness bands and mass of the generalized problem ``K v = e M v``.

    ``shift`` adds a constant to the scaled tangential potential (a gauge
    change when it is an integer multiple of B^-1/2).
    """
    n = collar_points(B, spacing)
    h = spacing
    tau = np.arange(n) * h
    eps = 1.0 / math.sqrt(B)
    faces = (np.arange(n) + 0.5) * h
    tangential, _, measure = disc_weights(eps * tau)
    _, normal_face, _ = disc_weights(eps * faces)
    if np.any(measure <= 0) or np.any(normal_face <= 0):
        raise AssertionError("collar weight must stay positive for tau < sqrt(B)")
    c = np.full(n, h)
    c[0] = 0.5 * h
    flux = normal_face / h
    diag = c * tangential * _potential(delta, B, tau, xi0, shift)
    diag += flux
    diag[1:] += flux[:-1]
    off = -flux[:-1]
    return diag, off, c * measure


def apply_collar(delta, B, v, spacing, xi0):
    """Apply the discrete h(delta, B) (i.e. M^-1 K) to ``v`` on the collar grid."""
    diag, off, mass = collar_bands(delta, B, spacing, xi0)
    out = diag * v
    out[:-1] += off * v[1:]
    out[1:] += off * v[:-1]
    return out / mass


def collar_norm(B, v, spacing):
    """Norm in L^2((1 - tau/sqrt(B)) dtau) on the collar grid."""
    n = v.size
    tau = np.arange(n) * spacing
    c = np.full(n, spacing)
    c[0] = 0.5 * spacing
    return math.sqrt(float(np.sum(c * (1.0 - tau / math.sqrt(B)) * v * v)))
