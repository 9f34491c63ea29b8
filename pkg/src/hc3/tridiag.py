"""Lowest eigenpair of symmetric tridiagonal (and diagonal-mass) pencils.

The eigenvalue comes from Sturm-sequence bisection (LAPACK ``stebz`` through
scipy); the eigenvector from inverse iteration with a shift placed just
below it.  Below the lowest eigenvalue ``T - sigma`` is a positive definite
M-matrix when the off-diagonal is nonpositive, so its inverse is entrywise
positive and the ground state comes out strictly positive, with no sign noise
in the far tail.
"""

import numpy as np
from scipy.linalg import eigh_tridiagonal, solveh_banded

from .errors import ConvergenceError


def sturm_count(diag, off, x):
    """Number of eigenvalues of the tridiagonal matrix strictly below ``x``."""
    diag = np.asarray(diag, dtype=float)
    off2 = np.asarray(off, dtype=float) ** 2
    tiny = np.finfo(float).tiny
    count = 0
    q = diag[0] - x
    if q < 0:
        count += 1
    for i in range(1, diag.size):
        if q == 0.0:
            q = tiny
        q = diag[i] - x - off2[i - 1] / q
        if q < 0:
            count += 1
    return count


def lowest_eigenvalue(diag, off):
    """Smallest eigenvalue by bisection."""
    # a positive tolerance overrides LAPACK's eps * ||T|| default, which is far
    # too loose when a centrifugal term makes the diagonal huge near an axis
    w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                         select_range=(0, 0), lapack_driver="stebz",
                         tol=np.finfo(float).tiny)
    if w.size != 1 or not np.isfinite(w[0]):
        raise ConvergenceError("bisection did not return the lowest eigenvalue")
    return float(w[0])


def _inverse_iteration(diag, off, lam, maxiter=8, tol=1e-12):
    n = diag.size
    sigma = lam - 1e-9 * max(1.0, abs(lam))
    ab = np.zeros((2, n))
    ab[0, 1:] = off
    ab[1] = diag - sigma
    x = np.ones(n) / np.sqrt(n)
    for _ in range(maxiter):
        try:
            y = solveh_banded(ab, x, lower=False, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("shifted matrix is not positive definite") from exc
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) <= tol:
            return y
        x = y
    return x


def lowest_eigenpair(diag, off):
    """Return ``(lam, v)`` with ``v`` unit-norm and positive when ``off <= 0``."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    lam = lowest_eigenvalue(diag, off)
    v = _inverse_iteration(diag, off, lam)
    if v.sum() < 0:
        v = -v
    tv = diag * v
    tv[:-1] += off * v[1:]
    tv[1:] += off * v[:-1]
    return float(v @ tv), v


def symmetrize(stiff_diag, stiff_off, mass):
    """Reduce ``K v = e M v`` (``M`` diagonal) to a standard tridiagonal problem."""
    s = 1.0 / np.sqrt(mass)
    return stiff_diag * s * s, stiff_off * s[:-1] * s[1:], s


def lowest_generalized(stiff_diag, stiff_off, mass, vectors=True):
    """Lowest eigenpair of ``K v = e M v``; ``v`` is returned unnormalized.

    Without ``vectors`` only the eigenvalue is computed.
    """
    d, e, s = symmetrize(np.asarray(stiff_diag, float),
                         np.asarray(stiff_off, float),
                         np.asarray(mass, float))
    if not vectors:
        return lowest_eigenvalue(d, e)
    lam, y = lowest_eigenpair(d, e)
    return lam, y * s
