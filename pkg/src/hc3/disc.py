"""Lowest magnetic Neumann eigenvalue lambda1(B) of the unit disc.

Two independent routes:

* the exact Fourier reduction: for angular momentum m the radial operator
  -(1/r)(r u')' + (m/r - B r/2)^2 on L^2((0, 1), r dr), Neumann at r = 1,
  discretized cell-centred (first centre at r = spacing/2, zero flux through
  the axis), with lambda1(B) = min over m;
* the boundary-coordinate problem: B * min over m of e_{delta(m, B), B}, the
  weighted collar operator of ``collar`` with delta(m, B) = m - B/2 - xi0 sqrt(B).

They agree up to exponentially small tunnelling through r < 1/2 and
discretization error.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import math
import os
import warnings

import numpy as np

from .collar import collar_bands
from .constants import default_constants
from .errors import BracketError, GridTooSmallError
from .model_operator import DEFAULT_GRID
from .tridiag import lowest_generalized


def default_cells(B):
    """Radial resolution: at least 100 cells per boundary-layer width B^-1/2."""
    return max(2001, int(math.ceil(100.0 * math.sqrt(max(B, 0.0)))))


def _radial_bands(m, B, n, h_form=None):
    """Cell-centred finite-volume bands; ``h_form`` gives the semiclassical form."""
    dr = 1.0 / n
    r = (np.arange(n) + 0.5) * dr
    faces = np.arange(1, n) * dr
    mass = dr * r
    if h_form is None:
        pot = (m / r - 0.5 * B * r) ** 2
        kin = 1.0
    else:
        pot = (h_form * m / r - 0.5 * r) ** 2
        kin = h_form * h_form
    diag = mass * pot
    diag[:-1] += kin * faces / dr
    diag[1:] += kin * faces / dr
    off = -kin * faces / dr
    return diag, off, mass, r


def _check_layer(B, n):
    inside = n / math.sqrt(B) if B > 0 else math.inf
    if inside < 10:
        raise GridTooSmallError(
            f"only {inside:.1f} cells across the boundary layer at B={B}; need >= 10")
    if inside < 20:
        warnings.warn(f"boundary layer at B={B} holds only {inside:.1f} cells", stacklevel=3)


@dataclass(frozen=True)
class RadialMode:
    m: int
    B: float
    eigenvalue: float
    radii: np.ndarray = field(repr=False)
    samples: np.ndarray = field(repr=False)


def radial_lowest(m, B, n=None, extrapolate=True):
    """Lowest eigenpair of the angular-momentum-m radial operator.

    With ``extrapolate`` the eigenvalue is Richardson-combined from ``n`` and
    ``2n`` cells; samples always come from the finest grid, normalized in
    L^2(r dr).
    """
    if B < 0:
        raise ValueError("B must be nonnegative")
    n = n or default_cells(B)
    _check_layer(B, n)
    d, e, mass, r = _radial_bands(m, B, n)
    lam, v = lowest_generalized(d, e, mass)
    if extrapolate:
        d2, e2, mass2, r = _radial_bands(m, B, 2 * n)
        fine, v = lowest_generalized(d2, e2, mass2)
        lam = (4.0 * fine - lam) / 3.0
        mass = mass2
    v = v / math.sqrt(float(np.sum(mass * v * v)))
    return RadialMode(int(m), float(B), float(lam), r, v)


def _fh_slope(m, B, n):
    d, e, mass, r = _radial_bands(m, B, n)
    lam, v = lowest_generalized(d, e, mass)
    dpot = -(m - 0.5 * B * r * r)
    return float(np.sum(mass * dpot * v * v) / np.sum(mass * v * v))


def branch_slope(m, B, n=None, extrapolate=True):
    """Feynman-Hellmann derivative d e_m / dB of the fixed-m branch."""
    n = n or default_cells(B)
    s = _fh_slope(m, B, n)
    if extrapolate:
        s = (4.0 * _fh_slope(m, B, 2 * n) - s) / 3.0
    return s


@lru_cache(maxsize=200_000)
def mode_eigenvalue(m, B, n=None, extrapolate=True):
    """Memoized eigenvalue only (bisection, no vector)."""
    n = n or default_cells(B)
    _check_layer(B, n)
    d, e, mass, _ = _radial_bands(m, B, n)
    lam = lowest_generalized(d, e, mass, vectors=False)
    if not extrapolate:
        return lam
    d, e, mass, _ = _radial_bands(m, B, 2 * n)
    return (4.0 * lowest_generalized(d, e, mass, vectors=False) - lam) / 3.0


def hform_eigenvalue(m, h, n, extrapolate=False):
    """Lowest eigenvalue of (-i h grad - F)^2 restricted to mode m."""
    d, e, mass, _ = _radial_bands(m, 0.0, n, h_form=h)
    lam = lowest_generalized(d, e, mass, vectors=False)
    if extrapolate:
        d, e, mass, _ = _radial_bands(m, 0.0, 2 * n, h_form=h)
        lam = (4.0 * lowest_generalized(d, e, mass, vectors=False) - lam) / 3.0
    return lam


def delta_m(m, B, xi0):
    return m - 0.5 * B - xi0 * math.sqrt(B)


def Delta_B(B, constants=None):
    """Distance of the lattice m - B/2 - xi0 sqrt(B) to delta0 (always in [0, 1/2])."""
    c = constants or default_constants()
    x = 0.5 * B + c.xi0 * math.sqrt(B) + c.delta0
    return abs(x - round(x))


def expansion_prediction(B, constants=None, oscillation=True):
    """Theta0 B - C1 sqrt(B) + 3 C1 sqrt(Theta0) (Delta_B^2 + C0)."""
    c = constants or default_constants()
    d2 = Delta_B(B, c) ** 2 if oscillation else 0.0
    return c.theta0 * B - c.C1 * math.sqrt(B) + c.curvature_coefficient * (d2 + c.C0)


@dataclass(frozen=True)
class DiscEigenvalue:
    B: float
    m_star: int
    lambda1: float
    delta_m: float
    Delta_B: float
    modes: dict = field(repr=False, default_factory=dict)

    def residual(self, constants=None, oscillation=True):
        return self.lambda1 - expansion_prediction(self.B, constants, oscillation)


def window_center(B, constants):
    return int(round(0.5 * B + constants.xi0 * math.sqrt(B) + constants.delta0))


def lambda1_disc(B, constants=None, window=8, n=None, extrapolate=True):
    """Minimize the radial eigenvalue over m around the predicted optimum."""
    if not B > 0:
        raise ValueError("B must be positive")
    c = constants or default_constants()
    centre = window_center(B, c)
    w = window
    for _ in range(4):
        modes = {m: mode_eigenvalue(m, float(B), n, extrapolate)
                 for m in range(centre - w, centre + w + 1)}
        m_star = min(modes, key=modes.get)
        if abs(m_star - centre) < w:
            deltas = [abs(delta_m(m, B, c.xi0) - c.delta0) for m in modes]
            return DiscEigenvalue(float(B), m_star, modes[m_star],
                                  delta_m(m_star, B, c.xi0), min(deltas), modes)
        w *= 2
    raise BracketError(f"minimizing m at B={B} stays on the window edge")


def lambda1(B, **kw):
    return lambda1_disc(B, **kw).lambda1


@dataclass(frozen=True)
class WeightedBoundaryProblem:
    delta: float
    B: float
    e: float


def e_delta_B(delta, B, spacing=None, xi0=None, shift=0.0, extrapolate=False):
    """Lowest eigenvalue of the collar operator h(delta, B)."""
    if B < 25:
        raise ValueError("boundary problem needs B >= 25")
    if abs(delta) > 10:
        raise ValueError("boundary problem needs |delta| <= 10")
    spacing = spacing or DEFAULT_GRID.spacing
    xi0 = default_constants().xi0 if xi0 is None else xi0
    d, e, mass = collar_bands(delta, B, spacing, xi0, shift)
    val = lowest_generalized(d, e, mass, vectors=False)
    if extrapolate:
        d, e, mass = collar_bands(delta, B, spacing / 2, xi0, shift)
        val = (4.0 * lowest_generalized(d, e, mass, vectors=False) - val) / 3.0
    return WeightedBoundaryProblem(float(delta), float(B), float(val))


def boundary_lambda1(B, constants=None, window=8, spacing=None, gauge_shift=0.0,
                     extrapolate=True):
    """B * min over m of e_{delta(m, B), B}; returns (value, m).

    ``gauge_shift`` adds a constant g/B to the tangential potential A1_bar;
    integer g is a gauge change (it relabels m), others change the field flux.
    """
    c = constants or default_constants()
    centre = window_center(B, c)
    shift = gauge_shift / math.sqrt(B)
    vals = {m: e_delta_B(delta_m(m, B, c.xi0), B, spacing, c.xi0, shift,
                         extrapolate).e
            for m in range(centre - window, centre + window + 1)}
    m = min(vals, key=vals.get)
    return B * vals[m], m


@dataclass(frozen=True)
class OneSidedDerivative:
    B: float
    right: float
    left: float
    quotient: float
    m_star: int
    m_after: int
    branch_slopes: dict
    switched: bool


def right_derivative(B, h_step=None, constants=None, tie=1e-9):
    """One-sided derivatives of lambda1 at B.

    ``right``/``left`` are the smallest/largest Feynman-Hellmann branch slopes
    among the modes attaining the minimum (within ``tie * B``): just to the
    right of a crossing the flatter branch wins.  ``quotient`` is the forward
    difference (lambda1(B + h) - lambda1(B)) / h; when the minimizing mode
    changes inside the step ``switched`` is set and both branch slopes are in
    ``branch_slopes``.
    """
    c = constants or default_constants()
    h_step = h_step or 1e-3 * math.sqrt(B)
    here = lambda1_disc(B, c)
    there = lambda1_disc(B + h_step, c)
    low = here.lambda1
    tied = [m for m, v in here.modes.items() if v - low <= tie * max(B, 1.0)]
    candidates = set(tied) | {there.m_star}
    slopes = {m: branch_slope(m, B) for m in sorted(candidates)}
    tied_slopes = [slopes[m] for m in tied]
    return OneSidedDerivative(
        float(B), min(tied_slopes), max(tied_slopes),
        (there.lambda1 - low) / h_step, here.m_star, there.m_star, slopes,
        there.m_star != here.m_star)


@dataclass(frozen=True)
class DecayFit:
    B: float
    slope: float
    points: int


def decay_profile(B, constants=None, lo=1e-8, hi=1e-2, n=None):
    """Fit log|f| against sqrt(B)(1 - r) on the inward flank of the ground state."""
    if B < 100:
        raise ValueError("decay fit needs B >= 100")
    res = lambda1_disc(B, constants)
    mode = radial_lowest(res.m_star, B, n)
    f = np.abs(mode.samples) / np.max(np.abs(mode.samples))
    x = math.sqrt(B) * (1.0 - mode.radii)
    peak = x[np.argmax(f)]
    sel = (f >= lo) & (f <= hi) & (x > peak)
    if sel.sum() < 8 or np.log10(f[sel].max() / f[sel].min()) < 3:
        raise ValueError(f"insufficient dynamic range for the decay fit at B={B}")
    slope = np.polyfit(x[sel], np.log(f[sel]), 1)[0]
    return DecayFit(float(B), float(slope), int(sel.sum()))


def interior_mass(B, radius=0.5, constants=None, n=None):
    """Fraction of ||f||^2 (in r dr) carried by r < radius."""
    res = lambda1_disc(B, constants)
    mode = radial_lowest(res.m_star, B, n)
    w = mode.radii * mode.samples ** 2
    return float(w[mode.radii < radius].sum() / w.sum())


def detect_B0(Bs, values=None):
    """Smallest sampled B after which the sampled lambda1 is strictly increasing."""
    Bs = np.asarray(Bs, dtype=float)
    vals = np.array([lambda1(b) for b in Bs]) if values is None else np.asarray(values)
    ok = np.diff(vals) > 0
    bad = np.nonzero(~ok)[0]
    return float(Bs[0]) if bad.size == 0 else float(Bs[bad[-1] + 1])


SWEEP_COLUMNS = ("B", "m_star", "lambda1", "delta_m", "Delta_B", "residual",
                 "right_derivative")


def threads_from_env(default=1):
    try:
        return max(1, int(os.environ.get("HC3_THREADS", default)))
    except ValueError:
        return default


def sweep_row(B, constants=None, n=None):
    c = constants or default_constants()
    res = lambda1_disc(B, c, n=n)
    d = right_derivative(B, constants=c)
    return {"B": float(B), "m_star": res.m_star, "lambda1": res.lambda1,
            "delta_m": res.delta_m, "Delta_B": res.Delta_B,
            "residual": res.residual(c), "right_derivative": d.right}


def sweep(Bs, constants=None, n=None, threads=None, progress=None):
    """One row per B, in input order, optionally solved on a thread pool."""
    from concurrent.futures import ThreadPoolExecutor

    c = constants or default_constants()
    threads = threads or threads_from_env()
    Bs = list(Bs)

    def work(item):
        i, B = item
        row = sweep_row(B, c, n)
        if progress:
            progress(i + 1, len(Bs), B)
        return row

    if threads == 1:
        return [work(x) for x in enumerate(Bs)]
    with ThreadPoolExecutor(threads) as ex:
        return list(ex.map(work, enumerate(Bs)))
