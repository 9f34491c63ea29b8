"""Local third critical field of the unit disc: solve lambda1(kappa H) = kappa^2."""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq

from .constants import default_constants
from .disc import lambda1
from .errors import BracketError


def asymptotic_field(kappa, constants=None):
    """kappa/Theta0 + C1/Theta0^(3/2): the two-term large-kappa field (k_max = 1)."""
    c = constants or default_constants()
    return kappa / c.theta0 + c.C1 / c.theta0 ** 1.5


@dataclass(frozen=True)
class CriticalFieldResult:
    kappa: float
    H: float
    residual: float
    bracket: tuple
    lower_local: float = math.nan
    upper_local: float = math.nan
    flagged: bool = False

    @property
    def asymptotic_gap(self):
        return self.H - asymptotic_field(self.kappa)

    def to_dict(self):
        return {"kappa": self.kappa, "H": self.H, "residual": self.residual,
                "lower_local": self.lower_local, "upper_local": self.upper_local,
                "asymptotic_gap": self.asymptotic_gap, "flagged": self.flagged}


def _excess(kappa, extrapolate=True, window=8):
    k2 = kappa * kappa
    return lambda H: lambda1(kappa * H, extrapolate=extrapolate, window=window) - k2


def _root(f, lo, hi, kappa):
    # lambda1 grows like B, so xtol ~ 1e-9 H keeps |residual| far below 1e-6 kappa^2
    return brentq(f, lo, hi, xtol=1e-12 * max(hi, 1.0), rtol=1e-13, maxiter=200)


def hc3_local(kappa, width=2.0, with_local_fields=False):
    """Root of lambda1(kappa H) = kappa^2 bracketed around the asymptotic guess."""
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    seed = asymptotic_field(kappa)
    lo, hi = max(seed - width, 1e-6), seed + width
    f = _excess(kappa)
    flo, fhi = f(lo), f(hi)
    if not (flo < 0 < fhi):
        raise BracketError(
            f"lambda1(kappa H) - kappa^2 does not cross zero on [{lo:.4g}, {hi:.4g}] "
            f"at kappa={kappa}; kappa is probably below the monotone regime")
    H = _root(f, lo, hi, kappa)
    lower = upper = math.nan
    flagged = False
    if with_local_fields:
        lower, upper = local_fields(kappa)
        flagged = abs(upper - lower) > 1e-6 * H
    return CriticalFieldResult(float(kappa), float(H), float(f(H)), (lo, hi),
                               lower, upper, flagged)


def scan_excess(kappa, step=0.05, span=3.0):
    """Coarse-grid lambda1(kappa H) - kappa^2 on the scan grid around the seed."""
    seed = asymptotic_field(kappa)
    Hs = np.arange(max(seed - span, step), seed + span + step / 2, step)
    # the window still widens itself if the minimum sits on its edge
    f = _excess(kappa, extrapolate=False, window=3)
    return Hs, np.array([f(H) for H in Hs])


def _refine(kappa, a, b):
    f = _excess(kappa)
    step = b - a
    for _ in range(6):
        if f(a) < 0 <= f(b):
            return _root(f, a, b, kappa)
        a, b = max(a - step, 1e-6), b + step
    raise BracketError(f"crossing near H={a:.4g} vanished under refinement")


def local_fields(kappa, step=0.05, span=3.0):
    """Lower and upper local fields.

    lower: first H (scanning upward) with lambda1(kappa H) >= kappa^2;
    upper: the last upward crossing seen scanning down from the top of the
    grid.  Both are refined by root finding on the extrapolated eigenvalue.
    """
    Hs, vals = scan_excess(kappa, step, span)
    if vals[-1] < 0 or not np.any(vals < 0):
        raise BracketError(f"no crossing of kappa^2 in the scan range at kappa={kappa}")
    above = vals >= 0
    first = int(np.argmax(above))
    below = np.nonzero(~above)[0]
    last = int(below[-1]) + 1
    lower = _refine(kappa, Hs[max(first - 1, 0)], Hs[first])
    upper = lower if last == first else _refine(kappa, Hs[last - 1], Hs[last])
    return float(lower), float(upper)


def detect_kappa0(kappas=None, step=0.05, span=3.0):
    """Smallest sampled kappa beyond which every sampled kappa has a single
    monotone crossing and coinciding local fields.

    Returns ``(kappa0, flagged)``; ``flagged`` is set when no sampled kappa
    qualifies and the sweep maximum is returned.
    """
    kappas = np.arange(2.0, 12.0 + 1e-9, 1.0) if kappas is None else np.asarray(kappas, float)
    good = []
    for k in kappas:
        Hs, vals = scan_excess(k, step, span)
        ok = bool(np.all(np.diff(vals) > 0)) and vals[0] < 0 < vals[-1]
        if ok:
            lo, hi = local_fields(k, step, span)
            ok = abs(hi - lo) <= 1e-6 * hi
        good.append(ok)
    k0 = None
    for k, ok in zip(reversed(kappas), reversed(good)):
        if not ok:
            break
        k0 = float(k)
    if k0 is None:
        return float(kappas[-1]), True
    return k0, False
