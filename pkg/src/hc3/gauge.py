"""Boundary (s, t) coordinates and the gauge normal form of the vector potential.

Near the boundary a point is written Phi(s, t) = gamma(s) + t * nu(s), with s
the arc length and nu the inward normal.  In a suitable gauge the tangential
potential becomes

    A1_bar(s, t) = gamma0 - t + t^2 k(s) / 2 + t^2 b(s, t),

gamma0 being the flux through the domain divided by the perimeter.  b vanishes
for a unit field.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Union
import math

import numpy as np

Curvature = Union[Callable[[np.ndarray], np.ndarray], np.ndarray]
Field = Union[float, Callable[[np.ndarray, np.ndarray], np.ndarray]]

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(32)


def _trig_coefficients(samples):
    return np.fft.rfft(np.asarray(samples, dtype=float)) / len(samples)


def _trig_eval(coef, count, s, period):
    """Evaluate the trigonometric interpolant of ``count`` uniform samples."""
    s = np.asarray(s, dtype=float)
    k = np.arange(coef.size)
    phase = np.exp(2j * np.pi * np.multiply.outer(s, k) / period)
    scale = np.full(coef.size, 2.0)
    scale[0] = 1.0
    if count % 2 == 0:
        scale[-1] = 1.0
    return np.real(phase @ (scale * coef))


@dataclass(frozen=True)
class BoundaryParametrization:
    """Arc-length description of a closed boundary through its curvature.

    ``curvature`` is either a callable of s (periodic with the perimeter) or
    uniform samples over one period, interpolated trigonometrically.
    """

    perimeter: float
    curvature: Curvature = field(repr=False)
    t0: float = 0.5
    resolution: int = 512

    def __post_init__(self):
        if not self.perimeter > 0:
            raise ValueError("perimeter must be positive")
        if not self.t0 > 0:
            raise ValueError("t0 must be positive")
        kmax = float(np.max(self.k(self._s_samples)))
        if 1.0 - self.t0 * kmax <= 0:
            raise ValueError(
                f"collar width t0={self.t0} violates 1 - t*k > 0 (max k = {kmax:.4g})")

    @classmethod
    def disc(cls, radius=1.0, t0=0.5):
        return cls(2 * math.pi * radius, lambda s: np.full(np.shape(s), 1.0 / radius), t0)

    @cached_property
    def _s_samples(self):
        n = len(self.curvature) if not callable(self.curvature) else self.resolution
        return np.arange(n) * self.perimeter / n

    @cached_property
    def _k_coef(self):
        if callable(self.curvature):
            return None
        return _trig_coefficients(self.curvature)

    def k(self, s):
        if callable(self.curvature):
            return np.broadcast_to(np.asarray(self.curvature(np.asarray(s, float)), float),
                                   np.shape(s)).copy()
        return _trig_eval(self._k_coef, len(self.curvature), s, self.perimeter)

    @cached_property
    def _curve(self):
        # tangent angle theta = pi/2 + (2 pi / P) s + periodic part; gamma is the
        # zero-mean antiderivative of the unit tangent
        P = self.perimeter
        s = self._s_samples
        n = s.size
        kk = self.k(s)
        if abs(kk.mean() * P - 2 * math.pi) > 1e-8:
            raise ValueError("total curvature must be 2*pi for a simple closed curve")
        freq = 2j * np.pi * np.fft.rfftfreq(n, d=P / n)
        kc = np.fft.rfft(kk - kk.mean())
        anti = np.zeros_like(kc)
        anti[1:] = kc[1:] / freq[1:]
        theta = 0.5 * np.pi + kk.mean() * s + np.fft.irfft(anti, n)
        tangent = np.stack([np.cos(theta), np.sin(theta)])
        gamma = []
        for comp in tangent:
            c = np.fft.rfft(comp)
            a = np.zeros_like(c)
            a[1:] = c[1:] / freq[1:]
            gamma.append(np.fft.irfft(a, n))
        return np.array(gamma), tangent

    def gamma(self, s):
        g, _ = self._curve
        n = g.shape[1]
        return np.array([_trig_eval(_trig_coefficients(c), n, s, self.perimeter) for c in g])

    def tangent(self, s):
        _, tg = self._curve
        n = tg.shape[1]
        return np.array([_trig_eval(_trig_coefficients(c), n, s, self.perimeter) for c in tg])

    def normal(self, s):
        """Inward unit normal (tangent rotated counter-clockwise)."""
        tx, ty = self.tangent(s)
        return np.array([-ty, tx])

    def point(self, s, t):
        s, t = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
        return self.gamma(s) + t * self.normal(s)

    def check_collar(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0) or np.any(t > self.t0):
            raise ValueError(f"t outside the collar [0, {self.t0}]")


def quadratic_form_weights(param, s, t):
    """Weights of the magnetic form in boundary coordinates.

    Returns ``(tangential, normal, measure)`` = ((1-tk)^-1, 1-tk, 1-tk): the
    tangential term carries (1-tk)^-2 times the measure.
    """
    param.check_collar(t)
    j = 1.0 - np.asarray(t, dtype=float) * param.k(s)
    return 1.0 / j, j, j


def disc_weights(t):
    """``quadratic_form_weights`` for the unit disc without the collar check."""
    j = 1.0 - np.asarray(t, dtype=float)
    return 1.0 / j, j, j


def _field_on(field_, x, y):
    if callable(field_):
        return np.asarray(field_(x, y), dtype=float)
    return np.full(np.broadcast(x, y).shape, float(field_))


def gamma0(field_, param=None):
    """Flux of ``curl A`` through the domain divided by the perimeter.

    ``field_`` is a constant or a callable ``curl(x, y)``; sampled fields are
    integrated over the star-shaped domain enclosed by ``param`` (default: unit
    disc) in polar-like coordinates about the curve's mean point.
    """
    param = param or BoundaryParametrization.disc()
    if not callable(field_):
        return float(field_) * _area(param) / param.perimeter
    n = 256
    s = np.arange(n) * param.perimeter / n
    g = param.gamma(s)
    tg = param.tangent(s)
    c = g.mean(axis=1, keepdims=True)
    rel = g - c
    jac = rel[0] * tg[1] - rel[1] * tg[0]
    rho = 0.5 * (_NODES + 1.0)
    wr = 0.5 * _WEIGHTS
    x = c[0, 0] + np.multiply.outer(rho, rel[0])
    y = c[1, 0] + np.multiply.outer(rho, rel[1])
    vals = _field_on(field_, x, y)
    inner = (wr * rho) @ vals
    return float(np.sum(inner * jac) * (param.perimeter / n) / param.perimeter)


def _area(param):
    n = 256
    s = np.arange(n) * param.perimeter / n
    x, y = param.gamma(s)
    tx, ty = param.tangent(s)
    return float(0.5 * np.sum(x * ty - y * tx) * param.perimeter / n)


def _field_st(field_, param, s, t):
    x, y = param.point(s, t)
    return _field_on(field_, x, y)


def _b_integral(field_, param, s, t):
    """-int_0^t (1 - t'k)(curl - 1) dt' for scalar s, t."""
    if t == 0:
        return 0.0
    tp = 0.5 * t * (_NODES + 1.0)
    k = param.k(np.array([s]))[0]
    curl = np.array([_field_st(field_, param, s, x) for x in tp]).ravel()
    return -0.5 * t * float(np.sum(_WEIGHTS * (1.0 - tp * k) * (curl - 1.0)))


def normal_form_A1(param, field_, s, t, g0=None):
    """Tangential potential A1_bar(s, t) in the gauge with A2_bar = 0."""
    if np.any(np.asarray(t) > param.t0 / 2) or np.any(np.asarray(t) < 0):
        raise ValueError(f"t must lie in the half-collar [0, {param.t0 / 2}]")
    g0 = gamma0(field_, param) if g0 is None else g0
    k = param.k(s)
    if not callable(field_):
        return g0 - float(field_) * (t - t * t * k / 2.0)
    base = g0 - t + t * t * k / 2.0
    s_arr, t_arr = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
    extra = np.array([_b_integral(field_, param, a, b)
                      for a, b in zip(s_arr.ravel(), t_arr.ravel())]).reshape(s_arr.shape)
    return base + extra


@dataclass(frozen=True)
class GaugeNormalForm:
    gamma0: float
    A1_bar: Callable = field(repr=False)
    b_bound: float


def gauge_normal_form(param, field_, n_s=32, n_t=24):
    """Build the normal form and measure sup |b| over the half-collar.

    b = (A1_bar - gamma0 + t - t^2 k/2) / t^2 is evaluated from the integral of
    (curl - 1), which avoids cancellation; its t -> 0 value comes from a
    one-sided quadratic fit through the smallest t samples.
    """
    g0 = gamma0(field_, param)
    A1 = lambda s, t: normal_form_A1(param, field_, s, t, g0)
    if not callable(field_):
        # b = (1 - c)(1/t - k/2) for curl = c: unbounded unless c = 1, since
        # the construction needs curl = 1 on the boundary
        return GaugeNormalForm(g0, A1, 0.0 if float(field_) == 1.0 else math.inf)
    ss = np.arange(n_s) * param.perimeter / n_s
    ts = np.linspace(0.0, param.t0 / 2, n_t + 1)[1:]
    worst = 0.0
    for s in ss:
        bs = np.array([_b_integral(field_, param, s, t) / t ** 2 for t in ts])
        b_at_0 = np.polyval(np.polyfit(ts[:3], bs[:3], 2), 0.0)
        worst = max(worst, float(np.max(np.abs(bs))), abs(float(b_at_0)))
    return GaugeNormalForm(g0, A1, worst)


def c1_norm(field_, param, n_s=32, n_t=16, h=1e-5):
    """Sup of |curl - 1| + |grad curl| over the collar (sampled)."""
    if not callable(field_):
        return abs(float(field_) - 1.0)
    ss = np.arange(n_s) * param.perimeter / n_s
    ts = np.linspace(0.0, param.t0, n_t)
    worst = 0.0
    for s in ss:
        x, y = param.point(s, ts)
        v = _field_on(field_, x, y) - 1.0
        gx = (_field_on(field_, x + h, y) - _field_on(field_, x - h, y)) / (2 * h)
        gy = (_field_on(field_, x, y + h) - _field_on(field_, x, y - h)) / (2 * h)
        worst = max(worst, float(np.max(np.abs(v) + np.hypot(gx, gy))))
    return worst
