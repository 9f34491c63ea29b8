"""Truncated Puiseux series on the X^(1/8) lattice and the large-kappa inversion
of lambda1(kappa H) = kappa^2.

Exponents are stored as integers counting eighths.  Coefficients live in plain
lists, so the same code runs on floats and on ``fractions.Fraction``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import csv
import math

from .errors import HC3Error

STEP = Fraction(1, 8)


def _eighths(exponent):
    q = Fraction(exponent) / STEP
    if q.denominator != 1:
        raise ValueError(f"exponent {exponent} is not on the 1/8 lattice")
    return int(q)


def _is_zero(c):
    return c == 0


@dataclass(frozen=True)
class PuiseuxSeries:
    """sum_k coeffs[k] X^((low + k)/8), all terms above ``top``/8 dropped."""

    low: int
    coeffs: tuple
    top: int

    def __post_init__(self):
        c = list(self.coeffs)[: max(self.top - self.low + 1, 0)]
        low = self.low
        while c and _is_zero(c[0]):
            c.pop(0)
            low += 1
        while c and _is_zero(c[-1]):
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "low", low if c else self.top + 1)

    @classmethod
    def from_terms(cls, terms, truncation):
        """Build from ``{exponent: coefficient}`` with exponents in X (rational)."""
        top = _eighths(truncation)
        idx = {_eighths(e): c for e, c in terms.items()}
        idx = {k: v for k, v in idx.items() if k <= top}
        if not idx:
            return cls(top + 1, (), top)
        lo = min(idx)
        zero = 0 * next(iter(idx.values()))
        return cls(lo, tuple(idx.get(k, zero) for k in range(lo, max(idx) + 1)), top)

    @classmethod
    def constant(cls, value, truncation):
        return cls.from_terms({0: value}, truncation)

    @property
    def truncation(self):
        return Fraction(self.top, 8)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def valuation(self):
        return Fraction(self.low, 8)

    def coefficient(self, exponent):
        k = _eighths(exponent) - self.low
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def terms(self):
        return [(Fraction(self.low + k, 8), c) for k, c in enumerate(self.coeffs)
                if not _is_zero(c)]

    def _check(self, other):
        if self.top != other.top:
            raise HC3Error(f"truncation mismatch: {self.truncation} vs {other.truncation}")

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self + PuiseuxSeries.constant(other, self.truncation)
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = []
        for k in range(lo, hi):
            out.append(_get(self, k) + _get(other, k))
        return PuiseuxSeries(lo, tuple(out), self.top)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return PuiseuxSeries(self.low, tuple(factor * c for c in self.coeffs), self.top)

    def shift(self, exponent, truncation=None):
        """Multiply by X^exponent; the truncation moves along unless given."""
        e = _eighths(exponent)
        top = self.top + e if truncation is None else _eighths(truncation)
        return PuiseuxSeries(self.low + e, self.coeffs, top)

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other)
        self._check(other)
        if self.is_zero or other.is_zero:
            return PuiseuxSeries(self.top + 1, (), self.top)
        lo = self.low + other.low
        size = min(len(self.coeffs) + len(other.coeffs) - 1, self.top - lo + 1)
        if size <= 0:
            return PuiseuxSeries(self.top + 1, (), self.top)
        out = [0 * self.coeffs[0]] * size
        for i, a in enumerate(self.coeffs[:size]):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs[: size - i]):
                out[i + j] = out[i + j] + a * b
        return PuiseuxSeries(lo, tuple(out), self.top)

    __rmul__ = __mul__


def _get(s, k):
    i = k - s.low
    return s.coeffs[i] if 0 <= i < len(s.coeffs) else 0


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_scale(a, factor):
    return a.scale(factor)


def binomial(alpha, k):
    """Generalized binomial coefficient; exact for Fraction alpha."""
    out = Fraction(1) if isinstance(alpha, (int, Fraction)) else 1.0
    for i in range(k):
        out = out * (alpha - i) / (i + 1)
    return out


def fractional_power(s, alpha):
    """(1 + s)^alpha as a binomial series; ``s`` must have positive valuation."""
    if s.is_zero:
        return PuiseuxSeries.constant(1, s.truncation)
    if s.low <= 0:
        raise HC3Error("fractional_power needs a series of strictly positive valuation")
    alpha = Fraction(alpha) if isinstance(alpha, (int, Fraction)) else alpha
    exact = isinstance(s.coeffs[0], Fraction)
    one = Fraction(1) if exact else 1.0
    total = PuiseuxSeries.constant(one, s.truncation)
    term = PuiseuxSeries.constant(one, s.truncation)
    for k in range(1, s.top // s.low + 1):
        term = term * s
        if term.is_zero:
            break
        c = binomial(alpha, k)
        total = total + term.scale(c if exact else float(c))
    return total


def real_power(x, e):
    """x^e, kept exact when x is a Fraction and the result is rational."""
    e = Fraction(e)
    if isinstance(x, Fraction):
        if x == 1:
            return Fraction(1)
        if e.denominator == 1:
            return x ** int(e)
        num = _exact_root(x.numerator, e.denominator)
        den = _exact_root(x.denominator, e.denominator)
        if num is not None and den is not None:
            return Fraction(num, den) ** e.numerator
    return float(x) ** float(e)


def _exact_root(n, k):
    r = round(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == n:
            return c
    return None


@dataclass(frozen=True)
class ExpansionInputs:
    """Data of the large-field eigenvalue expansion.

    lambda1(B) = Theta0 B - C1 k_max B^(1/2) + C1 Theta0^(1/4) sqrt(3 k2 / 2) B^(1/4)
                 + sum_j zeta_j B^((1 - j)/8)
    """

    theta0: object
    C1: object
    k_max: object = 1
    k2: object = 0
    zeta: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not 0.5 < self.theta0 < 1:
            raise ValueError("theta0 must lie in (1/2, 1)")
        if not self.C1 > 0:
            raise ValueError("C1 must be positive")
        if self.k2 < 0:
            raise ValueError("k2 must be nonnegative")
        object.__setattr__(self, "zeta", tuple(self.zeta))

    @classmethod
    def from_constants(cls, constants, k_max=1.0, k2=0.0, zeta=()):
        return cls(constants.theta0, constants.C1, k_max, k2, zeta)

    @property
    def sqrt_3k2_half(self):
        return real_power(Fraction(3, 2) * self.k2 if isinstance(self.k2, (int, Fraction))
                          else 1.5 * self.k2, Fraction(1, 2))

    def zeta_at(self, j):
        return self.zeta[j] if j < len(self.zeta) else 0


def _order_top(M):
    # eta_M multiplies kappa^(-7/4 - M/4)
    return Fraction(7, 4) + Fraction(M, 4)


def lambda_series(inputs, M):
    """lambda1 as a series in Y = 1/B: {exponent in Y: coefficient}."""
    s = inputs.sqrt_3k2_half
    terms = {Fraction(-1): inputs.theta0,
             Fraction(-1, 2): -inputs.C1 * inputs.k_max,
             Fraction(-1, 4): inputs.C1 * real_power(inputs.theta0, Fraction(1, 4)) * s}
    for j in range(M + 1):
        e = Fraction(j - 1, 8)
        terms[e] = terms.get(e, 0) + inputs.zeta_at(j)
    return terms


def mu_series(inputs, M):
    """mu1(h) of the semiclassical operator as {exponent in h: coefficient}."""
    s = inputs.sqrt_3k2_half
    terms = {Fraction(1): inputs.theta0,
             Fraction(3, 2): -inputs.C1 * inputs.k_max,
             Fraction(7, 4): inputs.C1 * real_power(inputs.theta0, Fraction(1, 4)) * s}
    for j in range(M + 1):
        e = Fraction(15 + j, 8)
        terms[e] = terms.get(e, 0) + inputs.zeta_at(j)
    return terms


def lambda_from_mu(mu_terms):
    """lambda1(B) = B^2 mu1(1/B): shift every exponent in h = Y by -2."""
    return {e - 2: c for e, c in mu_terms.items()}


def _residual_series(lam_terms, P, theta0):
    """lambda1(kappa^2 P / Theta0) / kappa^2 - 1 as a series in X = 1/kappa.

    A term c Y^e of lambda1 becomes c Theta0^e X^(2 + 2e) P^(-e).
    """
    trunc = P.truncation
    one = P.constant(1, trunc)
    rest = P - one
    total = P.constant(-1, trunc)
    for e, c in sorted(lam_terms.items()):
        if _is_zero(c):
            continue
        shift = 2 + 2 * e
        if shift < 0:
            raise HC3Error(f"term Y^{e} grows faster than B")
        if shift > trunc:
            continue
        powered = fractional_power(rest, -e).shift(shift, trunc)
        total = total + powered.scale(c * real_power(theta0, e))
    return total


def invert_lambda_series(lam_terms, theta0, M):
    """Solve for P = Theta0 H / kappa = 1 + sum p_q X^q term by term.

    The equation's coefficient at X^q is p_q plus terms built from lower
    coefficients only, so a single ascending sweep determines P.
    """
    if lam_terms.get(Fraction(-1)) != theta0:
        raise HC3Error("leading coefficient of lambda1 must be Theta0")
    trunc = _order_top(M)
    exact = isinstance(theta0, Fraction)
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    coeffs = {0: one}
    for q in range(1, _eighths(trunc) + 1):
        P = PuiseuxSeries(0, tuple(coeffs.get(k, zero) for k in range(q + 1)), _eighths(trunc))
        F = _residual_series(lam_terms, P, theta0)
        coeffs[q] = -F.coefficient(Fraction(q, 8))
    return PuiseuxSeries(0, tuple(coeffs[k] for k in range(_eighths(trunc) + 1)), _eighths(trunc))


@dataclass(frozen=True)
class CriticalFieldSeries:
    """H(kappa) = (kappa / Theta0) P(1/kappa)."""

    theta0: object
    P: PuiseuxSeries
    M: int

    @property
    def eta(self):
        return [self.P.coefficient(Fraction(7, 4) + Fraction(j, 4)) for j in range(self.M + 1)]

    def H_terms(self):
        """(exponent of kappa, coefficient) pairs, highest power first."""
        return [(1 - q, c / self.theta0) for q, c in self.P.terms()]

    def H_coefficient(self, kappa_exponent):
        return self.P.coefficient(1 - Fraction(kappa_exponent)) / self.theta0

    def __call__(self, kappa):
        return sum(float(c) * kappa ** float(e) for e, c in self.H_terms())


def invert_critical_field(inputs, M=8, route="direct"):
    """Coefficients eta_j of the large-kappa critical field through j = M.

    ``route="scaled"`` builds the eigenvalue series from the semiclassical one.
    """
    if M < 0:
        raise ValueError("M must be nonnegative")
    lam = lambda_series(inputs, M) if route == "direct" else lambda_from_mu(mu_series(inputs, M))
    return CriticalFieldSeries(inputs.theta0, invert_lambda_series(lam, inputs.theta0, M), M)


def resubstitution_residual(inputs, result):
    """Coefficients of lambda1(kappa H)/kappa^2 - 1 through the truncation."""
    F = _residual_series(lambda_series(inputs, result.M), result.P, inputs.theta0)
    return F.terms()


def bernoff_sternberg(inputs, truncation=Fraction(1, 2)):
    """Three-term field of Bernoff and Sternberg, as {kappa exponent: coefficient}."""
    t = inputs.theta0
    return {Fraction(1): 1 / t,
            Fraction(0): inputs.C1 * inputs.k_max / real_power(t, Fraction(3, 2)),
            Fraction(-1, 2): -inputs.sqrt_3k2_half * inputs.C1 / t}


def read_zeta(path):
    """Read ``j, zeta_j`` rows (header optional) into a dense tuple."""
    vals = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                j, z = int(row[0]), float(row[1])
            except ValueError:
                continue
            if j < 0:
                raise ValueError("zeta index must be nonnegative")
            vals[j] = z
    if not vals:
        return ()
    return tuple(vals.get(j, 0.0) for j in range(max(vals) + 1))
