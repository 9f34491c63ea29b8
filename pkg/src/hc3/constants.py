"""Universal spectral constants of the de Gennes model operator."""

from dataclasses import asdict, dataclass
from functools import lru_cache
import math

from .model_operator import DEFAULT_GRID, HalfLineGrid, compute_C1
from .perturbation import ModelExpansion, fit_delta0_C0


@dataclass(frozen=True)
class DeGennesConstants:
    xi0: float
    theta0: float
    C1: float
    I2: float
    delta0: float
    C0: float
    lambda2_quadratic: tuple  # (a2, a1, a0) of lambda2(delta)
    grid_length: float = DEFAULT_GRID.length
    grid_points: int = DEFAULT_GRID.points
    extrapolated: bool = True

    def lambda2(self, delta):
        a2, a1, a0 = self.lambda2_quadratic
        return (a2 * delta + a1) * delta + a0

    @property
    def curvature_coefficient(self):
        """3 C1 sqrt(Theta0), the delta^2 coefficient of lambda2."""
        return 3.0 * self.C1 * math.sqrt(self.theta0)

    def to_dict(self):
        d = asdict(self)
        a2, a1, a0 = d.pop("lambda2_quadratic")
        d["lambda2"] = {"a2": a2, "a1": a1, "a0": a0}
        return d


def _raw(expansion):
    a2, a1, a0 = expansion.quadratic()
    return {
        "xi0": expansion.xi0,
        "theta0": expansion.theta0,
        "C1": compute_C1(expansion.u0),
        "I2": expansion.I2,
        "a2": a2,
        "a1": a1,
        "a0": a0,
    }


def _assemble(raw, grid, extrapolated):
    a2, a1, a0 = raw["a2"], raw["a1"], raw["a0"]
    delta0, C0, _ = fit_delta0_C0((-1.0, 0.0, 1.0),
                                  [a2 - a1 + a0, a0, a2 + a1 + a0])
    return DeGennesConstants(raw["xi0"], raw["theta0"], raw["C1"], raw["I2"],
                             delta0, C0, (a2, a1, a0), grid.length, grid.points,
                             extrapolated)


def compute_constants(grid=DEFAULT_GRID, extrapolate=True):
    """Compute the constants on ``grid``.

    With ``extrapolate`` every scalar is also computed with half the spacing
    and combined as (4 fine - coarse) / 3, cancelling the O(spacing^2) error.
    """
    coarse = _raw(ModelExpansion(grid))
    if not extrapolate:
        return _assemble(coarse, grid, False)
    fine = _raw(ModelExpansion(grid.refined(2)))
    mixed = {k: (4.0 * fine[k] - coarse[k]) / 3.0 for k in coarse}
    return _assemble(mixed, grid, True)


@lru_cache(maxsize=8)
def _cached(length, points, extrapolate):
    return compute_constants(HalfLineGrid(length, points), extrapolate)


def default_constants(grid=DEFAULT_GRID, extrapolate=True):
    """Memoized ``compute_constants``."""
    return _cached(grid.length, grid.points, extrapolate)
