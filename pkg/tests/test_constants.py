import math
import time

import pytest

from hc3.constants import compute_constants
from hc3.model_operator import HalfLineGrid


def test_values(constants):
    assert constants.xi0 == pytest.approx(-0.768, abs=1e-3)
    assert constants.C1 == pytest.approx(0.254, abs=1e-3)
    assert abs(constants.theta0 - constants.xi0 ** 2) <= 1e-6
    assert 0.5 < constants.theta0 < 1
    a2, a1, a0 = constants.lambda2_quadratic
    assert abs(a2 - 3 * constants.C1 * math.sqrt(constants.theta0)) <= 1e-4
    assert a2 * (constants.delta0 ** 2 + constants.C0) == pytest.approx(a0, abs=1e-8)
    assert -2 * a2 * constants.delta0 == pytest.approx(a1, abs=1e-8)


def test_lambda2_vertex(constants):
    assert constants.lambda2(constants.delta0) == pytest.approx(
        constants.curvature_coefficient * constants.C0, abs=1e-8)


def test_to_dict(constants):
    d = constants.to_dict()
    assert set(d["lambda2"]) == {"a2", "a1", "a0"}
    assert d["xi0"] == constants.xi0


def test_two_resolutions_agree(constants):
    coarse = compute_constants(HalfLineGrid(16.0, 1601))
    for k in ("xi0", "theta0", "C1", "delta0", "C0"):
        assert getattr(coarse, k) == pytest.approx(getattr(constants, k), abs=1e-4)


def test_runtime():
    t = time.perf_counter()
    compute_constants()
    assert time.perf_counter() - t < 5.0
