from fractions import Fraction as F
import math

import pytest
from hypothesis import given, settings, strategies as st

from hc3.errors import HC3Error
from hc3.series import (ExpansionInputs, PuiseuxSeries, bernoff_sternberg, binomial,
                        fractional_power, invert_critical_field, lambda_from_mu,
                        lambda_series, mu_series, read_zeta, resubstitution_residual,
                        series_add, series_mul, series_scale)

X = F(1)


def poly(coeffs, trunc=4):
    """Series in X with integer exponents."""
    return PuiseuxSeries.from_terms({F(k): c for k, c in enumerate(coeffs)}, trunc)


def test_difference_of_squares():
    a = poly([1, 1])
    b = poly([1, -1])
    assert series_mul(a, b).terms() == [(F(0), 1), (F(2), -1)]


small = st.lists(st.integers(-5, 5), min_size=1, max_size=5)


@settings(max_examples=50, deadline=None)
@given(small, small, small)
def test_ring_laws(a, b, c):
    A, B, C = poly(a), poly(b), poly(c)
    assert series_add(A, B).terms() == series_add(B, A).terms()
    assert series_mul(A, B).terms() == series_mul(B, A).terms()
    assert ((A * B) * C).terms() == (A * (B * C)).terms()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=3, max_size=6),
       st.lists(st.floats(-2, 2), min_size=3, max_size=6),
       st.lists(st.floats(-2, 2), min_size=3, max_size=6))
def test_float_associativity(a, b, c):
    A, B, C = poly(a, 6), poly(b, 6), poly(c, 6)
    left, right = (A * B) * C, A * (B * C)
    for k in range(7):
        assert abs(left.coefficient(k) - right.coefficient(k)) <= 1e-12


def test_truncation_is_hard():
    s = poly([0, 1], trunc=3)
    p = s * s * s * s
    assert p.is_zero
    assert max(e for e, _ in (s * s * s).terms()) == 3


def test_normalization():
    s = PuiseuxSeries(0, (0.0, 0.0, 2.0, 0.0), 8)
    assert s.low == 2 and s.coeffs == (2.0,)
    z = PuiseuxSeries(0, (0, 0), 8)
    assert z.is_zero


def test_truncation_mismatch():
    with pytest.raises(HC3Error):
        poly([1], 2) + poly([1], 3)


def test_scale_and_shift():
    s = poly([1, 2])
    assert series_scale(s, 3).terms() == [(F(0), 3), (F(1), 6)]
    assert s.shift(F(1, 8)).valuation == F(1, 8)


def test_square_root_squares_back():
    s = poly([0, F(1)], trunc=6)
    r = fractional_power(s, F(1, 2))
    assert (r * r).terms() == [(F(0), 1), (F(1), 1)]


def test_geometric_series():
    s = poly([0, F(1)], trunc=5)
    inv = fractional_power(s, -1)
    assert inv.terms() == [(F(k), (-1) ** k) for k in range(6)]


def test_quarter_power_first_term():
    C1, theta0, k = 0.254068107, 0.590106125, 1.0
    s = PuiseuxSeries.from_terms({F(1): C1 * k / math.sqrt(theta0)}, 3)
    p = fractional_power(s, F(1, 4))
    assert p.coefficient(F(1)) == pytest.approx(0.25 * C1 * k / math.sqrt(theta0), rel=1e-15)


def test_fractional_power_needs_positive_valuation():
    with pytest.raises(HC3Error):
        fractional_power(poly([1, 1]), F(1, 2))


def test_binomial():
    assert binomial(F(1, 2), 2) == F(-1, 8)
    assert binomial(3, 4) == 0


ZETA = (0.1, -0.2, 0.3, 0.05, 0.0, 0.1, 0.2, -0.1, 0.3, 0.15, -0.05)


@pytest.fixture
def inputs(constants):
    return ExpansionInputs.from_constants(constants, 1.0, 0.7, ZETA)


def test_inversion_resubstitution(inputs):
    res = invert_critical_field(inputs, 8)
    assert all(abs(c) <= 1e-12 for _, c in resubstitution_residual(inputs, res))


def test_inversion_leading_terms(inputs):
    res = invert_critical_field(inputs, 8)
    t, C1 = inputs.theta0, inputs.C1
    assert res.H_coefficient(1) == pytest.approx(1 / t, rel=1e-15)
    assert res.H_coefficient(0) == pytest.approx(C1 / t ** 1.5, rel=1e-14)
    assert res.H_coefficient(F(-1, 2)) == pytest.approx(-C1 * math.sqrt(1.05) / t, rel=1e-14)
    assert res.H_coefficient(F(-1, 4)) == 0


def test_exact_rational_inversion():
    theta0 = F(12, 13) ** 8
    inp = ExpansionInputs(theta0, F(1, 4), F(1), F(2, 3), (F(1, 3), F(-1, 2), F(2, 7)))
    res = invert_critical_field(inp, 4)
    assert resubstitution_residual(inp, res) == []
    assert res.H_coefficient(0) * theta0 == F(1, 4) / F(12, 13) ** 4
    assert res.H_coefficient(F(-1, 2)) == -F(1, 4) / theta0
    bs = bernoff_sternberg(inp)
    for e, c in bs.items():
        assert res.H_coefficient(e) == c
    # the float path agrees with the exact one
    fl = ExpansionInputs(float(theta0), 0.25, 1.0, 2 / 3, (1 / 3, -0.5, 2 / 7))
    res_f = invert_critical_field(fl, 4)
    for a, b in zip(res.eta, res_f.eta):
        assert float(a) == pytest.approx(b, abs=1e-12)


def test_degenerate_inputs(constants):
    # with k2 = 0 and no zeta terms the equation is P = 1 + a X sqrt(P), solved
    # in closed form by sqrt(P) = a X / 2 + sqrt(1 + a^2 X^2 / 4)
    inp = ExpansionInputs.from_constants(constants, 1.0, 0.0, ())
    res = invert_critical_field(inp, 6)
    a = inp.C1 / math.sqrt(inp.theta0)
    top = res.P.truncation
    half = PuiseuxSeries.from_terms({F(1): a / 2}, top)
    root = half + fractional_power(PuiseuxSeries.from_terms({F(2): a * a / 4}, top), F(1, 2))
    closed = root * root
    for q in range(0, int(8 * top) + 1):
        e = F(q, 8)
        assert res.P.coefficient(e) == pytest.approx(closed.coefficient(e), abs=1e-14)
    assert res.H_coefficient(F(-1, 2)) == 0
    assert res.eta[1] == pytest.approx(a * a / 2, rel=1e-14)
    assert all(res.eta[j] == 0 for j in range(0, 7) if j % 4 != 1)


def test_bernoff_sternberg_agreement(inputs):
    res = invert_critical_field(inputs, 8)
    for e, c in bernoff_sternberg(inputs).items():
        assert res.H_coefficient(e) == pytest.approx(c, rel=1e-14)
    flat = ExpansionInputs(inputs.theta0, inputs.C1, 1.0, 0.0, ())
    assert bernoff_sternberg(flat)[F(-1, 2)] == 0
    assert invert_critical_field(flat, 4).H_coefficient(F(-1, 2)) == 0


def test_triangularity(inputs):
    a = invert_critical_field(inputs, 6).eta
    b = invert_critical_field(inputs, 10).eta
    assert b[:7] == a


def test_scaling_route(inputs):
    assert lambda_from_mu(mu_series(inputs, 8)) == lambda_series(inputs, 8)
    assert invert_critical_field(inputs, 8, "scaled").eta == invert_critical_field(inputs, 8).eta


def test_series_evaluates_near_root(inputs):
    res = invert_critical_field(inputs, 8)
    assert res(1e4) == pytest.approx(1e4 / inputs.theta0, rel=1e-3)


def test_input_validation():
    with pytest.raises(ValueError):
        ExpansionInputs(1.2, 0.25)
    with pytest.raises(ValueError):
        ExpansionInputs(0.6, -0.1)
    with pytest.raises(ValueError):
        ExpansionInputs(0.6, 0.25, 1.0, -1.0)


def test_read_zeta(tmp_path):
    p = tmp_path / "zeta.csv"
    p.write_text("j,zeta\n0,0.5\n2,-1.25\n")
    assert read_zeta(p) == (0.5, 0.0, -1.25)
    p.write_text("")
    assert read_zeta(p) == ()
