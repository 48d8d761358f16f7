import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subordkit.errors import NearZeroLeadingCoefficient
from subordkit.series import (TaylorSeries, divide, eval_on_circle, evaluate, multiply,
                              shift_down, z_derivative, z_pow_derivative)


def poly(*c, order=None):
    return TaylorSeries.from_coeffs(c, order)


def test_multiply_examples():
    assert multiply(poly(1, 1), poly(1, -1)).allclose(poly(1, 0, -1, order=1), 0)
    assert np.allclose(multiply(poly(1, 1, 0), poly(1, -1, 0)).coeffs, [1, 0, -1])
    assert np.allclose(multiply(poly(0, 1, 0), poly(0, 1, 0)).coeffs, [0, 0, 1])
    one = TaylorSeries.constant(1.0, 2)
    assert np.allclose(multiply(poly(1, 1, 1), one).coeffs, [1, 1, 1])


def test_order_is_min_of_operands():
    a = TaylorSeries.geometric(10)
    b = TaylorSeries.geometric(4)
    assert (a * b).order == 4
    assert (a + b).order == 4
    assert divide(a, b).order == 4


def test_divide_examples():
    g = divide(TaylorSeries.constant(1.0, 12), poly(1, -1, order=12))
    assert np.allclose(g.coeffs, np.ones(13))
    q = divide(poly(1, 0, -1, order=8), poly(1, -1, order=8))
    assert np.allclose(q.coeffs, [1, 1] + [0] * 7, atol=1e-15)
    z = TaylorSeries.identity(5)
    with pytest.raises(NearZeroLeadingCoefficient):
        divide(z, z)
    with pytest.raises(ZeroDivisionError):
        divide(z, poly(1e-13, 1, order=5))


def test_derivative_examples():
    e = TaylorSeries.exp_series(1.0, 12)
    target = [0] + [1 / math.factorial(k - 1) for k in range(1, 13)]
    assert np.allclose(z_derivative(e).coeffs, target)
    assert np.allclose(z_pow_derivative(poly(1, 0, 1), 2).coeffs, [0, 0, 2])
    f = TaylorSeries.from_coeffs([0] + [1] * 10)
    assert np.allclose(z_pow_derivative(f, 1).coeffs, np.arange(11))


def test_evaluate_examples():
    assert evaluate(poly(1, 1), 0) == 1
    assert evaluate(poly(1, 1), 1j) == 1 + 1j
    assert abs(evaluate(TaylorSeries.exp_series(1.0, 30), 1.0) - math.e) <= 1e-12


def test_eval_on_circle_examples():
    assert np.allclose(eval_on_circle(TaylorSeries.constant(1.0, 3), 0.7, 8), np.ones(8))
    z = TaylorSeries.identity(3)
    assert np.allclose(eval_on_circle(z, 0.5, 8)[::2], [0.5, 0.5j, -0.5, -0.5j])
    e = TaylorSeries.exp_series(1.0, 32)
    pts = 0.9 * np.exp(2j * np.pi * np.arange(64) / 64)
    assert np.max(np.abs(eval_on_circle(e, 0.9, 64) - evaluate(e, pts))) <= 1e-14
    with pytest.raises(ValueError):
        eval_on_circle(e, 1.0, 64)


def test_shift_down_and_tags():
    f = poly(0, 1, 0.5, order=6)
    assert f.is_class_a()
    assert np.allclose(shift_down(f).coeffs, [1, 0.5, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        shift_down(poly(1, 1))
    assert poly(1, 0, 3).in_h1n(2)
    assert not poly(1, 2, 3).in_h1n(2)


def test_coefficients_are_read_only():
    a = TaylorSeries.geometric(4)
    with pytest.raises(ValueError):
        a.coeffs[0] = 3


# -- properties ----------------------------------------------------------

cplx = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


def series(order):
    return st.lists(cplx, min_size=order + 1, max_size=order + 1).map(TaylorSeries)


orders = st.integers(1, 32)


@settings(max_examples=60, deadline=None)
@given(orders.flatmap(lambda n: st.tuples(series(n), series(n), series(n))))
def test_multiply_commutative_associative(abc):
    a, b, c = abc
    assert np.allclose(multiply(a, b).coeffs, multiply(b, a).coeffs, rtol=0, atol=1e-12)
    left = multiply(multiply(a, b), c).coeffs
    right = multiply(a, multiply(b, c)).coeffs
    assert np.allclose(left, right, rtol=1e-12, atol=1e-11)


@st.composite
def zero_free(draw, n):
    """A divisor with no zeros in the closed disk: tail mass below ``|b0|``.

    Without this, 1/b has exponentially growing coefficients and no division
    routine can meet a fixed relative tolerance at order 32.
    """
    b = draw(series(n)).coeffs.copy()
    b0 = draw(st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0, allow_nan=False,
                                 allow_infinity=False))
    frac = draw(st.floats(0.0, 0.99))
    mass = np.abs(b[1:]).sum()
    if mass > 0:
        b[1:] *= frac * abs(b0) / mass
    b[0] = b0
    return TaylorSeries(b)


@settings(max_examples=80, deadline=None)
@given(orders.flatmap(lambda n: st.tuples(series(n), zero_free(n))))
def test_divide_inverts_multiply(ab):
    a, b = ab
    back = divide(multiply(a, b), b).coeffs
    scale = max(1e-300, float(np.max(np.abs(a.coeffs))))
    assert np.max(np.abs(back - a.coeffs)) <= 1e-12 * scale


@settings(max_examples=60, deadline=None)
@given(orders.flatmap(lambda n: series(n)), st.integers(0, 5))
def test_z_pow_derivative_is_falling_factorial(a, j):
    out = z_pow_derivative(a, j).coeffs
    for k, ck in enumerate(a.coeffs):
        ff = math.prod(range(k - j + 1, k + 1)) if k >= j else 0
        assert out[k] == pytest.approx(ff * ck, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(orders.flatmap(lambda n: series(n)), st.floats(0.05, 0.99), st.integers(8, 128))
def test_eval_on_circle_matches_evaluate(a, rho, n):
    pts = rho * np.exp(2j * np.pi * np.arange(n) / n)
    got = eval_on_circle(a, rho, n)
    pointwise = np.array([evaluate(a, z) for z in pts])
    assert np.max(np.abs(got - pointwise)) <= 1e-14
    # power-sum oracle, with a tolerance that scales with the coefficient mass
    ref = np.array([sum(c * z**k for k, c in enumerate(a.coeffs)) for z in pts])
    assert np.max(np.abs(got - ref)) <= 1e-14 * max(1.0, np.abs(a.coeffs).sum()) * 10
