import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from biphoton.errors import CapacityError
from biphoton.series import TruncatedSeries, mixed_derivative_of_exp_quadratic

complexes = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@given(complexes, st.integers(1, 5))
def test_two_variable_closed_form(b, q):
    # exp(2 b mu1 mu2): the mu1^q mu2^q coefficient is (2b)^q / q!
    B = np.array([[0, b], [b, 0]])
    expected = math.factorial(q) * (2 * b) ** q
    assert mixed_derivative_of_exp_quadratic(B, q) == pytest.approx(expected, rel=1e-12, abs=1e-12)


@given(complexes, st.integers(1, 4))
def test_single_variable_hermite_moment(a, q):
    # d^q/dmu^q exp(a mu^2) at 0 is q! a^(q/2) / (q/2)! for even q, 0 for odd q
    got = mixed_derivative_of_exp_quadratic(np.array([[a]]), q)
    expected = math.factorial(q) * a ** (q // 2) / math.factorial(q // 2) if q % 2 == 0 else 0
    assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_product_matches_polynomial_multiplication():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3))
    prod = (TruncatedSeries(a, 4) * TruncatedSeries(b, 4)).coeffs
    full = np.zeros((5, 5))
    for i, j, k, l in np.ndindex(3, 3, 3, 3):
        full[i + k, j + l] += a[i, j] * b[k, l]
    for i, j in np.ndindex(3, 3):
        expected = full[i, j] if i + j <= 4 else 0
        assert prod[i, j] == pytest.approx(expected, abs=1e-12)


def test_exp_of_single_variable_series():
    x = TruncatedSeries.zeros((8,), 8)
    x.coeffs[1] = 1.0
    e = x.exp()
    np.testing.assert_allclose(e.coeffs.real, [1 / math.factorial(n) for n in range(9)], rtol=1e-14)


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        TruncatedSeries.constant(1.0, (2,), 2).exp()


def test_zero_form_has_vanishing_derivatives():
    for q in (1, 2, 3):
        assert mixed_derivative_of_exp_quadratic(np.zeros((4, 4)), q) == 0


def test_capacity_error():
    with pytest.raises(CapacityError):
        mixed_derivative_of_exp_quadratic(np.eye(4), 2, order=7)
    s = TruncatedSeries.zeros((2, 2), 3)
    with pytest.raises(CapacityError):
        s.derivative_at_zero((2, 2))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_higher_order_changes_nothing(seed, q):
    rng = np.random.default_rng(seed)
    B = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
    B = B + B.T
    assert mixed_derivative_of_exp_quadratic(B, q) == mixed_derivative_of_exp_quadratic(B, q, order=4 * q + 2)
