import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from biphoton import evolve
from biphoton.errors import DomainError
from biphoton.kernel import hermiticity_defect, spdc_kernel, trace


def limit_error(K, t, xi, beta):
    """Max relative coefficient error between the beta-limit of the general path and the closed form."""
    general = evolve.thin_crystal_limit(evolve.propagate_general(spdc_kernel(1.0, beta), K, t, xi), beta)
    closed = evolve.evolve_spdc(K, t, 1.0, correlated=(xi == 1))
    coeff_err = np.abs(general.coeff - closed.coeff).max() / np.abs(closed.coeff).max()
    pref_err = abs(general.prefactor / closed.prefactor - 1)
    return max(coeff_err, pref_err)


def test_N0_H0_arithmetic():
    assert evolve.uncorrelated_coefficients(1, 0.5)["N0"] == 5
    assert evolve.correlated_coefficients(1, 0.5)["H0"] == 9


def test_coefficients_at_zero_distance():
    n = evolve.uncorrelated_coefficients(3.0, 0.0)
    h = evolve.correlated_coefficients(3.0, 0.0)
    assert (n["N1"], n["N2"]) == (6, -1)
    assert (h["H1"], h["H2"], h["H3"]) == (6, 6, 12)


@pytest.mark.parametrize("correlated", [False, True])
def test_zero_distance_is_thin_crystal_spdc(correlated):
    k = evolve.evolve_spdc(2.0, 0.0, 1.0, correlated)
    # beta -> 0 SPDC: diagonal 1, ket-ket and bra-bra coupling 1
    thin = spdc_kernel(1.0, 0.0)
    np.testing.assert_allclose(k.coeff, thin.coeff, atol=1e-15)


@settings(max_examples=50)
@given(st.floats(0.0, 1e3), st.floats(0.0, 1e2))
def test_real_parts_of_H1_H2_agree(K, t):
    h = evolve.correlated_coefficients(K, t)
    assert h["H1"].real == h["H2"].real


@pytest.mark.parametrize("correlated", [False, True])
def test_closed_forms_hermitian_on_grid(correlated):
    for K, t in itertools.product(np.linspace(0, 10, 5), repeat=2):
        assert hermiticity_defect(evolve.evolve_spdc(K, t, 1.0, correlated)) < 1e-12


@pytest.mark.parametrize("call", [
    lambda: evolve.evolve_spdc_uncorrelated(-1.0, 1.0, 1.0),
    lambda: evolve.evolve_spdc_correlated(1.0, -1.0, 1.0),
    lambda: evolve.propagate_general(spdc_kernel(1.0, 0.1), 1.0, 1.0, 2),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


@pytest.mark.parametrize("xi", [0, 1])
@pytest.mark.parametrize("K,t", [(1.0, 0.5), (10.0, 1.0)])
def test_general_path_regenerates_closed_forms(xi, K, t):
    e3 = limit_error(K, t, xi, 1e-3)
    e4 = limit_error(K, t, xi, 1e-4)
    assert e4 < e3
    # linear in beta: one decade in beta is one decade in error
    assert e3 / e4 == pytest.approx(10.0, rel=0.05)


@pytest.mark.parametrize("xi", [0, 1])
def test_trace_preserved(xi):
    k = spdc_kernel(1.0, 1e-2)
    t0 = trace(k)
    for K, t in itertools.product((0.1, 1.0, 10.0), repeat=2):
        assert trace(evolve.propagate_general(k, K, t, xi)) == pytest.approx(t0, rel=1e-8)


@pytest.mark.parametrize("xi", [0, 1])
def test_hermiticity_preserved(xi):
    out = evolve.propagate_general(spdc_kernel(0.7, 0.3), 2.0, 0.8, xi)
    assert hermiticity_defect(out) < 1e-10


def test_channels_differ():
    k = spdc_kernel(1.0, 0.1)
    a = evolve.propagate_general(k, 1.0, 1.0, 0)
    b = evolve.propagate_general(k, 1.0, 1.0, 1)
    assert np.abs(a.coeff - b.coeff).max() > 1e-3


@pytest.mark.parametrize("xi", [0, 1])
def test_free_branch_below_threshold(xi):
    k = spdc_kernel(1.0, 0.2)
    out = evolve.propagate_general(k, 0.0, 0.7, xi)
    expected = k.coeff - 0.7j * np.diag([1, -1, 1, -1])
    np.testing.assert_array_equal(out.coeff, expected)
    assert out.prefactor == k.prefactor


@pytest.mark.parametrize("xi", [0, 1])
def test_weak_turbulence_approaches_free_propagation(xi):
    k = spdc_kernel(1.0, 0.2)
    free = evolve.free_propagation(k, 0.7)
    errs = []
    for K in (1e-4, 1e-6):
        out = evolve.propagate_general(k, K, 0.7, xi)
        errs.append(max(np.abs(out.coeff - free.coeff).max(), abs(out.prefactor / free.prefactor - 1)))
    # turbulence corrections are first order in K
    assert errs[0] / errs[1] == pytest.approx(100.0, rel=0.05)
    assert errs[1] < 1e-4


def test_free_propagation_preserves_trace():
    k = spdc_kernel(1.0, 0.05)
    assert trace(evolve.free_propagation(k, 3.0)) == pytest.approx(trace(k), rel=1e-12)
