import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from biphoton import params
from biphoton.errors import ConvergenceError, DomainError

# Values below were computed once with mpmath at 50 digits straight from the
# closed formulas (independent of the package) and frozen here.
R0_REF = 0.026844553  # cn2=1e-14, lambda=633nm, z=1km
RYTOV_REF = 0.5659924  # same inputs, plane wave
K_REF = 0.1653464  # cn2=1e-14, w=1cm, lambda=633nm


@mpmath.workdps(50)
def _mp_reference():
    lam, z, cn2, w = mpmath.mpf("633e-9"), mpmath.mpf(1000), mpmath.mpf("1e-14"), mpmath.mpf("0.01")
    k = 2 * mpmath.pi / lam
    r0 = mpmath.mpf("0.185") * (lam**2 / (cn2 * z)) ** mpmath.mpf("0.6")
    rytov = mpmath.mpf("1.23") * cn2 * k ** (mpmath.mpf(7) / 6) * z ** (mpmath.mpf(11) / 6)
    K = 2 * mpmath.pi**3 * mpmath.mpf("1.457") * cn2 * w ** (mpmath.mpf(11) / 3) / lam**3
    return float(r0), float(rytov), float(K)


def test_frozen_values_match_extended_precision():
    r0, rytov, K = _mp_reference()
    assert r0 == pytest.approx(R0_REF, rel=1e-7)
    assert rytov == pytest.approx(RYTOV_REF, rel=1e-6)
    assert K == pytest.approx(K_REF, rel=1e-6)


def test_fried_parameter():
    assert params.fried_parameter(1e-14, 633e-9, 1e3) == pytest.approx(R0_REF, rel=1e-6)
    assert params.fried_parameter(1e-14, 633e-9, 1e3) == pytest.approx(0.0268, abs=1e-4)


def test_W_identity():
    r0 = params.fried_parameter(1e-14, 633e-9, 1e3)
    s = params.TurbulenceScales(1e-14, 633e-9, r0, 1e3)
    assert s.W == pytest.approx(1.0, rel=1e-14)


def test_rytov_variance():
    k = params.wavenumber(633e-9)
    assert params.rytov_variance(1e-14, k, 1e3) == pytest.approx(RYTOV_REF, rel=1e-6)
    assert params.rytov_variance(0.0, k, 1e3) == 0.0


def test_rytov_from_WK():
    assert params.rytov_from_WK(1.0, 1.0) == pytest.approx(2.57)
    assert params.rytov_from_WK(1.0, 1e12) < 1e-9
    with pytest.raises(DomainError):
        params.rytov_from_WK(1.0, 0.0)


def test_turbulence_strength():
    assert params.turbulence_strength_K(1e-14, 0.01, 633e-9) == pytest.approx(K_REF, rel=1e-6)
    assert params.turbulence_strength_K(0.0, 0.01, 633e-9) == 0.0


def test_weak_scint_t():
    assert params.weak_scint_t(1.0, 1.72) == pytest.approx(1.0)
    assert params.weak_scint_t(0.0, 3.0) == 0.0
    with pytest.raises(DomainError):
        params.weak_scint_t(1.0, 0.0)


@given(st.floats(0.0, 5.0), st.floats(1e-3, 1e4), st.floats(1e-3, 1e4))
def test_tK_depends_on_W_only(W, K1, K2):
    a = params.weak_scint_t(W, K1) * K1
    b = params.weak_scint_t(W, K2) * K2
    assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize(
    "call",
    [
        lambda: params.fried_parameter(-1e-14, 633e-9, 1e3),
        lambda: params.fried_parameter(1e-14, 0.0, 1e3),
        lambda: params.rytov_variance(1e-14, -1.0, 1e3),
        lambda: params.turbulence_strength_K(1e-14, 0.0, 633e-9),
        lambda: params.crystal_beta(1e-3, 0.0, 633e-9, 1e-3),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_domain_error_names_field():
    with pytest.raises(DomainError) as info:
        params.TurbulenceScales(1e-14, 633e-9, -0.01, 1e3).W
    assert info.value.field == "waist"


def test_cross_formula_consistency():
    # sigma_R^2 from (cn2, k, z) and from (W, K) are the same physics up to rounding of constants
    s = params.TurbulenceScales(1e-14, 633e-9, 0.01, 1e3)
    assert s.sigma_R2_WK == pytest.approx(s.sigma_R2, rel=0.01)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0.1, 10.0),
    st.floats(1e-16, 1e-13),
    st.floats(400e-9, 1600e-9),
    st.floats(1e-3, 5e-2),
    st.floats(10.0, 1e4),
)
def test_unit_rescaling_invariance(c, cn2, lam, w, z):
    a = params.TurbulenceScales(cn2, lam, w, z, crystal_length=2e-3, ordinary_index=1.66)
    b = params.TurbulenceScales(cn2 * c ** (-2 / 3), c * lam, c * w, c * z, crystal_length=2e-3 * c, ordinary_index=1.66)
    for name in ("K", "W", "t", "sigma_R2", "beta"):
        assert getattr(b, name) == pytest.approx(getattr(a, name), rel=1e-10), name


def test_monotone_in_cn2():
    lo = params.TurbulenceScales(1e-15, 633e-9, 0.01, 1e3)
    hi = params.TurbulenceScales(1e-14, 633e-9, 0.01, 1e3)
    assert hi.K > lo.K and hi.W > lo.W and hi.sigma_R2 > lo.sigma_R2 and hi.r0 < lo.r0


def test_zero_turbulence_scales():
    s = params.TurbulenceScales(0.0, 633e-9, 0.01, 1e3)
    assert s.K == 0 and s.W == 0 and s.sigma_R2 == 0 and math.isinf(s.r0)


def test_structure_constant():
    assert params.verify_structure_constant() == pytest.approx(1.457, abs=0.01)


def test_structure_constant_window_insensitive():
    base, _ = params.structure_constant_estimate()
    half, _ = params.structure_constant_estimate(params.RadialQuadrature(u_min=5e-5))
    assert abs(half - base) / base < 1e-3


@mpmath.workdps(30)
def test_structure_constant_against_closed_form():
    # int_0^inf (1 - J0(x)) x^(-1-nu) dx = Gamma(1 - nu/2) / (nu 2^nu Gamma(1 + nu/2)), 0 < nu < 2
    nu = mpmath.mpf(5) / 3
    bessel = mpmath.gamma(1 - nu / 2) / (nu * 2**nu * mpmath.gamma(1 + nu / 2))
    two_pi = 2 * mpmath.pi
    S_ref = float(0.033 * two_pi**3 * two_pi ** (-mpmath.mpf(11) / 3) * two_pi * bessel * two_pi**nu)
    assert S_ref == pytest.approx(1.456952, abs=1e-6)
    assert params.verify_structure_constant() == pytest.approx(S_ref, rel=1e-8)


def test_narrow_window_reports_residual():
    with pytest.raises(ConvergenceError) as info:
        params.verify_structure_constant(params.RadialQuadrature(u_min=0.5, u_max=2.0, nodes=201))
    assert info.value.residual > 0
