"""Evolution of biphoton kernels through Kolmogorov turbulence.

Two routes are provided.  :func:`evolve_spdc_uncorrelated` and
:func:`evolve_spdc_correlated` build the thin-crystal SPDC results from
their closed-form coefficient polynomials.  :func:`propagate_general`
applies the propagation integral to an arbitrary Gaussian input by
marginalizing the auxiliary shift variables exactly.

Both photons share one medium when ``xi == 1`` (correlated) and see
independent media when ``xi == 0``.  The beam radius of the propagation
kernel is identified with the scale of the input kernel.

Do not replace a propagation over ``t`` by two propagations over ``t/2``:
the solution is not a semigroup in ``t``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError
from .kernel import DotProductKernel, dot_product_extension, gaussian_marginalize

# |a1|^2 - |a2|^2 + |a3|^2 - |a4|^2
_PHASE_SIGNS = np.array([1.0, -1.0, 1.0, -1.0])

FREE_BRANCH_KT = 1e-12


@dataclass(frozen=True)
class EvolvedCoefficients:
    scenario: str
    K: float
    t: float
    values: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.values[name]


def _check_Kt(K, t):
    if not K >= 0:
        raise DomainError(f"K must be >= 0, got {K!r}", field="K")
    if not t >= 0:
        raise DomainError(f"t must be >= 0, got {t!r}", field="t")


def uncorrelated_coefficients(K, t):
    _check_Kt(K, t)
    Kt = K * t
    values = {
        "N0": 8 * Kt + 1,
        "N1": 2 * (10 * K**2 * t**4 + 2 * K * t**3 + 12 * Kt + 3) - 6j * t * (6 * Kt + 1),
        "N2": (2 * K**2 * t**4 - 4 * Kt - 1) - 2j * K * t**2,
        "N3": 2 * (5 * K * t**3 + t**2 + 6),
        "N4": K * t**3 - 2,
    }
    return EvolvedCoefficients("uncorrelated", K, t, values)


def correlated_coefficients(K, t):
    _check_Kt(K, t)
    Kt = K * t
    poly = 2 * (8 * K**2 * t**4 + 2 * K * t**3 + 24 * Kt + 3)
    values = {
        "H0": 16 * Kt + 1,
        "H1": poly - 6j * t * (12 * Kt + 1),
        "H2": poly + 24j * K * t**2,
        "H3": 4 * K * t**3 + t**2 + 12,
    }
    return EvolvedCoefficients("correlated", K, t, values)


def evolve_spdc_uncorrelated(K, t, pump_waist):
    """Thin-crystal SPDC state after propagation through two independent media."""
    c = uncorrelated_coefficients(K, t)
    N0, N1, N2, N3, N4 = (c[f"N{i}"] for i in range(5))
    Kt = K * t
    d, dc = N1 / 6, np.conj(N1) / 6
    ab = -Kt * N3 / 3  # a1.a2 and a3.a4
    cross = 2 * Kt * N4  # a1.a4 and a3.a2
    m = np.array(
        [
            [d, ab, -N2, cross],
            [ab, dc, cross, -np.conj(N2)],
            [-N2, cross, d, ab],
            [cross, -np.conj(N2), ab, dc],
        ]
    )
    return DotProductKernel(8 * math.pi**2 * pump_waist**4 / N0, pump_waist, m / N0)


def evolve_spdc_correlated(K, t, pump_waist):
    """Thin-crystal SPDC state after both photons traverse the same medium."""
    c = correlated_coefficients(K, t)
    H0, H1, H2, H3 = (c[f"H{i}"] for i in range(4))
    d, dc = H1 / 6, np.conj(H1) / 6
    ket, bra = H2 / 6, np.conj(H2) / 6
    x = -2 * K * t * H3 / 3  # every a_ket . a_bra pair
    m = np.array(
        [
            [d, x, ket, x],
            [x, dc, x, bra],
            [ket, x, d, x],
            [x, bra, x, dc],
        ]
    )
    return DotProductKernel(8 * math.pi**2 * pump_waist**4 / H0, pump_waist, m / H0)


def evolve_spdc(K, t, pump_waist, correlated):
    if correlated:
        return evolve_spdc_correlated(K, t, pump_waist)
    return evolve_spdc_uncorrelated(K, t, pump_waist)


def free_propagation(kernel, t):
    """Multiply by the free-space phase exp[i t (|a1~|^2 - |a2~|^2 + |a3~|^2 - |a4~|^2)]."""
    m = kernel.coeff - 1j * t * np.diag(_PHASE_SIGNS)
    return DotProductKernel(kernel.prefactor, kernel.scale, m)


def _correlated_extension(m0, K, t):
    Kt = K * t
    shift = np.ones(4)
    quad = m0 - 1j * t * np.diag(_PHASE_SIGNS) + (K * t**3 / 6) * np.outer(_PHASE_SIGNS, _PHASE_SIGNS)
    cross = -(m0 @ shift) + 0.5j * t * _PHASE_SIGNS
    extra = shift @ m0 @ shift + 1 / (2 * Kt)
    return quad, np.array([[extra]]), cross[:, None], ["u"]


def _uncorrelated_extension(m0, K, t):
    Kt = K * t
    shifts = np.array([[1, 0], [1, 0], [0, 1], [0, 1]], dtype=float)
    diffs = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]], dtype=float)
    quad = m0 - 1j * t * np.diag(_PHASE_SIGNS) + (K * t**3 / 6) * diffs @ diffs.T
    cross = -(m0 @ shifts) + 0.5j * t * diffs
    extra = shifts.T @ m0 @ shifts + np.eye(2) / (2 * Kt)
    return quad, extra, cross, ["u1", "u2"]


def propagate_general(kernel, K, t, xi):
    """Propagate a Gaussian kernel through turbulence of strength ``K`` over distance ``t``.

    The shift variables of the propagation integral are integrated out with
    :func:`~biphoton.kernel.gaussian_marginalize`.  For ``K t`` below
    ``FREE_BRANCH_KT`` the convolution weight is a delta function and only
    the free-space phase is applied.
    """
    _check_Kt(K, t)
    if xi not in (0, 1):
        raise DomainError(f"xi must be 0 or 1, got {xi!r}", field="xi")
    Kt = K * t
    if Kt < FREE_BRANCH_KT:
        return free_propagation(kernel, t)

    w = kernel.scale
    if xi == 1:
        quad, extra, cross, names = _correlated_extension(kernel.coeff, K, t)
        norm = math.pi * w**2 / (2 * Kt)
    else:
        quad, extra, cross, names = _uncorrelated_extension(kernel.coeff, K, t)
        norm = math.pi**2 * w**4 / (4 * Kt**2)

    base = DotProductKernel(kernel.prefactor * norm, w, quad)
    ext = dot_product_extension(base, names, extra, cross)
    integrated = [f"{v}{c}" for v in names for c in "xy"]
    return gaussian_marginalize(ext, integrated).to_dot_product()


def thin_crystal_limit(kernel, beta):
    """Drop the factor ``beta`` carried by the SPDC normalization."""
    if not beta > 0:
        raise DomainError("beta must be > 0", field="beta")
    return DotProductKernel(kernel.prefactor / beta, kernel.scale, kernel.coeff)
