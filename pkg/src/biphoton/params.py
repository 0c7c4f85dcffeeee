"""Physical and dimensionless turbulence parameters.

All formulas use the Kolmogorov spectrum and the printed numerical
constants (0.185, 1.23, 2.57, 1.72, S = 1.457) as exact inputs.  Zero
turbulence (``cn2 == 0``) is accepted wherever the formula has a finite
limit; every other physical input must be strictly positive.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.integrate import simpson
from scipy.special import j0

from .errors import ConvergenceError, DomainError

#: Kolmogorov structure-function constant for the transverse spectrum.
STRUCTURE_CONSTANT = 1.457

FRIED_COEFF = 0.185
RYTOV_COEFF = 1.23
RYTOV_WK_COEFF = 2.57
WEAK_SCINT_T_COEFF = 1.72

# 0.033 (2 pi)^3 C_n^2 |k|^(-11/3) evaluated at k = 2 pi u
KOLMOGOROV_COEFF = 0.033


def _positive(name, value):
    if not value > 0:
        raise DomainError(f"{name} must be > 0, got {value!r}", field=name)


def _non_negative(name, value):
    if not value >= 0:
        raise DomainError(f"{name} must be >= 0, got {value!r}", field=name)


def wavenumber(wavelength):
    _positive("wavelength", wavelength)
    return 2 * math.pi / wavelength


def fried_parameter(cn2, wavelength, distance):
    """Fried parameter r0 = 0.185 (lambda^2 / (C_n^2 z))^(3/5) in metres.

    ``cn2 == 0`` gives ``inf`` (no turbulence, infinite coherence length).
    """
    _non_negative("cn2", cn2)
    _positive("wavelength", wavelength)
    _positive("distance", distance)
    if cn2 == 0:
        return math.inf
    return FRIED_COEFF * (wavelength**2 / (cn2 * distance)) ** 0.6


def rytov_variance(cn2, k, distance):
    """Plane-wave Rytov variance 1.23 C_n^2 k^(7/6) z^(11/6)."""
    _non_negative("cn2", cn2)
    _positive("wavenumber", k)
    _positive("distance", distance)
    return RYTOV_COEFF * cn2 * k ** (7 / 6) * distance ** (11 / 6)


def rytov_from_WK(W, K):
    """Rytov variance expressed through W and K: 2.57 W^(55/18) / K^(5/6)."""
    _non_negative("W", W)
    _positive("K", K)
    return RYTOV_WK_COEFF * W ** (55 / 18) / K ** (5 / 6)


def turbulence_strength_K(cn2, waist, wavelength):
    """Dimensionless turbulence strength K = 2 pi^3 S C_n^2 w^(11/3) / lambda^3."""
    _non_negative("cn2", cn2)
    _positive("waist", waist)
    _positive("wavelength", wavelength)
    return 2 * math.pi**3 * STRUCTURE_CONSTANT * cn2 * waist ** (11 / 3) / wavelength**3


def normalized_distance(distance, wavelength, waist):
    """Propagation distance in Rayleigh ranges, t = z lambda / (pi w^2)."""
    _non_negative("distance", distance)
    _positive("wavelength", wavelength)
    _positive("waist", waist)
    return distance * wavelength / (math.pi * waist**2)


def weak_scint_t(W, K):
    """Normalized distance t = 1.72 W^(5/3) / K used for the weak-scintillation limit."""
    _non_negative("W", W)
    _positive("K", K)
    return WEAK_SCINT_T_COEFF * W ** (5 / 3) / K


def zeta(cn2, waist):
    """Coefficient S C_n^2 / w^(1/3) of the quadratic structure function."""
    _non_negative("cn2", cn2)
    _positive("waist", waist)
    return STRUCTURE_CONSTANT * cn2 / waist ** (1 / 3)


def crystal_beta(crystal_length, ordinary_index, wavelength, pump_waist):
    """Crystal length (times n_o) over the pump Rayleigh range."""
    _positive("crystal_length", crystal_length)
    _positive("ordinary_index", ordinary_index)
    _positive("wavelength", wavelength)
    _positive("pump_waist", pump_waist)
    return ordinary_index * crystal_length * wavelength / (math.pi * pump_waist**2)


@dataclass(frozen=True)
class TurbulenceScales:
    """Physical inputs of one propagation scenario and the quantities derived from them.

    Lengths are in metres and ``cn2`` in m^(-2/3).  ``crystal_length`` and
    ``ordinary_index`` are only needed for :attr:`beta`.
    """

    cn2: float
    wavelength: float
    waist: float
    distance: float
    crystal_length: float | None = None
    ordinary_index: float | None = None

    def __post_init__(self):
        _non_negative("cn2", self.cn2)
        _positive("wavelength", self.wavelength)
        _positive("waist", self.waist)
        _positive("distance", self.distance)
        if self.crystal_length is not None:
            _positive("crystal_length", self.crystal_length)
        if self.ordinary_index is not None:
            _positive("ordinary_index", self.ordinary_index)

    @property
    def k(self):
        return wavenumber(self.wavelength)

    @property
    def t(self):
        return normalized_distance(self.distance, self.wavelength, self.waist)

    @property
    def K(self):
        return turbulence_strength_K(self.cn2, self.waist, self.wavelength)

    @property
    def r0(self):
        return fried_parameter(self.cn2, self.wavelength, self.distance)

    @property
    def W(self):
        return self.waist / self.r0

    @property
    def sigma_R2(self):
        return rytov_variance(self.cn2, self.k, self.distance)

    @property
    def sigma_R2_WK(self):
        """Rytov variance via W and K; NaN when K vanishes."""
        K = self.K
        return rytov_from_WK(self.W, K) if K > 0 else math.nan

    @property
    def zeta(self):
        return zeta(self.cn2, self.waist)

    @property
    def beta(self):
        if self.crystal_length is None or self.ordinary_index is None:
            return None
        return crystal_beta(self.crystal_length, self.ordinary_index, self.wavelength, self.waist)


@dataclass(frozen=True)
class RadialQuadrature:
    """Log-spaced radial grid for :func:`verify_structure_constant`."""

    u_min: float = 1e-4
    u_max: float = 1e4
    nodes: int = 20001
    tol: float = 1e-3


def _structure_integrand(u):
    # radial integrand of int Phi_0(u) [1 - cos(2 pi u.x)] d^2u / C_n^2 with |x| = 1,
    # angular integral done analytically: 2 pi [1 - J0(2 pi u)]
    pref = KOLMOGOROV_COEFF * (2 * np.pi) ** 3 * (2 * np.pi) ** (-11 / 3) * 2 * np.pi
    return pref * u ** (-8 / 3) * (1 - j0(2 * np.pi * u))


def structure_constant_estimate(spec=None):
    """Numerically recover S from the Kolmogorov spectrum, with an error estimate.

    The radial integral is done on a log grid between the cutoffs; the two
    tails are added from their leading asymptotics.  The residual estimate
    is the size of the first neglected tail terms.

    Returns
    -------
    S_est : float
    residual : float
        Estimated absolute error of ``S_est``.
    """
    spec = spec or RadialQuadrature()
    if not 0 < spec.u_min < spec.u_max:
        raise DomainError("need 0 < u_min < u_max", field="u_min")
    if spec.nodes < 3:
        raise DomainError("need at least 3 nodes", field="nodes")

    s = np.linspace(math.log(spec.u_min), math.log(spec.u_max), spec.nodes)
    u = np.exp(s)
    core = simpson(_structure_integrand(u) * u, x=s)

    pref = KOLMOGOROV_COEFF * (2 * math.pi) ** (1 / 3)
    # 1 - J0(x) = x^2/4 - x^4/64 + ...
    low = pref * (3 * math.pi**2 * spec.u_min ** (1 / 3))
    low_next = pref * (math.pi**4 / 4) * (3 / 7) * spec.u_min ** (7 / 3)
    high = pref * 0.6 * spec.u_max ** (-5 / 3)
    # |J0(x)| <= sqrt(2 / (pi x)) bounds the neglected oscillatory tail
    high_next = pref * math.sqrt(1 / (math.pi**2 * spec.u_max)) * spec.u_max ** (-5 / 3)
    est = core + low - low_next + high
    low_after = pref * (2 * math.pi) ** 6 / 2304 * (3 / 13) * spec.u_min ** (13 / 3)
    return est, low_after + high_next


def verify_structure_constant(spec=None):
    """Estimate S; raise :class:`ConvergenceError` if the cutoffs are too tight.

    The tolerance ``spec.tol`` is relative to the estimate.
    """
    spec = spec or RadialQuadrature()
    est, residual = structure_constant_estimate(spec)
    if residual > spec.tol * abs(est):
        raise ConvergenceError(
            f"cutoff window [{spec.u_min:g}, {spec.u_max:g}] too narrow; "
            f"residual estimate {residual:.3g}",
            residual=residual,
        )
    return est
