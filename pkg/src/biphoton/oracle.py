"""Brute-force verification paths.

Nothing here calls :func:`~biphoton.kernel.gaussian_marginalize` or the
truncated-series code.  The propagation integrals are summed on tensor
grids from pointwise kernel evaluations, and generating-function
derivatives come from central finite differences in extended precision.
"""

from dataclasses import dataclass
import itertools
import math

import mpmath
import numpy as np
from numpy.polynomial.hermite import hermgauss

from .errors import DomainError, InsufficientDomainError, PrecisionError
from .kernel import evaluate
from .project import lg_normalization

BOUNDARY_RTOL = 1e-12


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-grid rule.

    ``domain_halfwidth`` is in units of ``1 / (pi w)``.  For the
    ``"gauss-hermite"`` scheme it is ignored and nodes follow the
    convolution weight.
    """

    nodes_per_dim: int = 161
    domain_halfwidth: float = 8.0
    scheme: str = "trapezoid"

    def __post_init__(self):
        if self.nodes_per_dim < 8:
            raise DomainError("nodes_per_dim must be >= 8", field="nodes_per_dim")
        if self.scheme not in ("trapezoid", "gauss-hermite"):
            raise DomainError(f"unknown scheme {self.scheme!r}", field="scheme")
        if not self.domain_halfwidth > 0:
            raise DomainError("domain_halfwidth must be > 0", field="domain_halfwidth")

    def doubled(self):
        return QuadratureSpec(2 * self.nodes_per_dim - 1, self.domain_halfwidth, self.scheme)


def _rule(spec, scale, sigma=None):
    """1D nodes (physical units) and weights; ``sigma`` is the weight std for Gauss-Hermite."""
    if spec.scheme == "gauss-hermite":
        x, w = hermgauss(spec.nodes_per_dim)
        # caller multiplies by exp(-u^2 / (2 sigma^2)); undo hermgauss's implicit exp(-x^2)
        nodes = math.sqrt(2) * sigma * x
        weights = math.sqrt(2) * sigma * w * np.exp(x**2)
        return nodes, weights, False
    half = spec.domain_halfwidth / (math.pi * scale)
    nodes = np.linspace(-half, half, spec.nodes_per_dim)
    weights = np.full(spec.nodes_per_dim, nodes[1] - nodes[0])
    weights[[0, -1]] *= 0.5
    return nodes, weights, True


def _check_boundary(values, ndim):
    peak = np.abs(values).max()
    edge = 0.0
    for ax in range(ndim):
        edge = max(edge, np.abs(np.take(values, [0, -1], axis=ax)).max())
    if peak == 0 or edge > BOUNDARY_RTOL * peak:
        raise InsufficientDomainError(
            f"integrand at domain boundary is {edge / peak if peak else float('inf'):.3g} of its peak"
        )


def _integrand_correlated(kernel, K, t, a, u):
    """Integrand of the shared-medium propagation integral; ``u`` has shape (..., 2)."""
    w = kernel.scale
    s = a[0] - a[1] + a[2] - a[3]
    shifted = [a[i] - u for i in range(4)]
    r0 = evaluate(kernel, *shifted)
    phase = np.exp(-1j * math.pi**2 * w**2 * t * (u @ s))
    weight = np.exp(-math.pi**2 * w**2 * np.sum(u * u, axis=-1) / (2 * K * t))
    return r0 * phase * weight


def _integrand_uncorrelated(kernel, K, t, a, u1, u2):
    w = kernel.scale
    d1 = a[0] - a[1]
    d2 = a[2] - a[3]
    r0 = evaluate(kernel, a[0] - u1, a[1] - u1, a[2] - u2, a[3] - u2)
    phase = np.exp(-1j * math.pi**2 * w**2 * t * (u1 @ d1 + u2 @ d2))
    weight = np.exp(-math.pi**2 * w**2 * (np.sum(u1 * u1, -1) + np.sum(u2 * u2, -1)) / (2 * K * t))
    return r0 * phase * weight


def _outside_factor(kernel, K, t, a, xi):
    w = kernel.scale
    s2 = sum(sign * np.dot(a[i], a[i]) for i, sign in enumerate((1, -1, 1, -1)))
    free = np.exp(1j * math.pi**2 * w**2 * t * s2)
    if xi == 1:
        s = a[0] - a[1] + a[2] - a[3]
        damp = math.exp(-(math.pi**2 / 6) * w**2 * K * t**3 * np.dot(s, s))
        return math.pi * w**2 / (2 * K * t) * free * damp
    d1 = a[0] - a[1]
    d2 = a[2] - a[3]
    damp = math.exp(-(math.pi**2 / 6) * w**2 * K * t**3 * (np.dot(d1, d1) + np.dot(d2, d2)))
    return math.pi**2 * w**4 / (4 * K**2 * t**2) * free * damp


def _only(vec, comp):
    out = np.zeros_like(vec)
    out[..., comp] = vec[..., comp]
    return out


def quad_propagate(kernel, K, t, xi, spec=None, sample_points=(), separable=True):
    """Propagation integral evaluated by brute-force quadrature at each sample point.

    ``sample_points`` is a sequence of (a1, a2, a3, a4), each ``a_i`` a 2-vector.
    With ``separable=True`` the integrand is split into its x and y
    component factors (each a separate pointwise kernel evaluation) and the
    2D (4D) integral becomes a product of 1D (2D) integrals; otherwise the
    full tensor grid is summed.
    """
    spec = spec or QuadratureSpec()
    if not (K > 0 and t > 0):
        raise DomainError("quadrature needs K t > 0", field="K")
    sigma = math.sqrt(K * t) / (math.pi * kernel.scale)
    nodes, weights, check = _rule(spec, kernel.scale, sigma)
    out = []
    for pt in sample_points:
        a = [np.asarray(x, dtype=float) for x in pt]
        if xi == 1:
            val = _quad_correlated(kernel, K, t, a, nodes, weights, check, separable)
        elif xi == 0:
            val = _quad_uncorrelated(kernel, K, t, a, nodes, weights, check, separable)
        else:
            raise DomainError(f"xi must be 0 or 1, got {xi!r}", field="xi")
        out.append(complex(_outside_factor(kernel, K, t, a, xi) * val))
    return out


def _quad_correlated(kernel, K, t, a, nodes, weights, check, separable):
    if not separable:
        ux, uy = np.meshgrid(nodes, nodes, indexing="ij")
        u = np.stack([ux, uy], axis=-1)
        vals = _integrand_correlated(kernel, K, t, a, u)
        if check:
            _check_boundary(vals, 2)
        return np.einsum("i,j,ij->", weights, weights, vals)
    result = 1.0 / kernel.prefactor
    for comp in (0, 1):
        u = np.zeros((len(nodes), 2))
        u[:, comp] = nodes
        ac = [_only(x, comp) for x in a]
        vals = _integrand_correlated(kernel, K, t, ac, u)
        if check:
            _check_boundary(vals, 1)
        result *= weights @ vals
    return result


def _quad_uncorrelated(kernel, K, t, a, nodes, weights, check, separable):
    if not separable:
        grids = np.meshgrid(nodes, nodes, nodes, nodes, indexing="ij")
        u1 = np.stack(grids[:2], axis=-1)
        u2 = np.stack(grids[2:], axis=-1)
        vals = _integrand_uncorrelated(kernel, K, t, a, u1, u2)
        if check:
            _check_boundary(vals, 4)
        return np.einsum("i,j,k,l,ijkl->", weights, weights, weights, weights, vals)
    result = 1.0 / kernel.prefactor
    g1, g2 = np.meshgrid(nodes, nodes, indexing="ij")
    for comp in (0, 1):
        u1 = np.zeros(g1.shape + (2,))
        u2 = np.zeros(g1.shape + (2,))
        u1[..., comp] = g1
        u2[..., comp] = g2
        ac = [_only(x, comp) for x in a]
        vals = _integrand_uncorrelated(kernel, K, t, ac, u1, u2)
        if check:
            _check_boundary(vals, 2)
        result *= weights @ vals @ weights
    return result


def quad_trace(kernel, spec=None):
    """Trace integral of R(a, a, b, b) summed on a tensor grid, x and y factored."""
    spec = spec or QuadratureSpec()
    nodes, weights, _ = _rule(QuadratureSpec(spec.nodes_per_dim, spec.domain_halfwidth), kernel.scale)
    ga, gb = np.meshgrid(nodes, nodes, indexing="ij")
    a = np.zeros(ga.shape + (2,))
    b = np.zeros(ga.shape + (2,))
    a[..., 0] = ga
    b[..., 0] = gb
    vals = evaluate(kernel, a, a, b, b) / kernel.prefactor
    _check_boundary(vals, 2)
    one = weights @ vals @ weights
    return kernel.prefactor * one**2


def quad_extended(ext, variables, point, mu=None, spec=None):
    """Integrate an ExtendedKernel over ``variables`` on a full tensor grid.

    ``point`` maps each surviving component label to its value (physical
    units); ``mu`` holds the source parameters.
    """
    spec = spec or QuadratureSpec()
    nodes, weights, _ = _rule(QuadratureSpec(spec.nodes_per_dim, spec.domain_halfwidth), ext.scale)
    mu = np.zeros(ext.n_sources) if mu is None else np.asarray(mu, dtype=complex)
    k = len(variables)
    grids = np.meshgrid(*([nodes] * k), indexing="ij")
    z = np.zeros(grids[0].shape + (len(ext.labels),))
    for i, lab in enumerate(ext.labels):
        if lab in variables:
            z[..., i] = grids[variables.index(lab)]
        else:
            z[..., i] = point[lab]
    z = z * math.pi * ext.scale
    expo = -np.einsum("...i,ij,...j->...", z, ext.coeff, z)
    expo = expo + z @ (ext.sources @ mu) + mu @ ext.source_quad @ mu
    vals = np.exp(expo)
    _check_boundary(vals, k)
    total = vals
    for _ in range(k):
        total = total @ weights
    return ext.prefactor * total


# -- finite-difference derivative extraction -----------------------------------


def _central_weights(q):
    """Central difference for the q-th derivative: offsets (in units of h) and weights."""
    offsets = [q / 2 - j for j in range(q + 1)]
    weights = [(-1) ** j * math.comb(q, j) for j in range(q + 1)]
    return offsets, weights


def _fd_mixed(B, const, q, h):
    offsets, weights = _central_weights(q)
    n = B.rows
    total = mpmath.mpf(0)
    for combo in itertools.product(range(q + 1), repeat=n):
        mu = [offsets[j] * h for j in combo]
        expo = mpmath.mpf(0)
        for i in range(n):
            for j in range(n):
                expo += B[i, j] * mu[i] * mu[j]
        wt = 1
        for j in combo:
            wt *= weights[j]
        total += wt * mpmath.exp(expo)
    return const * total / h ** (n * q)


def fd_extract(form, q, step=1e-2, levels=4, rtol=1e-9):
    """Mixed q-th derivative of ``form`` at mu = 0 by central differences, times N_LG^4.

    Differences are taken at ``step``, ``step/2``, ... and Richardson
    extrapolated in h^2.  Arithmetic uses enough decimal digits that the
    cancellation in a stencil of total order 4q is harmless; a large
    disagreement between the last two extrapolants raises
    :class:`PrecisionError`.
    """
    if not 1e-3 <= step <= 1e-1:
        raise DomainError("step must lie in [1e-3, 1e-1]", field="step")
    if not q >= 1:
        raise DomainError("q must be >= 1", field="q")
    quad = np.asarray(form.quad, dtype=complex)
    n = quad.shape[0]
    lost = n * q * math.log10(2 ** (levels - 1) / step)
    with mpmath.workdps(int(lost) + 30):
        B = mpmath.matrix([[mpmath.mpc(z.real, z.imag) for z in row] for row in quad])
        const = mpmath.mpc(form.constant.real, form.constant.imag)
        table = [[_fd_mixed(B, const, q, mpmath.mpf(step) / 2**k)] for k in range(levels)]
        for k in range(1, levels):
            for j in range(1, k + 1):
                f = mpmath.mpf(4) ** j
                table[k].append((f * table[k][j - 1] - table[k - 1][j - 1]) / (f - 1))
        best = table[-1][-1]
        prev = table[-2][-1]
        resid = abs(best - prev)
        if resid > rtol * abs(best):
            raise PrecisionError(f"finite-difference extrapolation did not settle (residual {float(resid):.3g})")
        value = complex(best)
    return lg_normalization(q) ** 4 * value
