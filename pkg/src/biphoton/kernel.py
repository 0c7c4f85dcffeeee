"""Gaussian biphoton kernels in the plane-wave basis.

A :class:`DotProductKernel` represents

    R(a1, a2, a3, a4) = prefactor * exp(-pi^2 w^2 sum_ij M_ij a_i . a_j)

with two-dimensional spatial-frequency vectors ``a_i``.  Slots 1 and 3 are
the ket side, slots 2 and 4 the bra side; slots 1, 2 belong to the first
photon and 3, 4 to the second.

Integrals are done in the dimensionless coordinates ``a~ = pi w a``.  An
:class:`ExtendedKernel` is resolved into scalar components (x and y of each
vector variable) so that linear source terms such as the LG generating
parameters can couple to the components differently.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DivergenceError, DomainError, IntegrabilityError

# ket/bra index swap (1<->2, 3<->4) in zero-based slot order
HERMITIAN_PERM = np.array([1, 0, 3, 2])

PD_RTOL = 1e-10


def _symmetrize(m):
    return 0.5 * (m + m.T)


def _check_posdef(block, labels):
    """Raise IntegrabilityError unless Re(block) is positive definite."""
    re = _symmetrize(np.real(block))
    evals, evecs = np.linalg.eigh(re)
    scale = max(np.linalg.norm(block), 1.0)
    if evals[0] <= PD_RTOL * scale:
        worst = int(np.argmax(np.abs(evecs[:, 0])))
        raise IntegrabilityError(
            f"real part not positive definite (min eigenvalue {evals[0]:.3g}); "
            f"offending variable {labels[worst]!r}",
            variable=labels[worst],
        )


@dataclass(frozen=True)
class DotProductKernel:
    """Rotationally invariant Gaussian kernel over four 2D vectors."""

    prefactor: complex
    scale: float
    coeff: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.coeff, dtype=complex)
        if m.shape != (4, 4):
            raise DomainError(f"coeff must be 4x4, got {m.shape}", field="coeff")
        if not self.scale > 0:
            raise DomainError("scale must be > 0", field="scale")
        m = _symmetrize(m)
        m.setflags(write=False)
        object.__setattr__(self, "coeff", m)
        object.__setattr__(self, "prefactor", complex(self.prefactor))

    def __call__(self, a1, a2, a3, a4):
        return evaluate(self, a1, a2, a3, a4)

    def component_matrix(self):
        """The 8x8 coefficient matrix over (a1x, a1y, ..., a4x, a4y)."""
        return np.kron(self.coeff, np.eye(2))

    def to_extended(self):
        labels = [f"a{i}{c}" for i in range(1, 5) for c in "xy"]
        return ExtendedKernel(self.prefactor, self.scale, self.component_matrix(), labels)


def evaluate(kernel, a1, a2, a3, a4):
    """Pointwise value of ``kernel``; each ``a_i`` has shape (..., 2)."""
    a = np.stack(np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (a1, a2, a3, a4))), axis=-2)
    dots = np.einsum("...ik,...jk->...ij", a, a)
    expo = np.einsum("ij,...ij->...", kernel.coeff, dots)
    return kernel.prefactor * np.exp(-(math.pi * kernel.scale) ** 2 * expo)


def evaluate_components(kernel, ax, ay):
    """Evaluate through the 8x8 component form; ``ax``, ``ay`` have shape (..., 4)."""
    z = np.empty(np.broadcast_shapes(np.shape(ax), np.shape(ay))[:-1] + (8,))
    z[..., 0::2] = ax
    z[..., 1::2] = ay
    expo = np.einsum("...i,ij,...j->...", z, kernel.component_matrix(), z)
    return kernel.prefactor * np.exp(-(math.pi * kernel.scale) ** 2 * expo)


def hermiticity_defect(kernel):
    """||P M* P - M|| + |Im c| / |c| with P the ket/bra swap; zero for Hermitian kernels."""
    m = kernel.coeff
    swapped = np.conj(m)[np.ix_(HERMITIAN_PERM, HERMITIAN_PERM)]
    c = kernel.prefactor
    phase = abs(c.imag) / abs(c) if c != 0 else 0.0
    return float(np.linalg.norm(swapped - m) + phase)


def restricted_coeff(kernel):
    """2x2 coefficient matrix of R(a, a, b, b)."""
    m = kernel.coeff
    return np.array(
        [
            [m[0, 0] + m[1, 1] + 2 * m[0, 1], m[0, 2] + m[0, 3] + m[1, 2] + m[1, 3]],
            [m[0, 2] + m[0, 3] + m[1, 2] + m[1, 3], m[2, 2] + m[3, 3] + 2 * m[2, 3]],
        ]
    )


def trace(kernel):
    """Closed-form double integral of R(a, a, b, b) over a and b.

    Raises :class:`DivergenceError` when the diagonal restriction is not
    integrable, e.g. for the thin-crystal SPDC kernel.
    """
    mr = restricted_coeff(kernel)
    try:
        _check_posdef(mr, ["a", "b"])
    except IntegrabilityError as exc:
        raise DivergenceError(f"trace diverges: {exc}", variable=exc.variable) from None
    w = kernel.scale
    return kernel.prefactor / (math.pi**2 * w**4 * np.linalg.det(mr))


def spdc_kernel(pump_waist, beta):
    """Density matrix psi(a1, a3) psi*(a2, a4) of the Gaussian-approximated SPDC state.

    ``beta == 0`` is accepted here (the kernel is then not normalizable, see
    :func:`trace`); the prefactor keeps its factor of beta.
    """
    if not beta >= 0:
        raise DomainError(f"beta must be >= 0, got {beta!r}", field="beta")
    if not pump_waist > 0:
        raise DomainError("pump_waist must be > 0", field="pump_waist")
    d = 1 + beta / 2
    o = 1 - beta / 2
    m = np.array(
        [
            [d, 0, o, 0],
            [0, d, 0, o],
            [o, 0, d, 0],
            [0, o, 0, d],
        ],
        dtype=complex,
    )
    return DotProductKernel(8 * math.pi**2 * pump_waist**4 * beta, pump_waist, m)


@dataclass(frozen=True)
class ExtendedKernel:
    """Gaussian over scalar components with optional linear sources.

    In dimensionless components ``z = pi w (physical components)`` and
    source parameters ``mu``, the represented function is

        prefactor * exp(-z^T Q z + z^T L mu + mu^T C mu).

    ``coeff`` is Q (n x n), ``sources`` is L (n x m) and ``source_quad`` is
    C (m x m).  Integration measures are physical, so each integrated
    component contributes a factor ``1 / (pi w)``.
    """

    prefactor: complex
    scale: float
    coeff: np.ndarray
    labels: list
    sources: np.ndarray = None
    source_quad: np.ndarray = None

    def __post_init__(self):
        q = _symmetrize(np.asarray(self.coeff, dtype=complex))
        n = q.shape[0]
        if q.shape != (n, n) or len(self.labels) != n:
            raise DomainError("coeff must be square and match labels", field="coeff")
        src = np.zeros((n, 0), complex) if self.sources is None else np.asarray(self.sources, complex)
        m = src.shape[1]
        cq = np.zeros((m, m), complex) if self.source_quad is None else _symmetrize(np.asarray(self.source_quad, complex))
        object.__setattr__(self, "coeff", q)
        object.__setattr__(self, "sources", src)
        object.__setattr__(self, "source_quad", cq)
        object.__setattr__(self, "labels", list(self.labels))
        object.__setattr__(self, "prefactor", complex(self.prefactor))

    @property
    def n_sources(self):
        return self.sources.shape[1]

    def index(self, label):
        return self.labels.index(label)

    def to_dot_product(self, labels=None):
        """Collapse an isotropic 8-component form over four vectors back to a DotProductKernel."""
        if self.n_sources and np.any(self.sources):
            raise DomainError("kernel still has linear sources", field="sources")
        if labels is not None:
            order = [self.index(lab) for lab in labels]
        else:
            order = list(range(len(self.labels)))
        if len(order) != 8:
            raise DomainError("need exactly four vector variables", field="labels")
        q = self.coeff[np.ix_(order, order)]
        mx = q[0::2, 0::2]
        my = q[1::2, 1::2]
        cross = q[0::2, 1::2]
        tol = 1e-12 * max(np.abs(q).max(), 1.0)
        if np.abs(mx - my).max() > tol or np.abs(cross).max() > tol:
            raise DomainError("component form is not rotationally invariant", field="coeff")
        return DotProductKernel(self.prefactor, self.scale, mx)


def gaussian_marginalize(ext, variables):
    """Integrate the named scalar components of ``ext`` over the real line.

    Completes the square one pivot at a time.  Each pivot ``p`` contributes
    ``sqrt(pi / p) / (pi w)`` with the principal square root; because every
    Schur pivot of a matrix with positive-definite real part has positive
    real part, the accumulated branch is continuous in the parameters.

    Returns an :class:`ExtendedKernel` over the surviving components.  Use
    :meth:`ExtendedKernel.to_dot_product` to recover a four-vector kernel.
    """
    labels = list(ext.labels)
    idx = [labels.index(v) for v in variables]
    if len(set(idx)) != len(idx):
        raise DomainError("duplicate integration variables", field="variables")
    _check_posdef(ext.coeff[np.ix_(idx, idx)], [labels[i] for i in idx])

    q = ext.coeff.copy()
    src = ext.sources.copy()
    cq = ext.source_quad.copy()
    pref = ext.prefactor
    unit = 1.0 / (math.pi * ext.scale)
    alive = list(range(len(labels)))
    for var in variables:
        k = alive.index(labels.index(var))
        p = q[k, k]
        rest = [i for i in range(len(alive)) if i != k]
        qk = q[rest, k]
        lk = src[k, :]
        # -p z^2 + z (L_k mu - 2 q_k.y): complete the square in z
        pref = pref * np.sqrt(math.pi / p) * unit
        q = q[np.ix_(rest, rest)] - np.outer(qk, qk) / p
        src = src[rest, :] - np.outer(qk, lk) / p
        cq = cq + np.outer(lk, lk) / (4 * p)
        alive = [alive[i] for i in rest]
    return ExtendedKernel(pref, ext.scale, q, [labels[i] for i in alive], src, cq)


def dot_product_extension(kernel, extra_vectors, extra_coeff, cross_coeff):
    """Append vector variables to a four-slot kernel, isotropically.

    ``extra_coeff`` is the (k x k) dot-product block of the new vectors and
    ``cross_coeff`` the (4 x k) block coupling them to a1..a4; the result
    is the 2(4 + k)-component ExtendedKernel.
    """
    k = len(extra_vectors)
    full = np.zeros((4 + k, 4 + k), complex)
    full[:4, :4] = kernel.coeff
    full[4:, 4:] = extra_coeff
    full[:4, 4:] = cross_coeff
    full[4:, :4] = np.asarray(cross_coeff).T
    names = [f"a{i}" for i in range(1, 5)] + list(extra_vectors)
    labels = [f"{v}{c}" for v in names for c in "xy"]
    return ExtendedKernel(kernel.prefactor, kernel.scale, np.kron(full, np.eye(2)), labels)


# -- plain-text fixtures -------------------------------------------------------

_UPPER = [(i, j) for i in range(4) for j in range(i, 4)]


def _fmt_complex(z):
    return f"{z.real:.17g},{z.imag:.17g}"


def _parse_complex(text):
    re, im = text.split(",")
    return complex(float(re), float(im))


def dumps_kernel(kernel):
    """Serialize to ``key=value`` lines; complex numbers as ``re,im``."""
    lines = [f"prefactor={_fmt_complex(kernel.prefactor)}", f"scale={kernel.scale:.17g}"]
    lines += [f"M{i + 1}{j + 1}={_fmt_complex(kernel.coeff[i, j])}" for i, j in _UPPER]
    return "\n".join(lines) + "\n"


def loads_kernel(text):
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    m = np.zeros((4, 4), complex)
    for i, j in _UPPER:
        m[i, j] = m[j, i] = _parse_complex(fields[f"M{i + 1}{j + 1}"])
    return DotProductKernel(_parse_complex(fields["prefactor"]), float(fields["scale"]), m)
