"""Projection of biphoton kernels onto two-photon OAM qubits.

LG modes with p = 0 and azimuthal index +-q are generated from

    G_s(a, t; mu) = pi w exp[i pi w (a_x + s i a_y) mu - pi^2 w^2 |a|^2 (1 - i t)],

whose q-th mu-derivative at zero (times the mode normalization) is the
angular spectrum of the mode with l = s q.  Overlapping a kernel with
G*(a1) G(a2) G*(a3) G(a4) is a Gaussian integral with sources linear in
mu, so the result is ``constant * exp(mu^T B mu)``; the density-matrix
element follows from a mixed derivative of that generating function.
"""

from dataclasses import dataclass
from itertools import product
import math

import numpy as np

from .errors import DegenerateProjectionError, DomainError
from .kernel import gaussian_marginalize
from .series import mixed_derivative_of_exp_quadratic

# basis order (+q,+q), (+q,-q), (-q,+q), (-q,-q); entries are (photon 1, photon 2)
BASIS_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))

# slots 1 and 3 carry the conjugated (ket) modes
_CONJUGATED = (True, False, True, False)


def lg_normalization(q):
    return math.sqrt(2 ** (1 + q) / (math.pi * math.factorial(q)))


@dataclass(frozen=True)
class LGGeneratingSpec:
    """Generating function of one tensor slot: sign of l, |l| = q, waist and distance."""

    sign: int
    q: int
    waist: float
    t: float

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign!r}", field="sign")
        if not (isinstance(self.q, (int, np.integer)) and self.q >= 1):
            raise DomainError(f"q must be a positive integer, got {self.q!r}", field="q")
        if not self.waist > 0:
            raise DomainError("waist must be > 0", field="waist")


@dataclass(frozen=True)
class MuQuadraticForm:
    """H(mu) = constant * exp(sum_ij quad_ij mu_i mu_j)."""

    constant: complex
    quad: np.ndarray

    def __call__(self, mu):
        mu = np.asarray(mu)
        return self.constant * np.exp(np.einsum("...i,ij,...j->...", mu, self.quad, mu))


def overlap_generating(kernel, specs):
    """Overlap of ``kernel`` with the four slot generating functions in ``specs``.

    Slots 1 and 3 use the complex conjugate of the generating function.
    """
    if len(specs) != 4:
        raise DomainError("need one generating spec per slot", field="specs")
    ext = kernel.to_extended()
    q = ext.coeff.copy()
    src = np.zeros((8, 4), complex)
    pref = ext.prefactor
    for slot, (spec, conj) in enumerate(zip(specs, _CONJUGATED)):
        r = spec.waist / kernel.scale
        width = r**2 * (1 + 1j * spec.t if conj else 1 - 1j * spec.t)
        q[2 * slot, 2 * slot] += width
        q[2 * slot + 1, 2 * slot + 1] += width
        src[2 * slot, slot] = (-1j if conj else 1j) * r
        src[2 * slot + 1, slot] = -spec.sign * r
        pref *= math.pi * spec.waist
    full = type(ext)(pref, ext.scale, q, ext.labels, src)
    out = gaussian_marginalize(full, ext.labels)
    return MuQuadraticForm(out.prefactor, out.source_quad)


def extract_element(form, q, order=None):
    """N_LG^4 times the q-th derivative in every mu at zero of ``form``."""
    if not q >= 1:
        raise DomainError(f"q must be >= 1, got {q!r}", field="q")
    deriv = mixed_derivative_of_exp_quadratic(form.quad, q, order)
    return lg_normalization(q) ** 4 * form.constant * deriv


@dataclass(frozen=True)
class QubitState:
    """Two-photon density matrix in the basis of :data:`BASIS_SIGNS`."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise DomainError(f"rho must be 4x4, got {rho.shape}", field="rho")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def hermiticity_defect(self):
        return float(np.abs(self.rho - self.rho.conj().T).max())

    @property
    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))[0])

    def photon_swapped(self):
        perm = [0, 2, 1, 3]
        return QubitState(self.rho[np.ix_(perm, perm)])


def projected_matrix(kernel, q, t, detection_waist=None, order=None):
    """Unnormalized 4x4 projection of ``kernel`` on the +-q LG qubits."""
    w = kernel.scale if detection_waist is None else detection_waist
    rho = np.zeros((4, 4), complex)
    for r, c in product(range(4), repeat=2):
        (s1, s3), (s2, s4) = BASIS_SIGNS[r], BASIS_SIGNS[c]
        specs = [LGGeneratingSpec(s, q, w, t) for s in (s1, s2, s3, s4)]
        rho[r, c] = extract_element(overlap_generating(kernel, specs), q, order)
    return rho


def project_qubit(kernel, q, t, detection_waist=None, order=None):
    """Trace-normalized qubit density matrix of ``kernel`` at distance ``t``.

    ``detection_waist`` defaults to the kernel scale (mode waist equal to
    the pump waist).
    """
    rho = projected_matrix(kernel, q, t, detection_waist, order)
    tr = np.trace(rho)
    if abs(tr) <= 1e-300 or abs(tr) <= 1e-14 * np.abs(rho).max(initial=0.0):
        raise DegenerateProjectionError("projected density matrix has vanishing trace")
    return QubitState(rho / tr)


def dumps_qubit(state):
    """Row-major 4x4 block of ``re,im`` entries, 17 significant digits."""
    rows = [" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row) for row in state.rho]
    return "\n".join(rows) + "\n"


def loads_qubit(text):
    rows = [line.split() for line in text.splitlines() if line.strip()]
    rho = [[complex(*map(float, entry.split(","))) for entry in row] for row in rows]
    return QubitState(np.array(rho))
