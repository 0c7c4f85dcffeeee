"""Wootters concurrence and the single-phase-screen concurrence curves."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidStateError

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SYSY = np.kron(SIGMA_Y, SIGMA_Y)

EIG_TOL = 1e-8
# eigenvalues of rho below this fraction of the largest are treated as zero
RANK_RTOL = 1e-13

CHI_UNCORRELATED = 0.456
CHI_CORRELATED = 0.912


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    eigenvalue_roots: tuple
    clamped: bool

    def __float__(self):
        return self.value


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix.

    ``rho`` may be a :class:`~biphoton.project.QubitState` or a 4x4 array.
    ``rho*`` is the entrywise conjugate in the given basis.

    The square roots of the eigenvalues of ``R = rho (sy sy) rho* (sy sy)``
    equal the singular values of ``tau_ij = v_i^T (sy sy) v_j`` where
    ``rho = sum_i v_i v_i^dagger``.  The singular values are used for the
    result, which avoids taking square roots of round-off sized eigenvalues
    of R; the spectrum of R itself is still checked for validity.
    """
    rho = np.asarray(getattr(rho, "rho", rho), dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got {rho.shape}")
    R = rho @ SYSY @ rho.conj() @ SYSY
    lam = np.linalg.eigvals(R)
    if np.any(np.abs(lam.imag) > EIG_TOL) or np.any(lam.real < -EIG_TOL):
        raise InvalidStateError(f"eigenvalues of R are not real non-negative: {lam}")

    p, vecs = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    keep = p > RANK_RTOL * max(p.max(), 0.0)
    v = vecs[:, keep] * np.sqrt(p[keep])
    tau = v.T @ SYSY @ v
    roots = np.zeros(4)
    if tau.size:
        sv = np.linalg.svd(tau, compute_uv=False)
        roots[: len(sv)] = sv
    roots = np.sort(roots)[::-1]
    raw = roots[0] - roots[1] - roots[2] - roots[3]
    return ConcurrenceResult(float(max(raw, 0.0)), tuple(float(r) for r in roots), bool(raw <= 0))


def chi(W, correlated):
    """Effective single-phase-screen turbulence parameter; twice as large in one shared medium."""
    if not W >= 0:
        raise DomainError(f"W must be >= 0, got {W!r}", field="W")
    return (CHI_CORRELATED if correlated else CHI_UNCORRELATED) * W ** (5 / 3)


def sps_chi_from_Kt(K, t, correlated):
    """chi reached by the numeric pipeline as K -> infinity at fixed K t.

    With ``t = 1.72 W^{5/3} / K`` this is ``4.59 W^{5/3}`` (uncorrelated),
    about ten times the constant used by :func:`chi`.
    """
    if not (K >= 0 and t >= 0):
        raise DomainError("K and t must be >= 0", field="K")
    return (16.0 if correlated else 8.0) * K * t / 3.0


def sps_concurrence(q, chi):
    """Closed-form concurrence of the projected SPDC state in the single-phase-screen limit."""
    if not chi >= 0:
        raise DomainError(f"chi must be >= 0, got {chi!r}", field="chi")
    x = chi
    if q == 1:
        return (x + 1) / (x**2 + x + 1)
    if q == 2:
        return 2 * (x + 1) * (3 * x**2 + 2 * x + 2) / (3 * x**4 + 6 * x**3 + 10 * x**2 + 8 * x + 4)
    if q == 3:
        num = (x + 1) * (15 * x**4 + 24 * x**3 + 32 * x**2 + 16 * x + 8)
        den = 5 * x**6 + 15 * x**5 + 39 * x**4 + 56 * x**3 + 48 * x**2 + 24 * x + 8
        return num / den
    raise DomainError(f"q must be 1, 2 or 3, got {q!r}", field="q")
