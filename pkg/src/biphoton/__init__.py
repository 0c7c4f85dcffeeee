"""Biphoton spatial entanglement in correlated and uncorrelated Kolmogorov turbulence.

Evolved density matrices are Gaussian kernels in the plane-wave basis
(:mod:`biphoton.kernel`), produced in closed form or by exact Gaussian
marginalization (:mod:`biphoton.evolve`), projected onto OAM qubits
(:mod:`biphoton.project`) and scored by concurrence
(:mod:`biphoton.entangle`).  :mod:`biphoton.oracle` holds independent
brute-force checks and :mod:`biphoton.params` the turbulence scales.
"""

from .entangle import chi, concurrence, sps_chi_from_Kt, sps_concurrence
from .evolve import (
    evolve_spdc,
    evolve_spdc_correlated,
    evolve_spdc_uncorrelated,
    propagate_general,
)
from .kernel import DotProductKernel, spdc_kernel, trace
from .params import TurbulenceScales, weak_scint_t
from .project import QubitState, project_qubit

__all__ = [
    "DotProductKernel",
    "QubitState",
    "TurbulenceScales",
    "chi",
    "concurrence",
    "evolve_spdc",
    "evolve_spdc_correlated",
    "evolve_spdc_uncorrelated",
    "project_qubit",
    "propagate_general",
    "spdc_kernel",
    "sps_chi_from_Kt",
    "sps_concurrence",
    "trace",
    "weak_scint_t",
]
