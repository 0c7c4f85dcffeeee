"""Entanglement of the OAM qubit versus turbulence.

The pair is projected on l = +-q and scored by concurrence.  Two things to
look for: independent media kill the entanglement at finite W while a
shared medium only lets it decay; and at large K both curves collapse on
the single-phase-screen formulas.
"""

import numpy as np

from biphoton import entangle, evolve, params, project


def concurrence(q, W, K, correlated):
    t = params.weak_scint_t(W, K)
    state = project.project_qubit(evolve.evolve_spdc(K, t, 1.0, correlated), q, t)
    return entangle.concurrence(state).value


Ws = np.linspace(0.0, 3.0, 13)
print("K = 1, q = 1")
print("   W    uncorrelated  correlated")
for W in Ws:
    print(f"{W:5.2f}  {concurrence(1, W, 1.0, False):12.5f}  {concurrence(1, W, 1.0, True):10.5f}")

# At K = 1e4 the numeric curve follows C_q(chi) with chi = 8 K t / 3,
# about ten times the tabulated 0.456 W^(5/3).
K = 1e4
print("\nK = 1e4, uncorrelated: numeric vs single-screen formula")
print("   W   q  numeric   C_q(8Kt/3)  C_q(0.456 W^5/3)")
for W in (0.5, 1.0, 2.0):
    t = params.weak_scint_t(W, K)
    for q in (1, 2, 3):
        derived = entangle.sps_concurrence(q, entangle.sps_chi_from_Kt(K, t, False))
        tabulated = entangle.sps_concurrence(q, entangle.chi(W, False))
        print(f"{W:5.2f}  {q}  {concurrence(q, W, K, False):.5f}   {derived:.5f}     {tabulated:.5f}")
