"""One-dimensional Dirac oscillator: levels, spinors and the small-omega limit.

Run with ``python3 demos/01_spectrum_1d.py``.
"""
import numpy as np

from diracosc.osc1d import OscParams, collocation_grid, delta_e_gap, energy, hamiltonian_apply, wavefunction

params = OscParams(m=1.0, omega=0.5)

# The spectrum is symmetric: every particle level n > 0 has a mirror at -E_n,
# and n = 0 sits alone at E = m.
print("level  energy")
for n in range(-4, 5):
    print(f"{n:5d}  {energy(params, n): .12f}")

# The gap between E_0 and the top of the negative branch tends to 2m + omega.
for w in (1e-1, 1e-2, 1e-3):
    p = OscParams(1.0, w)
    print(f"omega={w:g}: gap {delta_e_gap(p):.9f}  vs 2m + omega = {2 + w:.9f}")

# Eigenfunctions are 4-spinors of Hermite functions.  On a Gauss-Hermite grid
# the Hamiltonian (spectral derivative) reproduces E_n psi_n.
z, w = collocation_grid(params, 80)
for n in (-3, 0, 3):
    psi = wavefunction(params, n, z)
    res = hamiltonian_apply(params, psi, z) - energy(params, n) * psi
    norm = np.sqrt(np.sum(w[:, None] * abs(psi) ** 2))
    print(f"n={n:2d}: norm {norm:.14f}, residual {np.sqrt(np.sum(w[:, None] * abs(res) ** 2)):.2e}")

# Non-relativistic limit: E_n - m grows like |n| omega for small omega.
for w in (1e-2, 1e-3, 1e-4):
    p = OscParams(1.0, w)
    print(f"omega={w:g}: (E_2 - m)/omega = {(energy(p, 2) - 1.0) / w:.6f}")
