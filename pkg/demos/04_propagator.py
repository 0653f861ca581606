"""Feynman propagator of the 1D oscillator as a truncated mode sum.

Run with ``python3 demos/04_propagator.py``.
"""
import numpy as np

from diracosc.osc1d import OscParams, energy
from diracosc.propagator import (
    PoleError,
    coordinate_propagator,
    fock_two_point,
    locate_poles,
    momentum_propagator,
)

params = OscParams(1.0, 1.0)
cutoff = 4

# Later times propagate particles, earlier times propagate holes.  The Fock
# space two-point function on the same modes gives the same matrix.
for dt in (0.7, -0.7):
    s = coordinate_propagator(params, 0.3, dt, -0.2, 0.0, cutoff)
    oracle = fock_two_point(params, 0.3, dt, -0.2, 0.0, cutoff)
    print(f"dt={dt:+.1f}: S_00 = {s.value[0, 0]:.6f}, |mode sum - Fock| = {np.abs(s.time_ordered - oracle).max():.1e}")

# In momentum space the poles sit at the levels E_n.
poles = locate_poles(params, cutoff)
print("poles :", np.round(poles, 10))
print("levels:", np.round(np.sort(energy(params, np.arange(-cutoff, cutoff + 1))), 10))

# Evaluating on a pole is refused unless a finite epsilon is given.
try:
    momentum_propagator(params, 1.0, 0.2, 0.2, cutoff)
except PoleError as err:
    print("pole guard:", err)
s = momentum_propagator(params, 1.0, 0.2, 0.2, cutoff, epsilon=1e-3)
print(f"with epsilon=1e-3: S_00 = {s.value[0, 0]:.4f}")
