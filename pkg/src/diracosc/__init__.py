"""Dirac oscillator in (1+1) and (3+1) dimensions.

Closed-form spectra and spinor eigenfunctions, numerical verification of
the eigenvalue problem, a truncated fermionic Fock space with a filled
Dirac sea, and the Feynman propagator of the (1+1) field.
"""
from .osc1d import DIRAC, OscParams, energy, wavefunction
from .osc3d import Qnum3D, energy3d, enumerate_states, radial_solution, wavefunction3d
from .propagator import PoleError, coordinate_propagator, momentum_propagator

__version__ = "0.1.0"

__all__ = [
    "DIRAC",
    "OscParams",
    "energy",
    "wavefunction",
    "Qnum3D",
    "energy3d",
    "enumerate_states",
    "radial_solution",
    "wavefunction3d",
    "PoleError",
    "coordinate_propagator",
    "momentum_propagator",
]
