"""Second quantization on a truncated mode set: the filled sea as vacuum.

Run with ``python3 demos/03_fock_sea.py``.
"""
import numpy as np

from diracosc import fock
from diracosc.osc1d import OscParams

params = OscParams(1.0, 1.0)
modes = fock.ModeSet.one_dim(params, 3, 3)  # levels -3..2
print("\n".join(modes.describe()))

# The empty state is not the ground state: filling the negative levels lowers
# the energy.  The sea vacuum has every negative mode occupied.
raw = fock.hamiltonian_raw(modes)
empty = fock.dirac_vacuum(modes).vector
sea = fock.sea_vacuum(modes)
e_sea = np.vdot(sea.vector, raw @ sea.vector).real
print("occupations of the sea vacuum:", sea.occupations())
print(f"<empty|H|empty> = {np.vdot(empty, raw @ empty).real:.6f}, <sea|H|sea> = {e_sea:.6f}")

# Normal ordering subtracts the sea energy; all excitations then cost |E|.
h = fock.hamiltonian_normal_ordered(modes)
levels = np.unique(np.round(np.linalg.eigvalsh(h.toarray()), 9))
print("lowest normal-ordered levels:", levels[:6])

# A particle and a hole carry opposite charge.
fam = fock.particle_labels(modes)
q = fock.charge_operator(modes)
particle = fam.annihilators["c"][1].conj().T @ sea.vector
hole = fam.annihilators["d"][2].conj().T @ sea.vector
print("Q on particle:", np.vdot(particle, q @ particle).real, " Q on hole:", np.vdot(hole, q @ hole).real)
