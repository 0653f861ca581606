"""Three-dimensional oscillator: the (n, kappa) level scheme and radial functions.

Run with ``python3 demos/02_radial_3d.py``.
"""
import numpy as np

from diracosc.osc1d import OscParams
from diracosc.osc3d import (
    Qnum3D,
    completeness_probe,
    energy3d,
    gaussian_test_spinor,
    radial_residual,
    radial_solution,
    wavefunction3d,
)
from diracosc.specfun import radial_rule

params = OscParams(1.0, 1.0)

# For kappa < 0 the levels do not depend on kappa (the hidden degeneracy);
# for kappa > 0 they rise with l.  The state n = -0 exists only for kappa > 0.
print(" kappa   E(+0)      E(+1)      E(-1)      E(-0)")
for kappa in (-3, -2, -1, 1, 2, 3):
    row = [energy3d(params, 1, 0, kappa), energy3d(params, 1, 1, kappa), energy3d(params, -1, 1, kappa)]
    neg0 = f"{energy3d(params, -1, 0, kappa): .6f}" if kappa > 0 else "     -    "
    print(f"{kappa:5d}  " + "  ".join(f"{e: .6f}" for e in row) + f"  {neg0}")

# Radial functions F, G solve the coupled first-order system; check it and the norm.
rule = radial_rule(80, params.length)
r = np.linspace(0.1, 6.0, 200)
for q in (Qnum3D(1, 2, -2, 0.5), Qnum3D(-1, 1, 3, 0.5), Qnum3D(-1, 0, 2, 0.5)):
    pair = radial_solution(params, q)
    norm = rule.integrate(pair.F(rule.nodes) ** 2 + pair.G(rule.nodes) ** 2)
    r1, r2 = radial_residual(params, q, r)
    print(f"{q}: E={pair.energy: .6f} norm={norm:.12f} residual={max(abs(r1).max(), abs(r2).max()):.1e}")

# Only s-wave slots survive at the origin.
print("psi(r=0), n=0 kappa=-1:", np.round(wavefunction3d(params, Qnum3D(1, 0, -1, 0.5), 0.0, 0.4, 0.1), 6))

# Expanding a displaced Gaussian spinor in the truncated basis: the residual
# drops quickly with n and then is limited by the kappa cutoff.
f = gaussian_test_spinor(params)
for n_max in (0, 2, 5, 10):
    print(f"n_max={n_max:2d}, kappa_max=6: residual {completeness_probe(params, n_max, 6, f):.2e}")
