"""The ten acceptance criteria at their stated tolerances.

Each test records one pass/fail line, printed in the "acceptance criteria"
section of the pytest terminal summary.
"""
import itertools
import math
import subprocess
import sys

import numpy as np
import pytest
from scipy import sparse

from diracosc import fock, osc3d
from diracosc.checks import fock_modes_1d, subset_sum_spectrum
from diracosc.osc1d import (
    OscParams,
    collocation_grid,
    delta_e_gap,
    energy,
    hamiltonian_apply,
    wavefunction,
)
from diracosc.propagator import (
    contour_identity_check,
    coordinate_propagator,
    fock_two_point,
    hermite_fourier_error,
    locate_poles,
)
from diracosc.specfun import radial_rule

GRID = [OscParams(m, w) for m in (0.5, 1.0, 2.0) for w in (0.1, 1.0, 3.0)]


def test_criterion_1_spectrum_laws(acceptance):
    n = np.arange(-50, 51)
    worst, exact = 0.0, True
    for p in GRID:
        e = energy(p, n)
        pos = energy(p, np.arange(1, 51))
        exact &= bool(np.all(energy(p, -np.arange(1, 51)) == -pos)) and energy(p, 0) == p.m
        ref = np.sign(n + 0.5) * np.sqrt(2 * np.abs(n) * p.m * p.omega + p.m**2)
        worst = max(worst, np.abs(e - ref).max())
    acceptance(1, exact and worst <= 1e-14, f"symmetry exact={exact}, max |E - closed form| = {worst:.2e}")


def test_criterion_2_gap_law(acceptance):
    worst = 0.0
    for m in (0.5, 1.0, 2.0):
        for ratio in (1e-2, 3e-3, 1e-3, 1e-4, 1e-6):
            w = ratio * m
            worst = max(worst, abs(delta_e_gap(OscParams(m, w)) - (2 * m + w)) / (w * w / m))
    zero = all(delta_e_gap(OscParams(m, 0.0)) == 2 * m for m in (0.5, 1.0, 2.0))
    acceptance(2, worst <= 1.0 and zero, f"max |dE - (2m + w)| / (w^2/m) = {worst:.3f}, w = 0 exact={zero}")


def test_criterion_3_orthonormality_1d(acceptance):
    worst = 0.0
    for p in GRID:
        z, w = collocation_grid(p, 112)
        psi = np.array([wavefunction(p, n, z) for n in range(-40, 41)])
        gram = np.einsum("azc,z,bzc->ab", psi.conj(), w, psi)
        worst = max(worst, np.abs(gram - np.eye(81)).max())
    acceptance(3, worst <= 1e-9, f"max |<psi_n, psi_m> - delta| = {worst:.2e} (|n| <= 40, order 112)")


def test_criterion_4_eigen_residual(acceptance):
    worst = 0.0
    for p in GRID:
        z, w = collocation_grid(p, 112)
        for n in range(-20, 21):
            psi = wavefunction(p, n, z)
            res = hamiltonian_apply(p, psi, z) - energy(p, n) * psi
            norm = math.sqrt(np.sum(w[:, None] * abs(psi) ** 2))
            worst = max(worst, math.sqrt(np.sum(w[:, None] * abs(res) ** 2)) / norm)
    acceptance(4, worst <= 1e-6, f"max ||H psi - E psi|| / ||psi|| = {worst:.2e} (|n| <= 20)")


def _radial_states(n_max=10, kappa_max=4):
    return [q for q in osc3d.enumerate_states(n_max, kappa_max) if q.g == 0.5]


def test_criterion_5_radial(acceptance):
    states = _radial_states()
    assert {q.n_sign for q in states} == {-1, 1}
    norm_err = res_err = 0.0
    for p in (OscParams(1.0, 1.0), OscParams(0.5, 3.0), OscParams(2.0, 0.1)):
        rule = radial_rule(osc3d.radial_order(states), p.length)
        r = np.linspace(0.05, 8.0, 300) * p.length
        for q in states:
            pair = osc3d.radial_solution(p, q)
            norm = rule.integrate(pair.F(rule.nodes) ** 2 + pair.G(rule.nodes) ** 2)
            norm_err = max(norm_err, abs(norm - 1.0))
            r1, r2 = osc3d.radial_residual(p, q, r)
            res_err = max(res_err, np.abs(r1).max(), np.abs(r2).max())
    acceptance(5, norm_err <= 1e-8 and res_err <= 1e-6,
               f"normalization {norm_err:.2e}, coupled residual {res_err:.2e} (|n| <= 10, |kappa| <= 4)")


def test_criterion_6_orthonormality_completeness(acceptance):
    p = OscParams(1.0, 1.0)
    states = _radial_states()
    rule = radial_rule(osc3d.radial_order(states), p.length)
    worst = 0.0
    for kappa in [k for k in range(-4, 5) if k]:
        pairs = [osc3d.radial_solution(p, q) for q in states if q.kappa == kappa]
        f = np.array([x.F(rule.nodes) for x in pairs])
        g = np.array([x.G(rule.nodes) for x in pairs])
        gram = (f * rule.weights) @ f.T + (g * rule.weights) @ g.T
        worst = max(worst, np.abs(gram - np.eye(len(pairs))).max())
    # different kappa or g are orthogonal through the angular part
    sample = [osc3d.Qnum3D(1, 2, -2, 0.5), osc3d.Qnum3D(1, 2, 2, 0.5), osc3d.Qnum3D(-1, 1, -2, -0.5),
              osc3d.Qnum3D(1, 0, 1, 0.5)]
    for a, b in itertools.combinations(sample, 2):
        worst = max(worst, abs(osc3d.orthonormality3d(p, a, b)))

    test_spinor = osc3d.gaussian_test_spinor(p)
    cutoffs = (5, 10, 20, 30)
    vals = [osc3d.completeness_probe(p, n, 6, test_spinor) for n in cutoffs]
    monotone = all(b <= a + 1e-12 for a, b in zip(vals[:-1], vals[1:]))
    ok = worst <= 1e-8 and vals[-1] < 1e-3 and monotone
    acceptance(6, ok, f"pairwise {worst:.2e}, completeness {vals[-1]:.2e} at n_max 30 kappa_max 6, "
                      f"monotone={monotone}")


def test_criterion_7_fock_algebra(acceptance):
    p = OscParams(1.0, 1.0)
    modes = fock_modes_1d(p, 10)
    ops = [fock.ladder(modes, lab) for lab in modes.labels]
    eye = np.eye(modes.fock_dim)
    anti = 0.0
    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            anti = max(anti, abs(fock.anticommutator(a, b)).max())
            anti = max(anti, np.abs(fock.anticommutator(a, b.conj().T).toarray() - (eye if i == j else 0)).max())

    spec = 0.0
    for size in range(1, 9):
        small = fock_modes_1d(p, size)
        ev = np.linalg.eigvalsh(fock.hamiltonian_normal_ordered(small).toarray())
        spec = max(spec, np.abs(ev - subset_sum_spectrum(small.energies)).max())

    h = fock.hamiltonian_normal_ordered(modes)
    vac = fock.sea_vacuum(modes).vector
    vac_h = np.abs(h @ vac).max()
    kill = max(np.abs(fock.ladder(modes, lab, "create") @ vac).max() for lab in modes.sea_labels)
    raw = fock.hamiltonian_raw(modes)
    diff = raw - np.vdot(vac, raw @ vac).real * sparse.identity(modes.fock_dim) - h
    shift = abs(diff).max() if diff.nnz else 0.0
    q = fock.charge_operator(modes)
    comm = q @ h - h @ q
    charge = abs(comm).max() if comm.nnz else 0.0
    ok = anti <= 1e-12 and spec <= 1e-10 and vac_h <= 1e-12 and kill == 0 and shift <= 1e-10 and charge <= 1e-10
    acceptance(7, ok, f"anticomm {anti:.1e}, spectrum {spec:.1e}, H'|0> {vac_h:.1e}, b+|0> {kill:.0e}, "
                      f"shift {shift:.1e}, [Q,H'] {charge:.1e}")


def test_criterion_8_propagator(acceptance):
    p = OscParams(1.0, 1.0)
    k = np.linspace(-6.0, 6.0, 61)
    hf = max(hermite_fourier_error(n, k) for n in range(21))

    contour = 0.0
    for n in range(11):
        for dt in (-2.0, -0.3, 0.3, 1.0, 4.0):
            lhs, rhs = contour_identity_check(p, n, dt)
            contour = max(contour, abs(lhs - rhs))

    fock_err = 0.0
    for cutoff in range(5):  # M = 2 cutoff + 1 <= 9
        for z, t, zp, tp in [(0.3, 0.8, -0.4, 0.1), (0.3, 0.1, -0.4, 0.8), (-1.2, 0.0, 0.5, 0.0)]:
            s = coordinate_propagator(p, z, t, zp, tp, cutoff).time_ordered
            fock_err = max(fock_err, np.abs(s - fock_two_point(p, z, t, zp, tp, cutoff)).max())

    pole = 0.0
    for params in (p, OscParams(0.5, 3.0)):
        for cutoff in (5, 20):
            found = locate_poles(params, cutoff)
            expected = np.sort(energy(params, np.arange(-cutoff, cutoff + 1)))
            pole = max(pole, np.abs(found - expected).max() if len(found) == len(expected) else np.inf)
    ok = hf <= 1e-8 and contour <= 1e-6 and fock_err <= 1e-10 and pole <= 1e-10
    acceptance(8, ok, f"Hermite-Fourier {hf:.1e}, contour {contour:.1e}, Fock {fock_err:.1e}, poles {pole:.1e}")


def test_criterion_9_nonrelativistic_limit(acceptance):
    worst = 0.0
    for m in (0.5, 1.0, 2.0):
        for n in (1, 2, -1, -2):
            for ratio in (1e-2, 1e-3, 1e-4):
                w = ratio * m
                slope = (abs(energy(OscParams(m, w), n)) - m) / w
                worst = max(worst, abs(slope / abs(n) - 1.0))
    acceptance(9, worst <= 0.01, f"max |(|E_n| - m) / (|n| w) - 1| = {worst:.2e}")


def test_criterion_10_cli(acceptance):
    cmd = [sys.executable, "-m", "diracosc", "check", "--suite", "all"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    same = first.stdout == second.stdout and len(first.stdout) > 0
    ok = first.returncode == 0 and second.returncode == 0 and same
    acceptance(10, ok, f"exit codes {first.returncode}/{second.returncode}, byte-identical={same}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
