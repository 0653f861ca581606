"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of :class:`CheckResult`; a check passes when the
measured value is at most its tolerance.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from . import fock, osc1d, osc3d, propagator
from .osc1d import OscParams
from .specfun import default_order, radial_rule

SUITES = ("ortho", "complete", "residual", "fock", "propagator")

DEFAULT_TOLERANCES = {
    "ortho_1d": 1e-9,
    "ortho_3d": 1e-8,
    "norm_3d": 1e-8,
    "completeness_3d": 1e-3,
    "completeness_monotone": 1e-12,
    "residual_1d": 1e-6,
    "residual_3d": 1e-6,
    "fock_anticommutator": 1e-12,
    "fock_spectrum": 1e-10,
    "fock_vacuum_energy": 1e-12,
    "fock_vacuum_kill": 0.0,
    "fock_normal_order": 1e-10,
    "fock_charge": 1e-10,
    "hermite_fourier": 1e-8,
    "contour_identity": 1e-6,
    "fock_equivalence": 1e-10,
    "pole_locations": 1e-10,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {"check": self.name, "value": self.value, "tolerance": self.tolerance,
                "pass": self.passed}


@dataclass
class CheckSettings:
    """Cutoffs and tolerances for the suites."""

    params: OscParams = field(default_factory=OscParams)
    n_max: int = 20
    kappa_max: int = 6
    fock_modes: int = 8
    quad_order: int | None = None
    tolerances: dict = field(default_factory=dict)

    def tol(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])


def _result(settings, name, value):
    tol = settings.tol(name)
    value = float(value)
    return CheckResult(name, value, tol, bool(value <= tol))


def _radial_table(params, n_max, kappa, rule):
    # F and G of every (n, kappa) state on the rule nodes; g does not enter the radial part
    states = [q for q in osc3d.enumerate_states(n_max, abs(kappa))
              if q.kappa == kappa and q.g == 0.5]
    pairs = [osc3d.radial_solution(params, q) for q in states]
    r = rule.nodes
    return states, pairs, np.array([p.F(r) for p in pairs]), np.array([p.G(r) for p in pairs])


def suite_ortho(settings: CheckSettings) -> list[CheckResult]:
    p = settings.params
    n1 = min(settings.n_max, 40)
    order = max(settings.quad_order or 0, default_order(n1))
    z, w = osc1d.collocation_grid(p, order)
    labels = range(-n1, n1 + 1)
    psi = np.array([osc1d.wavefunction(p, n, z) for n in labels])  # (N, Z, 4)
    gram = np.einsum("azc,z,bzc->ab", np.conj(psi), w, psi)
    out = [_result(settings, "ortho_1d", np.abs(gram - np.eye(len(labels))).max())]

    n3 = min(settings.n_max, 10)
    rule = radial_rule(osc3d.radial_order([osc3d.Qnum3D(1, n3, settings.kappa_max, 0.5),
                                           osc3d.Qnum3D(1, n3, -settings.kappa_max, 0.5)]),
                       p.length)
    worst_norm = worst_off = 0.0
    for kappa in _kappas(settings.kappa_max):
        _, _, big, small = _radial_table(p, n3, kappa, rule)
        g = (big * rule.weights) @ big.T + (small * rule.weights) @ small.T
        worst_norm = max(worst_norm, np.abs(np.diag(g) - 1.0).max())
        worst_off = max(worst_off, np.abs(g - np.diag(np.diag(g))).max())
    out.append(_result(settings, "norm_3d", worst_norm))
    out.append(_result(settings, "ortho_3d", max(worst_norm, worst_off)))
    return out


def _kappas(kappa_max):
    return [k for k in range(-kappa_max, kappa_max + 1) if k != 0]


def suite_residual(settings: CheckSettings) -> list[CheckResult]:
    p = settings.params
    n1 = settings.n_max
    order = max(settings.quad_order or 0, default_order(n1))
    z, w = osc1d.collocation_grid(p, order)
    worst = 0.0
    for n in range(-n1, n1 + 1):
        psi = osc1d.wavefunction(p, n, z)
        res = osc1d.hamiltonian_apply(p, psi, z) - osc1d.energy(p, n) * psi
        num = np.sum(w[:, None] * np.abs(res) ** 2)
        den = np.sum(w[:, None] * np.abs(psi) ** 2)
        worst = max(worst, math.sqrt(num / den))
    out = [_result(settings, "residual_1d", worst)]

    n3 = min(settings.n_max, 10)
    rule = radial_rule(4 * (n3 + settings.kappa_max) + 48, p.length)
    worst = 0.0
    for qn in osc3d.enumerate_states(n3, settings.kappa_max):
        if qn.g != 0.5:
            continue
        r1, r2 = osc3d.radial_residual(p, qn, rule.nodes)
        worst = max(worst, math.sqrt(np.sum(rule.weights * (r1 * r1 + r2 * r2))))
    out.append(_result(settings, "residual_3d", worst))
    return out


def suite_complete(settings: CheckSettings) -> list[CheckResult]:
    p = settings.params
    f = osc3d.gaussian_test_spinor(p)
    cutoffs = sorted({max(settings.n_max // 3, 1), max(2 * settings.n_max // 3, 1), settings.n_max})
    vals = [osc3d.completeness_probe(p, n, settings.kappa_max, f) for n in cutoffs]
    rise = max([b - a for a, b in zip(vals[:-1], vals[1:])], default=0.0)
    return [_result(settings, "completeness_3d", vals[-1]),
            _result(settings, "completeness_monotone", max(rise, 0.0))]


def fock_modes_1d(params: OscParams, modes: int) -> fock.ModeSet:
    """A 1D mode set with ``modes`` entries split evenly between sea and positive levels."""
    n_neg = modes // 2
    return fock.ModeSet.one_dim(params, n_neg, modes - n_neg)


def subset_sum_spectrum(energies) -> np.ndarray:
    """Sorted excitation energies of every particle/hole configuration."""
    cost = np.abs(np.asarray(energies, dtype=float))
    sums = [sum(c) for k in range(len(cost) + 1) for c in itertools.combinations(cost, k)]
    return np.sort(np.array(sums))


def suite_fock(settings: CheckSettings) -> list[CheckResult]:
    if not 1 <= settings.fock_modes <= fock.MAX_MODES:
        raise ValueError(f"fock_modes must be in 1..{fock.MAX_MODES}")
    modes = fock_modes_1d(settings.params, min(settings.fock_modes, 10))
    ops = [fock.ladder(modes, lab) for lab in modes.labels]
    eye = np.eye(modes.fock_dim)
    worst = 0.0
    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            worst = max(worst, abs(fock.anticommutator(a, b)).max())
            ab = fock.anticommutator(a, b.conj().T).toarray()
            worst = max(worst, np.abs(ab - (eye if i == j else 0.0)).max())
    out = [_result(settings, "fock_anticommutator", worst)]

    h = fock.hamiltonian_normal_ordered(modes)
    vac = fock.sea_vacuum(modes).vector
    small = fock_modes_1d(settings.params, min(settings.fock_modes, 8))
    spec = np.linalg.eigvalsh(fock.hamiltonian_normal_ordered(small).toarray())
    out.append(_result(settings, "fock_spectrum",
                       np.abs(spec - subset_sum_spectrum(small.energies)).max()))
    out.append(_result(settings, "fock_vacuum_energy", np.abs(h @ vac).max()))
    kill = max((np.abs(fock.ladder(modes, lab, "create") @ vac).max() for lab in modes.sea_labels),
               default=0.0)
    out.append(_result(settings, "fock_vacuum_kill", kill))
    raw = fock.hamiltonian_raw(modes)
    e0 = np.vdot(vac, raw @ vac).real
    diff = raw - e0 * sparse.identity(modes.fock_dim) - h
    out.append(_result(settings, "fock_normal_order", abs(diff).max() if diff.nnz else 0.0))
    q = fock.charge_operator(modes)
    comm = q @ h - h @ q
    out.append(_result(settings, "fock_charge", abs(comm).max() if comm.nnz else 0.0))
    return out


def suite_propagator(settings: CheckSettings) -> list[CheckResult]:
    p = settings.params
    k = np.linspace(-5.0, 5.0, 41)
    hf = max(propagator.hermite_fourier_error(n, k) for n in range(21))
    out = [_result(settings, "hermite_fourier", hf)]

    worst = 0.0
    for n in range(11):
        for dt in (0.1, 0.5, 1.0, 2.0, 5.0, -0.1, -1.0, -5.0):
            lhs, rhs = propagator.contour_identity_check(p, n, dt)
            worst = max(worst, abs(lhs - rhs))
    out.append(_result(settings, "contour_identity", worst))

    cutoff = 4  # M = 2 * 4 + 1 = 9 modes
    worst = 0.0
    for z, t, zp, tp in ((0.3, 0.7, -0.5, 0.2), (0.3, 0.2, -0.5, 0.7), (0.1, 0.4, 0.1, 0.4),
                         (-1.2, -0.3, 0.8, 1.5)):
        a = propagator.coordinate_propagator(p, z, t, zp, tp, cutoff).time_ordered
        b = propagator.fock_two_point(p, z, t, zp, tp, cutoff)
        worst = max(worst, np.abs(a - b).max())
    out.append(_result(settings, "fock_equivalence", worst))

    n_p = min(settings.n_max, 20)
    found = propagator.locate_poles(p, n_p)
    expected = np.sort(osc1d.energy(p, np.arange(-n_p, n_p + 1)))
    err = np.abs(found - expected).max() if len(found) == len(expected) else math.inf
    out.append(_result(settings, "pole_locations", err))
    return out


_SUITE_FUNCS = {
    "ortho": suite_ortho,
    "complete": suite_complete,
    "residual": suite_residual,
    "fock": suite_fock,
    "propagator": suite_propagator,
}


def run_suite(name: str, settings: CheckSettings | None = None) -> list[CheckResult]:
    """Run one suite by name, or every suite for ``"all"``."""
    settings = settings or CheckSettings()
    if name == "all":
        return [r for s in SUITES for r in _SUITE_FUNCS[s](settings)]
    if name not in _SUITE_FUNCS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return _SUITE_FUNCS[name](settings)
