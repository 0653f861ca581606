"""Feynman propagator of the (1+1) Dirac oscillator field.

Conventions
-----------
``coordinate_propagator`` returns S^F with

    i S^F(z, z', t - t') = <0| T psi(z, t) psibar(z', t') |0>

evaluated as a mode sum truncated at ``cutoff``: particle modes
n = 0..cutoff and sea modes n = -1..-cutoff.  Equal times are ordered as
t -> t'^+ (particle branch).

Momentum space uses the unitary transform in each spatial argument,

    S(p, p') = (1/2 pi) int dz dz' exp(-i p z) S(z, z') exp(+i p' z'),

and exp(+i p0 (t - t')) in time with the Feynman i*epsilon prescription.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from . import fock
from .osc1d import DIRAC, OscParams, energy, spinor_xi, wavefunction
from .specfun import hermite_function

__all__ = [
    "PropagatorSample",
    "PoleError",
    "coordinate_propagator",
    "fock_two_point",
    "mode_spinor_momentum",
    "hermite_fourier_numeric",
    "hermite_fourier_error",
    "mixed_propagator",
    "momentum_propagator",
    "pole_energies",
    "locate_poles",
    "contour_identity_check",
]


@dataclass(frozen=True)
class PropagatorSample:
    """4x4 value of S^F together with the truncation that produced it."""

    value: np.ndarray
    cutoff: int
    space: str
    args: dict = field(default_factory=dict)

    @property
    def time_ordered(self) -> np.ndarray:
        """i S^F, the vacuum expectation of the time-ordered product."""
        return 1j * self.value


class PoleError(ValueError):
    """p0 lies on (or too close to) a pole p0^2 = p_n^2."""

    def __init__(self, n: int, p0: float, pole: float):
        self.n = int(n)
        self.p0 = float(p0)
        self.pole = float(pole)
        super().__init__(f"p0 = {self.p0!r} is within the pole guard of mode n = {self.n} "
                         f"(p_n = {self.pole!r})")


def _bar(spinor):
    return np.conj(spinor) @ DIRAC.beta


def _outer_bar(a, b):
    # a psibar(b) over trailing spinor axes
    return np.einsum("...i,...j->...ij", a, _bar(b))


def coordinate_propagator(params: OscParams, z, t: float, zp, tp: float,
                          cutoff: int) -> PropagatorSample:
    """Truncated mode sum for S^F(z - z', t - t').

    ``z`` and ``zp`` broadcast against each other; the value has shape
    ``broadcast(z, zp).shape + (4, 4)``.
    """
    params.require_bound()
    dt = t - tp
    z, zp = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(zp, dtype=float))
    acc = np.zeros(z.shape + (4, 4), dtype=complex)
    if dt >= 0:
        for n in range(cutoff + 1):
            u, up = wavefunction(params, n, z), wavefunction(params, n, zp)
            acc += _outer_bar(u, up) * np.exp(-1j * energy(params, n) * dt)
    else:
        for n in range(1, cutoff + 1):
            v, vp = wavefunction(params, -n, z), wavefunction(params, -n, zp)
            acc -= _outer_bar(v, vp) * np.exp(1j * energy(params, n) * dt)
    return PropagatorSample(-1j * acc, cutoff, "coordinate",
                            {"z": z, "t": t, "zp": zp, "tp": tp})


def fock_two_point(params: OscParams, z: float, t: float, zp: float, tp: float,
                   cutoff: int) -> np.ndarray:
    """<0| T psi_a(z, t) psibar_b(z', t') |0> on the truncated Fock space.

    Independent of the mode-sum formula: the field operator is assembled
    from the raw Jordan-Wigner ladder matrices and averaged in the filled
    sea state.  Needs 2 * cutoff + 1 <= 14 modes.
    """
    modes = fock.ModeSet.one_dim(params, cutoff, cutoff + 1)
    vac = fock.sea_vacuum(modes).vector
    ann = {lab: fock.ladder(modes, lab) for lab in modes.labels}

    def field_op(zz, tt):
        ops = []
        for alpha in range(4):
            op = None
            for lab in modes.labels:
                amp = wavefunction(params, lab, np.array([zz]))[0, alpha]
                if amp == 0:
                    continue
                term = ann[lab] * (amp * np.exp(-1j * energy(params, lab) * tt))
                op = term if op is None else op + term
            ops.append(op if op is not None else 0 * ann[modes.labels[0]])
        return ops

    psi = field_op(z, t)
    psi_p = field_op(zp, tp)
    # psibar_b = sum_c psi_c^dagger beta_cb
    psibar = [sum(DIRAC.beta[c, b] * psi_p[c].conj().T for c in range(4) if DIRAC.beta[c, b] != 0)
              for b in range(4)]
    out = np.zeros((4, 4), dtype=complex)
    for a in range(4):
        for b in range(4):
            if t - tp >= 0:
                out[a, b] = np.vdot(vac, psi[a] @ (psibar[b] @ vac))
            else:
                out[a, b] = -np.vdot(vac, psibar[b] @ (psi[a] @ vac))
    return out


def mode_spinor_momentum(params: OscParams, n: int, p) -> np.ndarray:
    """Unitary Fourier transform of the spatial spinor psi_n, shape p.shape + (4,).

    Each Hermite function picks up (-i)^k, and the zeta = sqrt(m omega) z
    scaling turns (m omega)^(1/4) h_k(zeta) into (m omega)^(-1/4) h_k(p / sqrt(m omega)).
    """
    params.require_bound()
    p = np.asarray(p, dtype=float)
    a = math.sqrt(params.m_omega)
    scale = params.m_omega ** -0.25
    xi1, xi2 = spinor_xi(params, n)
    k = abs(n)
    out = np.zeros(p.shape + (4,), dtype=complex)
    out[..., 0] = scale * (-1j) ** k * hermite_function(k, p / a) * xi1[0]
    if k > 0:
        out[..., 2] = scale * (-1j) ** (k - 1) * hermite_function(k - 1, p / a) * xi2[0]
    return out


def hermite_fourier_numeric(n: int, k, step: float = 0.02) -> np.ndarray:
    """(1/sqrt(2 pi)) int h_n(x) exp(-i k x) dx by the trapezoid rule on a wide grid.

    The trapezoid rule is spectrally accurate for this smooth, Gaussian
    decaying integrand.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    half = math.sqrt(2 * n + 1) + 12.0
    x = np.arange(-half, half + step / 2, step)
    h = hermite_function(n, x)
    phase = np.exp(-1j * np.outer(k, x))
    return step * (phase @ h) / math.sqrt(2 * math.pi)


def hermite_fourier_error(n: int, k) -> float:
    """max |F{h_n}(k) - (-i)^n h_n(k)| over the given k values."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    analytic = (-1j) ** n * hermite_function(n, k)
    return float(np.abs(hermite_fourier_numeric(n, k) - analytic).max())


def mixed_propagator(params: OscParams, dt: float, pz: float, pzp: float,
                     cutoff: int) -> PropagatorSample:
    """S^F in spatial momenta (p, p') and time difference dt."""
    acc = np.zeros((4, 4), dtype=complex)
    ps = np.array([pz, pzp])
    if dt >= 0:
        for n in range(cutoff + 1):
            u = mode_spinor_momentum(params, n, ps)
            acc += np.outer(u[0], _bar(u[1])) * np.exp(-1j * energy(params, n) * dt)
    else:
        for n in range(1, cutoff + 1):
            v = mode_spinor_momentum(params, -n, ps)
            acc -= np.outer(v[0], _bar(v[1])) * np.exp(1j * energy(params, n) * dt)
    return PropagatorSample(-1j * acc, cutoff, "mixed", {"dt": dt, "pz": pz, "pzp": pzp})


def pole_energies(params: OscParams, cutoff: int) -> np.ndarray:
    """p_n = sqrt(2 |n| m omega + m^2) for n = 0..cutoff."""
    return np.sqrt(2.0 * np.arange(cutoff + 1) * params.m * params.omega + params.m ** 2)


def _check_poles(params, p0, cutoff, pole_tol):
    for n, pn in enumerate(pole_energies(params, cutoff)):
        if abs(p0 * p0 - pn * pn) < pole_tol * max(1.0, pn * pn):
            raise PoleError(n, p0, float(pn))


def _momentum_value(params, p0, pz, pzp, cutoff, epsilon, form):
    ps = np.array([pz, pzp])
    acc = np.zeros((4, 4), dtype=complex)
    if form == "exact":
        for n in range(cutoff + 1):
            u = mode_spinor_momentum(params, n, ps)
            acc += np.outer(u[0], _bar(u[1])) / (p0 - energy(params, n) + 1j * epsilon)
        for n in range(1, cutoff + 1):
            v = mode_spinor_momentum(params, -n, ps)
            acc += np.outer(v[0], _bar(v[1])) / (p0 + energy(params, n) - 1j * epsilon)
    elif form == "printed":
        pn = pole_energies(params, cutoff)
        for n in range(cutoff + 1):
            u = mode_spinor_momentum(params, n, ps)
            term = np.outer(u[0], _bar(u[1]))
            if n - 1 >= 1:
                v = mode_spinor_momentum(params, -(n - 1), ps)
                term = term - np.outer(v[0], _bar(v[1]))
            acc += (-1) ** n * term / (p0 * p0 - pn[n] ** 2 + 1j * epsilon)
    else:
        raise ValueError(f"unknown form {form!r}")
    return acc


def momentum_propagator(params: OscParams, p0: float, pz: float, pzp: float, cutoff: int,
                        epsilon: float = 0.0, form: str = "exact",
                        pole_tol: float = 1e-9) -> PropagatorSample:
    """S^F(p0, p, p') from the truncated mode sum.

    ``form="exact"`` is the Fourier transform of :func:`coordinate_propagator`:
    sum_n u_n ubar_n / (p0 - E_n + i eps) + sum_n v_n vbar_n / (p0 + E_n - i eps),
    whose poles sit at p0 = E_n for every mode in the truncation.
    ``form="printed"`` evaluates sum (-1)^n [u_n ubar_n - v_{n-1} vbar_{n-1}] / (p0^2 - p_n^2)
    literally, for comparison.  With ``epsilon == 0`` a p0 inside the pole
    guard raises :class:`PoleError` naming the offending n.
    """
    params.require_bound()
    if epsilon == 0.0:
        _check_poles(params, p0, cutoff, pole_tol)
    value = _momentum_value(params, p0, pz, pzp, cutoff, epsilon, form)
    return PropagatorSample(value, cutoff, "momentum",
                            {"p0": p0, "pz": pz, "pzp": pzp, "epsilon": epsilon, "form": form})


def locate_poles(params: OscParams, cutoff: int, probes=None, samples: int = 20001,
                 margin: float = 1.0) -> np.ndarray:
    """Find the real poles of the truncated momentum-space propagator.

    For each probe momentum p, tr[S(p0, p, p) gamma^0] is a sum of simple
    poles with non-negative residues |u_n(p)|^2.  Summing over several probes
    keeps every residue visible, and the reciprocal of the sum increases
    through zero at each pole.  Sign changes on a dense p0 grid are refined
    with Brent's method.  Returns the sorted pole positions.
    """
    if probes is None:
        probes = np.linspace(-2.5, 2.5, 11) + 0.013
    probes = np.asarray(probes, dtype=float) * math.sqrt(params.m_omega)
    top = float(pole_energies(params, cutoff)[-1]) + margin
    grid = np.linspace(-top, top, samples)
    labels = range(-cutoff, cutoff + 1)
    ens = np.array([energy(params, n) for n in labels])
    res = np.array([np.sum(np.abs(mode_spinor_momentum(params, n, probes)) ** 2) for n in labels])

    def inv(p0):
        with np.errstate(divide="ignore", invalid="ignore"):
            return 1.0 / np.sum(res / np.subtract.outer(p0, ens), axis=-1)

    vals = inv(grid)
    poles = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa < 0 <= fb:
            poles.append(optimize.brentq(inv, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps))
    return np.array(poles)


def _contour_at(e: float, dt: float, eps: float) -> complex:
    # i int dp0/(2 pi) exp(-i p0 dt) / (p0^2 - e^2 + i eps); the odd part cancels, so
    # only 2 int_0^inf cos(p0 |dt|) f(p0) dp0 is needed
    w = abs(dt)

    def f_re(p):
        d = p * p - e * e
        return d / (d * d + eps * eps)

    def f_im(p):
        d = p * p - e * e
        return -eps / (d * d + eps * eps)

    width = eps / (2.0 * e)
    cuts = [0.0, max(e - 200 * width, 0.5 * e), e - width, e, e + width, e + 200 * width, 2 * e + 20.0]
    total = 0j
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        for part, fn in ((1.0, f_re), (1j, f_im)):
            val, _ = integrate.quad(fn, lo, hi, weight="cos", wvar=w, limit=400,
                                    epsabs=1e-14, epsrel=1e-12)
            total += part * val
    for part, fn in ((1.0, f_re), (1j, f_im)):
        val, _ = integrate.quad(fn, cuts[-1], np.inf, weight="cos", wvar=w, limlst=200)
        total += part * val
    return 1j * 2.0 * total / (2.0 * math.pi)


def contour_identity_check(params: OscParams, n: int, dt: float,
                           eps: tuple = (1e-3, 1e-4)) -> tuple[complex, complex]:
    """Both sides of i oint dp0/(2 pi) exp(-i p0 dt)/(p0^2 - p_n^2) = exp(-i E_n |dt|)/(2 E_n).

    The left side is integrated along the real axis with p_n^2 -> p_n^2 - i eps
    for each eps given and extrapolated linearly to eps = 0.
    """
    if dt == 0:
        raise ValueError("dt must be non-zero")
    e = float(pole_energies(params, abs(n))[-1])
    e1, e2 = eps
    i1, i2 = _contour_at(e, dt, e1), _contour_at(e, dt, e2)
    lhs = (e1 * i2 - e2 * i1) / (e1 - e2)
    if dt > 0:
        rhs = np.exp(-1j * e * dt) / (2 * e)
    else:
        rhs = np.exp(1j * e * dt) / (2 * e)
    return complex(lhs), complex(rhs)
