"""The (3+1)-dimensional Dirac oscillator.

States are labelled by (n, kappa, g) with a signed radial number n.  The
zero mode needs an explicit sign: for kappa > 0 both n = +0 and n = -0 are
states (energies +/- sqrt(m^2 + 4(l + 1/2) m omega)), while for kappa < 0
only n = +0 (E = +m) exists.  A would-be (-0, kappa < 0) state has F = 0
and a lower component r^kappa exp(+m omega r^2 / 2), which is not
normalizable, so it is rejected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from numpy.polynomial.legendre import leggauss

from .osc1d import OscParams
from .specfun import (
    laguerre_l,
    ln_gamma,
    radial_rule,
    spinor_spherical_harmonic,
    twice_half_integer,
)

__all__ = [
    "Qnum3D",
    "RadialPair",
    "angular_numbers",
    "energy3d",
    "nprime_abs",
    "radial_solution",
    "wavefunction3d",
    "radial_residual",
    "radial_order",
    "orthonormality3d",
    "enumerate_states",
    "completeness_probe",
    "gaussian_test_spinor",
]


def angular_numbers(kappa: int) -> tuple[float, int, int]:
    """(j, l, l') for a given kappa."""
    if kappa == 0:
        raise ValueError("kappa = 0 is not a valid quantum number")
    if kappa < 0:
        l = -kappa - 1
        return l + 0.5, l, l + 1
    return kappa - 0.5, kappa, kappa - 1


@dataclass(frozen=True)
class Qnum3D:
    """Quantum numbers (sign of n, |n|, kappa, g) of one (3+1) oscillator state."""

    n_sign: int
    n_abs: int
    kappa: int
    g: float

    def __post_init__(self):
        if self.n_sign not in (1, -1):
            raise ValueError("n_sign must be +1 or -1")
        if self.n_abs < 0:
            raise ValueError("n_abs must be non-negative")
        if self.kappa == 0:
            raise ValueError("kappa = 0 is not a valid quantum number")
        two_g = twice_half_integer(self.g)
        if abs(two_g) > 2 * abs(self.kappa) - 1:
            raise ValueError(f"|g| must not exceed |kappa| - 1/2, got kappa={self.kappa}, g={self.g}")
        if self.n_sign < 0 and self.n_abs == 0 and self.kappa < 0:
            raise ValueError("n = -0 exists only for kappa > 0")
        object.__setattr__(self, "g", two_g / 2)

    @classmethod
    def from_signed(cls, n: int, kappa: int, g: float, negative_zero: bool = False) -> "Qnum3D":
        """Build from a signed integer n; ``negative_zero`` selects -0 when n == 0."""
        sign = -1 if (n < 0 or (n == 0 and negative_zero)) else 1
        return cls(sign, abs(n), kappa, g)

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5

    @property
    def l(self) -> int:
        return angular_numbers(self.kappa)[1]

    @property
    def lprime(self) -> int:
        return angular_numbers(self.kappa)[2]

    def __str__(self):
        sign = "+" if self.n_sign > 0 else "-"
        return f"n={sign}{self.n_abs},kappa={self.kappa},g={self.g:+g}"


def energy3d(params: OscParams, n_sign: int, n_abs: int, kappa: int) -> float:
    """Energy of the (n, kappa) level; independent of g."""
    if kappa == 0:
        raise ValueError("kappa = 0 is not a valid quantum number")
    if n_sign not in (1, -1) or n_abs < 0:
        raise ValueError("invalid radial quantum number")
    if n_sign < 0 and n_abs == 0 and kappa < 0:
        raise ValueError("n = -0 exists only for kappa > 0")
    mw = params.m * params.omega
    quanta = n_abs if kappa < 0 else n_abs + kappa + 0.5
    return n_sign * math.sqrt(params.m ** 2 + 4.0 * quanta * mw)


def nprime_abs(n_abs: int, kappa: int) -> int | None:
    """Laguerre degree of the lower radial function; None when G vanishes identically."""
    if kappa == 0:
        raise ValueError("kappa = 0 is not a valid quantum number")
    if kappa < 0:
        return n_abs - 1 if n_abs > 0 else None
    return n_abs


@dataclass(frozen=True)
class RadialPair:
    """Closed-form radial functions F, G of one state together with their constants.

    ``a_upper``/``a_lower`` are the normalization constants A, A'.  The lower
    function carries the sign sgn(E) sgn(kappa): the "+/-" in front of G is
    the energy branch, as the first radial equation fixes
    G = [F' + (kappa + m omega r^2) F / r] / (E + m).
    """

    qn: Qnum3D
    params: OscParams
    energy: float
    a_upper: float
    a_lower: float
    lower_sign: float
    lower_degree: int | None

    def _rho(self, r):
        return math.sqrt(self.params.m_omega) * np.asarray(r, dtype=float)

    def _upper(self, r, power):
        rho = self._rho(r)
        l = self.qn.l
        return (self.a_upper * rho ** (l + power) * np.exp(-0.5 * rho * rho)
                * laguerre_l(self.qn.n_abs, l + 0.5, rho * rho))

    def _lower(self, r, power):
        rho = self._rho(r)
        if self.lower_degree is None or self.a_lower == 0.0:
            return np.zeros_like(rho)
        lp = self.qn.lprime
        return (self.lower_sign * self.a_lower * rho ** (lp + power) * np.exp(-0.5 * rho * rho)
                * laguerre_l(self.lower_degree, lp + 0.5, rho * rho))

    def F(self, r):
        return self._upper(r, 1)

    def G(self, r):
        return self._lower(r, 1)

    def F_over_r(self, r):
        """F(r)/r, finite at r = 0."""
        return math.sqrt(self.params.m_omega) * self._upper(r, 0)

    def G_over_r(self, r):
        return math.sqrt(self.params.m_omega) * self._lower(r, 0)

    @staticmethod
    def _d_profile(amp, ell, degree, rho, a):
        # d/dr of amp * rho^(ell+1) exp(-rho^2/2) L_degree^(ell+1/2)(rho^2), rho = a r
        lag = laguerre_l(degree, ell + 0.5, rho * rho)
        dlag = -laguerre_l(degree - 1, ell + 1.5, rho * rho) if degree > 0 else 0.0
        gauss = np.exp(-0.5 * rho * rho)
        d_rho = ((ell + 1) * rho ** ell - rho ** (ell + 2)) * gauss * lag \
            + rho ** (ell + 1) * gauss * 2.0 * rho * dlag
        return amp * a * d_rho

    def dF(self, r):
        a = math.sqrt(self.params.m_omega)
        return self._d_profile(self.a_upper, self.qn.l, self.qn.n_abs, self._rho(r), a)

    def dG(self, r):
        rho = self._rho(r)
        if self.lower_degree is None or self.a_lower == 0.0:
            return np.zeros_like(rho)
        a = math.sqrt(self.params.m_omega)
        return self.lower_sign * self._d_profile(self.a_lower, self.qn.lprime, self.lower_degree, rho, a)


def radial_solution(params: OscParams, qn: Qnum3D) -> RadialPair:
    """Closed-form radial pair (F, G) with normalization int (F^2 + G^2) dr = 1."""
    params.require_bound()
    e = energy3d(params, qn.n_sign, qn.n_abs, qn.kappa)
    m = params.m
    root_mw = math.sqrt(params.m_omega)
    l, lp = qn.l, qn.lprime
    # signed E keeps (E + m)/E and (E - m)/E non-negative on both branches
    a_up = math.sqrt(max(root_mw * (e + m) / e, 0.0)
                     * math.exp(ln_gamma(qn.n_abs + 1) - ln_gamma(qn.n_abs + l + 1.5)))
    degree = nprime_abs(qn.n_abs, qn.kappa)
    if degree is None:
        a_low = 0.0
    else:
        a_low = math.sqrt(max(root_mw * (e - m) / e, 0.0)
                          * math.exp(ln_gamma(degree + 1) - ln_gamma(degree + lp + 1.5)))
    sign = math.copysign(1.0, e) * math.copysign(1.0, qn.kappa)
    return RadialPair(qn, params, e, a_up, a_low, sign, degree)


def wavefunction3d(params: OscParams, qn: Qnum3D, r, theta, phi) -> np.ndarray:
    """psi(r) = (1/r) (F Y_{kappa,g}, i G Y_{-kappa,g}); shape broadcast(r, theta, phi) + (4,).

    r = 0 is allowed; there only s-wave (l = 0 or l' = 0) slots are non-zero.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("wavefunction3d needs r >= 0")
    pair = radial_solution(params, qn)
    r, theta, phi = np.broadcast_arrays(r, np.asarray(theta, float), np.asarray(phi, float))
    upper = spinor_spherical_harmonic(qn.kappa, qn.g, theta, phi)
    lower = spinor_spherical_harmonic(-qn.kappa, qn.g, theta, phi)
    out = np.empty(r.shape + (4,), dtype=complex)
    out[..., :2] = np.asarray(pair.F_over_r(r))[..., None] * upper
    out[..., 2:] = 1j * np.asarray(pair.G_over_r(r))[..., None] * lower
    return out


def radial_residual(params: OscParams, qn: Qnum3D, r) -> tuple[np.ndarray, np.ndarray]:
    """Residuals of the coupled radial equations using analytic derivatives.

    [d/dr + (kappa + m omega r^2)/r] F - (E + m) G and
    [-d/dr + (kappa + m omega r^2)/r] G - (E - m) F.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radial_residual needs r > 0")
    pair = radial_solution(params, qn)
    e, m = pair.energy, params.m
    f, g = pair.F(r), pair.G(r)
    coupling = (qn.kappa + params.m_omega * r * r) / r
    res1 = pair.dF(r) + coupling * f - (e + m) * g
    res2 = -pair.dG(r) + coupling * g - (e - m) * f
    return res1, res2


def radial_order(qn_list) -> int:
    """Radial quadrature order sufficient for products of the given states."""
    worst = max(q.n_abs + max(q.l, q.lprime) for q in qn_list)
    return 4 * worst + 48


def orthonormality3d(params: OscParams, qn_a: Qnum3D, qn_b: Qnum3D, rule=None) -> complex:
    """<psi_a | psi_b> with the angular integral done analytically."""
    if qn_a.kappa != qn_b.kappa or qn_a.g != qn_b.g:
        return 0j
    params.require_bound()
    if rule is None:
        rule = radial_rule(radial_order([qn_a, qn_b]), params.length)
    pa, pb = radial_solution(params, qn_a), radial_solution(params, qn_b)
    r = rule.nodes
    integrand = pa.F(r) * pb.F(r) + pa.G(r) * pb.G(r)
    return complex(np.sum(rule.weights * integrand))


def enumerate_states(n_max: int, kappa_max: int) -> Iterator[Qnum3D]:
    """Every valid state with |n| <= n_max and |kappa| <= kappa_max, in a fixed order."""
    for kappa in [k for k in range(-kappa_max, kappa_max + 1) if k != 0]:
        for two_g in range(-(2 * abs(kappa) - 1), 2 * abs(kappa), 2):
            for n_abs in range(n_max + 1):
                for sign in (1, -1):
                    if sign < 0 and n_abs == 0 and kappa < 0:
                        continue
                    yield Qnum3D(sign, n_abs, kappa, two_g / 2)


def gaussian_test_spinor(params: OscParams, offset: float = 0.5, width: float = 1.0,
                         lower_weight: float = 0.5) -> Callable:
    """A fixed smooth test spinor: a Gaussian bump displaced along z.

    Lengths are in units of the oscillator length.  The upper slot holds a
    spin-up bump, the lower slot the same bump scaled by ``lower_weight``.
    """
    ell = params.length
    z0 = offset * ell
    s2 = (width * ell) ** 2

    def f(r, theta, phi):
        r, theta, phi = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float),
                                            np.asarray(phi, float))
        x = r * np.sin(theta) * np.cos(phi)
        y = r * np.sin(theta) * np.sin(phi)
        z = r * np.cos(theta)
        bump = np.exp(-(x * x + y * y + (z - z0) ** 2) / (2.0 * s2))
        out = np.zeros(r.shape + (4,), dtype=complex)
        out[..., 0] = bump
        out[..., 2] = lower_weight * bump
        return out

    return f


def completeness_probe(params: OscParams, n_max: int, kappa_max: int, f: Callable,
                       radial_order_: int | None = None, n_theta: int | None = None,
                       n_phi: int | None = None) -> float:
    """Relative L2 residual ||f - P f|| / ||f|| of the projection onto the truncated basis.

    ``f(r, theta, phi)`` returns 4-spinors.  The projector runs over every
    state of :func:`enumerate_states`; the residual is computed pointwise on
    a radial x Gauss-Legendre(cos theta) x uniform(phi) product grid.
    """
    params.require_bound()
    order = radial_order_ or 4 * (n_max + kappa_max) + 48
    rule = radial_rule(order, params.length)
    n_theta = n_theta or 2 * kappa_max + 12
    n_phi = n_phi or 2 * kappa_max + 8
    ct, wt = leggauss(n_theta)
    theta = np.arccos(ct)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    th, ph = th.ravel(), ph.ravel()
    w_ang = np.outer(wt, np.full(n_phi, 2.0 * np.pi / n_phi)).ravel()

    r = rule.nodes
    w_rad = rule.weights * r * r
    field = f(r[:, None], th[None, :], ph[None, :])  # (R, Omega, 4)
    norm2 = np.einsum("r,o,roc->", w_rad, w_ang, np.abs(field) ** 2)
    recon = np.zeros_like(field)

    for kappa in [k for k in range(-kappa_max, kappa_max + 1) if k != 0]:
        # radial profiles depend on (n, kappa) only; any g label will do to build them
        radial = []
        for qn in enumerate_states(n_max, kappa_max):
            if qn.kappa == kappa and qn.g == 0.5:
                pair = radial_solution(params, qn)
                radial.append((pair.F(r), pair.G(r)))
        big = np.array([fr for fr, _ in radial])      # (N, R)
        small = np.array([gr for _, gr in radial])
        for two_g in range(-(2 * abs(kappa) - 1), 2 * abs(kappa), 2):
            g = two_g / 2
            y_up = spinor_spherical_harmonic(kappa, g, th, ph)
            y_dn = spinor_spherical_harmonic(-kappa, g, th, ph)
            a = np.einsum("o,oc,roc->r", w_ang, np.conj(y_up), field[:, :, :2])
            b = np.einsum("o,oc,roc->r", w_ang, np.conj(y_dn), field[:, :, 2:])
            c = (big * a - 1j * small * b) @ (rule.weights * r)
            up = (c @ big) / r
            dn = 1j * (c @ small) / r
            recon[:, :, :2] += up[:, None, None] * y_up[None, :, :]
            recon[:, :, 2:] += dn[:, None, None] * y_dn[None, :, :]

    resid2 = np.einsum("r,o,roc->", w_rad, w_ang, np.abs(field - recon) ** 2)
    return float(math.sqrt(max(resid2, 0.0) / norm2))
