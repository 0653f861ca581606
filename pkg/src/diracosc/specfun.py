"""Special functions and quadrature rules.

Everything here is vectorized over the coordinate argument and pure.
The Hermite functions are built by a normalized recurrence carrying a
separate log-scale, so degrees up to 10**4 neither overflow nor
underflow prematurely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

__all__ = [
    "QuadratureRule",
    "hermite_h",
    "hermite_function",
    "hermite_function_table",
    "hermite_function_derivative",
    "laguerre_l",
    "spherical_harmonic",
    "spinor_spherical_harmonic",
    "gauss_hermite_rule",
    "radial_rule",
    "ln_gamma",
    "default_order",
    "twice_half_integer",
]

_PI_M14 = math.pi ** -0.25
_RESCALE = 1e150


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a one-dimensional quadrature.

    ``weight_folded`` states whether the weight function (``exp(-x**2)``
    for Gauss-Hermite, the mapping Jacobian for the radial rule) is already
    contained in ``weights``.  A folded Gauss-Hermite rule approximates
    ``int f(x) exp(-x**2) dx``; an unfolded one approximates ``int f dx``.
    """

    kind: str
    order: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    weight_folded: bool = True

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def unfolded(self) -> "QuadratureRule":
        """Return the rule with the Gauss-Hermite weight moved into the weights.

        Only meaningful for ``kind == "gauss-hermite"``; radial rules are
        already plain integration rules.
        """
        if self.kind != "gauss-hermite" or not self.weight_folded:
            return self
        return QuadratureRule(
            self.kind, self.order, self.nodes,
            self.weights * np.exp(self.nodes ** 2), weight_folded=False,
        )

    def integrate(self, values) -> complex | float:
        values = np.asarray(values)
        return np.tensordot(self.weights, values, axes=(0, 0))


def default_order(n_max: int) -> int:
    """Default quadrature order for integrands built from modes up to ``n_max``."""
    return 2 * int(n_max) + 32


def twice_half_integer(g) -> int:
    """Return ``2*g`` as an int, checking that ``g`` is a half-odd-integer."""
    two_g = 2 * g
    k = int(round(float(two_g)))
    if abs(float(two_g) - k) > 1e-12 or k % 2 == 0:
        raise ValueError(f"g must be a half-odd-integer, got {g!r}")
    return k


def hermite_h(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence.

    Overflows for large ``n * x**2``; use :func:`hermite_function` there.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def hermite_function(n: int, x):
    """L2-normalized Hermite function h_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)).

    Uses h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1} with the
    Gaussian factor kept as a log-scale until the end.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    log_scale = -0.5 * x * x
    h_prev = np.zeros_like(x)
    h = np.full_like(x, _PI_M14)
    for k in range(n):
        h_next = math.sqrt(2.0 / (k + 1)) * x * h - math.sqrt(k / (k + 1)) * h_prev
        big = np.abs(h_next) > _RESCALE
        if big.any():
            s = np.where(big, np.abs(h_next), 1.0)
            h_next = h_next / s
            h = h / s
            log_scale = log_scale + np.log(s)
        h_prev, h = h, h_next
    out = h * np.exp(log_scale)
    return float(out[0]) if scalar else out


def hermite_function_table(n_max: int, x) -> np.ndarray:
    """All h_0..h_{n_max} at once, shape ``(n_max + 1,) + x.shape``.

    Cheaper than repeated :func:`hermite_function` calls; intended for the
    moderate degrees (a few hundred) used by quadrature and spectral
    differentiation, where ``exp(-x**2/2)`` does not underflow on the grid.
    """
    x = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1,) + x.shape)
    table[0] = _PI_M14 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        table[1] = math.sqrt(2.0) * x * table[0]
    for k in range(1, n_max):
        table[k + 1] = (math.sqrt(2.0 / (k + 1)) * x * table[k]
                        - math.sqrt(k / (k + 1)) * table[k - 1])
    return table


def hermite_function_derivative(n: int, x):
    """d h_n / dx = sqrt(n/2) h_{n-1} - sqrt((n+1)/2) h_{n+1}."""
    out = -math.sqrt((n + 1) / 2.0) * hermite_function(n + 1, x)
    if n > 0:
        out = out + math.sqrt(n / 2.0) * hermite_function(n - 1, x)
    return out


def laguerre_l(n: int, alpha: float, x):
    """Associated Laguerre polynomial L_n^alpha(x) by the upward recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l_cur = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return l_cur if l_cur.ndim else float(l_cur)


def _legendre_normalized(l: int, m: int, cos_theta, sin_theta):
    # orthonormal P_l^m including the Condon-Shortley phase, m >= 0
    q = np.full_like(cos_theta, math.sqrt(1.0 / (4.0 * math.pi)))
    for k in range(1, m + 1):
        q = -math.sqrt((2 * k + 1) / (2.0 * k)) * sin_theta * q
    if l == m:
        return q
    q_prev, q = q, math.sqrt(2 * m + 3) * cos_theta * q
    for k in range(m + 2, l + 1):
        a_k = math.sqrt((4.0 * k * k - 1.0) / (k * k - m * m))
        a_km1 = math.sqrt((4.0 * (k - 1) ** 2 - 1.0) / ((k - 1) ** 2 - m * m))
        q_prev, q = q, a_k * (cos_theta * q - q_prev / a_km1)
    return q


def spherical_harmonic(l: int, mz: int, theta, phi):
    """Orthonormal complex spherical harmonic Y_l^mz with Condon-Shortley phase."""
    if l < 0 or abs(mz) > l:
        raise ValueError(f"need 0 <= |mz| <= l, got l={l}, mz={mz}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    m = abs(mz)
    p = _legendre_normalized(l, m, np.cos(theta), np.sin(theta))
    y = p * np.exp(1j * m * phi)
    if mz < 0:
        y = (-1) ** m * np.conj(y)
    return y if np.ndim(y) else complex(y)


def spinor_spherical_harmonic(kappa: int, g, theta, phi) -> np.ndarray:
    """Two-component spin-orbit harmonic for quantum numbers (kappa, g).

    kappa < 0 couples orbital l = -kappa - 1 to j = l + 1/2, kappa > 0
    couples l = kappa to j = l - 1/2.  The companion harmonic of opposite
    parity is ``spinor_spherical_harmonic(-kappa, g, ...)``.  Returns an
    array of shape ``theta.shape + (2,)``.
    """
    if kappa == 0:
        raise ValueError("kappa = 0 is not a valid quantum number")
    two_g = twice_half_integer(g)
    two_j = 2 * abs(kappa) - 1
    if abs(two_g) > two_j:
        raise ValueError(f"|g| must not exceed |kappa| - 1/2 (kappa={kappa}, g={g})")
    m_up = (two_g - 1) // 2
    m_dn = (two_g + 1) // 2
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    shape = np.broadcast(theta, phi).shape
    out = np.zeros(shape + (2,), dtype=complex)
    if kappa < 0:
        l = -kappa - 1
        c_up = math.sqrt((two_j + two_g) / (2.0 * two_j))
        c_dn = math.sqrt((two_j - two_g) / (2.0 * two_j))
    else:
        l = kappa
        c_up = -math.sqrt((two_j - two_g + 2) / (2.0 * two_j + 4))
        c_dn = math.sqrt((two_j + two_g + 2) / (2.0 * two_j + 4))
    if abs(m_up) <= l and c_up != 0.0:
        out[..., 0] = c_up * spherical_harmonic(l, m_up, theta, phi)
    if abs(m_dn) <= l and c_dn != 0.0:
        out[..., 1] = c_dn * spherical_harmonic(l, m_dn, theta, phi)
    return out


def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-x^2), weight folded into ``weights``."""
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    x, w = hermgauss(order)
    return QuadratureRule("gauss-hermite", order, x, w, weight_folded=True)


def radial_rule(order: int, scale: float) -> QuadratureRule:
    """Plain rule for int_0^inf f(r) dr with Gaussian-decaying f.

    Gauss-Legendre nodes are mapped onto [0, R] where R is wide enough that
    ``exp(-(r/scale)**2) r**(2k)`` is negligible past it for k <= order/4.
    ``scale`` is the natural length, 1/sqrt(m*omega) for the oscillator.
    """
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    if not scale > 0:
        raise ValueError("scale must be positive")
    r_max = scale * math.sqrt(0.5 * order + 45.0)
    t, w = leggauss(order)
    nodes = 0.5 * r_max * (t + 1.0)
    weights = 0.5 * r_max * w
    return QuadratureRule("mapped-radial", order, nodes, weights, weight_folded=True)


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError("ln_gamma needs x > 0")
    return math.lgamma(x)
