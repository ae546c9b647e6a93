"""Angular-spectrum synthesis of time-harmonic complex-source beams.

The beam e^{i omega rt}/(4 pi rt), rt = sqrt(rho^2 + zeta^2) with
zeta = xi - ia, is reassembled from its plane-wave spectrum: a propagating
integral over transverse wavenumbers h < omega (substituted h = omega
sin(alpha), which also regularizes the interior point h = omega) and an
evanescent integral over h > omega (substituted to the decay rate s).
Setting a = 0 recovers the classic half-space decomposition of the
outgoing spherical wave. One quadrant (omega > 0, xi > 0) is computed
directly and the other three follow by evenness in z and by frequency
conjugation.

Across the source plane the synthesis is discontinuous on the disk
rho < a; the jump has the closed form i cosh(omega q)/(2 pi q),
q = sqrt(a^2 - rho^2), and an equivalent conditionally convergent
spectral form evaluated here by panel partial sums accelerated with
Wynn's epsilon algorithm (stride chosen anti-resonantly from the two
known transient frequencies a +- rho).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (QuadratureSpec, adaptive_quad, bessel_j0,
                       composite_gk15)

__all__ = ["WeylPoint", "WeylResult", "u_plus", "weyl_eval",
           "weyl_case_label", "beam_closed", "jump_closed", "jump_spectral",
           "default_xi_min"]

_PROP_SPEC = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-16,
                            max_subdivisions=4000)
_TRUNC_DECADES = 16.0  # evanescent truncation where e^{-xi s} < 1e-16


def default_xi_min(a: float, omega: float) -> float:
    """Smallest axial offset for direct synthesis; below this the
    evanescent integral is conditionally convergent and the jump closed
    forms should be used instead."""
    return 1e-3 * max(a, 1.0 / abs(omega))


@dataclass(frozen=True)
class WeylPoint:
    """Synthesis point: cylinder coords (rho, xi), disk radius a, and a
    positive frequency. zeta = xi - ia is the complexified axial offset."""

    rho: float
    xi: float
    a: float
    omega: float

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("need rho >= 0")
        if self.omega <= 0:
            raise ValueError("u_plus needs omega > 0 (dispatch negative "
                             "frequencies through weyl_eval)")

    @property
    def zeta(self) -> complex:
        return self.xi - 1j * self.a

    @property
    def xi_min(self) -> float:
        return default_xi_min(self.a, self.omega)


@dataclass(frozen=True)
class WeylResult:
    """Synthesis value with its split into propagating and evanescent
    parts and a conservative quadrature error bound."""

    total: complex
    propagating: complex
    evanescent: complex
    error: float


def beam_closed(rho, xi, a, omega):
    """Closed form e^{i omega rt}/(4 pi rt) on the principal branch."""
    zeta = np.asarray(xi, dtype=np.float64) - 1j * a
    w = np.asarray(rho, dtype=np.float64) ** 2 + zeta * zeta
    rt = np.sqrt(w.astype(np.complex128))
    rt = np.where(rt.real < 0, -rt, rt)
    return np.exp(1j * omega * rt) / (4.0 * np.pi * rt)


def _u_plus_core(rho: float, xi: float, a_signed: float,
                 omega: float) -> WeylResult:
    """One-quadrant synthesis; a_signed < 0 encodes the reflected zeta."""
    zeta = xi - 1j * a_signed

    # propagating part: h = omega sin(alpha) over alpha in [0, pi/2]
    def prop_integrand(alpha):
        sa = np.sin(alpha)
        ca = np.cos(alpha)
        return sa * bessel_j0(omega * rho * sa) \
            * np.exp(1j * zeta * omega * ca)

    rp = adaptive_quad(prop_integrand, 0.0, 0.5 * np.pi, _PROP_SPEC)
    prop = 1j * omega / (4.0 * np.pi) * rp.value
    err = omega / (4.0 * np.pi) * rp.error

    # evanescent part: s = sqrt(h^2 - omega^2) over (0, s_max]
    s_max = _TRUNC_DECADES * np.log(10.0) / xi
    width = np.pi / (rho + abs(a_signed) + 1.0)
    n_panels = int(np.ceil(s_max / width))
    edges = np.linspace(0.0, s_max, n_panels + 1)

    def evan_integrand(s):
        return bessel_j0(rho * np.sqrt(s * s + omega * omega)) \
            * np.exp(-zeta * s)

    ev_val, ev_err = composite_gk15(evan_integrand, edges)
    evan = ev_val / (4.0 * np.pi)
    tail_bound = np.exp(-xi * s_max) / xi / (4.0 * np.pi)
    err += ev_err / (4.0 * np.pi) + tail_bound
    return WeylResult(prop + evan, prop, evan, err)


def u_plus(point: WeylPoint) -> WeylResult:
    """Forward-quadrant synthesis U+ (omega > 0) with its split.

    Requires xi >= the conditioning threshold xi_min; nearer the source
    plane use the closed jump forms.
    """
    if point.xi < point.xi_min:
        raise ValueError(f"xi={point.xi} below xi_min={point.xi_min}: "
                         "conditionally convergent regime")
    return _u_plus_core(point.rho, point.xi, point.a, point.omega)


def weyl_case_label(omega: float, xi: float) -> str:
    """Size/side label of the synthesis component, per quadrant."""
    if omega > 0:
        return "large right" if xi > 0 else "small left"
    return "small right" if xi > 0 else "large left"


def weyl_eval(rho: float, xi: float, a: float, omega: float,
              xi_min: float | None = None) -> complex:
    """Angular-spectrum value of the beam at (rho, xi) for any omega != 0.

    Dispatches the four (sign omega, sign xi) cases onto the directly
    computed quadrant: reflection in z for xi < 0 and conjugation for
    omega < 0.
    """
    if omega == 0.0:
        raise ValueError("need omega != 0")
    if xi_min is None:
        xi_min = default_xi_min(a, omega)
    if abs(xi) < xi_min:
        raise ValueError(f"|xi|={abs(xi)} below xi_min={xi_min}")
    if omega > 0 and xi > 0:
        return _u_plus_core(rho, xi, a, omega).total
    if omega > 0 and xi < 0:
        return _u_plus_core(rho, -xi, -a, omega).total
    if omega < 0 and xi > 0:
        return np.conj(_u_plus_core(rho, xi, -a, -omega).total)
    return np.conj(_u_plus_core(rho, -xi, a, -omega).total)


# ---------------------------------------------------------------------------
# jump discontinuity across the source plane
# ---------------------------------------------------------------------------

def jump_closed(rho: float, a: float, omega: float) -> complex:
    """Closed form of the beam's jump across xi = 0:
    i Theta(a - rho) cosh(omega q)/(2 pi q), q = sqrt(a^2 - rho^2)."""
    if rho == a:
        raise ValueError("jump undefined on the branch circle rho = a")
    if rho > a:
        return 0.0 + 0.0j
    q = np.sqrt(a * a - rho * rho)
    return 1j * np.cosh(omega * q) / (2.0 * np.pi * q)


def _wynn_epsilon(seq):
    """Wynn's epsilon extrapolation of a sequence of partial sums."""
    e_prev = [0.0 + 0.0j] * (len(seq) + 1)
    e_curr = [complex(s) for s in seq]
    best = e_curr[-1]
    col = 0
    while len(e_curr) > 1:
        e_next = []
        for i in range(len(e_curr) - 1):
            d = e_curr[i + 1] - e_curr[i]
            e_next.append(e_prev[i + 1] + (1.0 / d if d != 0.0 else 0.0))
        col += 1
        if col % 2 == 0 and e_next:
            best = e_next[-1]
        e_prev, e_curr = e_curr, e_next
    return best

_GL16_X, _GL16_W = np.polynomial.legendre.leggauss(16)


def _anti_resonant_stride(rho: float, a: float) -> int:
    """Partial-sum stride whose subsampled slow-transient phase stays away
    from multiples of 2 pi (the fast transient alternates for odd strides)."""
    ratio = abs(a - rho) / (a + rho)
    best_m, best_d = 3, -1.0
    for m in (3, 5, 7, 9, 11, 13, 15):
        th = (m * np.pi * ratio) % (2.0 * np.pi)
        d = min(th, 2.0 * np.pi - th)
        if d > best_d:
            best_m, best_d = m, d
    return best_m


def jump_spectral(rho: float, a: float, omega: float, n_sub: int = 60,
                  depth: int = 40) -> complex:
    """Spectral form of the jump:
    (i/2 pi) int_0^inf h dh J0(h rho) sin(mu a)/mu,  mu^2 = h^2 - omega^2.

    The tail converges only conditionally; panel partial sums (one fast
    half-period each) are subsampled anti-resonantly and accelerated with
    Wynn's epsilon algorithm.
    """
    if rho == a:
        raise ValueError("jump undefined on the branch circle rho = a")

    def panel_values(edges):
        lo, hi = edges[:-1], edges[1:]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        h = mid[:, None] + half[:, None] * _GL16_X[None, :]
        mu = np.sqrt((h * h - omega * omega).astype(np.complex128))
        small = np.abs(mu * a) < 1e-6
        sinc = np.where(small, a, np.sin(mu * a) / np.where(small, 1.0, mu))
        vals = h * bessel_j0(h * rho) * sinc
        return np.sum(half[:, None] * _GL16_W[None, :] * vals, axis=1)

    head_end = omega + 2.0 / max(a, 1e-3)
    head = np.sum(panel_values(np.linspace(0.0, head_end, 9)))
    fast_halfperiod = np.pi / (a + rho) if rho > 0 else np.pi / a
    m = _anti_resonant_stride(rho, a)
    edges = head_end + fast_halfperiod * np.arange(m * n_sub + 1)
    partials = head + np.cumsum(panel_values(edges))
    sub = partials[m - 1::m]
    return 1j / (2.0 * np.pi) * _wynn_epsilon(list(sub[-depth:]))
