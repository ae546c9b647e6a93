"""Closed-form Fourier-domain source symbols.

The smeared disk sources become strikingly simple after a spacetime
Fourier transform: the bare source has symbol g_hat(omega, u) * Omega with
the focusing filter

    Omega(k, y) = cos(mu a) + (l / mu) sin(mu a),   mu^2 = h^2 - omega^2,

an entire function of mu^2 (hence branch-free), where l and h are the
longitudinal and transverse wavenumbers relative to the source axis. The
shielded (spheroid) source maps k to a complex wave vector k_eps - a pure
scaling composed with a rotation in the (l, i omega) plane - and picks up
only a phase:  S_eps_hat = g_hat e^{i eps omega a} Omega(k_eps, y).

The same filter divided by k^2 = kappa^2 - omega^2 is the transform of the
pulsed beam itself; its partial-fraction form shows how forward
propagating waves are amplified by e^{i mu a} and backward ones damped.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .geometry import SourcePoint
from .signals import DeltaLine, DrivingSignal, cauchy_ft, signal_ft

__all__ = ["WaveVector", "EpsWaveVector", "k_eps_map", "omega_filter",
           "omega_filter_from_mu", "cancellation_terms",
           "shielded_source_ft", "bare_source_ft", "event_source_ft",
           "static_source_ft", "pulsed_beam_ft", "spectrum_rows",
           "write_spectrum_csv"]


@dataclass(frozen=True)
class WaveVector:
    """Wave vector (k, omega) with cylindrical components about the source
    axis: l longitudinal, h transverse, kappa = |k|."""

    k3: np.ndarray
    omega: float
    y: SourcePoint

    def __post_init__(self):
        object.__setattr__(self, "k3",
                           np.asarray(self.k3, dtype=np.float64).reshape(3))

    @property
    def kappa(self) -> float:
        return float(np.linalg.norm(self.k3))

    @property
    def l(self) -> float:
        return float(self.k3 @ self.y.y_hat)

    @property
    def h(self) -> float:
        return float(np.sqrt(max(self.kappa ** 2 - self.l ** 2, 0.0)))

    @property
    def k_sq(self) -> float:
        """kappa^2 - omega^2 (complex-Euclidean square of (k, i omega))."""
        return self.kappa ** 2 - self.omega ** 2

    @property
    def mu_sq(self) -> float:
        return self.h ** 2 - self.omega ** 2


@dataclass(frozen=True)
class EpsWaveVector:
    """Complex wave vector of the shielded source, eta = eps - i.

    Satisfies k_eps^2 = (1 + eps^2) k^2, preserving the complex light cone.
    """

    omega_eps: complex
    l_eps: complex
    h_eps: float
    eta: complex

    @property
    def mu_sq_eps(self) -> complex:
        return self.h_eps ** 2 - self.omega_eps ** 2

    @property
    def k_sq_eps(self) -> complex:
        return self.h_eps ** 2 + self.l_eps ** 2 - self.omega_eps ** 2


def k_eps_map(k: WaveVector, eps: float) -> EpsWaveVector:
    """Complex deformation (omega, l, h) -> (omega - i eps l,
    l - i eps omega, |eta| h); a scaling by |eta| = sqrt(1 + eps^2)
    composed with a rotation by arctan(eps) in the (l, i omega) plane."""
    eta = eps - 1j
    return EpsWaveVector(omega_eps=k.omega - 1j * eps * k.l,
                         l_eps=k.l - 1j * eps * k.omega,
                         h_eps=abs(eta) * k.h,
                         eta=eta)


_SERIES_CUT = 1e-4  # |mu a|^2 below which the even power series is used


def omega_filter(mu_sq, l, a):
    """Focusing filter cos(mu a) + (l/mu) sin(mu a) as a function of mu^2.

    Entire in mu^2: even in mu, hence independent of the square-root
    branch. Near mu = 0 the removable singularity of sin(mu a)/mu is
    handled by the power series in mu^2 a^2 (accurate to 1e-16).
    """
    scalar = np.ndim(mu_sq) == 0 and np.ndim(l) == 0
    mu_sq, lv = np.broadcast_arrays(
        np.asarray(mu_sq, dtype=np.complex128),
        np.asarray(l, dtype=np.complex128))
    shape = mu_sq.shape
    mu_sq = mu_sq.ravel()
    lv = lv.ravel()
    w = mu_sq * a * a
    small = np.abs(w) < _SERIES_CUT
    out = np.empty_like(w)
    if small.any():
        ws = w[small]
        cosv = 1.0 - ws / 2.0 + ws ** 2 / 24.0 - ws ** 3 / 720.0
        sincv = 1.0 - ws / 6.0 + ws ** 2 / 120.0 - ws ** 3 / 5040.0
        out[small] = cosv + lv[small] * a * sincv
    big = ~small
    if big.any():
        mu = np.sqrt(mu_sq[big])
        out[big] = _exp_split(mu, lv[big], a)
    out = out.reshape(shape)
    return complex(out) if scalar else out


def _exp_split(mu, l, a):
    """((mu - il) e^{i mu a} + (mu + il) e^{-i mu a}) / (2 mu).

    Algebraically cos(mu a) + (l/mu) sin(mu a), but well conditioned on
    the light cone, where one coefficient vanishes identically instead of
    leaving a cosh-sized cancellation.
    """
    return ((mu - 1j * l) * np.exp(1j * mu * a)
            + (mu + 1j * l) * np.exp(-1j * mu * a)) / (2.0 * mu)


def omega_filter_from_mu(mu, l, a):
    """Same filter from an explicit branch of mu (for branch-evenness
    checks and the partial-fraction form)."""
    mu = np.asarray(mu, dtype=np.complex128)
    return _exp_split(mu, l, a)


def cancellation_terms(k: WaveVector, eps: float):
    """The four pole/double-layer/flow contributions whose combination
    I0 - I1 + i eps I2 + (1 + eps^2) I3 collapses to Omega(k_eps, y).

    I0 comes from the two pole point sources, I1 and I2 from the radial
    derivative, I3 from the axial derivative of the surface density.
    """
    ke = k_eps_map(k, eps)
    a = k.y.a
    we = ke.omega_eps
    mu = np.sqrt(ke.mu_sq_eps)
    i0 = np.cosh(we * a) - 1j * eps * np.sinh(we * a)
    i1 = np.cosh(we * a) - np.cos(mu * a)
    i2 = np.sinh(we * a) - we * np.sin(mu * a) / mu
    i3 = k.l * np.sin(mu * a) / mu
    return i0, i1, i2, i3


def shielded_source_ft(k: WaveVector, signal: DrivingSignal, eps: float):
    """Transform of the shielded source:
    g_hat(omega, u) e^{i eps omega a} Omega(k_eps, y)."""
    ke = k_eps_map(k, eps)
    a = k.y.a
    omg = omega_filter(ke.mu_sq_eps, ke.l_eps, a)
    gh = signal_ft(signal, k.omega, k.y.u)
    if isinstance(gh, DeltaLine):
        k0 = WaveVector(k.k3, gh.omega0, k.y)
        ke0 = k_eps_map(k0, eps)
        w = gh.weight * np.exp(1j * eps * gh.omega0 * a) \
            * omega_filter(ke0.mu_sq_eps, ke0.l_eps, a)
        return DeltaLine(gh.omega0, complex(w))
    return gh * np.exp(1j * eps * k.omega * a) * omg


def bare_source_ft(k: WaveVector, signal: DrivingSignal):
    """Transform of the bare disk source: g_hat(omega, u) Omega(k, y)."""
    gh = signal_ft(signal, k.omega, k.y.u)
    if isinstance(gh, DeltaLine):
        k0 = WaveVector(k.k3, gh.omega0, k.y)
        return DeltaLine(gh.omega0,
                         complex(gh.weight
                                 * omega_filter(k0.mu_sq, k0.l, k.y.a)))
    return gh * omega_filter(k.mu_sq, k.l, k.y.a)


def event_source_ft(k: WaveVector):
    """Transform of the impulse-driven (complex event) source:
    cauchy_ft(omega, u) Omega(k, y)."""
    return cauchy_ft(k.omega, k.y.u) * omega_filter(k.mu_sq, k.l, k.y.a)


def static_source_ft(k3, y: SourcePoint):
    """Transform of the unit static point source at i y:
    cos(h a) + (l/h) sin(h a)."""
    k = WaveVector(k3, 0.0, y)
    return omega_filter(k.h ** 2, k.l, y.a)


def pulsed_beam_ft(k: WaveVector, signal: DrivingSignal):
    """Transform of the pulsed beam: g_hat(omega, u) Omega(k, y) / k^2.

    Equal, by the partial-fraction identity, to

        g_hat/(2 mu) [e^{i mu a}/(mu + 0 + i l) + e^{-i mu a}/(mu + 0 - i l)]

    with the retarded branch of mu; off the light cone the value is
    branch-independent. On-shell points (k^2 = 0) are poles.
    """
    ksq = k.k_sq
    if abs(ksq) < 1e-12 * max(k.kappa ** 2, k.omega ** 2, 1.0):
        raise ZeroDivisionError("pulsed beam transform has a pole on the "
                                "light cone (k^2 = 0)")
    gh = signal_ft(signal, k.omega, k.y.u)
    if isinstance(gh, DeltaLine):
        k0 = WaveVector(k.k3, gh.omega0, k.y)
        return DeltaLine(gh.omega0,
                         complex(gh.weight
                                 * omega_filter(k0.mu_sq, k0.l, k.y.a)
                                 / k0.k_sq))
    return gh * omega_filter(k.mu_sq, k.l, k.y.a) / ksq


# ---------------------------------------------------------------------------
# grid export
# ---------------------------------------------------------------------------

def spectrum_rows(k_axes, omegas, y: SourcePoint, signal: DrivingSignal,
                  kind: str = "bare"):
    """Evaluate a source transform over a rectilinear (k, omega) grid.

    Yields (kx, ky, kz, omega, re, im) tuples; delta-line transforms
    contribute their weight at the matching grid frequency and zero
    elsewhere.
    """
    kx_ax, ky_ax, kz_ax = (np.asarray(ax, dtype=np.float64) for ax in k_axes)
    eval_fn = {"bare": lambda kk: bare_source_ft(kk, signal),
               "event": event_source_ft,
               "static": lambda kk: static_source_ft(kk.k3, y),
               "beam": lambda kk: pulsed_beam_ft(kk, signal)}[kind]
    for kx in kx_ax:
        for ky in ky_ax:
            for kz in kz_ax:
                for w in np.asarray(omegas, dtype=np.float64):
                    kk = WaveVector([kx, ky, kz], float(w), y)
                    try:
                        val = eval_fn(kk)
                    except ZeroDivisionError:
                        val = complex(np.nan, np.nan)
                    if isinstance(val, DeltaLine):
                        val = val.weight if w == val.omega0 else 0.0 + 0.0j
                    yield (float(kx), float(ky), float(kz), float(w),
                           float(np.real(val)), float(np.imag(val)))


def write_spectrum_csv(path, k_axes, omegas, y: SourcePoint,
                       signal: DrivingSignal, kind: str = "bare"):
    """Write the grid evaluation as CSV with a fixed column order."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kx", "ky", "kz", "omega", "re", "im"])
        for row in spectrum_rows(k_axes, omegas, y, signal, kind):
            writer.writerow([f"{v:.17g}" for v in row])
