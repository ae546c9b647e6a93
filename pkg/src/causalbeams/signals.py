"""Driving signals and their analytic-signal algebra.

A real time signal g0(t) driving a source is extended to complex time by
the Cauchy-kernel convolution (analytic-signal transform)

    g(tau) = (1/2 pi i) int g0(t') dt' / (tau - t'),   tau = t - iu, u != 0,

which splits positive/negative frequencies into the lower/upper half
planes. Closed forms are used for the impulse, static and time-harmonic
variants; sampled signals are interpolated by cubic pieces and integrated
adaptively. The temporal Fourier transform of the Cauchy kernel is

    C_hat(omega, u) = sgn(u) * Theta(omega u) * exp(-omega u),

with Theta(0) = 1/2 throughout (this makes the static signal the
omega -> 0 limit of the harmonic one).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .numerics import QuadratureSpec, adaptive_quad

__all__ = ["Impulse", "Static", "Harmonic", "Sampled", "DrivingSignal",
           "AnalyticSignalValue", "DeltaLine",
           "ast", "cauchy_kernel", "cauchy_ft", "g_tilde", "signal_ft",
           "signal_g0_ft", "g_second", "heaviside"]

_AST_SPEC = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-15, max_subdivisions=4000)


def heaviside(x):
    """Unit step with the half-value convention Theta(0) = 1/2."""
    return np.where(x > 0, 1.0, np.where(x < 0, 0.0, 0.5))


def _sgn(u):
    return np.where(np.asarray(u) >= 0, 1.0, -1.0)


@dataclass(frozen=True)
class Impulse:
    """g0(t) = delta(t)."""


@dataclass(frozen=True)
class Static:
    """g0(t) = 1."""


@dataclass(frozen=True)
class Harmonic:
    """g0(t) = exp(-i omega0 t)."""

    omega0: float


@dataclass(frozen=True)
class Sampled:
    """Real signal known at sample times; compact support, cubic pieces.

    ``times`` must be strictly increasing; the signal is taken to vanish
    outside [times[0], times[-1]].
    """

    times: np.ndarray
    values: np.ndarray
    _spline: CubicSpline = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if t.ndim != 1 or t.shape != v.shape or t.size < 4:
            raise ValueError("need matching 1-d arrays with >= 4 samples")
        if not np.all(np.diff(t) > 0):
            raise ValueError("sample times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "_spline", CubicSpline(t, v))

    @classmethod
    def from_csv(cls, path) -> "Sampled":
        """Load a two-column CSV (time, value)."""
        data = np.loadtxt(path, delimiter=",", dtype=np.float64)
        if data.ndim != 2 or data.shape[1] != 2:
            raise ValueError(f"{path}: expected two columns (time, value)")
        return cls(data[:, 0], data[:, 1])

    @property
    def support(self) -> tuple[float, float]:
        return float(self.times[0]), float(self.times[-1])

    def g0(self, t):
        t = np.asarray(t, dtype=np.float64)
        lo, hi = self.support
        inside = (t >= lo) & (t <= hi)
        out = np.zeros_like(t)
        if inside.any():
            out[inside] = self._spline(t[inside])
        return out


DrivingSignal = Impulse | Static | Harmonic | Sampled


@dataclass(frozen=True)
class AnalyticSignalValue:
    """g(tau) and its tau-derivative at one (or an array of) complex time."""

    g: np.ndarray
    g_prime: np.ndarray


@dataclass(frozen=True)
class DeltaLine:
    """Distributional spectrum weight * delta(omega - omega0).

    Returned by transforms of static/harmonic signals, whose pointwise
    spectra do not exist as numbers; spectral formulas multiply the weight
    symbolically, evaluating smooth factors at omega0.
    """

    omega0: float
    weight: complex


def _check_off_axis(tau):
    u = -np.imag(np.asarray(tau))
    if np.any(u == 0.0):
        raise ValueError("analytic signal undefined on the real time axis "
                         "(Cauchy kernel singular); need Im tau != 0")
    return u


def cauchy_kernel(tau):
    """C(tau) = 1/(2 pi i tau)."""
    return 1.0 / (2j * np.pi * np.asarray(tau, dtype=np.complex128))


def ast(signal: DrivingSignal, tau) -> AnalyticSignalValue:
    """Analytic-signal transform g(tau) with its derivative, Im tau != 0.

    tau may be a scalar or an array (arrays evaluate the closed-form
    variants elementwise; sampled signals integrate per element).
    """
    tau = np.asarray(tau, dtype=np.complex128)
    u = _check_off_axis(tau)
    if isinstance(signal, Impulse):
        g = cauchy_kernel(tau)
        return AnalyticSignalValue(g, -g / tau)
    if isinstance(signal, Static):
        g = _sgn(u) * 0.5 + 0j * tau
        return AnalyticSignalValue(g, np.zeros_like(tau))
    if isinstance(signal, Harmonic):
        w0 = signal.omega0
        g = _sgn(u) * heaviside(w0 * u) * np.exp(-1j * w0 * tau)
        return AnalyticSignalValue(g, -1j * w0 * g)
    if isinstance(signal, Sampled):
        lo, hi = signal.support
        flat = tau.ravel()
        g = np.empty_like(flat)
        gp = np.empty_like(flat)
        for i, tv in enumerate(flat):
            r = adaptive_quad(lambda s: signal.g0(s) / (tv - s), lo, hi,
                              _AST_SPEC)
            rp = adaptive_quad(lambda s: -signal.g0(s) / (tv - s) ** 2,
                               lo, hi, _AST_SPEC)
            g[i] = r.value / (2j * np.pi)
            gp[i] = rp.value / (2j * np.pi)
        return AnalyticSignalValue(g.reshape(tau.shape),
                                   gp.reshape(tau.shape))
    raise TypeError(f"unknown driving signal {signal!r}")


def g_second(signal: DrivingSignal, tau):
    """Second tau-derivative of g; analytic except for sampled signals,
    which use central differences with step 1e-3 * |Im tau|."""
    tau = np.asarray(tau, dtype=np.complex128)
    u = _check_off_axis(tau)
    if isinstance(signal, Impulse):
        return 2.0 * cauchy_kernel(tau) / tau ** 2
    if isinstance(signal, Static):
        return np.zeros_like(tau)
    if isinstance(signal, Harmonic):
        return (-1j * signal.omega0) ** 2 * ast(signal, tau).g
    if isinstance(signal, Sampled):
        h = 1e-3 * np.min(np.abs(u))
        gp_hi = ast(signal, tau + h).g_prime
        gp_lo = ast(signal, tau - h).g_prime
        return (gp_hi - gp_lo) / (2.0 * h)
    raise TypeError(f"unknown driving signal {signal!r}")


def cauchy_ft(omega, u):
    """Temporal Fourier transform of the Cauchy kernel:
    sgn(u) Theta(omega u) exp(-omega u), with Theta(0) = 1/2."""
    if np.any(np.asarray(u) == 0.0):
        raise ValueError("cauchy_ft needs u != 0")
    omega = np.asarray(omega, dtype=np.float64)
    return _sgn(u) * heaviside(omega * u) * np.exp(-omega * u)


def g_tilde(signal: DrivingSignal, tau, q):
    """Average of g over the two disk layers: (g(tau+iq) + g(tau-iq))/2.

    Requires |Im tau| > |q| so both arguments stay off the real axis;
    even in q by construction.
    """
    tau = np.asarray(tau, dtype=np.complex128)
    q = np.asarray(q, dtype=np.float64)
    if np.any(np.abs(np.imag(tau)) <= np.abs(q) - 1e-300):
        raise ValueError("g_tilde needs |Im tau| > |q|")
    return 0.5 * (ast(signal, tau + 1j * q).g + ast(signal, tau - 1j * q).g)


def signal_g0_ft(signal: DrivingSignal, omega):
    """Fourier transform of the bare time signal, int dt e^{i omega t} g0.

    Static and harmonic signals return a DeltaLine; sampled signals
    integrate adaptively over their support.
    """
    if isinstance(signal, Impulse):
        return 1.0 + 0.0j
    if isinstance(signal, Static):
        return DeltaLine(0.0, 2.0 * np.pi)
    if isinstance(signal, Harmonic):
        return DeltaLine(signal.omega0, 2.0 * np.pi)
    if isinstance(signal, Sampled):
        lo, hi = signal.support
        r = adaptive_quad(lambda t: signal.g0(t) * np.exp(1j * omega * t),
                          lo, hi, _AST_SPEC)
        return r.value
    raise TypeError(f"unknown driving signal {signal!r}")


def signal_ft(signal: DrivingSignal, omega, u):
    """g_hat(omega, u) = g0_hat(omega) * cauchy_ft(omega, u).

    Returns a complex number, or a DeltaLine whose weight carries the
    cauchy_ft factor evaluated at the line frequency.
    """
    g0_hat = signal_g0_ft(signal, omega)
    if isinstance(g0_hat, DeltaLine):
        w = g0_hat.weight * cauchy_ft(g0_hat.omega0, u)
        return DeltaLine(g0_hat.omega0, complex(w))
    return g0_hat * cauchy_ft(omega, u)
