"""Extended propagators and driven pulsed beams in the causal tube.

The retarded/advanced propagators extended off real spacetime are

    Dp(z) = 1 / (8 i pi^2 rt (tau - rt)),   Dm(z) = 1 / (8 i pi^2 rt (tau + rt)),

with rt = p - iq the complex distance and tau = t - iu. For timelike y
(|u| > a) both are finite off the branch circle because Im(tau -+ rt) =
-(u -+ q) never vanishes. A driving signal g0 produces the beam
W = g(tau - rt) / (4 pi rt) with g the analytic signal of g0.

Real-spacetime distributions are recovered by the boundary-value
(Plemelj) probe implemented in minkowski_limit_probe: smearing
Dp(. - i eps y) - Dp(. + i eps y) against a spacetime test function and
extrapolating eps -> 0 recovers the retarded spherical shell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import ComplexDistance, SourcePoint, complex_distance
from .signals import DrivingSignal, ast

__all__ = ["ComplexSpacetimePoint", "CausalTubeError",
           "extended_propagator", "propagator_difference", "driven_beam",
           "harmonic_beam", "nu_wavelet", "peak_pattern",
           "SpacetimeTestFunction", "spacetime_gaussian",
           "minkowski_limit_probe", "retarded_shell_integral",
           "richardson_extrapolate"]


class CausalTubeError(ValueError):
    """Source point not timelike: the beam evaluators support only |u| > a
    (spacelike and lightlike disturbances produce singular ray/cone fields
    and are out of scope)."""


def _require_timelike(y: SourcePoint):
    if not y.is_timelike:
        raise CausalTubeError(
            f"need |u| > a for beam evaluation; got u={y.u}, a={y.a}")


@dataclass(frozen=True)
class ComplexSpacetimePoint:
    """Observation event (x, t) paired with a timelike source iy.

    Carries the derived complex time tau = t - iu and complex distance.
    x may be a single 3-vector or an (..., 3) array; t broadcasts.
    """

    x: np.ndarray
    t: np.ndarray
    y: SourcePoint

    def __post_init__(self):
        _require_timelike(self.y)
        object.__setattr__(self, "x", np.asarray(self.x, dtype=np.float64))
        object.__setattr__(self, "t", np.asarray(self.t, dtype=np.float64))

    @property
    def tau(self) -> np.ndarray:
        return self.t - 1j * self.y.u

    @property
    def cd(self) -> ComplexDistance:
        return complex_distance(self.x, self.y)

    def scaled(self, s: float) -> "ComplexSpacetimePoint":
        """z / s (componentwise, including the source)."""
        ys = SourcePoint(self.y.y_spatial / s, self.y.u / s)
        return ComplexSpacetimePoint(self.x / s, self.t / s, ys)

    def negated(self) -> "ComplexSpacetimePoint":
        return ComplexSpacetimePoint(-self.x, -self.t,
                                     SourcePoint(-self.y.y_spatial, -self.y.u))


def _prop_from_parts(rt, tau, which: str):
    if which == "retarded":
        return 1.0 / (8j * np.pi ** 2 * rt * (tau - rt))
    if which == "advanced":
        return 1.0 / (8j * np.pi ** 2 * rt * (tau + rt))
    raise ValueError(f"which must be 'retarded' or 'advanced', got {which!r}")


def extended_propagator(z: ComplexSpacetimePoint, which: str = "retarded"):
    """Extended propagator Dp (retarded) or Dm (advanced) at z."""
    return _prop_from_parts(z.cd.rt, z.tau, which)


def propagator_difference(z: ComplexSpacetimePoint):
    """i Dm(z) - i Dp(z), the sourceless even combination 1/(4 pi^2 z^2)."""
    cd = z.cd
    return 1j * (_prop_from_parts(cd.rt, z.tau, "advanced")
                 - _prop_from_parts(cd.rt, z.tau, "retarded"))


def driven_beam(z: ComplexSpacetimePoint, signal: DrivingSignal):
    """Beam g(tau - rt)/(4 pi rt) radiated by the driven source at iy.

    |u| > a guarantees |Im(tau - rt)| = |u - q| > 0, so the analytic
    signal is evaluated off the real axis.
    """
    rt = z.cd.rt
    g = ast(signal, z.tau - rt).g
    return g / (4.0 * np.pi * rt)


def harmonic_beam(x, y: SourcePoint, omega: float):
    """Time-harmonic complex-source beam exp(i omega rt)/(4 pi rt).

    Purely spatial; does not require timelike y.
    """
    rt = complex_distance(x, y).rt
    return np.exp(1j * omega * rt) / (4.0 * np.pi * rt)


def nu_wavelet(z: ComplexSpacetimePoint, nu: int):
    """Order-nu spherical wavelet and its retarded/advanced split.

    In the forward tube,

        Psi_pm = +- i nu! / (8 pi^2 rt) * (u + i(t -+ rt))^(-(nu+1)),

    and Psi = Psi_plus + Psi_minus = (-d/du)^nu of -1/(4 pi^2 z^2). The
    backward tube uses the mirror convention Psi_pm(z) = -Psi_mp(-z),
    consistent with the antisymmetry Psi(-z) = -Psi(z).

    Returns (psi, psi_plus, psi_minus).
    """
    if nu < 0 or int(nu) != nu:
        raise ValueError("nu must be a nonnegative integer")
    if z.y.u < 0:
        psi, plus, minus = nu_wavelet(z.negated(), nu)
        return -psi, -minus, -plus
    rt = z.cd.rt
    u, t = z.y.u, z.t
    fact = math.factorial(int(nu))
    pref = 1j * fact / (8.0 * np.pi ** 2 * rt)
    plus = pref * (u + 1j * (t - rt)) ** (-(nu + 1))
    minus = -pref * (u + 1j * (t + rt)) ** (-(nu + 1))
    return plus + minus, plus, minus


def peak_pattern(theta, y: SourcePoint):
    """Far-zone peak magnitude of the retarded Cauchy factor,
    1 / (2 pi |u - a cos theta|)."""
    _require_timelike(y)
    theta = np.asarray(theta, dtype=np.float64)
    return 1.0 / (2.0 * np.pi * np.abs(y.u - y.a * np.cos(theta)))


# ---------------------------------------------------------------------------
# Minkowskian-limit probe
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpacetimeTestFunction:
    """Smooth test function F(x, t) with a known compact support box.

    ``value`` must broadcast: value(x (..., 3), t (...)) -> (...).
    """

    value: Callable
    center: np.ndarray
    radius: float
    t_center: float
    t_radius: float

    def __post_init__(self):
        object.__setattr__(self, "center",
                           np.asarray(self.center, dtype=np.float64))


def spacetime_gaussian(center, t_center, sigma_x, sigma_t,
                       amplitude=1.0) -> SpacetimeTestFunction:
    """Gaussian bump in space and time; support box of 6 sigma (the
    truncated mass is below 2e-8 relative, well under the probe targets)."""
    center = np.asarray(center, dtype=np.float64)

    def value(x, t):
        dx = np.asarray(x) - center
        r2 = np.sum(dx * dx, axis=-1)
        dt = np.asarray(t) - t_center
        return amplitude * np.exp(-0.5 * r2 / sigma_x ** 2
                                  - 0.5 * dt * dt / sigma_t ** 2)

    return SpacetimeTestFunction(value, center, 8.0 * sigma_x,
                                 t_center, 8.0 * sigma_t)


def _gauss_nodes_3d(center, radius, n):
    x1, w1 = np.polynomial.legendre.leggauss(n)
    pts = []
    wts = []
    for c in center:
        pts.append(c + radius * x1)
        wts.append(radius * w1)
    X = np.stack(np.meshgrid(*pts, indexing="ij"), axis=-1).reshape(-1, 3)
    W = (wts[0][:, None, None] * wts[1][None, :, None]
         * wts[2][None, None, :]).reshape(-1)
    return X, W


def _cauchy_time_integral(F_of_t, t_peak, width, t_lo, t_hi,
                          n_center=32, n_outer=12, cut=25.0, grow=1.7):
    """int F(t) dt / ((t - t_peak) - i*width) for every spatial node at once.

    F_of_t(t (n_nodes, m)) -> (n_nodes, m); t_peak, width are (n_nodes,)
    arrays. A tangent substitution covers the Lorentzian core; geometric
    panels resolve the long 1/(t - t_peak) tail across the support.
    """
    n_nodes = t_peak.shape[0]
    total = np.zeros(n_nodes, dtype=np.complex128)

    # Lorentzian core: t = t_peak + width * tan(theta)
    tmax = np.arctan(cut)
    th, wth = np.polynomial.legendre.leggauss(n_center)
    th = th * tmax
    wth = wth * tmax
    tt = t_peak[:, None] + width[:, None] * np.tan(th)[None, :]
    vals = F_of_t(tt) / (np.tan(th)[None, :] - 1j)
    # dt/(denom) = sec^2 th dth / (width (tan th - i)) * width = ...
    total += np.sum(vals * (wth / np.cos(th) ** 2)[None, :], axis=1)

    # geometric outer panels on both sides, from cut*width out to the
    # farthest support edge
    gl_x, gl_w = np.polynomial.legendre.leggauss(n_outer)
    span = np.maximum(np.abs(t_hi - t_peak), np.abs(t_peak - t_lo))
    start = cut * width
    n_panels = int(np.ceil(np.log(max(np.max(span / start), 1.0))
                           / np.log(grow))) + 1
    for side in (+1.0, -1.0):
        lo = start.copy()
        for _ in range(n_panels):
            hi = lo * grow
            half = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            tt = t_peak[:, None] + side * (mid[:, None]
                                           + half[:, None] * gl_x[None, :])
            dt = tt - t_peak[:, None]
            vals = F_of_t(tt) / (dt - 1j * width[:, None])
            total += np.sum(vals * (half[:, None] * gl_w[None, :]), axis=1)
            lo = hi
    return total


def _probe_single(test: SpacetimeTestFunction, y: SourcePoint, eps: float,
                  which: str, n_space: int, n_center: int = 32,
                  n_outer: int = 12) -> complex:
    X, W = _gauss_nodes_3d(test.center, test.radius, n_space)
    t_lo = test.t_center - test.t_radius
    t_hi = test.t_center + test.t_radius
    ye = SourcePoint(eps * y.y_spatial, eps * y.u)
    cd = complex_distance(X, ye)
    rt = cd.rt

    def F_at(tt, X=X):
        return test.value(X[:, None, :], tt)

    value = 0.0
    if which in ("retarded", "riemann"):
        w_ret = eps * y.u - cd.q
        I_ret = _cauchy_time_integral(F_at, cd.p, w_ret, t_lo, t_hi,
                                      n_center, n_outer)
        # Dp = (1/8 i pi^2 rt) * 1/((t-p) - i(eps u - q))
        dp = I_ret / (8j * np.pi ** 2 * rt)
        value = np.sum(W * 2.0 * dp.real)
    if which in ("advanced", "riemann"):
        w_adv = eps * y.u + cd.q
        I_adv = _cauchy_time_integral(F_at, -cd.p, w_adv, t_lo, t_hi,
                                      n_center, n_outer)
        dm = I_adv / (8j * np.pi ** 2 * rt)
        contrib = np.sum(W * 2.0 * dm.real)
        value = contrib if which == "advanced" else value - contrib
    return float(np.real(value)) + 0.0j


@dataclass(frozen=True)
class ProbeValue:
    """One smeared boundary-value sample with its quadrature estimate."""

    value: complex
    error_estimate: float
    converged: bool


def minkowski_limit_probe(test: SpacetimeTestFunction, y: SourcePoint,
                          eps_list, which: str = "retarded",
                          n_space: int = 28, report_error: bool = False,
                          tol: float = 1e-6):
    """Plemelj boundary-value probe at each eps in eps_list.

    retarded: < Dp(.-i eps y) - Dp(.+i eps y), F >  -> retarded shell
    advanced: same with Dm                         -> advanced shell
    riemann:  < i G4(.-i eps y) - i G4(.+i eps y), F >
                                                   -> shell(t=r) - shell(t=-r)

    The conjugation symmetry reduces each kernel to 2 Re or -2 Im of the
    lower boundary value, and the time integral is carried out with a
    Lorentzian-adapted panel scheme. With ``report_error`` each value is
    re-evaluated on a coarser node set and returned as a ProbeValue whose
    estimate flags non-convergence against ``tol``.
    """
    _require_timelike(y)
    if y.u <= 0:
        raise ValueError("probe defined for y in the future cone (u > 0)")
    if which not in ("retarded", "advanced", "riemann"):
        raise ValueError(f"unknown probe kind {which!r}")
    out = []
    for eps in eps_list:
        v = _probe_single(test, y, eps, which, n_space)
        if report_error:
            v_coarse = _probe_single(test, y, eps, which,
                                     max(n_space - 8, 8), 24, 8)
            err = abs(v - v_coarse)
            out.append(ProbeValue(v, err, err <= tol))
        else:
            out.append(v)
    return out


def retarded_shell_integral(test: SpacetimeTestFunction, sign: int = +1,
                            n_space: int = 32):
    """Independent oracle: int d3x F(x, sign * r) / (4 pi r)."""
    X, W = _gauss_nodes_3d(test.center, test.radius, n_space)
    r = np.sqrt(np.sum(X * X, axis=-1))
    if np.any(r < 1e-12):
        raise ValueError("shell oracle requires support away from the origin")
    return float(np.sum(W * test.value(X, sign * r) / (4.0 * np.pi * r)))


def richardson_extrapolate(values, ratio: float = 10.0):
    """Richardson/Neville extrapolation of a first-order-in-eps sequence.

    values[j] corresponds to eps_j = eps_0 / ratio**j; assumes an error
    expansion c1 eps + c2 eps^2 + ...; returns the extrapolated limit.
    """
    R = [complex(v) for v in values]
    n = len(R)
    for m in range(1, n):
        fac = ratio ** m
        R = [(fac * R[i + 1] - R[i]) / (fac - 1.0) for i in range(n - m)]
    return R[0]
