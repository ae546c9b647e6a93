"""Complex distance and its oblate-spheroidal geometry.

The complex distance from the imaginary source point i*y_spatial to a real
observation point x is the principal square root

    rt = sqrt((x - i y)^2) = sqrt(r^2 - a^2 - 2i x.y) = p - iq,   p >= 0,

with a = |y|. Its branch points form the circle of radius a in the plane
orthogonal to y; the branch cut is the flat disk spanning that circle.
Constant-p surfaces are confocal oblate spheroids, constant-q surfaces the
orthogonal semi-hyperboloids, giving oblate-spheroidal (OS) coordinates
(p, q, phi). Points exactly on the cut (xi = 0, rho < a) are resolved as
the xi -> +0 layer, i.e. q = +sqrt(a^2 - rho^2).

All evaluators are vectorized over the observation point: x may be a
single 3-vector or an (..., 3) array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

__all__ = ["SourcePoint", "ComplexDistance", "OsFrame", "BranchCircleError",
           "complex_distance", "from_os", "os_frame", "far_zone"]

# points with |rt| below this (times max(a, 1)) are treated as singular:
# the gradient formulas divide by |rt|^2
_SINGULAR_RTOL = 1e-13


class BranchCircleError(ValueError):
    """Observation point on (or numerically indistinguishable from) the
    branch circle rho = a, xi = 0, where the complex distance vanishes."""

    def __init__(self, rho, xi):
        self.rho = rho
        self.xi = xi
        super().__init__(f"point on the branch circle: rho={rho}, xi={xi}")


@dataclass(frozen=True)
class SourcePoint:
    """Imaginary source location iy = (i y_spatial, iu).

    u is the Euclidean time / scale parameter (c = 1). The beam and source
    modules require the timelike condition |u| > a; geometry accepts any y.
    """

    y_spatial: np.ndarray
    u: float = 0.0

    def __post_init__(self):
        ys = np.asarray(self.y_spatial, dtype=np.float64).reshape(3)
        object.__setattr__(self, "y_spatial", ys)
        object.__setattr__(self, "u", float(self.u))

    @property
    def a(self) -> float:
        return float(np.linalg.norm(self.y_spatial))

    @property
    def y_hat(self) -> np.ndarray:
        """Unit axis; a fixed default (+z) when a = 0 (direction undefined)."""
        a = self.a
        if a == 0.0:
            return np.array([0.0, 0.0, 1.0])
        return self.y_spatial / a

    @property
    def is_timelike(self) -> bool:
        return abs(self.u) > self.a

    @property
    def lam(self) -> float:
        """Resolution scale sqrt(u^2 - a^2) (timelike y only)."""
        if not self.is_timelike:
            raise ValueError("lam defined only for timelike y")
        return float(np.sqrt(self.u * self.u - self.a * self.a))

    def frame(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Deterministic right-handed orthonormal triad (e1, e2, y_hat).

        For the +z axis this is the usual (x, y, z) frame.
        """
        n = self.y_hat
        helper = np.array([0.0, 1.0, 0.0]) if abs(n[2]) >= 0.9 \
            else np.array([0.0, 0.0, 1.0])
        e1 = np.cross(helper, n)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n, e1)
        return e1, e2, n


@dataclass(frozen=True)
class ComplexDistance:
    """rt = p - iq plus the cylindrical data (rho, xi, phi) for one source.

    Invariants (all enforced by construction, verified in tests):
    p >= 0, |q| <= a, p^2 - q^2 = r^2 - a^2, p q = a xi,
    a^2 rho^2 = (p^2 + a^2)(a^2 - q^2).
    """

    p: np.ndarray
    q: np.ndarray
    rho: np.ndarray
    xi: np.ndarray
    phi: np.ndarray
    r: np.ndarray

    @property
    def rt(self) -> np.ndarray:
        return self.p - 1j * self.q


@dataclass(frozen=True)
class OsFrame:
    """Gradients and Laplacians of p and q at an observation point.

    Satisfies (grad p)^2 - (grad q)^2 = 1, grad p . grad q = 0,
    (grad p)^2 = (a^2+p^2)/|rt|^2, (grad q)^2 = (a^2-q^2)/|rt|^2,
    lap p = 2p/|rt|^2, lap q = -2q/|rt|^2.
    """

    grad_p: np.ndarray
    grad_q: np.ndarray
    lap_p: np.ndarray
    lap_q: np.ndarray


def _cyl_decompose(x: np.ndarray, y: SourcePoint):
    """Cylinder coordinates (rho, xi, phi) of x about the source axis."""
    e1, e2, n = y.frame()
    xi = x @ n
    c1 = x @ e1
    c2 = x @ e2
    rho = np.hypot(c1, c2)
    phi = np.arctan2(c2, c1)
    return rho, xi, phi


def complex_distance(x, y: SourcePoint) -> ComplexDistance:
    """Principal-branch complex distance from the source i*y_spatial to x.

    x: 3-vector or (..., 3) array. Raises BranchCircleError when any point
    lies on the branch circle (where rt = 0 and the OS chart degenerates).
    """
    x = np.asarray(x, dtype=np.float64)
    squeeze = x.ndim == 1
    xs = x.reshape(-1, 3)
    a = y.a
    rho, xi, phi = _cyl_decompose(xs, y)
    r = np.sqrt(np.sum(xs * xs, axis=-1))
    s = r * r - a * a
    v = 2.0 * a * xi
    p, q = kernels.pq_split(s, v)
    p = np.atleast_1d(np.asarray(p, dtype=np.float64))
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    tiny = _SINGULAR_RTOL * max(a, 1.0)
    bad = p * p + q * q < tiny * tiny
    if bad.any():
        i = int(np.argmax(bad))
        raise BranchCircleError(rho[i], xi[i])
    out = (p, q, rho, xi, phi, r)
    if squeeze:
        out = tuple(np.float64(t[0]) for t in out)
    return ComplexDistance(*out)


def from_os(p, q, phi, y: SourcePoint) -> np.ndarray:
    """Observation point with the given OS coordinates about the source axis.

    Inverse of complex_distance: requires p >= 0 and |q| <= a. The branch
    circle is reachable as p = q = 0.
    """
    a = y.a
    if a == 0.0:
        raise ValueError("OS chart undefined for a = 0 (use spherical r)")
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    if np.any(p < 0.0):
        raise ValueError("need p >= 0")
    if np.any(np.abs(q) > a * (1 + 1e-15)):
        raise ValueError("need |q| <= a")
    xi = p * q / a
    rho = np.sqrt(np.maximum((p * p + a * a) * (a * a - q * q), 0.0)) / a
    e1, e2, n = y.frame()
    return (rho * np.cos(phi))[..., None] * e1 \
        + (rho * np.sin(phi))[..., None] * e2 + xi[..., None] * n


def os_frame(x, y: SourcePoint) -> OsFrame:
    """Gradients and Laplacians of p and q at x (off the branch circle).

    grad rt = z/rt with z = x - iy gives
    grad p = (p x + q y)/|rt|^2 and grad q = (p y - q x)/|rt|^2;
    lap rt = 2/rt gives lap p = 2p/|rt|^2, lap q = -2q/|rt|^2.
    """
    x = np.asarray(x, dtype=np.float64)
    squeeze = x.ndim == 1
    xs = x.reshape(-1, 3)
    cd = complex_distance(xs, y)
    p = cd.p[..., None]
    q = cd.q[..., None]
    mod2 = cd.p ** 2 + cd.q ** 2
    ys = y.y_spatial
    grad_p = (p * xs + q * ys) / mod2[..., None]
    grad_q = (p * ys - q * xs) / mod2[..., None]
    lap_p = 2.0 * cd.p / mod2
    lap_q = -2.0 * cd.q / mod2
    if squeeze:
        return OsFrame(grad_p[0], grad_q[0], np.float64(lap_p[0]),
                       np.float64(lap_q[0]))
    return OsFrame(grad_p, grad_q, lap_p, lap_q)


def far_zone(x, y: SourcePoint):
    """Far-field approximation pair (p ~ r, q ~ a cos(theta)).

    cos(theta) = xi / r; the remainder of each entry is O(a^2/r).
    """
    x = np.asarray(x, dtype=np.float64)
    squeeze = x.ndim == 1
    xs = x.reshape(-1, 3)
    r = np.sqrt(np.sum(xs * xs, axis=-1))
    if np.any(r == 0.0):
        raise ValueError("far_zone needs r > 0")
    xi = xs @ y.y_hat
    q_approx = y.a * xi / r
    if squeeze:
        return np.float64(r[0]), np.float64(q_approx[0])
    return r, q_approx
