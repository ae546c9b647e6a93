"""Field-frame rendering and the two qualitative figure presets.

Frames sample |retarded propagator| (or its square) of an impulse-driven
source on the x1-x3 plane slice x2 = 0, with the source axis along +x3.
The far-zone preset sweeps the Euclidean time u toward the light cone,
where the beam focuses; the near-zone preset follows a single launch in
time, showing elliptical wavefronts hugging the source disk. Both checks
are geometric (monotone angular width; ridge tracking the wavefront
coordinate), since the figures carry no absolute calibration.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import SourcePoint, complex_distance

__all__ = ["FrameGrid", "render_impulse_frame", "render_frames",
           "angular_fwhm", "axis_ridge_position", "write_pgm", "write_csv",
           "FIG2_U_VALUES", "FIG3_TIMES", "fig2_scenario", "fig3_scenario",
           "max_workers"]

FIG2_U_VALUES = (1.5, 1.1, 1.01, 1.001)
FIG3_TIMES = (0.1, 1.0, 2.0, 3.0)


def max_workers() -> int:
    """Frame-render parallelism, capped by CAUSAL_BEAMS_THREADS."""
    cap = os.environ.get("CAUSAL_BEAMS_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = max(1, min(n, int(cap)))
    return min(n, 8)


@dataclass(frozen=True)
class FrameGrid:
    """Rectilinear (x1, x3) sampling window on the slice x2 = 0."""

    x1_min: float
    x1_max: float
    x3_min: float
    x3_max: float
    n1: int = 400
    n3: int = 400

    @property
    def x1(self) -> np.ndarray:
        return np.linspace(self.x1_min, self.x1_max, self.n1)

    @property
    def x3(self) -> np.ndarray:
        return np.linspace(self.x3_min, self.x3_max, self.n3)

    @property
    def step(self) -> float:
        return max((self.x1_max - self.x1_min) / (self.n1 - 1),
                   (self.x3_max - self.x3_min) / (self.n3 - 1))

    def to_dict(self):
        return {"x1": [self.x1_min, self.x1_max, self.n1],
                "x3": [self.x3_min, self.x3_max, self.n3]}

    @classmethod
    def from_dict(cls, d) -> "FrameGrid":
        return cls(d["x1"][0], d["x1"][1], d["x3"][0], d["x3"][1],
                   int(d["x1"][2]), int(d["x3"][2]))


def render_impulse_frame(a: float, u: float, t: float, grid: FrameGrid,
                         squared: bool = False) -> np.ndarray:
    """|retarded propagator| (optionally squared) on the grid; the source
    axis is +x3 so rho = |x1| and xi = x3 on the slice."""
    X1, X3 = np.meshgrid(grid.x1, grid.x3, indexing="ij")
    vals = kernels.impulse_beam_abs(np.abs(X1), X3, a, u, t)
    return vals ** 2 if squared else vals


def render_frames(a: float, u_values, times, grid: FrameGrid,
                  squared: bool = False):
    """Render one frame per (u, t) pair, in parallel across frames."""
    jobs = list(zip(u_values, times))
    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        frames = list(pool.map(
            lambda ut: render_impulse_frame(a, ut[0], ut[1], grid, squared),
            jobs))
    return frames


def angular_fwhm(a: float, u: float, r: float, n_theta: int = 20001) -> float:
    """Full angular width at half maximum of the circle profile of
    |retarded propagator| at radius r and time t = r (far zone)."""
    theta = np.linspace(0.0, np.pi, n_theta)
    rho = r * np.sin(theta)
    xi = r * np.cos(theta)
    prof = kernels.impulse_beam_abs(rho, xi, a, u, r)
    half = prof.max() / 2.0
    above = theta[prof >= half]
    return 2.0 * float(above.max())


def axis_ridge_position(frame: np.ndarray, grid: FrameGrid,
                        y: SourcePoint) -> float:
    """Wavefront coordinate p at the on-axis ridge of a rendered frame.

    Scans the x1 = 0 column for x3 > 0 and maps the argmax back through
    the complex-distance chart.
    """
    i1 = int(np.argmin(np.abs(grid.x1)))
    x3 = grid.x3
    col = frame[i1, :].copy()
    col[x3 <= 0] = -np.inf
    i3 = int(np.argmax(col))
    x = np.array([abs(grid.x1[i1]), 0.0, x3[i3]])
    return float(complex_distance(x, y).p)


def fig2_scenario():
    """Far-zone focusing preset: one frame per u, observed at t = r0."""
    r0 = 200.0
    grid = FrameGrid(-80.0, 80.0, 140.0, 260.0)
    return {"kind": "field", "a": 1.0, "u_values": list(FIG2_U_VALUES),
            "times": [r0] * len(FIG2_U_VALUES), "grid": grid.to_dict(),
            "squared": False, "profile_radius": r0}


def fig3_scenario():
    """Near-zone launch preset: u = 1.01, four early times, |field|^2."""
    grid = FrameGrid(-4.0, 4.0, -4.0, 4.0)
    return {"kind": "field", "a": 1.0, "u_values": [1.01] * len(FIG3_TIMES),
            "times": list(FIG3_TIMES), "grid": grid.to_dict(),
            "squared": True}


def write_pgm(path, frame: np.ndarray):
    """8-bit binary PGM, normalized per frame; returns the normalization
    constant (written separately to a sidecar)."""
    vmax = float(frame.max())
    scaled = np.zeros_like(frame) if vmax == 0.0 else frame / vmax
    img = np.clip(np.round(255.0 * scaled), 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.shape[0]} {img.shape[1]}\n255\n".encode())
        fh.write(img.T.tobytes())  # rows along x3 for conventional viewing
    return vmax


def write_csv(path, frame: np.ndarray, grid: FrameGrid, t: float,
              re_im=None):
    """Frame CSV with columns x1, x3, t, Re, Im, Abs.

    For magnitude-only frames Re carries the magnitude and Im is zero
    unless explicit complex samples are supplied.
    """
    with open(path, "w") as fh:
        fh.write("x1,x3,t,re,im,abs\n")
        x1 = grid.x1
        x3 = grid.x3
        for i in range(grid.n1):
            for j in range(grid.n3):
                if re_im is not None:
                    re, im = re_im[0][i, j], re_im[1][i, j]
                    mag = float(np.hypot(re, im))
                else:
                    re, im = frame[i, j], 0.0
                    mag = float(frame[i, j])
                fh.write(f"{x1[i]:.17g},{x3[j]:.17g},{t:.17g},"
                         f"{re:.17g},{im:.17g},{mag:.17g}\n")


def write_sidecar(path, entries):
    with open(path, "w") as fh:
        json.dump(entries, fh, indent=2, sort_keys=True)
        fh.write("\n")
