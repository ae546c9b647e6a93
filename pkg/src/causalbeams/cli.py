"""Scenario-driven command line interface.

Subcommands
-----------
field        sample |W| of a driven scalar source on the x1-x3 slice
em-field     sample the Frobenius magnitude of the dipole field matrix
spectrum     evaluate a source transform on a rectilinear (k, omega) grid
weyl-verify  run the angular-spectrum criterion and write a report
source-test  run the source-theorem criteria and write a report
verify-all   run every acceptance criterion; nonzero exit on failure

Scenarios are JSON files (see README for the schema); the built-in preset
names ``fig2`` and ``fig3`` may be passed in place of a file path for the
``field`` subcommand. Outputs are CSV plus per-frame normalized binary
PGM images with the normalization constants in a JSON sidecar.
CAUSAL_BEAMS_THREADS caps frame-render parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import figures, verify
from .beams import ComplexSpacetimePoint, driven_beam
from .em import dipole_field, dipole_moment
from .geometry import SourcePoint
from .signals import Harmonic, Impulse, Sampled, Static
from .spectral import write_spectrum_csv

__all__ = ["main", "load_scenario", "save_scenario", "signal_from_dict"]


def load_scenario(path_or_preset: str) -> dict:
    """Load a scenario file, or resolve a built-in preset name."""
    presets = {"fig2": figures.fig2_scenario, "fig3": figures.fig3_scenario}
    p = Path(path_or_preset)
    if p.exists():
        with open(p) as fh:
            return json.load(fh)
    if path_or_preset in presets:
        return presets[path_or_preset]()
    raise FileNotFoundError(
        f"scenario {path_or_preset!r} is neither a file nor a preset "
        f"({', '.join(sorted(presets))})")


def save_scenario(scenario: dict, path):
    with open(path, "w") as fh:
        json.dump(scenario, fh, indent=2, sort_keys=True)
        fh.write("\n")


def signal_from_dict(d: dict):
    kind = d.get("type", "impulse")
    if kind == "impulse":
        return Impulse()
    if kind == "static":
        return Static()
    if kind == "harmonic":
        return Harmonic(float(d["omega0"]))
    if kind == "sampled":
        return Sampled.from_csv(d["csv"])
    raise ValueError(f"unknown signal type {kind!r}")


def _source_from_dict(d: dict) -> SourcePoint:
    return SourcePoint(np.asarray(d["y"], dtype=float), float(d["u"]))


def _validate_grid(grid: figures.FrameGrid, a: float):
    """The branch circle meets the rendered slice at (x1, x3) = (+-a, 0)
    (at the origin when a = 0); reject grids whose nodes land numerically
    on the singular set."""
    d1 = np.abs(np.abs(grid.x1) - a).min()
    d3 = np.abs(grid.x3).min()
    if np.hypot(d1, d3) < 1e-9 * max(a, 1.0):
        raise ValueError("grid node coincides with the source singularity; "
                         "shift the extents by a fraction of a step")


def _render_general_frame(y: SourcePoint, signal, t: float,
                          grid: figures.FrameGrid, squared: bool):
    X1, X3 = np.meshgrid(grid.x1, grid.x3, indexing="ij")
    pts = np.stack([X1, np.zeros_like(X1), X3],
                   axis=-1).reshape(-1, 3)
    z = ComplexSpacetimePoint(pts, t, y)
    vals = np.abs(driven_beam(z, signal)).reshape(grid.n1, grid.n3)
    return vals ** 2 if squared else vals


def cmd_field(args) -> int:
    sc = load_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    grid = figures.FrameGrid.from_dict(sc["grid"])
    squared = bool(sc.get("squared", False))

    if "u_values" in sc:  # preset form: impulse drive, per-frame u
        a = float(sc.get("a", 1.0))
        _validate_grid(grid, a)
        frames = figures.render_frames(a, sc["u_values"], sc["times"],
                                       grid, squared)
        u_list = sc["u_values"]
    else:
        y = _source_from_dict(sc["source"])
        _validate_grid(grid, y.a)
        signal = signal_from_dict(sc.get("signal", {"type": "impulse"}))
        times = sc["times"]
        with ThreadPoolExecutor(max_workers=figures.max_workers()) as pool:
            frames = list(pool.map(
                lambda t: _render_general_frame(y, signal, t, grid, squared),
                times))
        u_list = [y.u] * len(times)

    sidecar = []
    for i, (frame, t, u) in enumerate(zip(frames, sc["times"], u_list)):
        stem = f"frame_{i:03d}"
        vmax = figures.write_pgm(out / f"{stem}.pgm", frame)
        figures.write_csv(out / f"{stem}.csv", frame, grid, t)
        sidecar.append({"frame": stem, "t": t, "u": u,
                        "normalization": vmax})
    figures.write_sidecar(out / "frames.json", sidecar)
    print(f"wrote {len(frames)} frame(s) to {out}")
    return 0


def cmd_em_field(args) -> int:
    sc = load_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    y = _source_from_dict(sc["source"])
    grid = figures.FrameGrid.from_dict(sc["grid"])
    _validate_grid(grid, y.a)
    p = dipole_moment(sc["dipole"].get("magnetic", [0, 0, 0]),
                      sc["dipole"].get("electric", [0, 0, 0]))
    which = sc.get("which", "retarded")

    def render(t):
        X1, X3 = np.meshgrid(grid.x1, grid.x3, indexing="ij")
        pts = np.stack([X1, np.zeros_like(X1), X3], axis=-1).reshape(-1, 3)
        z = ComplexSpacetimePoint(pts, t, y)
        f = dipole_field(z, p, which)
        return np.linalg.norm(f, axis=-1).reshape(grid.n1, grid.n3)

    with ThreadPoolExecutor(max_workers=figures.max_workers()) as pool:
        frames = list(pool.map(render, sc["times"]))
    sidecar = []
    for i, (frame, t) in enumerate(zip(frames, sc["times"])):
        stem = f"em_frame_{i:03d}"
        vmax = figures.write_pgm(out / f"{stem}.pgm", frame)
        figures.write_csv(out / f"{stem}.csv", frame, grid, t)
        sidecar.append({"frame": stem, "t": t, "normalization": vmax})
    figures.write_sidecar(out / "frames.json", sidecar)
    print(f"wrote {len(frames)} EM frame(s) to {out}")
    return 0


def cmd_spectrum(args) -> int:
    sc = load_scenario(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    y = _source_from_dict(sc["source"])
    signal = signal_from_dict(sc.get("signal", {"type": "impulse"}))

    def axis(spec):
        lo, hi, n = spec
        return np.linspace(float(lo), float(hi), int(n))

    k_axes = tuple(axis(sc["k_grid"][c]) for c in ("kx", "ky", "kz"))
    omegas = axis(sc["omega_grid"])
    path = out / "spectrum.csv"
    write_spectrum_csv(path, k_axes, omegas, y, signal,
                       sc.get("transform", "bare"))
    print(f"wrote {path}")
    return 0


def _run_criteria(args, only=None) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    results = verify.run_all(seed=args.seed, profile=args.tol_profile,
                             inject=getattr(args, "inject", None), only=only)
    verify.write_report(results, out / "report.json",
                        out / "report_timing.txt")
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.criterion} [{status}] {r.title} ({r.runtime_s:.2f} s)")
        for c in r.checks:
            mark = "  ok " if c.passed else "  FAIL"
            print(f"{mark} {c.name}: {c.got} (tol {c.tolerance:g})")
        ok = ok and r.passed
    print(f"report: {out / 'report.json'}")
    return 0 if ok else 1


def cmd_weyl_verify(args) -> int:
    return _run_criteria(args, only=["crit-7"])


def cmd_source_test(args) -> int:
    return _run_criteria(args, only=["crit-4", "crit-5"])


def cmd_verify_all(args) -> int:
    return _run_criteria(args, only=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causalbeams",
        description="complex-source pulsed beams: field sampling, "
                    "spectra, and verification")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", required=True,
                           help="scenario JSON file (or preset name)")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol-profile", choices=["default", "strict"],
                       default="default")

    p = sub.add_parser("field", help="sample a scalar beam on a grid")
    add_common(p)
    p.set_defaults(fn=cmd_field)

    p = sub.add_parser("em-field", help="sample a dipole field on a grid")
    add_common(p)
    p.set_defaults(fn=cmd_em_field)

    p = sub.add_parser("spectrum", help="export a transform over a "
                                        "(k, omega) grid as CSV")
    add_common(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("weyl-verify", help="angular-spectrum criterion")
    add_common(p, scenario=False)
    p.set_defaults(fn=cmd_weyl_verify)

    p = sub.add_parser("source-test", help="source-theorem criteria")
    add_common(p, scenario=False)
    p.set_defaults(fn=cmd_source_test)

    p = sub.add_parser("verify-all", help="run every acceptance criterion")
    add_common(p, scenario=False)
    p.add_argument("--inject", choices=["omega-sign-flip"], default=None,
                   help=argparse.SUPPRESS)  # negative-control hook
    p.set_defaults(fn=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
