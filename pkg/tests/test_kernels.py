"""Backend selection and compiled/pure kernel agreement."""

import numpy as np
import pytest

import causalbeams._kernels_py as pure
from causalbeams import kernels

compiled = pytest.importorskip("causalbeams._kernels",
                               reason="compiled extension not built")


def test_backend_reports_itself():
    assert kernels.BACKEND in ("compiled", "pure")


class TestBackendAgreement:
    def test_bessel(self):
        rng = np.random.default_rng(0)
        x = np.concatenate([rng.uniform(-50, 50, 5000),
                            rng.uniform(-1e6, 1e6, 5000), [0.0]])
        assert np.abs(pure.j0(x) - compiled.j0(x)).max() < 3e-16
        assert np.abs(pure.j1(x) - compiled.j1(x)).max() < 3e-16

    def test_pq_split(self):
        rng = np.random.default_rng(1)
        s = rng.uniform(-5, 5, 5000)
        v = rng.uniform(-5, 5, 5000)
        # include the disk stripe and the tiny-v stability regime
        s = np.concatenate([s, [-1.0, -0.25, -1.0]])
        v = np.concatenate([v, [0.0, 0.0, 1e-12]])
        p1, q1 = pure.pq_split(s, v)
        p2, q2 = compiled.pq_split(s, v)
        assert np.abs(p1 - p2).max() < 5e-16 * np.abs(p1).max()
        assert np.abs(q1 - q2).max() < 5e-16 * np.abs(q1).max()

    def test_frame_kernel(self):
        ax = np.linspace(-3, 3, 101)
        rho, xi = np.meshgrid(np.abs(ax), ax, indexing="ij")
        f1 = pure.impulse_beam_abs(rho, xi, 1.0, 1.2, 0.8)
        f2 = compiled.impulse_beam_abs(rho, xi, 1.0, 1.2, 0.8)
        assert np.abs(f1 - f2).max() <= 1e-12 * f1.max()

    def test_scalar_shapes_match(self):
        assert np.shape(pure.j0(0.7)) == np.shape(compiled.j0(0.7)) == ()
        p1, q1 = pure.pq_split(3.0, 4.0)
        p2, q2 = compiled.pq_split(3.0, 4.0)
        assert float(p1) == float(p2) == 2.0
        assert float(q1) == float(q2) == 1.0
