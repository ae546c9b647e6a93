"""Complex-distance geometry: branch structure, OS coordinates, identities."""

import numpy as np
import pytest

from causalbeams.geometry import (BranchCircleError, SourcePoint,
                                  complex_distance, far_zone, from_os,
                                  os_frame)

Y1 = SourcePoint([0.0, 0.0, 1.0], 1.5)


def random_points(rng, n, scale=3.0, min_dist=1e-3):
    pts = rng.uniform(-scale, scale, size=(n, 3))
    return pts


class TestComplexDistance:
    def test_axis_point(self):
        cd = complex_distance([0.0, 0.0, 2.0], Y1)
        # (2 - i)^2 = 3 - 4i = r^2 - a^2 - 2i x.y exactly
        assert cd.p == pytest.approx(2.0, abs=1e-15)
        assert cd.q == pytest.approx(1.0, abs=1e-15)

    def test_euclidean_reduction(self):
        cd = complex_distance([1.0, 2.0, 2.0], SourcePoint([0, 0, 0]))
        assert cd.p == pytest.approx(3.0, abs=1e-15)
        assert cd.q == 0.0

    def test_on_disk_layer_against_limit(self):
        # oracle: principal sqrt evaluated just above the disk and
        # extrapolated to xi -> +0
        x_disk = np.array([0.5, 0.0, 0.0])
        cd = complex_distance(x_disk, Y1)
        for xi in (1e-6, 1e-8):
            w = 0.5 ** 2 + xi ** 2 - 1.0 - 2j * xi
            root = np.sqrt(w)
            assert abs(cd.p - root.real) < 2e-6
            assert abs(cd.q + root.imag) < 2e-6
        assert cd.p == 0.0
        assert cd.q == pytest.approx(np.sqrt(0.75), abs=1e-15)

    def test_branch_circle_rejected(self):
        with pytest.raises(BranchCircleError) as exc:
            complex_distance([1.0, 0.0, 0.0], Y1)
        assert exc.value.rho == pytest.approx(1.0)
        assert exc.value.xi == pytest.approx(0.0)

    def test_invariants_random(self):
        rng = np.random.default_rng(7)
        n = 10_000
        x = random_points(rng, n)
        y = SourcePoint(rng.uniform(-1, 1, size=3), 2.0)
        a = y.a
        cd = complex_distance(x, y)
        scale = np.maximum(cd.r ** 2, a ** 2)
        assert np.all(cd.p >= 0.0)
        assert np.all(np.abs(cd.q) <= a + 1e-14)
        assert np.abs(cd.p ** 2 - cd.q ** 2 - (cd.r ** 2 - a ** 2)).max() \
            < 1e-11 * scale.max()
        assert np.abs(cd.p * cd.q - a * cd.xi).max() < 1e-11 * scale.max()
        lhs = a ** 2 * cd.rho ** 2
        rhs = (cd.p ** 2 + a ** 2) * (a ** 2 - cd.q ** 2)
        assert np.abs(lhs - rhs).max() < 1e-11 * np.maximum(lhs, 1.0).max()

    def test_branch_parity(self):
        # negating the Re < 0 branch reproduces the principal result
        rng = np.random.default_rng(3)
        x = random_points(rng, 100)
        y = SourcePoint([0.3, -0.2, 0.9])
        cd = complex_distance(x, y)
        w = cd.r ** 2 - y.a ** 2 - 2j * y.a * cd.xi
        other = -np.sqrt(w)  # the Re <= 0 branch
        assert np.abs(-other - cd.rt).max() < 1e-12

    def test_continuity_off_disk(self):
        # for rho > a the cut is absent: xi -> +-0 limits agree
        for rho in (1.2, 2.0, 5.0):
            up = complex_distance([rho, 0.0, 1e-12], Y1)
            dn = complex_distance([rho, 0.0, -1e-12], Y1)
            assert abs(up.rt - dn.rt) < 1e-10

    def test_disk_jump(self):
        # for rho < a: q(xi=+0) = -q(xi=-0) = +sqrt(a^2 - rho^2)
        for rho in (0.0, 0.3, 0.8):
            up = complex_distance([rho, 0.0, 1e-14], Y1)
            dn = complex_distance([rho, 0.0, -1e-14], Y1)
            qd = np.sqrt(1.0 - rho ** 2)
            assert abs(up.q - qd) < 1e-10
            assert abs(dn.q + qd) < 1e-10

    def test_degenerate_a_zero(self):
        y0 = SourcePoint([0.0, 0.0, 0.0], 1.0)
        rng = np.random.default_rng(11)
        x = random_points(rng, 50)
        cd = complex_distance(x, y0)
        assert np.all(cd.q == 0.0)
        assert np.abs(cd.p - cd.r).max() < 1e-14


class TestFromOs:
    def test_axis_inverse(self):
        x = from_os(2.0, 1.0, 0.0, Y1)
        assert np.allclose(x, [0.0, 0.0, 2.0], atol=1e-14)

    def test_branch_circle_point(self):
        x = from_os(0.0, 0.0, 0.0, Y1)
        assert np.allclose(x, [1.0, 0.0, 0.0], atol=1e-14)

    def test_round_trip_random(self):
        rng = np.random.default_rng(5)
        y = SourcePoint([0.4, 0.1, -0.8], -1.9)
        a = y.a
        n = 1000
        p = rng.uniform(0.05, 4.0, n)
        q = rng.uniform(-a * 0.999, a * 0.999, n)
        phi = rng.uniform(-np.pi, np.pi, n)
        x = from_os(p, q, phi, y)
        cd = complex_distance(x, y)
        assert np.abs(cd.p - p).max() < 1e-12 * np.maximum(p, 1.0).max()
        assert np.abs(cd.q - q).max() < 1e-12
        # phi defined mod 2 pi
        dphi = np.angle(np.exp(1j * (cd.phi - phi)))
        assert np.abs(dphi).max() < 1e-10

    def test_rejects_bad_q(self):
        with pytest.raises(ValueError):
            from_os(1.0, 1.5, 0.0, Y1)


class TestOsFrame:
    def test_on_axis_grad_p_unit(self):
        fr = os_frame([0.0, 0.0, 2.0], Y1)
        # on the axis q = a forces (grad q)^2 = 0, so (grad p)^2 = 1
        assert np.dot(fr.grad_p, fr.grad_p) == pytest.approx(1.0, abs=1e-14)
        assert np.dot(fr.grad_q, fr.grad_q) == pytest.approx(0.0, abs=1e-14)

    def test_gradients_match_finite_differences(self):
        rng = np.random.default_rng(19)
        y = SourcePoint([0.2, -0.5, 0.7], 1.3)
        h = 1e-6
        eye = np.eye(3)
        for _ in range(20):
            x = rng.uniform(-2, 2, 3)
            cd0 = complex_distance(x, y)
            if min(abs(cd0.rt), cd0.rho) < 0.3:
                continue
            fr = os_frame(x, y)
            for j in range(3):
                pp = complex_distance(x + h * eye[j], y)
                pm = complex_distance(x - h * eye[j], y)
                assert abs(fr.grad_p[j] - (pp.p - pm.p) / (2 * h)) < 1e-7
                assert abs(fr.grad_q[j] - (pp.q - pm.q) / (2 * h)) < 1e-7

    def test_laplacians_match_finite_differences(self):
        y = SourcePoint([0.0, 0.3, 1.1], 2.0)
        h = 1e-3
        eye = np.eye(3)
        for x in ([1.1, 0.4, 0.9], [-0.7, 1.9, 0.2], [0.5, -1.0, -1.4]):
            x = np.array(x)
            fr = os_frame(x, y)
            lap_p = lap_q = 0.0
            c0 = complex_distance(x, y)
            for j in range(3):
                cp = complex_distance(x + h * eye[j], y)
                cm = complex_distance(x - h * eye[j], y)
                lap_p += (cp.p - 2 * c0.p + cm.p) / h ** 2
                lap_q += (cp.q - 2 * c0.q + cm.q) / h ** 2
            assert abs(fr.lap_p - lap_p) < 1e-5
            assert abs(fr.lap_q - lap_q) < 1e-5

    def test_frame_invariants_random(self):
        rng = np.random.default_rng(23)
        y = SourcePoint([0.9, 0.1, 0.1], 1.2)
        a = y.a
        x = random_points(rng, 500)
        fr = os_frame(x, y)
        cd = complex_distance(x, y)
        mod2 = cd.p ** 2 + cd.q ** 2
        gp2 = np.sum(fr.grad_p ** 2, axis=-1)
        gq2 = np.sum(fr.grad_q ** 2, axis=-1)
        assert np.abs(gp2 - gq2 - 1.0).max() < 1e-10
        assert np.abs(np.sum(fr.grad_p * fr.grad_q, axis=-1)).max() < 1e-10
        assert np.abs(gp2 - (a ** 2 + cd.p ** 2) / mod2).max() < 1e-10
        assert np.abs(gq2 - (a ** 2 - cd.q ** 2) / mod2).max() < 1e-10


class TestFarZone:
    def test_far_point_approximation(self):
        # remainder of p is a^2 sin^2(theta) / (2r) + O(r^-3): use the
        # principled bound rather than a fixed constant
        a, r, theta = 1.0, 100.0, np.pi / 4
        y = SourcePoint([0, 0, a], 1.5)
        x = np.array([r * np.sin(theta), 0.0, r * np.cos(theta)])
        p_approx, q_approx = far_zone(x, y)
        cd = complex_distance(x, y)
        bound = 1.01 * a ** 2 / (2 * r) + 1e-12
        assert abs(cd.p - p_approx) < bound
        assert abs(cd.q - q_approx) < bound

    def test_remainder_scaling(self):
        # doubling r must cut the p-remainder roughly in half (O(a^2/r))
        a, theta = 1.0, np.pi / 3
        y = SourcePoint([0, 0, a], 1.5)
        errs = []
        for r in (50.0, 100.0, 200.0):
            x = np.array([r * np.sin(theta), 0.0, r * np.cos(theta)])
            p_approx, _ = far_zone(x, y)
            errs.append(abs(complex_distance(x, y).p - p_approx))
        assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.05)
        assert errs[1] / errs[2] == pytest.approx(2.0, rel=0.05)

    def test_point_source_exact(self):
        y0 = SourcePoint([0.0, 0.0, 0.0])
        x = np.array([1.0, 2.0, 2.0])
        p_approx, q_approx = far_zone(x, y0)
        cd = complex_distance(x, y0)
        assert cd.p == p_approx
        assert q_approx == 0.0

    def test_on_axis_q_exact(self):
        # on the axis q = a exactly at any r > 0
        for r in (0.5, 2.0, 7.0):
            cd = complex_distance([0.0, 0.0, r], Y1)
            assert cd.q == pytest.approx(1.0, abs=1e-13)
