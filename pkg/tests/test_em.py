"""Electromagnetic dipole beams, the wavelet dyadic, and their symmetries."""

import numpy as np
import pytest

from causalbeams.beams import ComplexSpacetimePoint
from causalbeams.em import (SourceTubeError, dipole_field,
                            dipole_moment, dipole_potential, em_wavelet_ft,
                            helicity_projector, reproducing_kernel,
                            spin_matrix, wavelet_dyadic)
from causalbeams.geometry import SourcePoint
from causalbeams.signals import Impulse
from causalbeams.spectral import WaveVector, pulsed_beam_ft

Y = SourcePoint([0.0, 0.0, 1.0], 1.5)


def random_exterior_point(rng, y=Y):
    while True:
        x = rng.uniform(-3, 3, 3)
        t = rng.uniform(-2, 2)
        z = ComplexSpacetimePoint(x, t, y)
        try:
            cd = z.cd
        except ValueError:
            continue
        if abs(cd.rt) > 0.35:
            return z


def on_shell_k(rng):
    k3 = rng.uniform(-2, 2, 3)
    return k3, float(np.linalg.norm(k3)) * rng.choice([1.0, -1.0])


class TestSpinAlgebra:
    def test_circular_fixed_vector(self):
        s = spin_matrix([0.0, 0.0, 1.0], 1.0)
        p = helicity_projector([0.0, 0.0, 1.0], 1.0)
        v = np.array([1.0, 1j, 0.0]) / np.sqrt(2)
        assert np.allclose(s @ v, v, atol=1e-15)
        assert np.allclose(p @ v, v, atol=1e-15)

    def test_s_cubed_and_projector_identities(self):
        rng = np.random.default_rng(61)
        for _ in range(100):
            k3, omega = on_shell_k(rng)
            s = spin_matrix(k3, omega)
            p = helicity_projector(k3, omega)
            assert np.abs(s @ s @ s - s).max() <= 1e-14
            assert np.abs(p @ p - p).max() <= 1e-14
            assert np.abs(p - p.conj().T).max() <= 1e-14
            assert np.abs(s @ p - p).max() <= 1e-14

    def test_projector_rank_one(self):
        rng = np.random.default_rng(62)
        for _ in range(100):
            k3, omega = on_shell_k(rng)
            p = helicity_projector(k3, omega)
            assert abs(np.trace(p) - 1.0) <= 1e-13
            ev = np.sort(np.linalg.eigvalsh(p))
            assert np.allclose(ev, [0.0, 0.0, 1.0], atol=1e-13)


class TestDipoleField:
    def test_potential_is_scalar_times_moment(self):
        from causalbeams.beams import extended_propagator
        rng = np.random.default_rng(63)
        z = random_exterior_point(rng)
        p = dipole_moment([1.0, 0.0, 0.5], [0.0, 2.0, 0.0])
        zp = dipole_potential(z, p)
        assert np.allclose(zp, extended_propagator(z, "retarded") * p,
                           rtol=1e-15)

    def test_wave_equation_consistency(self):
        # closed-form lap(phi) equals closed-form d_t^2(phi): both reduce
        # to 2 w / (rt s^3); check via independent recomputation
        rng = np.random.default_rng(64)
        for _ in range(20):
            z = random_exterior_point(rng)
            rt, tau = z.cd.rt, z.tau
            w = 1.0 / (8j * np.pi ** 2)
            for s, sig in ((tau - rt, -1.0), (tau + rt, +1.0)):
                phi_rr = w * (2.0 / (rt ** 3 * s)
                              + 2.0 * sig / (rt ** 2 * s ** 2)
                              + 2.0 / (rt * s ** 3))
                phi_r = w * (-1.0 / (rt ** 2 * s) - sig / (rt * s ** 2))
                lap = phi_rr + 2.0 * phi_r / rt
                dtt = 2.0 * w / (rt * s ** 3)
                assert abs(lap - dtt) <= 1e-10 * abs(dtt)

    def test_maxwell_residual_finite_differences(self):
        # i dF/dt = curl F, with Richardson order >= 1.9
        rng = np.random.default_rng(65)
        p = dipole_moment([0.3, -1.0, 0.2], [0.5, 0.1, -0.4])
        eye = np.eye(3)
        for _ in range(10):
            z = random_exterior_point(rng)

            def field(x, t):
                return dipole_field(ComplexSpacetimePoint(x, t, Y), p)

            errs = []
            for h in (2e-4, 1e-4):
                dft = (field(z.x, z.t + h) - field(z.x, z.t - h)) / (2 * h)
                jac = np.stack(
                    [(field(z.x + h * eye[j], z.t)
                      - field(z.x - h * eye[j], z.t)) / (2 * h)
                     for j in range(3)])
                curl = np.array([jac[1][2] - jac[2][1],
                                 jac[2][0] - jac[0][2],
                                 jac[0][1] - jac[1][0]])
                f0 = field(z.x, z.t)
                errs.append(np.linalg.norm(1j * dft - curl)
                            / np.linalg.norm(f0))
            assert errs[1] <= 1e-5
            order = np.log2(errs[0] / errs[1])
            assert order >= 1.9 or errs[1] < 1e-9

    def test_divergence_free(self):
        rng = np.random.default_rng(66)
        p = dipole_moment([1.0, 0.0, 0.0], [0.0, 0.0, 1.0])
        eye = np.eye(3)
        h = 1e-4
        for _ in range(10):
            z = random_exterior_point(rng)
            div = sum(
                (dipole_field(ComplexSpacetimePoint(z.x + h * eye[j], z.t, Y),
                              p)[j]
                 - dipole_field(ComplexSpacetimePoint(z.x - h * eye[j], z.t,
                                                      Y), p)[j]) / (2 * h)
                for j in range(3))
            f0 = dipole_field(z, p)
            assert abs(div) <= 1e-4 * np.linalg.norm(f0)

    def test_realness_decomposition(self):
        rng = np.random.default_rng(67)
        z = random_exterior_point(rng)
        f = dipole_field(z, dipole_moment([1, 2, 3], [4, 5, 6]))
        d, b = np.real(f), np.imag(f)
        assert np.all(np.imag(d) == 0.0)
        assert np.all(np.imag(b) == 0.0)

    def test_source_tube_rejected(self):
        z = ComplexSpacetimePoint([0.3, 0.0, 0.0], 0.5, Y)  # on the disk
        with pytest.raises(SourceTubeError):
            dipole_field(z, [1.0, 0.0, 0.0])

    def test_linearity_in_moment(self):
        rng = np.random.default_rng(68)
        z = random_exterior_point(rng)
        p1 = np.array([1.0, -0.5j, 0.2])
        p2 = np.array([0.1j, 2.0, -1.0])
        f = dipole_field(z, 2.0 * p1 - 1j * p2)
        f12 = 2.0 * dipole_field(z, p1) - 1j * dipole_field(z, p2)
        assert np.abs(f - f12).max() <= 1e-13 * np.abs(f).max()


class TestWaveletDyadic:
    def test_split_identity(self):
        rng = np.random.default_rng(69)
        for _ in range(20):
            z = random_exterior_point(rng)
            d = wavelet_dyadic(z)
            assert np.abs(d.w - (d.w_plus - d.w_minus)).max() \
                <= 1e-12 * np.abs(d.w).max()

    def test_conjugation_symmetry(self):
        # w(z)* = w(z*) with * the star-notation adjoint (conj transpose);
        # the plain elementwise reading fails, the adjoint one holds
        rng = np.random.default_rng(70)
        for _ in range(20):
            z = random_exterior_point(rng)
            z_conj = ComplexSpacetimePoint(
                z.x, z.t, SourcePoint(-z.y.y_spatial, -z.y.u))
            w1 = wavelet_dyadic(z).w
            w2 = wavelet_dyadic(z_conj).w
            assert np.abs(w1.conj().T - w2).max() <= 1e-12 * np.abs(w1).max()

    def test_scaling_by_resolution(self):
        rng = np.random.default_rng(71)
        for _ in range(10):
            z = random_exterior_point(rng)
            lam = z.y.lam
            d1 = wavelet_dyadic(z).w
            d2 = wavelet_dyadic(z.scaled(lam)).w / lam ** 4
            assert np.abs(d1 - d2).max() <= 1e-12 * np.abs(d1).max()

    def test_columns_satisfy_maxwell(self):
        rng = np.random.default_rng(72)
        eye = np.eye(3)
        h = 1e-4
        for _ in range(5):
            z = random_exterior_point(rng)
            for which in ("w_plus", "w_minus"):
                for col in range(3):
                    def field(x, t):
                        d = wavelet_dyadic(ComplexSpacetimePoint(x, t, Y))
                        return getattr(d, which)[:, col]

                    dft = (field(z.x, z.t + h) - field(z.x, z.t - h)) / (2 * h)
                    jac = np.stack(
                        [(field(z.x + h * eye[j], z.t)
                          - field(z.x - h * eye[j], z.t)) / (2 * h)
                         for j in range(3)])
                    curl = np.array([jac[1][2] - jac[2][1],
                                     jac[2][0] - jac[0][2],
                                     jac[0][1] - jac[1][0]])
                    div = jac[0][0] + jac[1][1] + jac[2][2]
                    scale = np.linalg.norm(field(z.x, z.t))
                    assert np.linalg.norm(1j * dft - curl) <= 1e-4 * scale
                    assert abs(div) <= 1e-4 * scale


class TestReproducingKernel:
    def test_opposite_tubes_orthogonal(self):
        z1 = ComplexSpacetimePoint([0.5, 0.0, 1.0], 0.3, Y)
        z2 = ComplexSpacetimePoint([0.0, 0.2, -0.5], -0.1,
                                   SourcePoint([0.1, 0.0, -0.2], -1.4))
        assert np.all(reproducing_kernel(z1, z2) == 0.0)

    def test_gram_positive_semidefinite(self):
        rng = np.random.default_rng(73)
        zs = []
        while len(zs) < 5:
            yv = rng.uniform(-0.4, 0.4, 3)
            u = rng.uniform(1.1, 1.8)
            zs.append(ComplexSpacetimePoint(rng.uniform(-1, 1, 3),
                                            rng.uniform(-1, 1),
                                            SourcePoint(yv, u)))
        gram = np.zeros((15, 15), dtype=np.complex128)
        for i, zi in enumerate(zs):
            for j, zj in enumerate(zs):
                gram[3 * i:3 * i + 3, 3 * j:3 * j + 3] = \
                    reproducing_kernel(zi, zj)
        assert np.abs(gram - gram.conj().T).max() <= 1e-12 * np.abs(gram).max()
        ev = np.linalg.eigvalsh(gram)
        assert ev.min() >= -1e-10 * max(ev.max(), 1.0)

    def test_translation_covariance(self):
        z1 = ComplexSpacetimePoint([0.4, -0.2, 0.9], 0.5, Y)
        z2 = ComplexSpacetimePoint([-0.3, 0.1, 0.2], -0.4,
                                   SourcePoint([0.2, 0.0, 0.1], 1.2))
        k0 = reproducing_kernel(z1, z2)
        shift_x, shift_t = np.array([0.7, -1.1, 0.3]), 0.9
        z1s = ComplexSpacetimePoint(z1.x + shift_x, z1.t + shift_t, z1.y)
        z2s = ComplexSpacetimePoint(z2.x + shift_x, z2.t + shift_t, z2.y)
        assert np.abs(reproducing_kernel(z1s, z2s) - k0).max() \
            <= 1e-13 * np.abs(k0).max()


class TestEmWaveletFt:
    def test_prefactor_is_impulse_beam_transform(self):
        rng = np.random.default_rng(74)
        for _ in range(20):
            k3 = rng.uniform(-2, 2, 3)
            omega = rng.uniform(0.3, 3.0)
            k = WaveVector(k3, omega, Y)
            if abs(k.k_sq) < 0.2:
                continue
            # recover the scalar prefactor from a moment orthogonal to k
            p = np.cross(k3, [1.0, 0.0, 0.0])
            if np.linalg.norm(p) < 0.3:
                p = np.cross(k3, [0.0, 1.0, 0.0])
            p = p / np.linalg.norm(p)
            got = em_wavelet_ft(k3, omega, Y, p)
            bracket = 1j * np.cross(k3, np.cross(k3, p)) \
                + omega * np.cross(k3, p)
            pref = pulsed_beam_ft(k, Impulse())
            assert np.abs(got - pref * bracket).max() <= 1e-12 * max(
                np.abs(got).max(), 1e-12)

    def test_parallel_moment_vanishes(self):
        k3 = np.array([1.0, 2.0, -0.5])
        got = em_wavelet_ft(k3, 1.3, Y, 0.7 * k3)
        assert np.abs(got).max() <= 1e-15

    def test_on_shell_bracket_is_helicity_projection(self):
        # bracket / (2 omega^2) = -i P(k) p on the light cone
        rng = np.random.default_rng(75)
        for _ in range(20):
            k3, omega = on_shell_k(rng)
            p = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
            bracket = 1j * np.cross(k3, np.cross(k3, p)) \
                + omega * np.cross(k3, p)
            proj = helicity_projector(k3, omega) @ p
            assert np.abs(bracket / (2 * omega ** 2) + 1j * proj).max() \
                <= 1e-13 * max(np.abs(proj).max(), 1e-12)
