from math import pi

import numpy as np
import pytest

from shbinaural.conventions import ROWS, FourierSign, Reference, convert_convention
from shbinaural.hrtf import encode_hrtf, encode_hrtf_for, synth_hrtf
from shbinaural.oracle import direct_binaural, integrate_sphere
from shbinaural.render import (ConventionMismatch, herglotz_coefficients, render,
                               simulate_missing_sign_defect)
from shbinaural.scene import PlaneWave, PlaneWaveScene
from shbinaural.sh import Flavor, Kind, ShCoefficients, acn, acn_degrees, make_gauss_grid, sh_synthesis
from shbinaural.sphere import RadialFilterSpec, SphereSpec, capture_scene

ORDER = 4
SPHERE = SphereSpec(0.042)
FREQS = np.linspace(1.0, 4.0, 5) * SPHERE.speed_of_sound / (2 * pi * SPHERE.radius)
HRTF_GRID = make_gauss_grid(ORDER)
ARRAY_GRID = make_gauss_grid(12)
HRTFS = synth_hrtf(ORDER, 1, FREQS, HRTF_GRID)
rng = np.random.default_rng(21)


def random_breve(row, order=ORDER):
    K = (order + 1) ** 2
    data = rng.standard_normal((FREQS.size, K)) + 1j * rng.standard_normal((FREQS.size, K))
    conv = ROWS[row]
    return ShCoefficients(data, FREQS, conv.flavor, Kind.BREVE, conv)


def hrtf_for(row, order=ORDER):
    return encode_hrtf_for(HRTFS, HRTF_GRID, row, order)


def encode(scene, row, gain=200.0):
    return capture_scene(scene, ARRAY_GRID, RadialFilterSpec(SPHERE, ORDER, gain, ROWS[row]))


def scene_of(*waves):
    return PlaneWaveScene(tuple(PlaneWave(c, a, ref, np.full(FREQS.size, amp, complex))
                                for c, a, ref, amp in waves), FREQS)


SCENE = scene_of((0.8, 1.9, "incidence", 1.0), (2.4, 4.0, "propagation", 0.5 - 0.3j))


class TestHerglotz:
    def test_row2_identity(self):
        c = random_breve(2)
        out = herglotz_coefficients(c)
        np.testing.assert_array_equal(out.data, c.data)
        assert out.kind is Kind.RING

    def test_row1_scaling(self):
        data = np.zeros((1, 4), dtype=complex)
        data[0, acn(1, 0)] = 1.0
        c = ShCoefficients(data, [100.0], Flavor.COMPLEX_GD, Kind.BREVE, ROWS[1])
        out = herglotz_coefficients(c)
        assert out.data[0, acn(1, 0)] == pytest.approx(1j / (4 * pi))

    def test_zero_field(self):
        c = ShCoefficients(np.zeros((2, 9)), [1.0, 2.0], Flavor.COMPLEX_GD, Kind.BREVE, ROWS[1])
        assert np.all(herglotz_coefficients(c).data == 0)

    def test_ring_refused(self):
        c = ShCoefficients(np.zeros((1, 4)), [1.0], Flavor.COMPLEX_GD, Kind.RING, ROWS[1])
        with pytest.raises(ValueError):
            herglotz_coefficients(c)

    def test_row1_density_of_unit_wave(self):
        # the plane-wave density of a unit wave is a band-limited delta at its propagation direction
        scene = scene_of((1.0, 2.0, "propagation", 1.0))
        density = herglotz_coefficients(encode(scene, 1))
        peak = sh_synthesis(density, 1.0, 2.0)[:, 0]
        np.testing.assert_allclose(peak, (ORDER + 1) ** 2 / (4 * pi), rtol=1e-9)


class TestRender:
    def test_zero_field(self):
        c = ShCoefficients(np.zeros((FREQS.size, 25)), FREQS, Flavor.COMPLEX_GD, Kind.BREVE, ROWS[2])
        out = render(c, hrtf_for(2))
        assert np.all(out.left == 0) and np.all(out.right == 0)

    @pytest.mark.parametrize("row", ROWS)
    def test_plane_wave_identity(self, row):
        scene = scene_of((1.2, 0.3, "incidence", 1.0))
        out = render(encode(scene, row), hrtf_for(row)).canonical().stacked()
        expected = direct_binaural(scene, HRTFS).stacked()
        assert np.max(np.abs(out - expected)) < 1e-6 * np.max(np.abs(expected))

    def test_linearity(self):
        a, b = random_breve(3), random_breve(3)
        h = hrtf_for(3)
        combo = a.with_data(2.5 * a.data - 1j * b.data)
        lhs = render(combo, h).stacked()
        rhs = 2.5 * render(a, h).stacked() - 1j * render(b, h).stacked()
        np.testing.assert_allclose(lhs, rhs, atol=1e-13 * np.abs(rhs).max())

    def test_order_is_minimum(self):
        field = random_breve(2, order=6)
        full = render(field, hrtf_for(2)).stacked()
        np.testing.assert_allclose(full, render(field.truncate(ORDER), hrtf_for(2)).stacked())
        low = render(random_breve(2, order=2), hrtf_for(2))
        assert low.left.shape == FREQS.shape

    def test_row5_output_is_swapped_sign(self):
        out = render(encode(SCENE, 5), hrtf_for(5))
        assert out.fourier_sign is FourierSign.SWAPPED
        np.testing.assert_allclose(out.canonical().left, out.left.conj())

    @pytest.mark.parametrize("row", ROWS)
    def test_closed_form_equals_integration(self, row):
        # B = integral of plane-wave density times HRTF over directions in the row's reference
        field = encode(SCENE, row, 40.0)
        density = herglotz_coefficients(field)
        quad = make_gauss_grid(2 * ORDER)
        conv = ROWS[row]
        left = np.array([HRTFS.response(c, a, conv.reference)[0]
                         for c, a in zip(quad.colatitude, quad.azimuth)]).T
        if conv.fourier_sign is FourierSign.SWAPPED:
            left = left.conj()
        # 4 pi i^-n of row 1 is absorbed by the Herglotz scaling
        integral = integrate_sphere(
            lambda c, a: sh_synthesis(density, c, a) * left, quad)
        out = render(field, hrtf_for(row)).left
        assert np.max(np.abs(out - integral)) <= 1e-8 * np.max(np.abs(integral))


class TestMismatch:
    def test_flavor(self):
        field = random_breve(2)
        h = encode_hrtf(HRTFS, HRTF_GRID, Reference.PROPAGATION, Flavor.REAL_N3D, ORDER)
        with pytest.raises(ConventionMismatch, match="flavor") as err:
            render(field, h)
        assert err.value.axis == "flavor"

    def test_reference(self):
        field = random_breve(2)
        h = encode_hrtf(HRTFS, HRTF_GRID, Reference.INCIDENCE, Flavor.COMPLEX_GD, ORDER)
        with pytest.raises(ConventionMismatch, match="reference") as err:
            render(field, h)
        assert err.value.axis == "reference"

    def test_fourier_sign(self):
        with pytest.raises(ConventionMismatch, match="fourier_sign") as err:
            render(random_breve(4), hrtf_for(5))
        assert err.value.axis == "fourier_sign"

    def test_mislabeled_field_flavor(self):
        c = random_breve(3)
        bad = c.with_data(c.data, flavor=Flavor.COMPLEX_GD)
        with pytest.raises(ConventionMismatch, match="flavor"):
            render(bad, hrtf_for(3))

    def test_frequency_grid_differs(self):
        c = random_breve(2)
        with pytest.raises(ValueError, match="frequency"):
            render(c.with_data(c.data, frequencies=FREQS + 1), hrtf_for(2))

    def test_untagged_field(self):
        c = random_breve(2)
        with pytest.raises(ValueError, match="convention"):
            render(c.with_data(c.data, convention=None), hrtf_for(2))


class TestConvert:
    def test_row4_to_row5(self):
        field = encode(SCENE, 4, 40.0)
        out = convert_convention(field, ROWS[5])
        # conj(4 pi i^n) = 4 pi i^-n: the factor change rides on the conjugation
        np.testing.assert_allclose(out.data, field.data.conj(), atol=1e-15)
        np.testing.assert_allclose(render(out, hrtf_for(5)).canonical().stacked(),
                                   render(field, hrtf_for(4)).stacked(), atol=1e-12)

    def test_identity(self):
        field = random_breve(1)
        np.testing.assert_array_equal(convert_convention(field, ROWS[1]).data, field.data)

    def test_row2_to_row3_unit_coefficient(self):
        data = np.zeros((FREQS.size, 25), dtype=complex)
        data[:, acn(2, 1)] = 1.0
        field = ShCoefficients(data, FREQS, Flavor.COMPLEX_GD, Kind.BREVE, ROWS[2])
        out = convert_convention(field, ROWS[3])
        expected = np.zeros(25)
        expected[acn(2, 1)] = -1.0
        np.testing.assert_allclose(out.data, np.tile(expected, (FREQS.size, 1)), atol=1e-15)
        np.testing.assert_allclose(render(out, hrtf_for(3)).stacked(),
                                   render(field, hrtf_for(2)).stacked(), atol=1e-13)

    @pytest.mark.parametrize("src", ROWS)
    @pytest.mark.parametrize("dst", ROWS)
    def test_render_invariance(self, src, dst):
        field = encode(SCENE, src, 40.0)
        out = convert_convention(field, ROWS[dst])
        a = render(field, hrtf_for(src)).canonical().stacked()
        b = render(out, hrtf_for(dst)).canonical().stacked()
        assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a))


class TestDefects:
    def test_drop_minus_one_m_is_rotation(self):
        field = encode(SCENE, 3)
        h = hrtf_for(3)
        defective = simulate_missing_sign_defect(field, h, "drop_minus_one_m").stacked()
        rotated = render(encode(SCENE.rotated_azimuth(pi), 3), h).stacked()
        correct = render(field, h).stacked()
        assert np.max(np.abs(defective - rotated)) <= 1e-9 * np.max(np.abs(rotated))
        assert np.max(np.abs(defective - correct)) > 1e-3 * np.max(np.abs(correct))

    @pytest.mark.parametrize("row", [1, 2])
    def test_swap_i_powers(self, row):
        field = encode(SCENE, row)
        h = hrtf_for(row)
        n, _ = acn_degrees(ORDER)
        defective = simulate_missing_sign_defect(field, h, "swap_i_powers").stacked()
        np.testing.assert_allclose(defective, render(field, h.scaled((-1.0) ** n)).stacked(),
                                   atol=1e-12 * np.abs(defective).max())
        # applying the swap on top of swapped HRTFs undoes it
        twice = simulate_missing_sign_defect(field, h.scaled((-1.0) ** n), "swap_i_powers")
        np.testing.assert_allclose(twice.stacked(), render(field, h).stacked(), atol=1e-14)

    @pytest.mark.parametrize("row", [1, 2])
    def test_swap_i_powers_compensates_reference_confusion(self, row):
        field = encode(SCENE, row)
        wrong = encode_hrtf(HRTFS, HRTF_GRID, Reference.INCIDENCE, Flavor.COMPLEX_GD, ORDER)
        fixed = simulate_missing_sign_defect(field, wrong, "swap_i_powers").stacked()
        correct = render(field, hrtf_for(row)).stacked()
        assert np.max(np.abs(fixed - correct)) <= 1e-10 * np.max(np.abs(correct))

    def test_defect_row_checks(self):
        with pytest.raises(ValueError, match="row-3"):
            simulate_missing_sign_defect(random_breve(2), hrtf_for(2), "drop_minus_one_m")
        with pytest.raises(ValueError, match="row-1 and row-2"):
            simulate_missing_sign_defect(random_breve(4), hrtf_for(4), "swap_i_powers")
        with pytest.raises(ValueError):
            simulate_missing_sign_defect(random_breve(3), hrtf_for(3), "no_such_defect")
