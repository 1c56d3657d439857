from math import pi

import numpy as np
import pytest

from shbinaural.conventions import Reference
from shbinaural.hrtf import HrtfSet, synth_hrtf
from shbinaural.oracle import direct_binaural, integrate_sphere
from shbinaural.scene import PlaneWave, PlaneWaveScene
from shbinaural.sh import Flavor, make_gauss_grid, sh_eval

GRID = make_gauss_grid(6)
FREQS = np.array([300.0, 900.0])


def test_integrate_constant():
    assert integrate_sphere(lambda c, a: np.ones_like(c), GRID) == pytest.approx(4 * pi, abs=1e-12)


def test_integrate_norm():
    val = integrate_sphere(lambda c, a: sh_eval(Flavor.COMPLEX_GD, 3, 2, c, a)
                           * np.conj(sh_eval(Flavor.COMPLEX_GD, 3, 2, c, a)), GRID)
    assert abs(val - 1) < 1e-10


def test_integrate_orthogonal():
    val = integrate_sphere(lambda c, a: sh_eval(Flavor.COMPLEX_GD, 2, 1, c, a)
                           * sh_eval(Flavor.COMPLEX_GD, 3, -1, c, a), GRID)
    assert abs(val) < 1e-10


def test_integrate_batched():
    vals = integrate_sphere(lambda c, a: np.stack([np.ones_like(c), np.cos(c) ** 2]), GRID)
    np.testing.assert_allclose(vals, [4 * pi, 4 * pi / 3])


def sampled_set():
    left = np.arange(2 * len(GRID), dtype=complex).reshape(-1, 2)
    return HrtfSet(GRID.colatitude, GRID.azimuth, Reference.INCIDENCE, left, 1j * left, FREQS)


def test_single_wave_is_lookup():
    hrtfs = sampled_set()
    scene = PlaneWaveScene((PlaneWave(GRID.colatitude[7], GRID.azimuth[7], "incidence",
                                      np.ones(2)),), FREQS)
    out = direct_binaural(scene, hrtfs)
    np.testing.assert_array_equal(out.left, hrtfs.left[7])
    np.testing.assert_array_equal(out.right, hrtfs.right[7])


def test_two_waves_sum():
    hrtfs = synth_hrtf(6, 4, FREQS, GRID)
    a, b = (0.5, 1.0), (pi - 0.5, 1.0 + pi)
    scene = PlaneWaveScene((PlaneWave(*a, "incidence", np.ones(2)),
                            PlaneWave(*b, "incidence", np.ones(2))), FREQS)
    out = direct_binaural(scene, hrtfs)
    expected = (hrtfs.response(*a, Reference.INCIDENCE)[0]
                + hrtfs.response(*b, Reference.INCIDENCE)[0])
    np.testing.assert_allclose(out.left, expected)


def test_propagation_label_uses_incidence_direction():
    hrtfs = synth_hrtf(6, 4, FREQS, GRID)
    scene = PlaneWaveScene((PlaneWave(0.5, 1.0, "propagation", np.array([2.0, 1j])),), FREQS)
    expected = hrtfs.response(pi - 0.5, 1.0 + pi, Reference.INCIDENCE)[0] * np.array([2.0, 1j])
    np.testing.assert_allclose(direct_binaural(scene, hrtfs).left, expected)


def test_missing_direction():
    scene = PlaneWaveScene((PlaneWave(0.1234, 0.5, "incidence", np.ones(2)),), FREQS)
    with pytest.raises(KeyError):
        direct_binaural(scene, sampled_set())


def test_frequency_mismatch():
    scene = PlaneWaveScene((PlaneWave(0.1, 0.5, "incidence", np.ones(3)),), [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        direct_binaural(scene, sampled_set())
