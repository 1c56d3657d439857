"""Brute-force references that avoid the SH rendering machinery.

Nothing here depends on a convention system: the reference ear signal is
the superposition of HRTF responses to the scene's plane waves.
"""

import numpy as np

from .conventions import Reference
from .render import BinauralOutput


def direct_binaural(scene, hrtf_set):
    """Ear spectra as ``sum_waves amplitude * H(incidence direction)``.

    Raises
    ------
    KeyError
        If a wave's direction is not among the measured HRTF directions
        (synthetic sets answer every direction).
    ValueError
        If the frequency grids differ.
    """
    if scene.frequencies.shape != hrtf_set.frequencies.shape or not np.allclose(
            scene.frequencies, hrtf_set.frequencies, rtol=1e-12, atol=0):
        raise ValueError("scene and HRTF frequency grids differ")
    left = np.zeros(scene.frequencies.size, dtype=complex)
    right = np.zeros_like(left)
    for wave in scene.waves:
        colat, azi = wave.direction(Reference.INCIDENCE)
        h_left, h_right = hrtf_set.response(colat, azi, Reference.INCIDENCE)
        left += wave.amplitude * h_left
        right += wave.amplitude * h_right
    return BinauralOutput(left, right, scene.frequencies.copy())


def integrate_sphere(func, grid):
    """Quadrature of ``func(colatitude, azimuth)`` over the unit sphere.

    `func` is called once with the node arrays and must return values of
    shape (Q,) or (..., Q).
    """
    values = np.asarray(func(grid.colatitude, grid.azimuth))
    return np.sum(values * grid.weights, axis=-1)
