"""Plane-wave scenes: the ground truth shared by the pipeline and the oracle.

Amplitudes are spectra under the e^{-iwt} forward transform. A wave labeled
with an incidence direction comes *from* that direction; a wave labeled
with a propagation direction travels *towards* it.
"""

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .conventions import Reference
from .sh import Direction


def incidence_to_propagation(direction):
    """Map a direction to its antipode: (pi - colatitude, azimuth + pi).

    The map is its own inverse, so it also converts propagation to
    incidence directions. Works elementwise on arrays.
    """
    colatitude, azimuth = direction
    return Direction(pi - np.asarray(colatitude, dtype=float),
                     np.mod(np.asarray(azimuth, dtype=float) + pi, 2 * pi))


propagation_to_incidence = incidence_to_propagation


def express_direction(direction, source, target):
    """Re-express a direction given in `source` reference in `target` reference."""
    if Reference(source) is Reference(target):
        return Direction(*direction)
    return incidence_to_propagation(direction)


@dataclass(frozen=True)
class PlaneWave:
    colatitude: float
    azimuth: float
    reference: Reference
    amplitude: np.ndarray

    def __post_init__(self):
        if not 0 <= self.colatitude <= pi:
            raise ValueError(f"colatitude {self.colatitude} outside [0, pi]")
        object.__setattr__(self, "reference", Reference(self.reference))
        object.__setattr__(self, "amplitude",
                           np.atleast_1d(np.asarray(self.amplitude, dtype=complex)))

    def direction(self, reference):
        """Direction of this wave expressed in the given reference."""
        return express_direction(Direction(self.colatitude, self.azimuth),
                                 self.reference, reference)


@dataclass(frozen=True)
class PlaneWaveScene:
    waves: tuple
    frequencies: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        waves = tuple(self.waves)
        if not waves:
            raise ValueError("scene has no waves")
        frequencies = np.asarray(self.frequencies, dtype=float)
        if frequencies.ndim != 1 or frequencies.size == 0:
            raise ValueError("scene needs a non-empty frequency grid")
        for i, wave in enumerate(waves):
            if wave.amplitude.shape != frequencies.shape:
                raise ValueError(f"wave {i}: {wave.amplitude.size} amplitudes for "
                                 f"{frequencies.size} frequencies")
        object.__setattr__(self, "waves", waves)
        object.__setattr__(self, "frequencies", frequencies)

    def scaled(self, factor):
        return PlaneWaveScene(tuple(PlaneWave(w.colatitude, w.azimuth, w.reference,
                                              w.amplitude * factor) for w in self.waves),
                              self.frequencies)

    def rotated_azimuth(self, angle):
        """The scene rotated about the z axis by `angle`."""
        return PlaneWaveScene(tuple(PlaneWave(w.colatitude, np.mod(w.azimuth + angle, 2 * pi),
                                              w.reference, w.amplitude)
                                    for w in self.waves),
                              self.frequencies)

    def __add__(self, other):
        if not np.array_equal(self.frequencies, other.frequencies):
            raise ValueError("scenes have different frequency grids")
        return PlaneWaveScene(self.waves + other.waves, self.frequencies)
