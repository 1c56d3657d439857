"""HRTF sets, direction-reference handling and SH encoding of HRTFs."""

from dataclasses import dataclass
from math import pi

import numpy as np

from .conventions import FourierSign, Reference, convention
from .scene import express_direction
from .sh import (Flavor, Kind, ShCoefficients, convert_flavor, num_coeffs, sh_analysis,
                 sh_synthesis)

ALIGNMENT_TOL = 1e-9


def _angle_diff(a, b):
    d = np.mod(np.asarray(a) - np.asarray(b) + pi, 2 * pi) - pi
    return np.abs(d)


@dataclass(frozen=True, eq=False)
class HrtfSet:
    """Far-field HRTFs sampled on a set of directions.

    `left` and `right` have shape (D, F): one row per direction. Spectra use
    the e^{-iwt} forward transform. `reference` states whether the
    directions are sound incidence or propagation directions.
    """

    colatitude: np.ndarray
    azimuth: np.ndarray
    reference: Reference
    left: np.ndarray
    right: np.ndarray
    frequencies: np.ndarray

    def __post_init__(self):
        colat = np.atleast_1d(np.asarray(self.colatitude, dtype=float))
        azi = np.atleast_1d(np.asarray(self.azimuth, dtype=float))
        freqs = np.atleast_1d(np.asarray(self.frequencies, dtype=float))
        left = np.asarray(self.left, dtype=complex)
        right = np.asarray(self.right, dtype=complex)
        shape = (colat.size, freqs.size)
        if azi.shape != colat.shape:
            raise ValueError("colatitude and azimuth must have equal length")
        if left.shape != shape or right.shape != shape:
            raise ValueError(f"ear responses must be directions x frequencies {shape}")
        for name, value in (("colatitude", colat), ("azimuth", azi), ("frequencies", freqs),
                            ("left", left), ("right", right)):
            object.__setattr__(self, name, value)
        object.__setattr__(self, "reference", Reference(self.reference))

    def __len__(self):
        return self.colatitude.size

    def _lookup(self, colatitude, azimuth):
        # azimuth differences are scaled by sin(colatitude): meaningless at the poles
        dist = (np.abs(self.colatitude - colatitude)
                + _angle_diff(self.azimuth, azimuth) * np.abs(np.sin(self.colatitude)))
        idx = int(np.argmin(dist))
        if dist[idx] > ALIGNMENT_TOL:
            raise KeyError(f"no HRTF measured at ({colatitude:.6g}, {azimuth:.6g})")
        return idx

    def response(self, colatitude, azimuth, reference):
        """Left and right responses (F,) for a direction in `reference`."""
        colatitude, azimuth = express_direction((colatitude, azimuth), reference,
                                                self.reference)
        idx = self._lookup(float(colatitude), float(azimuth))
        return self.left[idx], self.right[idx]


@dataclass(frozen=True, eq=False)
class SyntheticHrtfSet(HrtfSet):
    """HRTF set generated from known band-limited SH coefficients.

    `left_coeffs` and `right_coeffs` are ring coefficients with respect to
    the set's `reference`, so responses exist for every direction.
    """

    left_coeffs: ShCoefficients = None
    right_coeffs: ShCoefficients = None

    def response(self, colatitude, azimuth, reference):
        colatitude, azimuth = express_direction((colatitude, azimuth), reference,
                                                self.reference)
        return (sh_synthesis(self.left_coeffs, colatitude, azimuth)[:, 0],
                sh_synthesis(self.right_coeffs, colatitude, azimuth)[:, 0])


@dataclass(frozen=True, eq=False)
class HrtfShCoefficients:
    """Per-ear ring coefficients and the tags required for rendering."""

    left: ShCoefficients
    right: ShCoefficients
    reference_used: Reference
    fourier_sign: FourierSign = FourierSign.EQ_ONE_TWO

    @property
    def flavor(self):
        return self.left.flavor

    @property
    def order(self):
        return self.left.order

    @property
    def frequencies(self):
        return self.left.frequencies

    def scaled(self, per_acn):
        """Both ears multiplied by per-channel factors; tags are kept."""
        return HrtfShCoefficients(self.left.with_data(self.left.data * per_acn),
                                  self.right.with_data(self.right.data * per_acn),
                                  self.reference_used, self.fourier_sign)


def check_alignment(hrtf_set, grid):
    if len(hrtf_set) != len(grid):
        raise ValueError(f"HRTF set has {len(hrtf_set)} directions, grid has {len(grid)} nodes")
    dc = np.abs(hrtf_set.colatitude - grid.colatitude)
    da = _angle_diff(hrtf_set.azimuth, grid.azimuth) * np.abs(np.sin(grid.colatitude))
    if max(dc.max(), da.max()) > ALIGNMENT_TOL:
        raise ValueError("HRTF directions are not aligned with the quadrature grid nodes")


def encode_hrtf(hrtf_set, grid, target_reference, flavor, order,
                fourier_sign=FourierSign.EQ_ONE_TWO):
    """SH coefficients of both ears' HRTFs over the sphere.

    The HRTF directions are first re-expressed in `target_reference`; the
    grid (given in the set's own reference) is then mapped accordingly,
    which keeps it an exact quadrature. With the swapped Fourier sign the
    spectra are conjugated, as for any real impulse response.

    Raises
    ------
    ValueError
        If the set's directions differ from the grid nodes, or `order`
        exceeds the grid exactness.
    """
    check_alignment(hrtf_set, grid)
    target_reference = Reference(target_reference)
    fourier_sign = FourierSign(fourier_sign)
    if target_reference is not hrtf_set.reference:
        grid = grid.antipodal()
    ears = []
    for samples in (hrtf_set.left, hrtf_set.right):
        if fourier_sign is FourierSign.SWAPPED:
            samples = samples.conj()
        ears.append(sh_analysis(samples.T, grid, flavor, order, hrtf_set.frequencies))
    return HrtfShCoefficients(ears[0], ears[1], target_reference, fourier_sign)


def encode_hrtf_for(hrtf_set, grid, conv, order):
    """Encode HRTFs with the flavor, reference and Fourier sign of a convention."""
    conv = convention(conv)
    return encode_hrtf(hrtf_set, grid, conv.reference, conv.flavor, order, conv.fourier_sign)


def _random_real_basis_coeffs(rng, order, frequencies):
    # Coefficients in the real basis: H(-f) = conj(H(f)) makes the responses
    # real in time, and DC coefficients are real.
    K = num_coeffs(order)
    data = np.empty((frequencies.size, K), dtype=complex)
    cache = {}
    for i, f in enumerate(frequencies):
        key = abs(f)
        if key not in cache:
            values = (rng.standard_normal(K) + 1j * rng.standard_normal(K)) / np.sqrt(2)
            if key == 0:
                values = values.real.astype(complex)
            cache[key] = values
        data[i] = cache[key] if f >= 0 else cache[key].conj()
    return data


def synth_hrtf(order, seed, frequencies, grid, flavor=Flavor.COMPLEX_GD,
               reference=Reference.INCIDENCE):
    """Deterministic pseudo-random HRTF set band-limited to `order`.

    Returns
    -------
    SyntheticHrtfSet
        Sampled on the grid nodes (in `reference`), carrying its generating
        coefficients in `flavor`.
    """
    if order > grid.exact_order:
        raise ValueError(f"order {order} exceeds grid exactness {grid.exact_order}")
    frequencies = np.atleast_1d(np.asarray(frequencies, dtype=float))
    coeffs = []
    for ear in range(2):
        rng = np.random.default_rng([int(seed), ear])
        data = _random_real_basis_coeffs(rng, order, frequencies)
        real = ShCoefficients(data, frequencies, Flavor.REAL_N3D, Kind.RING)
        coeffs.append(convert_flavor(real, flavor))
    left = sh_synthesis(coeffs[0], grid.colatitude, grid.azimuth).T
    right = sh_synthesis(coeffs[1], grid.colatitude, grid.azimuth).T
    return SyntheticHrtfSet(grid.colatitude, grid.azimuth, reference, left, right,
                            frequencies, left_coeffs=coeffs[0], right_coeffs=coeffs[1])
