"""Rigid-sphere capture: modal strengths, radial filters and array encoding."""

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .conventions import ROWS, FourierSign, Reference, convention, from_canonical
from .sh import (Flavor, Kind, ShCoefficients, acn_degrees, num_coeffs, sh_analysis,
                 sh_matrix, sh_synthesis)
from .special import (sph_bessel_j, sph_bessel_j_prime, sph_hankel1, sph_hankel1_prime,
                      sph_hankel2, sph_hankel2_prime)

SYNTHESIS_MARGIN = 8


@dataclass(frozen=True)
class SphereSpec:
    radius: float
    speed_of_sound: float = 343.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("sphere radius must be positive")
        if not self.speed_of_sound > 0:
            raise ValueError("speed of sound must be positive")

    def kr(self, omega):
        return np.asarray(omega, dtype=float) * self.radius / self.speed_of_sound


@dataclass(frozen=True)
class RadialFilterSpec:
    sphere: SphereSpec
    order: int
    max_gain_db: float = 40.0
    convention: object = field(default_factory=lambda: ROWS[1])

    def __post_init__(self):
        if not self.max_gain_db > 0:
            raise ValueError("maximum radial filter gain must be positive (dB)")
        object.__setattr__(self, "convention", convention(self.convention))

    @property
    def max_gain(self):
        return 10 ** (self.max_gain_db / 20)


def _omega(omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("radial quantities are undefined at or below 0 rad/s "
                         "(DC bins must be excluded)")
    return omega


def modal_strength(n, kr, fourier_sign=FourierSign.EQ_ONE_TWO):
    """Rigid-sphere modal strength ``j_n - j_n'/h_n' * h_n`` at kR.

    The outgoing Hankel function is h^(2) for the e^{-iwt} forward transform
    and h^(1) for the swapped sign.
    """
    if FourierSign(fourier_sign) is FourierSign.SWAPPED:
        h, dh = sph_hankel1(n, kr), sph_hankel1_prime(n, kr)
    else:
        h, dh = sph_hankel2(n, kr), sph_hankel2_prime(n, kr)
    return sph_bessel_j(n, kr) - sph_bessel_j_prime(n, kr) / dh * h


def modal_strength_wronskian(n, kr, fourier_sign=FourierSign.EQ_ONE_TWO):
    """Closed form of :func:`modal_strength`, ``-i / (kR^2 h_n^(2)'(kR))``."""
    kr = np.asarray(kr, dtype=float)
    if FourierSign(fourier_sign) is FourierSign.SWAPPED:
        return 1j / (kr ** 2 * sph_hankel1_prime(n, kr))
    return -1j / (kr ** 2 * sph_hankel2_prime(n, kr))


def b_n(sphere, n, omega, conv):
    """Modal strength including the convention's field factor."""
    conv = convention(conv)
    kr = sphere.kr(_omega(omega))
    return conv.factor(n) * modal_strength(n, kr, conv.fourier_sign)


def soft_limit(gain, max_gain):
    """Arctan soft limiter on the magnitude; phase is preserved."""
    gain = np.asarray(gain, dtype=complex)
    if np.isinf(max_gain):
        return gain
    mag = np.abs(gain)
    with np.errstate(over="ignore"):
        limited = (2 * max_gain / pi) * np.arctan(pi * mag / (2 * max_gain))
    # arctan rounds to pi/2 from above for huge gains; the cap sits a few ulps
    # under the bound so that the phase multiply below cannot round past it
    limited = np.minimum(limited, max_gain * (1 - 4 * np.finfo(float).eps))
    # real divisions: numpy's complex division overflows for subnormal gains
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(mag > 0, gain.real / mag + 1j * (gain.imag / mag), 0.0)
    return limited * unit


def radial_filter(spec, n, omega):
    """Regularized inverse of :func:`b_n`.

    The limiter acts on the inverse modal strength before the convention's
    field factor is divided out, so all conventions apply the same physical
    regularization. ``|filter| <= 10**(max_gain_db/20)`` always holds since
    every field factor has magnitude 1 or 4*pi.
    """
    conv = spec.convention
    kr = spec.sphere.kr(_omega(omega))
    inverse = 1 / modal_strength(n, kr, conv.fourier_sign)
    return soft_limit(inverse, spec.max_gain) / conv.factor(n)


def _per_acn(func, order, omega):
    n_of, _ = acn_degrees(order)
    per_degree = np.stack([func(n, omega) for n in range(order + 1)], axis=-1)
    return per_degree[:, n_of]


def plane_wave_coefficients(scene, order, conv):
    """Analytic breve coefficients of a plane-wave scene under `conv`.

    In canonical form a unit wave travelling towards k has coefficients
    ``4 pi i^{-n} conj(Y^GD_nm(k))``; the result is mapped to the target
    convention from there.
    """
    conv = convention(conv)
    n_of, _ = acn_degrees(order)
    radial = 4 * pi * np.array([1, -1j, -1, 1j])[np.mod(n_of, 4)]
    data = np.zeros((scene.frequencies.size, num_coeffs(order)), dtype=complex)
    for wave in scene.waves:
        colat, azi = wave.direction(Reference.PROPAGATION)
        Y = sh_matrix(Flavor.COMPLEX_GD, order, colat, azi)[0]
        data += np.outer(wave.amplitude, radial * Y.conj())
    canonical = ShCoefficients(data, scene.frequencies, Flavor.COMPLEX_GD, Kind.BREVE)
    return from_canonical(canonical, conv)


def simulate_surface_pressure(scene, sphere, grid, conv, truncation_tol=1e-9):
    """Pressure on a rigid sphere at the grid nodes, per frequency bin.

    The field is expanded to ``grid.exact_order + 8`` orders. Spectra follow
    the convention's Fourier sign.

    Returns
    -------
    (F, Q) complex numpy.ndarray

    Raises
    ------
    ValueError
        If a frequency is not positive, or if the first omitted order still
        contributes more than `truncation_tol` relative to the wave
        amplitudes, i.e. the grid is too coarse for the scene's kR.
    """
    conv = convention(conv)
    omega = _omega(2 * pi * scene.frequencies)
    order = grid.exact_order + SYNTHESIS_MARGIN
    kr = sphere.kr(omega)
    tail = (2 * order + 3) * np.abs(modal_strength(order + 1, kr.max()))
    if tail > truncation_tol:
        raise ValueError(f"grid exactness {grid.exact_order} too low for kR={kr.max():.3g}: "
                         f"truncation residual {tail:.2e} exceeds {truncation_tol:.0e}")
    breve = plane_wave_coefficients(scene, order, conv)
    surf = breve.data * _per_acn(lambda n, w: b_n(sphere, n, w, conv), order, omega)
    ring = breve.with_data(surf, kind=Kind.RING)
    return sh_synthesis(ring, grid.colatitude, grid.azimuth)


def sma_encode(samples, grid, spec, frequencies):
    """Breve coefficients from rigid-sphere array pressure samples.

    Parameters
    ----------
    samples : (F, Q) array_like
        Surface pressure at the grid nodes.
    grid : QuadratureGrid
    spec : RadialFilterSpec
    frequencies : (F,) array_like
        Bin frequencies in Hz, all positive.
    """
    frequencies = np.asarray(frequencies, dtype=float)
    conv = spec.convention
    ring = sh_analysis(samples, grid, conv.flavor, spec.order, frequencies)
    omega = _omega(2 * pi * frequencies)
    filters = _per_acn(lambda n, w: radial_filter(spec, n, w), spec.order, omega)
    return ring.with_data(ring.data * filters, kind=Kind.BREVE, convention=conv)


def capture_scene(scene, grid, spec):
    """Simulate the array pressure for `scene` and encode it with `spec`."""
    pressure = simulate_surface_pressure(scene, spec.sphere, grid, spec.convention)
    return sma_encode(pressure, grid, spec, scene.frequencies)
