"""Spherical harmonic bases, quadrature grids and the discrete SH transform.

Coefficients are stored in ACN order, index ``n**2 + n + m``, for every
basis flavor. Angles are colatitude (polar angle from +z, not elevation)
and azimuth, both in radians.
"""

from dataclasses import dataclass, replace
from enum import Enum
from math import lgamma, pi
from typing import NamedTuple, Optional

import numpy as np

from .special import DomainError, legendre_table


class Flavor(Enum):
    """Spherical harmonic definitions in use."""

    COMPLEX_GD = "complex-gd"
    """Complex, extra (-1)^m factor so that Y_{n,-m} = conj(Y_{n,m})."""
    COMPLEX_WILLIAMS = "complex-williams"
    """Complex, P_n^m with signed m so that Y_{n,-m} = (-1)^m conj(Y_{n,m})."""
    REAL_N3D = "real-n3d"
    """Real and orthonormal; the N3D/ACN ambisonic channel definition."""


class Kind(Enum):
    BREVE = "breve"
    """Sound field coefficients (scatterer removed, radial dependence divided out)."""
    RING = "ring"
    """Coefficients of a function on the sphere surface."""


class Direction(NamedTuple):
    colatitude: float
    azimuth: float


def num_coeffs(order):
    return (order + 1) ** 2


def acn(n, m):
    return n * n + n + m


def acn_degrees(order):
    """Degree n and order m for every ACN index up to `order`."""
    idx = np.arange(num_coeffs(order))
    n = np.floor(np.sqrt(idx + 0.5)).astype(int)
    return n, idx - n * n - n


def order_from_size(size):
    order = int(round(np.sqrt(size))) - 1
    if num_coeffs(order) != size:
        raise ValueError(f"{size} coefficients is not a complete set (N+1)**2")
    return order


def _factorial_ratio(a, b):
    # a! / b!
    return np.exp(lgamma(a + 1) - lgamma(b + 1))


def _columns(flavor, n, m, P, colatitude, azimuth):
    """Basis values for one (n, m), following each definition literally."""
    ma = abs(m)
    legendre = P[n, ma]
    if flavor is Flavor.COMPLEX_GD:
        norm = np.sqrt((2 * n + 1) / (4 * pi) * _factorial_ratio(n - ma, n + ma))
        return (-1) ** m * norm * legendre * np.exp(1j * m * azimuth)
    if flavor is Flavor.COMPLEX_WILLIAMS:
        norm = np.sqrt((2 * n + 1) / (4 * pi) * _factorial_ratio(n - m, n + m))
        if m < 0:
            # P_n^{-|m|} = (-1)^|m| (n-|m|)!/(n+|m|)! P_n^|m|
            legendre = (-1) ** ma * _factorial_ratio(n - ma, n + ma) * legendre
        return norm * legendre * np.exp(1j * m * azimuth)
    norm = np.sqrt((2 * n + 1) / (4 * pi) * _factorial_ratio(n - ma, n + ma))
    if m < 0:
        trig = np.sqrt(2) * np.sin(ma * azimuth)
    elif m == 0:
        trig = np.ones_like(azimuth)
    else:
        trig = np.sqrt(2) * np.cos(ma * azimuth)
    return (-1) ** m * norm * legendre * trig


def sh_matrix(flavor, order, colatitude, azimuth):
    """Evaluate all basis functions up to `order` at the given directions.

    Parameters
    ----------
    flavor : Flavor
    order : int
        Maximum SH degree N.
    colatitude, azimuth : (Q,) array_like
        Directions in radians.

    Returns
    -------
    Y : (Q, (N+1)**2) numpy.ndarray
        Complex for the complex flavors, float for REAL_N3D.
    """
    flavor = Flavor(flavor)
    colatitude = np.atleast_1d(np.asarray(colatitude, dtype=float))
    azimuth = np.atleast_1d(np.asarray(azimuth, dtype=float))
    colatitude, azimuth = np.broadcast_arrays(colatitude, azimuth)
    P = legendre_table(order, np.cos(colatitude))
    dtype = float if flavor is Flavor.REAL_N3D else complex
    Y = np.empty(colatitude.shape + (num_coeffs(order),), dtype=dtype)
    for n in range(order + 1):
        for m in range(-n, n + 1):
            Y[..., acn(n, m)] = _columns(flavor, n, m, P, colatitude, azimuth)
    return Y


def sh_eval(flavor, n, m, colatitude, azimuth):
    """Single basis function Y_{n,m} of the given flavor."""
    if int(n) != n or n < 0 or abs(m) > n:
        raise DomainError(f"invalid degree/order (n={n}, m={m})")
    colatitude = np.asarray(colatitude, dtype=float)
    azimuth = np.asarray(azimuth, dtype=float)
    P = legendre_table(int(n), np.cos(colatitude))
    return _columns(Flavor(flavor), int(n), int(m), P, colatitude, azimuth)


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Directions and weights integrating degree-`exact_order` products exactly.

    The weights sum to 4*pi, and for any two functions band-limited to
    `exact_order` the weighted sum of their product equals the surface
    integral.
    """

    colatitude: np.ndarray
    azimuth: np.ndarray
    weights: np.ndarray
    exact_order: int

    def __post_init__(self):
        if not (self.colatitude.shape == self.azimuth.shape == self.weights.shape):
            raise ValueError("colatitude, azimuth and weights must have equal shape")
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    def __len__(self):
        return self.weights.size

    @property
    def directions(self):
        return Direction(self.colatitude, self.azimuth)

    def antipodal(self):
        """The same grid with every node mapped to its antipode.

        The antipodal map is orthogonal, so exactness and weights carry over.
        """
        return QuadratureGrid(pi - self.colatitude,
                              np.mod(self.azimuth + pi, 2 * pi),
                              self.weights, self.exact_order)


def make_gauss_grid(exact_order):
    """Gauss-Legendre colatitudes times equiangular azimuths.

    ``exact_order + 1`` colatitude rings with ``2 * exact_order + 1``
    azimuths each; the discrete SH transform is exact up to `exact_order`.
    """
    if int(exact_order) != exact_order or exact_order < 0:
        raise ValueError("exact_order must be a non-negative integer")
    Q = int(exact_order)
    mu, w_mu = np.polynomial.legendre.leggauss(Q + 1)
    order = np.argsort(-mu)  # ascending colatitude
    beta = np.arccos(mu[order])
    w_mu = w_mu[order]
    n_azi = 2 * Q + 1
    alpha = 2 * pi * np.arange(n_azi) / n_azi
    colatitude = np.repeat(beta, n_azi)
    azimuth = np.tile(alpha, Q + 1)
    weights = np.repeat(w_mu, n_azi) * (2 * pi / n_azi)
    return QuadratureGrid(colatitude, azimuth, weights, Q)


@dataclass(frozen=True, eq=False)
class ShCoefficients:
    """SH coefficients per frequency bin.

    Attributes
    ----------
    data : (F, (N+1)**2) complex numpy.ndarray
        ACN-ordered coefficients, one row per frequency bin.
    frequencies : (F,) numpy.ndarray
        Bin frequencies in Hz.
    flavor : Flavor
    kind : Kind
    convention : ConventionSystem or None
        Required for breve coefficients that are to be rendered.
    """

    data: np.ndarray
    frequencies: np.ndarray
    flavor: Flavor
    kind: Kind = Kind.RING
    convention: Optional[object] = None

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != 2:
            raise ValueError("coefficient data must be 2-D (frequencies x channels)")
        frequencies = np.asarray(self.frequencies, dtype=float)
        if frequencies.shape != (data.shape[0],):
            raise ValueError("one frequency per row of coefficient data expected")
        order_from_size(data.shape[1])
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "frequencies", frequencies)
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def order(self):
        return order_from_size(self.data.shape[1])

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot truncate order {self.order} to {order}")
        return replace(self, data=self.data[:, :num_coeffs(order)])

    def with_data(self, data, **changes):
        return replace(self, data=data, **changes)


def sh_analysis(samples, grid, flavor, order, frequencies=None):
    """Discrete SH transform of sampled surface functions.

    Computes ``sum_q w_q S(dir_q) conj(Y_{n,m}(dir_q))``.

    Parameters
    ----------
    samples : (Q,) or (F, Q) array_like
        Function values at the grid nodes, one row per frequency bin.
    grid : QuadratureGrid
    flavor : Flavor
    order : int
        Must not exceed ``grid.exact_order``.
    frequencies : (F,) array_like, optional
        Defaults to zeros.

    Returns
    -------
    ShCoefficients
        Ring coefficients.
    """
    if order > grid.exact_order:
        raise ValueError(f"order {order} exceeds grid exactness {grid.exact_order}; "
                         "the transform would alias")
    samples = np.atleast_2d(np.asarray(samples))
    if samples.shape[1] != len(grid):
        raise ValueError(f"expected {len(grid)} samples per bin, got {samples.shape[1]}")
    Y = sh_matrix(flavor, order, grid.colatitude, grid.azimuth)
    data = (samples * grid.weights) @ Y.conj()
    if frequencies is None:
        frequencies = np.zeros(samples.shape[0])
    return ShCoefficients(data, frequencies, flavor, Kind.RING)


def sh_synthesis(coeffs, colatitude, azimuth):
    """Evaluate the truncated SH series at directions.

    Returns
    -------
    (F, D) complex numpy.ndarray
    """
    Y = sh_matrix(coeffs.flavor, coeffs.order, colatitude, azimuth)
    return coeffs.data @ Y.T


def flavor_matrix(flavor, order):
    """Unitary M with ``sh_matrix(flavor) == sh_matrix(COMPLEX_GD) @ M``.

    Coefficients transform as ``c_gd = M @ c_flavor``.
    """
    flavor = Flavor(flavor)
    K = num_coeffs(order)
    M = np.zeros((K, K), dtype=complex)
    for n in range(order + 1):
        M[acn(n, 0), acn(n, 0)] = 1.0
        for mu in range(1, n + 1):
            pos, neg = acn(n, mu), acn(n, -mu)
            if flavor is Flavor.COMPLEX_GD:
                M[pos, pos] = M[neg, neg] = 1.0
            elif flavor is Flavor.COMPLEX_WILLIAMS:
                M[pos, pos] = (-1) ** mu
                M[neg, neg] = 1.0
            else:
                s = 1 / np.sqrt(2)
                # Y_cos = (Y_mu + Y_-mu)/sqrt2, Y_sin = (Y_mu - Y_-mu)/(i sqrt2)
                M[pos, pos] = M[neg, pos] = s
                M[pos, neg] = -1j * s
                M[neg, neg] = 1j * s
    return M


def convert_flavor(coeffs, target):
    """Re-express coefficients in another basis flavor; the function is unchanged."""
    target = Flavor(target)
    if target is coeffs.flavor:
        return coeffs
    order = coeffs.order
    T = flavor_matrix(target, order).conj().T @ flavor_matrix(coeffs.flavor, order)
    return coeffs.with_data(coeffs.data @ T.T, flavor=target)
