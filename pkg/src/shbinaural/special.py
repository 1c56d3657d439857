"""Associated Legendre functions and spherical Bessel/Hankel functions.

All functions accept array-like arguments and broadcast like numpy ufuncs.
"""

import numpy as np
from scipy import special as scyspecial

MAX_DEGREE = 64


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


def _check_degree(n):
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    if n > MAX_DEGREE:
        raise DomainError(f"degree {n} exceeds supported maximum {MAX_DEGREE}")
    return int(n)


def legendre_table(order, mu):
    """All associated Legendre values P_n^m(mu) for 0 <= m <= n <= `order`.

    Uses the standard three-term recurrence in n starting from the sectoral
    values P_m^m. The Condon-Shortley phase (-1)^m is included.

    Parameters
    ----------
    order : int
        Maximum degree.
    mu : array_like
        Arguments in [-1, 1].

    Returns
    -------
    P : (order+1, order+1, ...) numpy.ndarray
        ``P[n, m]`` holds P_n^m(mu); entries with m > n are zero.
    """
    order = _check_degree(order)
    mu = np.asarray(mu, dtype=float)
    if np.any(np.abs(mu) > 1.0):
        raise DomainError("mu must lie in [-1, 1]")
    P = np.zeros((order + 1, order + 1) + mu.shape)
    sin_beta = np.sqrt(np.clip(1.0 - mu * mu, 0.0, None))
    pmm = np.ones_like(mu)
    for m in range(order + 1):
        if m > 0:
            pmm = -(2 * m - 1) * sin_beta * pmm
        P[m, m] = pmm
        if m + 1 <= order:
            P[m + 1, m] = (2 * m + 1) * mu * pmm
        for n in range(m + 2, order + 1):
            P[n, m] = ((2 * n - 1) * mu * P[n - 1, m]
                       - (n + m - 1) * P[n - 2, m]) / (n - m)
    return P


def assoc_legendre(n, m, mu):
    """Associated Legendre function P_n^m(mu) with Condon-Shortley phase.

    Raises
    ------
    DomainError
        If m is not in 0..n or |mu| > 1.
    """
    n = _check_degree(n)
    if int(m) != m or not 0 <= m <= n:
        raise DomainError(f"order m={m!r} must satisfy 0 <= m <= n={n}")
    P = legendre_table(n, mu)
    return P[n, int(m)]


def _check_argument(x, allow_zero):
    x = np.asarray(x, dtype=float)
    if allow_zero:
        if np.any(x < 0):
            raise DomainError("argument must be non-negative")
    elif np.any(x <= 0):
        raise DomainError("argument must be strictly positive")
    return x


def sph_bessel_j(n, x):
    """Spherical Bessel function j_n(x) for x >= 0."""
    n = _check_degree(n)
    x = _check_argument(x, allow_zero=True)
    return scyspecial.spherical_jn(n, x)


def sph_bessel_y(n, x):
    """Spherical Bessel function of the second kind y_n(x) for x > 0."""
    n = _check_degree(n)
    x = _check_argument(x, allow_zero=False)
    return scyspecial.spherical_yn(n, x)


def sph_hankel2(n, x):
    """Spherical Hankel function of the second kind, j_n(x) - i y_n(x)."""
    n = _check_degree(n)
    x = _check_argument(x, allow_zero=False)
    return scyspecial.spherical_jn(n, x) - 1j * scyspecial.spherical_yn(n, x)


def sph_hankel1(n, x):
    """Spherical Hankel function of the first kind, j_n(x) + i y_n(x)."""
    n = _check_degree(n)
    x = _check_argument(x, allow_zero=False)
    return scyspecial.spherical_jn(n, x) + 1j * scyspecial.spherical_yn(n, x)


def _derivative(f, n, x):
    # f_n' = f_{n-1} - (n+1)/x f_n, and f_0' = -f_1
    if n == 0:
        return -f(1, x)
    return f(n - 1, x) - (n + 1) / x * f(n, x)


def sph_bessel_j_prime(n, x):
    """Derivative of j_n with respect to its argument (x > 0)."""
    n = _check_degree(n)
    x = _check_argument(x, allow_zero=False)
    return _derivative(sph_bessel_j, n, x)


def sph_hankel2_prime(n, x):
    """Derivative of h_n^(2) with respect to its argument."""
    n = _check_degree(n)
    x = _check_argument(x, allow_zero=False)
    return _derivative(sph_hankel2, n, x)


def sph_hankel1_prime(n, x):
    """Derivative of h_n^(1) with respect to its argument."""
    n = _check_degree(n)
    x = _check_argument(x, allow_zero=False)
    return _derivative(sph_hankel1, n, x)
