"""Registry of the five consistent convention systems.

A convention system fixes the SH basis flavor, the direction reference
used for plane waves and HRTFs, the sign of the temporal Fourier exponent,
and the factor placed in front of the field coefficients:

======  ================  ===========  ============  ==============
row     flavor            reference    Fourier sign  field factor
======  ================  ===========  ============  ==============
1       complex-gd        propagation  e^{-iwt}      1
2       complex-gd        propagation  e^{-iwt}      4 pi i^{-n}
3       complex-williams  propagation  e^{-iwt}      4 pi i^{-n}
4       real-n3d          incidence    e^{-iwt}      4 pi i^{n}
5       real-n3d          incidence    e^{+iwt}      4 pi i^{-n}
======  ================  ===========  ============  ==============

The field is ``S(x, w) = sum factor_n * S_breve_nm(w) * j_n(kr) * Y_nm``.
Rows 4 and 5 produce N3D/ACN ambisonic signals.
"""

from dataclasses import dataclass
from enum import Enum
from math import pi

import numpy as np

from .sh import Flavor, Kind, acn_degrees, convert_flavor


class Reference(Enum):
    PROPAGATION = "propagation"
    INCIDENCE = "incidence"

    def flipped(self):
        if self is Reference.PROPAGATION:
            return Reference.INCIDENCE
        return Reference.PROPAGATION


class FourierSign(Enum):
    EQ_ONE_TWO = "forward-minus"
    """Forward transform with e^{-i w t}; h^(2) is outgoing."""
    SWAPPED = "forward-plus"
    """Forward transform with e^{+i w t}; h^(1) is outgoing."""


class FieldFactor(Enum):
    NONE = "1"
    FOUR_PI_I_MINUS_N = "4pi*i^-n"
    FOUR_PI_I_PLUS_N = "4pi*i^n"


def i_power(n):
    """Exact integer powers of the imaginary unit."""
    return np.array([1, 1j, -1, -1j])[np.mod(np.asarray(n), 4)]


@dataclass(frozen=True)
class ConventionSystem:
    row_id: int
    flavor: Flavor
    reference: Reference
    fourier_sign: FourierSign
    field_factor: FieldFactor

    def __str__(self):
        return (f"row {self.row_id} ({self.flavor.value}, {self.reference.value}, "
                f"{self.fourier_sign.value}, factor {self.field_factor.value})")

    def factor(self, n):
        """Field factor for degree(s) n."""
        n = np.asarray(n)
        if self.field_factor is FieldFactor.NONE:
            return np.ones(n.shape, dtype=complex)
        sign = -1 if self.field_factor is FieldFactor.FOUR_PI_I_MINUS_N else 1
        return 4 * pi * i_power(sign * n)

    def acn_factor(self, order):
        n, _ = acn_degrees(order)
        return self.factor(n)


ROWS = {
    1: ConventionSystem(1, Flavor.COMPLEX_GD, Reference.PROPAGATION,
                        FourierSign.EQ_ONE_TWO, FieldFactor.NONE),
    2: ConventionSystem(2, Flavor.COMPLEX_GD, Reference.PROPAGATION,
                        FourierSign.EQ_ONE_TWO, FieldFactor.FOUR_PI_I_MINUS_N),
    3: ConventionSystem(3, Flavor.COMPLEX_WILLIAMS, Reference.PROPAGATION,
                        FourierSign.EQ_ONE_TWO, FieldFactor.FOUR_PI_I_MINUS_N),
    4: ConventionSystem(4, Flavor.REAL_N3D, Reference.INCIDENCE,
                        FourierSign.EQ_ONE_TWO, FieldFactor.FOUR_PI_I_PLUS_N),
    5: ConventionSystem(5, Flavor.REAL_N3D, Reference.INCIDENCE,
                        FourierSign.SWAPPED, FieldFactor.FOUR_PI_I_MINUS_N),
}


def convention(row):
    """Look up a convention system by its row number (1..5)."""
    if isinstance(row, ConventionSystem):
        return row
    try:
        return ROWS[int(row)]
    except (KeyError, ValueError, TypeError):
        raise ValueError(f"unknown convention row {row!r}; expected 1..5") from None


def to_canonical(field):
    """Express breve coefficients as canonical field coefficients.

    The canonical form is ``S(x, w) = sum A_nm j_n(kr) Y^GD_nm`` with the
    e^{-iwt} forward transform, i.e. row 1 data re-tagged without a
    convention.
    """
    conv = field.convention
    data = field.data * conv.acn_factor(field.order)
    if conv.fourier_sign is FourierSign.SWAPPED:
        data = data.conj()
    return convert_flavor(field.with_data(data, convention=None), Flavor.COMPLEX_GD)


def from_canonical(canonical, target):
    """Inverse of :func:`to_canonical` for the `target` convention."""
    target = convention(target)
    coeffs = convert_flavor(canonical, target.flavor)
    data = coeffs.data
    if target.fourier_sign is FourierSign.SWAPPED:
        data = data.conj()
    data = data / target.acn_factor(coeffs.order)
    return coeffs.with_data(data, kind=Kind.BREVE, convention=target)


def convert_convention(field, target):
    """Re-express breve field coefficients under another convention system.

    The conversion composes the flavor change, the field-factor ratio (which
    for rows that differ in direction reference is exactly the per-order
    (-1)^n flip) and, across Fourier sign conventions, conjugation of each
    bin. The latter assumes real time-domain signals.
    """
    if field.kind is not Kind.BREVE:
        raise ValueError("convention conversion applies to breve (field) coefficients")
    if field.convention is None:
        raise ValueError("source coefficients carry no convention tag")
    target = convention(target)
    if target == field.convention:
        return field
    return from_canonical(to_canonical(field), target)
