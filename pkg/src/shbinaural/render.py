"""Binaural rendering of breve SH coefficients with SH-domain HRTFs.

Formula per convention row (sums over n <= N, |m| <= n)::

    row 1:     B = sum 1/(4 pi i^-n) S_{n,-m} H_{n,m}
    row 2:     B = sum S_{n,-m} H_{n,m}
    row 3:     B = sum (-1)^m S_{n,-m} H_{n,m}
    rows 4, 5: B = sum S_{n,m} H_{n,m}
"""

from dataclasses import dataclass
from enum import Enum
from math import pi

import numpy as np

from .conventions import FieldFactor, FourierSign, convert_convention, i_power
from .sh import Flavor, Kind, acn, acn_degrees, num_coeffs

__all__ = ["BinauralOutput", "ConventionMismatch", "Defect", "herglotz_coefficients",
           "render", "convert_convention", "simulate_missing_sign_defect"]


class ConventionMismatch(ValueError):
    """Field and HRTF coefficients were produced under incompatible conventions."""

    def __init__(self, axis, field_value, hrtf_value):
        self.axis = axis
        super().__init__(f"convention mismatch in {axis}: field uses {field_value}, "
                         f"HRTF coefficients use {hrtf_value}")


class Defect(Enum):
    DROP_MINUS_ONE_M = "drop_minus_one_m"
    SWAP_I_POWERS = "swap_i_powers"


@dataclass(frozen=True, eq=False)
class BinauralOutput:
    """Ear spectra (F,) under the stated Fourier sign convention."""

    left: np.ndarray
    right: np.ndarray
    frequencies: np.ndarray
    fourier_sign: FourierSign = FourierSign.EQ_ONE_TWO

    def to_sign(self, fourier_sign):
        """Spectra of the same real ear signals under another sign convention."""
        fourier_sign = FourierSign(fourier_sign)
        if fourier_sign is self.fourier_sign:
            return self
        return BinauralOutput(self.left.conj(), self.right.conj(), self.frequencies,
                              fourier_sign)

    def canonical(self):
        return self.to_sign(FourierSign.EQ_ONE_TWO)

    def stacked(self):
        """(2, F) array of left and right."""
        return np.stack([self.left, self.right])


def herglotz_coefficients(field):
    """SH coefficients of the plane-wave density (Herglotz kernel).

    Row-1 coefficients are scaled by ``1/(4 pi i^-n)``; for the other rows
    the breve coefficients already are the plane-wave density coefficients.
    """
    if field.kind is not Kind.BREVE:
        raise ValueError("Herglotz coefficients are defined for breve (field) coefficients")
    conv = field.convention
    if conv is not None and conv.field_factor is not FieldFactor.NONE:
        return field.with_data(field.data.copy(), kind=Kind.RING)
    n, _ = acn_degrees(field.order)
    return field.with_data(field.data / (4 * pi * i_power(-n)), kind=Kind.RING)


def _mirror_index(order):
    """ACN permutation mapping (n, m) to (n, -m)."""
    n, m = acn_degrees(order)
    return acn(n, -m)


def _check_compatible(field, hrtf, check_reference=True):
    if field.kind is not Kind.BREVE:
        raise ValueError("field coefficients must be breve coefficients")
    conv = field.convention
    if conv is None:
        raise ValueError("field coefficients carry no convention tag")
    if field.flavor is not conv.flavor:
        raise ConventionMismatch("flavor", conv.flavor.value, field.flavor.value)
    if hrtf.flavor is not conv.flavor:
        raise ConventionMismatch("flavor", conv.flavor.value, hrtf.flavor.value)
    if check_reference and hrtf.reference_used is not conv.reference:
        raise ConventionMismatch("reference", conv.reference.value, hrtf.reference_used.value)
    if hrtf.fourier_sign is not conv.fourier_sign:
        raise ConventionMismatch("fourier_sign", conv.fourier_sign.value,
                                 hrtf.fourier_sign.value)
    if field.frequencies.shape != hrtf.frequencies.shape or not np.allclose(
            field.frequencies, hrtf.frequencies, rtol=1e-12, atol=0):
        raise ValueError("field and HRTF frequency grids differ")
    if field.frequencies.size == 0:
        raise ValueError("empty frequency grid")


def _render_weights(conv, order):
    """Per-ACN weights w and whether the field index is mirrored (m -> -m)."""
    n, m = acn_degrees(order)
    weights = np.ones(num_coeffs(order), dtype=complex)
    if conv.field_factor is FieldFactor.NONE:
        weights = weights / (4 * pi * i_power(-n))
    mirrored = conv.flavor is not Flavor.REAL_N3D
    if conv.flavor is Flavor.COMPLEX_WILLIAMS:
        weights = weights * (-1.0) ** m
    return weights, mirrored


def _apply(field, hrtf, weights, mirrored, order):
    K = num_coeffs(order)
    S = field.data[:, :K]
    if mirrored:
        S = S[:, _mirror_index(order)]
    S = S * weights
    left = np.sum(S * hrtf.left.data[:, :K], axis=1)
    right = np.sum(S * hrtf.right.data[:, :K], axis=1)
    return BinauralOutput(left, right, field.frequencies.copy(), field.convention.fourier_sign)


def render(field, hrtf):
    """Ear spectra from breve field coefficients and HRTF ring coefficients.

    The sum runs to the smaller of the two orders. Spectra are returned in
    the field's Fourier sign convention.

    Raises
    ------
    ConventionMismatch
        If flavor, direction reference or Fourier sign of the HRTF
        coefficients do not match the field's convention.
    """
    _check_compatible(field, hrtf)
    order = min(field.order, hrtf.order)
    weights, mirrored = _render_weights(field.convention, order)
    return _apply(field, hrtf, weights, mirrored, order)


def simulate_missing_sign_defect(field, hrtf, defect):
    """Render with a deliberate bookkeeping error.

    ``drop_minus_one_m`` omits the (-1)^m of the Williams row (row 3).
    ``swap_i_powers`` replaces i^-n with i^n (rows 1 and 2; for row 2 the
    swap acts on the field factor and amounts to a (-1)^n weight). The HRTF
    reference tag is not checked for ``swap_i_powers`` since that defect
    is the classic reference confusion.
    """
    defect = Defect(defect)
    row = field.convention.row_id if field.convention is not None else None
    if defect is Defect.DROP_MINUS_ONE_M and row != 3:
        raise ValueError("drop_minus_one_m applies to row-3 (Williams) conventions only")
    if defect is Defect.SWAP_I_POWERS and row not in (1, 2):
        raise ValueError("swap_i_powers applies to row-1 and row-2 conventions only")
    _check_compatible(field, hrtf, check_reference=defect is not Defect.SWAP_I_POWERS)
    order = min(field.order, hrtf.order)
    weights, mirrored = _render_weights(field.convention, order)
    n, m = acn_degrees(order)
    if defect is Defect.DROP_MINUS_ONE_M:
        weights = weights * (-1.0) ** m
    else:
        weights = weights * (-1.0) ** n
    return _apply(field, hrtf, weights, mirrored, order)

