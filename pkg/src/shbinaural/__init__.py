"""Binaural rendering of spherical-harmonic sound field representations.

Encodes simulated rigid-sphere microphone array captures and HRTF sets
into SH coefficients under five consistent convention systems and renders
ear signals with the SH-domain binaural rendering equation.
"""

from .conventions import (ROWS, ConventionSystem, FieldFactor, FourierSign, Reference,
                          convention, convert_convention)
from .hrtf import (HrtfSet, HrtfShCoefficients, SyntheticHrtfSet, encode_hrtf,
                   encode_hrtf_for, synth_hrtf)
from .oracle import direct_binaural, integrate_sphere
from .render import (BinauralOutput, ConventionMismatch, herglotz_coefficients, render,
                     simulate_missing_sign_defect)
from .scene import PlaneWave, PlaneWaveScene, incidence_to_propagation
from .sh import (Direction, Flavor, Kind, QuadratureGrid, ShCoefficients, convert_flavor,
                 make_gauss_grid, sh_analysis, sh_eval, sh_matrix, sh_synthesis)
from .sphere import (RadialFilterSpec, SphereSpec, b_n, capture_scene,
                     plane_wave_coefficients, radial_filter, simulate_surface_pressure,
                     sma_encode)

__version__ = "0.1.0"
