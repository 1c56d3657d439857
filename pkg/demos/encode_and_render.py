"""
From a plane wave to two ear signals
====================================

A plane wave hits a rigid spherical microphone array. We simulate the
surface pressure, encode it into spherical-harmonic (SH) field
coefficients, and render those binaurally with SH-domain HRTFs. The result
is compared with the ear signal obtained by looking up the HRTF directly.
"""

import numpy as np

import shbinaural as sb

# A 4.2 cm sphere; frequencies where 1 <= kR <= 4
sphere = sb.SphereSpec(radius=0.042)
kr = np.linspace(1.0, 4.0, 6)
freqs = kr * sphere.speed_of_sound / (2 * np.pi * sphere.radius)

# one unit wave arriving from the front-left, slightly above the horizon
wave = sb.PlaneWave(colatitude=1.2, azimuth=0.6, reference="incidence",
                    amplitude=np.ones(freqs.size))
scene = sb.PlaneWaveScene((wave,), freqs)

# %%
# Capture and encode. The array grid must resolve the field up to
# kR = 4, so it is much finer than the encoding order.
order = 4
array_grid = sb.make_gauss_grid(12)
spec = sb.RadialFilterSpec(sphere, order, max_gain_db=200.0, convention=2)
field = sb.capture_scene(scene, array_grid, spec)
print("field coefficients:", field.data.shape, "convention", field.convention)

# %%
# A seeded, band-limited synthetic HRTF set stands in for measurements
hrtf_grid = sb.make_gauss_grid(order)
hrtfs = sb.synth_hrtf(order, seed=1, frequencies=freqs, grid=hrtf_grid)
hrtf = sb.encode_hrtf_for(hrtfs, hrtf_grid, field.convention, order)

ears = sb.render(field, hrtf)
truth = sb.direct_binaural(scene, hrtfs)

err = np.max(np.abs(ears.stacked() - truth.stacked())) / np.max(np.abs(truth.stacked()))
print(f"max relative deviation from direct HRTF lookup: {err:.2e}")
