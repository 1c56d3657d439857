"""
What a forgotten sign sounds like
=================================

Three bookkeeping mistakes and their characteristic effect:

* leaving out the (-1)^m of the Williams basis turns the scene around
  by 180 degrees in azimuth;
* encoding HRTFs with incidence instead of propagation directions flips
  the sign of every odd degree;
* swapping i^-n for i^n flips the same signs, so the two mistakes cancel.
"""

import numpy as np

import shbinaural as sb

sphere = sb.SphereSpec(0.042)
freqs = np.linspace(1.0, 4.0, 4) * sphere.speed_of_sound / (2 * np.pi * sphere.radius)
scene = sb.PlaneWaveScene((sb.PlaneWave(1.3, 0.4, "incidence", np.ones(4)),), freqs)

order = 4
array_grid, hrtf_grid = sb.make_gauss_grid(12), sb.make_gauss_grid(order)
hrtfs = sb.synth_hrtf(order, 3, freqs, hrtf_grid)


def encode(s, row):
    return sb.capture_scene(s, array_grid, sb.RadialFilterSpec(sphere, order, 40.0, row))


def dev(a, b):
    return np.max(np.abs(a.stacked() - b.stacked())) / np.max(np.abs(b.stacked()))


# %%
# Missing (-1)^m in the Williams row
hrtf3 = sb.encode_hrtf_for(hrtfs, hrtf_grid, 3, order)
field = encode(scene, 3)
wrong = sb.simulate_missing_sign_defect(field, hrtf3, "drop_minus_one_m")
print("vs correct render:      ", f"{dev(wrong, sb.render(field, hrtf3)):.2e}")
turned = sb.render(encode(scene.rotated_azimuth(np.pi), 3), hrtf3)
print("vs scene turned by 180: ", f"{dev(wrong, turned):.2e}")

# %%
# Incidence-referenced HRTF coefficients in a propagation-referenced row
field = encode(scene, 2)
right = sb.render(field, sb.encode_hrtf_for(hrtfs, hrtf_grid, 2, order))
confused = sb.encode_hrtf(hrtfs, hrtf_grid, "incidence", sb.Flavor.COMPLEX_GD, order)
try:
    sb.render(field, confused)
except sb.ConventionMismatch as exc:
    print("refused:", exc)

# the swapped i-powers compensate for exactly this confusion
fixed = sb.simulate_missing_sign_defect(field, confused, "swap_i_powers")
print("swap_i_powers with confused HRTFs vs correct:", f"{dev(fixed, right):.2e}")
