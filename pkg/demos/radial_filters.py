"""
Radial filters and their limit
==============================

Undoing the sphere's modal strength b_n needs gains that grow without
bound as kR -> 0 for n >= 1. The soft limiter caps the magnitude at the
chosen maximum gain while keeping the phase.
"""

import numpy as np

import shbinaural as sb

sphere = sb.SphereSpec(0.042)
spec = sb.RadialFilterSpec(sphere, order=4, max_gain_db=40.0)
kr = np.array([0.01, 0.1, 0.5, 1.0, 2.0, 5.0])
omega = kr * sphere.speed_of_sound / sphere.radius

print("gain in dB")
print("kR      " + "".join(f"{x:>9.2f}" for x in kr))
for n in range(spec.order + 1):
    raw = 1 / np.abs(sb.b_n(sphere, n, omega, 1))
    lim = np.abs(sb.radial_filter(spec, n, omega))
    print(f"n={n} raw " + "".join(f"{20 * np.log10(g) + 0.0:>9.1f}" for g in raw))
    print(f"    lim " + "".join(f"{20 * np.log10(g) + 0.0:>9.1f}" for g in lim))
