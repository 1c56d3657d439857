"""
One scene, five conventions
===========================

Five common combinations of SH flavor, direction reference, Fourier sign
and field factor describe the same sound field with different numbers.
Each row has its own rendering formula; applied consistently, all five
give the same ear signals.
"""

import numpy as np

import shbinaural as sb

sphere = sb.SphereSpec(0.042)
freqs = np.linspace(1.0, 4.0, 5) * sphere.speed_of_sound / (2 * np.pi * sphere.radius)
rng = np.random.default_rng(0)
waves = [sb.PlaneWave(float(np.arccos(rng.uniform(-1, 1))), float(rng.uniform(0, 2 * np.pi)),
                      "incidence", rng.standard_normal(5) + 1j * rng.standard_normal(5))
         for _ in range(3)]
scene = sb.PlaneWaveScene(tuple(waves), freqs)

order = 4
array_grid, hrtf_grid = sb.make_gauss_grid(12), sb.make_gauss_grid(order)
hrtfs = sb.synth_hrtf(order, 7, freqs, hrtf_grid)

outputs = {}
for row, conv in sb.ROWS.items():
    field = sb.capture_scene(scene, array_grid, sb.RadialFilterSpec(sphere, order, 40.0, conv))
    hrtf = sb.encode_hrtf_for(hrtfs, hrtf_grid, conv, order)
    # row 5 spectra use the opposite Fourier sign; compare in the common one
    outputs[row] = sb.render(field, hrtf).canonical().stacked()
    print(f"{conv}\n    first coefficients: {np.round(field.data[0, :4], 3)}")

# %%
# The coefficients differ from row to row, but the ear signals agree
ref = outputs[1]
for row, out in outputs.items():
    print(f"row {row}: deviation from row 1 = {np.max(np.abs(out - ref)):.1e}")

# %%
# Converting between rows is lossless
field4 = sb.capture_scene(scene, array_grid, sb.RadialFilterSpec(sphere, order, 40.0, 4))
back = sb.convert_convention(sb.convert_convention(field4, sb.ROWS[3]), sb.ROWS[4])
print("row 4 -> 3 -> 4 round trip:", np.max(np.abs(back.data - field4.data)))
