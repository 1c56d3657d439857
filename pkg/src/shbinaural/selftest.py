"""Oracle-versus-pipeline checks on seeded synthetic fixtures."""

from dataclasses import dataclass
from math import pi

import numpy as np

from .conventions import ROWS, Reference, convert_convention
from .hrtf import encode_hrtf, encode_hrtf_for, synth_hrtf
from .oracle import direct_binaural
from .render import render, simulate_missing_sign_defect
from .scene import PlaneWave, PlaneWaveScene
from .sh import Flavor, acn_degrees, make_gauss_grid, sh_matrix
from .sphere import (RadialFilterSpec, SphereSpec, capture_scene, modal_strength,
                     modal_strength_wronskian)

RADIUS = 0.042
INACTIVE_GAIN_DB = 200.0
TOLERANCES = {
    "orthonormality": 1e-9,
    "bn_equivalence": 1e-10,
    "plane_wave_identity": 1e-6,
    "five_row_equivalence": 1e-9,
    "drop_minus_one_m_rotation": 1e-9,
    "swap_i_powers_reference": 1e-12,
    "reference_flip_encoding": 1e-10,
    "drop_minus_one_m_detected": 1e-3,
}


@dataclass
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    must_exceed: bool = False
    """Detection checks pass when the deviation is *above* the threshold."""

    @property
    def passed(self):
        if self.must_exceed:
            return bool(self.deviation > self.tolerance)
        return bool(self.deviation <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        bound = "min" if self.must_exceed else "tol"
        return (f"{self.name:<28s} max_dev={self.deviation:.3e} "
                f"{bound}={self.tolerance:.0e} {status}")


def rel_dev(a, b):
    """Largest absolute difference relative to the largest reference magnitude."""
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


def kr_frequencies(kr, sphere):
    return np.asarray(kr, dtype=float) * sphere.speed_of_sound / (2 * pi * sphere.radius)


def random_scene(rng, frequencies, n_waves, unit=False):
    waves = []
    for _ in range(n_waves):
        colat = float(np.arccos(rng.uniform(-1, 1)))
        azi = float(rng.uniform(0, 2 * pi))
        ref = Reference.INCIDENCE if rng.uniform() < 0.5 else Reference.PROPAGATION
        if unit:
            amp = np.ones(frequencies.size, dtype=complex)
        else:
            amp = rng.standard_normal(frequencies.size) + 1j * rng.standard_normal(frequencies.size)
        waves.append(PlaneWave(colat, azi, ref, amp))
    return PlaneWaveScene(tuple(waves), frequencies)


class Fixture:
    """Shared sphere, grids, frequencies and synthetic HRTFs for one seed."""

    def __init__(self, seed=0, order=4, n_freqs=8):
        self.seed = seed
        self.order = order
        self.rng = np.random.default_rng(seed)
        self.sphere = SphereSpec(RADIUS)
        self.frequencies = kr_frequencies(np.linspace(1.0, 4.0, n_freqs), self.sphere)
        self.hrtf_grid = make_gauss_grid(order)
        self.array_grid = make_gauss_grid(max(12, order + 4))
        self.hrtfs = synth_hrtf(order, seed, self.frequencies, self.hrtf_grid)

    def spec(self, row, max_gain_db=INACTIVE_GAIN_DB):
        return RadialFilterSpec(self.sphere, self.order, max_gain_db, ROWS[row])

    def render_row(self, scene, row, max_gain_db=INACTIVE_GAIN_DB):
        field = capture_scene(scene, self.array_grid, self.spec(row, max_gain_db))
        hrtf = encode_hrtf_for(self.hrtfs, self.hrtf_grid, row, self.order)
        return render(field, hrtf).canonical().stacked()


def check_orthonormality(order):
    grid = make_gauss_grid(order)
    worst = 0.0
    for flavor in Flavor:
        Y = sh_matrix(flavor, order, grid.colatitude, grid.azimuth)
        gram = (Y.conj().T * grid.weights) @ Y
        worst = max(worst, float(np.max(np.abs(gram - np.eye(gram.shape[0])))))
    return worst


def check_bn_equivalence(max_degree=8, krs=(0.1, 0.5, 1.0, 2.0, 5.0, 10.0)):
    worst = 0.0
    for n in range(max_degree + 1):
        for kr in krs:
            a = modal_strength(n, kr)
            b = modal_strength_wronskian(n, kr)
            worst = max(worst, float(abs(a - b) / abs(b)))
    return worst


def check_plane_wave_identity(fx, n_waves=20):
    worst = 0.0
    for k in range(n_waves):
        scene = random_scene(fx.rng, fx.frequencies, 1, unit=True)
        expected = direct_binaural(scene, fx.hrtfs).stacked()
        got = fx.render_row(scene, 1 + k % 5)
        worst = max(worst, rel_dev(got, expected))
    return worst


def check_five_rows(fx, scene, max_gain_db=40.0):
    """Native per-row pipelines and conversions from row 4; pairwise worst."""
    outputs = [fx.render_row(scene, row, max_gain_db) for row in ROWS]
    source = capture_scene(scene, fx.array_grid, fx.spec(4, max_gain_db))
    for row in ROWS:
        field = convert_convention(source, ROWS[row])
        hrtf = encode_hrtf_for(fx.hrtfs, fx.hrtf_grid, row, fx.order)
        outputs.append(render(field, hrtf).canonical().stacked())
    return max(rel_dev(a, b) for a in outputs for b in outputs)


def check_drop_minus_one_m(fx, scene):
    spec = fx.spec(3)
    hrtf = encode_hrtf_for(fx.hrtfs, fx.hrtf_grid, 3, fx.order)
    field = capture_scene(scene, fx.array_grid, spec)
    defective = simulate_missing_sign_defect(field, hrtf, "drop_minus_one_m").stacked()
    rotated = capture_scene(scene.rotated_azimuth(pi), fx.array_grid, spec)
    correct = render(field, hrtf).stacked()
    return rel_dev(defective, render(rotated, hrtf).stacked()), rel_dev(defective, correct)


def check_swap_i_powers(fx, scene):
    worst = 0.0
    n, _ = acn_degrees(fx.order)
    for row in (1, 2):
        hrtf = encode_hrtf_for(fx.hrtfs, fx.hrtf_grid, row, fx.order)
        field = capture_scene(scene, fx.array_grid, fx.spec(row))
        defective = simulate_missing_sign_defect(field, hrtf, "swap_i_powers").stacked()
        flipped = render(field, hrtf.scaled((-1.0) ** n)).stacked()
        worst = max(worst, rel_dev(defective, flipped))
    return worst


def check_reference_flip(fx, order=None):
    order = fx.order if order is None else order
    grid = make_gauss_grid(order)
    hrtfs = synth_hrtf(order, fx.seed + 1, fx.frequencies, grid)
    right = encode_hrtf(hrtfs, grid, Reference.PROPAGATION, Flavor.COMPLEX_GD, order)
    wrong = encode_hrtf(hrtfs, grid, Reference.INCIDENCE, Flavor.COMPLEX_GD, order)
    n, _ = acn_degrees(order)
    sign = (-1.0) ** n
    return max(rel_dev(wrong.left.data, sign * right.left.data),
               rel_dev(wrong.right.data, sign * right.right.data))


def run_selftest(seed=0, order=4):
    """Run every check; returns the list of :class:`CheckResult`."""
    fx = Fixture(seed, order)
    scene = random_scene(fx.rng, fx.frequencies, 3)
    results = [
        CheckResult("orthonormality", check_orthonormality(order), TOLERANCES["orthonormality"]),
        CheckResult("bn_equivalence", check_bn_equivalence(), TOLERANCES["bn_equivalence"]),
        CheckResult("plane_wave_identity", check_plane_wave_identity(fx),
                    TOLERANCES["plane_wave_identity"]),
        CheckResult("five_row_equivalence", check_five_rows(fx, scene),
                    TOLERANCES["five_row_equivalence"]),
    ]
    as_rotation, from_correct = check_drop_minus_one_m(fx, scene)
    results += [
        CheckResult("drop_minus_one_m_detected", from_correct,
                    TOLERANCES["drop_minus_one_m_detected"], must_exceed=True),
        CheckResult("drop_minus_one_m_rotation", as_rotation,
                    TOLERANCES["drop_minus_one_m_rotation"]),
        CheckResult("swap_i_powers_reference", check_swap_i_powers(fx, scene),
                    TOLERANCES["swap_i_powers_reference"]),
        CheckResult("reference_flip_encoding", check_reference_flip(fx),
                    TOLERANCES["reference_flip_encoding"]),
    ]
    return results
