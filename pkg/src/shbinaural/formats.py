"""Text file formats: coefficient dumps, HRTF sets, scenes and ear spectra.

All writers are deterministic (shortest round-trip float repr, no
timestamps), so identical inputs produce byte-identical files.
"""

import json
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .conventions import Reference, convention
from .hrtf import HrtfSet
from .render import BinauralOutput
from .scene import PlaneWave, PlaneWaveScene
from .sh import Flavor, Kind, ShCoefficients, acn_degrees, num_coeffs

COEFF_MAGIC = "# shbinaural coefficients v1"


class FormatError(ValueError):
    """Malformed input file; the message names the offending field."""


def _num(x):
    return repr(float(x))


@contextmanager
def _open(target, mode):
    if hasattr(target, "write" if "w" in mode else "read"):
        yield target
    else:
        with open(Path(target), mode, encoding="utf-8", newline="\n") as fh:
            yield fh


def write_coefficients(target, coeffs):
    """Write one row per (frequency, ACN index): frequency, n, m, real, imag."""
    conv = "none" if coeffs.convention is None else str(coeffs.convention.row_id)
    n, m = acn_degrees(coeffs.order)
    lines = [COEFF_MAGIC,
             f"# flavor: {coeffs.flavor.value}",
             f"# kind: {coeffs.kind.value}",
             f"# convention: {conv}",
             f"# order: {coeffs.order}",
             "# frequency_hz n m real imag"]
    for f, row in zip(coeffs.frequencies, coeffs.data):
        fs = _num(f)
        for k in range(row.size):
            lines.append(f"{fs} {n[k]} {m[k]} {_num(row[k].real)} {_num(row[k].imag)}")
    with _open(target, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_coefficients(source):
    with _open(source, "r") as fh:
        text = fh.read()
    header = {}
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                header[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 5:
            raise FormatError(f"line {lineno}: expected 5 columns, got {len(parts)}")
        try:
            rows.append((float(parts[0]), int(parts[1]), int(parts[2]),
                         float(parts[3]), float(parts[4])))
        except ValueError:
            raise FormatError(f"line {lineno}: non-numeric value") from None
    for key in ("flavor", "kind", "convention", "order"):
        if key not in header:
            raise FormatError(f"header field '{key}' missing")
    try:
        flavor = Flavor(header["flavor"])
    except ValueError:
        raise FormatError(f"header field 'flavor': unknown value {header['flavor']!r}") from None
    try:
        kind = Kind(header["kind"])
    except ValueError:
        raise FormatError(f"header field 'kind': unknown value {header['kind']!r}") from None
    conv = None
    if header["convention"] != "none":
        try:
            conv = convention(header["convention"])
        except ValueError as exc:
            raise FormatError(f"header field 'convention': {exc}") from None
    try:
        order = int(header["order"])
    except ValueError:
        raise FormatError("header field 'order': not an integer") from None
    K = num_coeffs(order)
    if not rows:
        raise FormatError("no coefficient rows (empty frequency grid)")
    if len(rows) % K:
        raise FormatError(f"{len(rows)} rows is not a multiple of (order+1)^2 = {K}")
    table = np.array(rows)
    table = table.reshape(-1, K, 5)
    n, m = acn_degrees(order)
    if not (np.all(table[:, :, 1] == n) and np.all(table[:, :, 2] == m)):
        raise FormatError("rows are not in ACN order per frequency")
    frequencies = table[:, 0, 0]
    if not np.all(table[:, :, 0] == frequencies[:, None]):
        raise FormatError("frequency column inconsistent within a bin")
    data = table[:, :, 3] + 1j * table[:, :, 4]
    return ShCoefficients(data, frequencies, flavor, kind, conv)


def write_hrtf(target, hrtf_set):
    lines = [f"reference: {hrtf_set.reference.value}",
             "frequencies: " + ",".join(_num(f) for f in hrtf_set.frequencies)]
    for d in range(len(hrtf_set)):
        pos = f"{_num(hrtf_set.colatitude[d])} {_num(hrtf_set.azimuth[d])}"
        for ear, values in (("L", hrtf_set.left[d]), ("R", hrtf_set.right[d])):
            spec = " ".join(f"{_num(v.real)},{_num(v.imag)}" for v in values)
            lines.append(f"{pos}  {ear}  {spec}")
    with _open(target, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_hrtf(source):
    """Parse the HRTF text format into an :class:`HrtfSet`."""
    with _open(source, "r") as fh:
        lines = [ln.strip() for ln in fh.read().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    header = {}
    while lines and ":" in lines[0].split()[0]:
        key, _, value = lines.pop(0).partition(":")
        header[key.strip()] = value.strip()
    if "reference" not in header:
        raise FormatError("header field 'reference' missing")
    try:
        reference = Reference(header["reference"])
    except ValueError:
        raise FormatError(f"header field 'reference': unknown value "
                          f"{header['reference']!r}") from None
    if not header.get("frequencies"):
        raise FormatError("header field 'frequencies' missing or empty")
    try:
        frequencies = np.array([float(f) for f in header["frequencies"].split(",")])
    except ValueError:
        raise FormatError("header field 'frequencies': non-numeric value") from None
    ears = {}
    order = []
    for i, line in enumerate(lines):
        parts = line.split()
        if len(parts) != 3 + frequencies.size:
            raise FormatError(f"record {i}: expected {3 + frequencies.size} fields")
        try:
            key = (float(parts[0]), float(parts[1]))
            values = [complex(*map(float, p.split(","))) for p in parts[3:]]
        except (ValueError, TypeError):
            raise FormatError(f"record {i}: malformed number") from None
        ear = parts[2]
        if ear not in ("L", "R"):
            raise FormatError(f"record {i}: ear must be L or R, got {ear!r}")
        if key not in ears:
            ears[key] = {}
            order.append(key)
        if ear in ears[key]:
            raise FormatError(f"record {i}: duplicate {ear} record for direction {key}")
        ears[key][ear] = values
    if not order:
        raise FormatError("no HRTF records")
    for key in order:
        if len(ears[key]) != 2:
            raise FormatError(f"direction {key}: both L and R records required")
    colat = np.array([k[0] for k in order])
    azi = np.array([k[1] for k in order])
    left = np.array([ears[k]["L"] for k in order])
    right = np.array([ears[k]["R"] for k in order])
    return HrtfSet(colat, azi, reference, left, right, frequencies)


def scene_from_dict(obj):
    if not isinstance(obj, dict):
        raise FormatError("scene: expected a JSON object")
    if "frequencies_hz" not in obj:
        raise FormatError("frequencies_hz: field missing")
    try:
        frequencies = np.array(obj["frequencies_hz"], dtype=float)
    except (TypeError, ValueError):
        raise FormatError("frequencies_hz: expected a list of numbers") from None
    if frequencies.ndim != 1 or frequencies.size == 0:
        raise FormatError("frequencies_hz: empty frequency grid")
    waves = obj.get("waves")
    if not waves:
        raise FormatError("scene has no waves")
    parsed = []
    for i, wave in enumerate(waves):
        where = f"waves[{i}]"
        for key in ("colatitude_rad", "azimuth_rad", "reference", "amplitude"):
            if key not in wave:
                raise FormatError(f"{where}.{key}: field missing")
        try:
            amp = np.array(wave["amplitude"], dtype=float)
        except (TypeError, ValueError):
            raise FormatError(f"{where}.amplitude: expected [[re, im], ...]") from None
        if amp.shape != (frequencies.size, 2):
            raise FormatError(f"{where}.amplitude: expected {frequencies.size} [re, im] pairs")
        try:
            reference = Reference(wave["reference"])
        except ValueError:
            raise FormatError(f"{where}.reference: must be 'incidence' or "
                              "'propagation'") from None
        colat = wave["colatitude_rad"]
        if not isinstance(colat, (int, float)) or not 0 <= colat <= np.pi:
            raise FormatError(f"{where}.colatitude_rad: must be a number in [0, pi]")
        azi = wave["azimuth_rad"]
        if not isinstance(azi, (int, float)):
            raise FormatError(f"{where}.azimuth_rad: must be a number")
        parsed.append(PlaneWave(float(colat), float(azi), reference,
                                amp[:, 0] + 1j * amp[:, 1]))
    return PlaneWaveScene(tuple(parsed), frequencies)


def read_scene(source):
    with _open(source, "r") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"scene: invalid JSON ({exc.msg})") from None
    return scene_from_dict(obj)


def scene_to_dict(scene):
    return {
        "frequencies_hz": [float(f) for f in scene.frequencies],
        "waves": [{"colatitude_rad": float(w.colatitude),
                   "azimuth_rad": float(w.azimuth),
                   "reference": w.reference.value,
                   "amplitude": [[float(a.real), float(a.imag)] for a in w.amplitude]}
                  for w in scene.waves],
    }


def write_scene(target, scene):
    with _open(target, "w") as fh:
        json.dump(scene_to_dict(scene), fh, indent=1)
        fh.write("\n")


def write_binaural(target, output):
    lines = ["frequency_hz,L_re,L_im,R_re,R_im"]
    for f, l, r in zip(output.frequencies, output.left, output.right):
        lines.append(",".join(_num(v) for v in (f, l.real, l.imag, r.real, r.imag)))
    with _open(target, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_binaural(source, fourier_sign=None):
    with _open(source, "r") as fh:
        rows = fh.read().splitlines()
    if not rows or rows[0].strip() != "frequency_hz,L_re,L_im,R_re,R_im":
        raise FormatError("binaural CSV: unexpected header")
    table = np.array([[float(v) for v in r.split(",")] for r in rows[1:] if r.strip()])
    if table.size == 0:
        raise FormatError("binaural CSV: no rows")
    out = BinauralOutput(table[:, 1] + 1j * table[:, 2], table[:, 3] + 1j * table[:, 4],
                         table[:, 0])
    return out if fourier_sign is None else BinauralOutput(out.left, out.right,
                                                           out.frequencies, fourier_sign)
