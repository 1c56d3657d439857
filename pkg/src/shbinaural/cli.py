"""Command-line front end: encode, render, convert, synth-hrtf and selftest.

Exit codes: 0 success, 1 usage error, 2 invalid data, 3 selftest failure.
"""

import argparse
import sys

import numpy as np

from .conventions import ROWS, convert_convention
from .formats import (FormatError, read_coefficients, read_hrtf, read_scene, write_binaural,
                      write_coefficients, write_hrtf)
from .hrtf import encode_hrtf_for, synth_hrtf
from .render import ConventionMismatch, render
from .scene import PlaneWave, PlaneWaveScene
from .selftest import run_selftest
from .sh import Kind, ShCoefficients, make_gauss_grid, num_coeffs
from .sphere import RadialFilterSpec, SphereSpec, capture_scene

EXIT_USAGE, EXIT_DATA, EXIT_TOLERANCE = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _row(value):
    try:
        row = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid row {value!r}") from None
    if row not in ROWS:
        raise argparse.ArgumentTypeError(f"row must be 1..5, got {row}")
    return row


def _non_negative(value):
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _output(path):
    return sys.stdout if path in (None, "-") else path


def cmd_encode(args):
    scene = read_scene(args.scene)
    grid_order = args.order if args.grid_order is None else args.grid_order
    if grid_order < args.order:
        raise UsageError(f"--grid-order {grid_order} below --order {args.order}")
    sphere = SphereSpec(args.radius_m, args.speed_of_sound)
    spec = RadialFilterSpec(sphere, args.order, args.max_gain_db, ROWS[args.row])
    grid = make_gauss_grid(grid_order)
    positive = scene.frequencies > 0
    data = np.zeros((scene.frequencies.size, num_coeffs(args.order)), dtype=complex)
    if np.any(positive):
        sub = PlaneWaveScene(tuple(PlaneWave(w.colatitude, w.azimuth, w.reference,
                                         w.amplitude[positive]) for w in scene.waves),
                             scene.frequencies[positive])
        data[positive] = capture_scene(sub, grid, spec).data
    coeffs = ShCoefficients(data, scene.frequencies, spec.convention.flavor, Kind.BREVE,
                            spec.convention)
    write_coefficients(_output(args.out), coeffs)


def _infer_grid_order(n_directions):
    # (Q+1)(2Q+1) nodes
    for q in range(65):
        if (q + 1) * (2 * q + 1) == n_directions:
            return q
    raise FormatError(f"{n_directions} HRTF directions do not form a Gauss grid; "
                      "pass --grid-order")


def cmd_render(args):
    field = read_coefficients(args.coefficients)
    if field.convention is None or field.kind is not Kind.BREVE:
        raise FormatError("coefficient file must hold breve coefficients with a convention")
    hrtfs = read_hrtf(args.hrtf)
    q = _infer_grid_order(len(hrtfs)) if args.grid_order is None else args.grid_order
    order = min(field.order, q)
    hrtf = encode_hrtf_for(hrtfs, make_gauss_grid(q), field.convention, order)
    write_binaural(_output(args.out), render(field, hrtf))


def cmd_convert(args):
    field = read_coefficients(args.coefficients)
    if field.convention is None:
        raise FormatError("coefficient file header carries no convention")
    write_coefficients(_output(args.out), convert_convention(field, ROWS[args.row]))


def cmd_synth_hrtf(args):
    grid = make_gauss_grid(args.grid_order if args.grid_order is not None else args.order)
    frequencies = np.array([float(f) for f in args.frequencies.split(",")])
    write_hrtf(_output(args.out), synth_hrtf(args.order, args.seed, frequencies, grid))


def cmd_selftest(args):
    results = run_selftest(args.seed, args.order)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    if args.verbose:
        print(f"seed={args.seed} order={args.order} checks={len(results)}")
    print("selftest " + ("PASSED" if ok else "FAILED"))
    return 0 if ok else EXIT_TOLERANCE


def build_parser():
    parser = _Parser(prog="shbinaural",
                     description="Spherical-harmonic binaural rendering toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encode", help="simulate a rigid-sphere array capture and encode it")
    p.add_argument("scene", help="scene JSON file")
    p.add_argument("--row", type=_row, required=True)
    p.add_argument("--order", type=_non_negative, required=True)
    p.add_argument("--grid-order", type=_non_negative)
    p.add_argument("--radius-m", type=float, default=0.042)
    p.add_argument("--speed-of-sound", type=float, default=343.0)
    p.add_argument("--max-gain-db", type=float, default=40.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("render", help="render breve coefficients binaurally")
    p.add_argument("coefficients")
    p.add_argument("hrtf", help="HRTF text file sampled on a Gauss grid")
    p.add_argument("--grid-order", type=_non_negative)
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("convert", help="convert coefficients to another convention row")
    p.add_argument("coefficients")
    p.add_argument("--row", type=_row, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("synth-hrtf", help="write a seeded band-limited synthetic HRTF set")
    p.add_argument("--order", type=_non_negative, required=True)
    p.add_argument("--grid-order", type=_non_negative)
    p.add_argument("--frequencies", required=True, help="comma-separated list in Hz")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_synth_hrtf)

    p = sub.add_parser("selftest", help="run the oracle-versus-pipeline checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=_non_negative, default=4)
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except UsageError as exc:
        print(f"shbinaural: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConventionMismatch as exc:
        print(f"shbinaural: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (FormatError, ValueError, KeyError, OSError) as exc:
        print(f"shbinaural: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
