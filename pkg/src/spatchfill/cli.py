"""
Command-line interface.

Exit codes: 0 success, 1 I/O or parse failure, 2 validation failure.
Machine-readable output goes to stdout as JSON; diagnostics go to stderr.
"""

import argparse
import json
import sys

import numpy as np

from . import domain as dom
from . import labels as lab
from .bezier import validate_ribbon
from .errors import (
    InconsistentPanelError,
    MalformedRibbonError,
    NumericalError,
    OutOfDomainError,
    ParseError,
    SPatchError,
    StructuralError,
)
from .fill import fill_c0, g1_panels
from .generate import random_ribbon
from .interior import solve_interior
from .meshio import mesh_patch, read_net, read_ribbon, write_net, write_obj, write_ribbon
from .spatch import eval_at_domain_point, evaluate
from .verify import DEFAULT_OFFSETS, run_checks

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2


class CliFailure(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _emit(obj):
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _floats(text, what):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise CliFailure(f"{what}: expected comma-separated numbers, got {text!r}", EXIT_INVALID)


def _load_ribbon(path):
    try:
        return read_ribbon(path)
    except OSError as exc:
        raise CliFailure(f"cannot read ribbon: {exc}", EXIT_IO)
    except (ParseError, StructuralError, MalformedRibbonError) as exc:
        raise CliFailure(f"cannot parse ribbon: {exc}", EXIT_IO)


def _load_net(path):
    try:
        return read_net(path)
    except OSError as exc:
        raise CliFailure(f"cannot read net: {exc}", EXIT_IO)
    except SPatchError as exc:
        raise CliFailure(f"cannot parse net: {exc}", EXIT_IO)


def cmd_fill(args):
    r = _load_ribbon(args.input)
    report = validate_ribbon(r, args.tolerance)
    if not report.passed:
        for v in report.violations:
            print(
                f"twist compatibility violated: {v['identity']} sides "
                f"{v['other_side']}/{v['side']} deviation {v['deviation']:.3e}",
                file=sys.stderr,
            )
        return EXIT_INVALID
    try:
        if args.continuity == "g1":
            partial = g1_panels(r, args.tolerance)
            mask = args.mask or "biharmonic"
        else:
            partial = fill_c0(r, args.tolerance)
            mask = args.mask or "harmonic"
        net = solve_interior(partial, mask)
    except (InconsistentPanelError, NumericalError, MalformedRibbonError) as exc:
        print(f"fill failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        write_net(net, args.output)
    except OSError as exc:
        raise CliFailure(f"cannot write net: {exc}", EXIT_IO)
    fixed = int(partial.fixed.sum())
    _emit({
        "n": net.n,
        "d": r.d,
        "depth": net.depth,
        "points": len(net.index),
        "fixed": fixed,
        "free": len(net.index) - fixed,
        "continuity": args.continuity,
        "mask": mask,
        "output": args.output,
    })
    return EXIT_OK


def cmd_eval(args):
    net = _load_net(args.input)
    if (args.bary is None) == (args.uv is None):
        raise CliFailure("give exactly one of --bary or --uv", EXIT_INVALID)
    if args.bary is not None:
        lam = np.array(_floats(args.bary, "--bary"))
        if len(lam) != net.n:
            raise CliFailure(f"--bary needs {net.n} values, got {len(lam)}", EXIT_INVALID)
        if abs(lam.sum() - 1.0) > 1e-9 or np.any(lam < -1e-12):
            raise CliFailure(f"--bary values must be non-negative and sum to 1 "
                             f"(sum {lam.sum():.12g})", EXIT_INVALID)
        p = evaluate(net, lam)
    else:
        x = np.array(_floats(args.uv, "--uv"))
        if len(x) != 2:
            raise CliFailure("--uv needs two values", EXIT_INVALID)
        try:
            p = eval_at_domain_point(net, x, args.coords)
        except OutOfDomainError as exc:
            raise CliFailure(str(exc), EXIT_INVALID)
    _emit({"point": p.tolist()})
    return EXIT_OK


def cmd_mesh(args):
    net = _load_net(args.input)
    mesh = mesh_patch(net, args.resolution, args.coords, with_normals=not args.no_normals)
    try:
        write_obj(mesh, args.output)
    except OSError as exc:
        raise CliFailure(f"cannot write mesh: {exc}", EXIT_IO)
    _emit({
        "vertices": len(mesh.vertices),
        "triangles": len(mesh.triangles),
        "degenerate_normals": mesh.meta.get("degenerate_normals", 0),
        "output": args.output,
    })
    return EXIT_OK


def cmd_check(args):
    net = _load_net(args.input)
    r = _load_ribbon(args.ribbon)
    try:
        report = run_checks(
            net, r, args.continuity, samples=args.samples, offsets=DEFAULT_OFFSETS,
            scheme=args.coords, tol=args.tolerance, c0_tol=args.c0_tolerance,
            g1_tol=args.g1_tolerance,
        )
    except SPatchError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = json.dumps(report.to_dict())
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise CliFailure(f"cannot write report: {exc}", EXIT_IO)
    else:
        print(text)
    if not report.passed:
        failed = [k for k, v in report.flags.items() if not v]
        print(f"checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_info(args):
    net = _load_net(args.input)
    counts = lab.class_counts(net.index)
    _emit({
        "n": net.n,
        "depth": net.depth,
        "points": len(net.index),
        "boundary": counts[lab.BOUNDARY],
        "panel_ring": counts[lab.RING],
        "fixed_g1": counts[lab.BOUNDARY] + counts[lab.RING],
        "free_g1": counts[lab.FREE],
    })
    return EXIT_OK


def cmd_gen(args):
    try:
        r = random_ribbon(args.n, args.d, seed=args.seed, amplitude=args.amplitude)
    except (ValueError, SPatchError) as exc:
        raise CliFailure(str(exc), EXIT_INVALID)
    try:
        write_ribbon(r, args.output)
    except OSError as exc:
        raise CliFailure(f"cannot write ribbon: {exc}", EXIT_IO)
    _emit({"n": r.n, "d": r.d, "seed": args.seed, "output": args.output})
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spatchfill", description="G1 hole filling with S-patches."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def coords(p):
        p.add_argument("--coords", choices=dom.SCHEMES, default="wachspress")

    p = sub.add_parser("fill", help="fill a ribbon with an S-patch")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--continuity", choices=("c0", "g1"), default="g1")
    p.add_argument("--mask", choices=("harmonic", "biharmonic"), default=None)
    p.add_argument("--tolerance", type=float, default=1e-9)
    coords(p)
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("eval", help="evaluate a net")
    p.add_argument("--input", required=True)
    p.add_argument("--bary")
    p.add_argument("--uv")
    coords(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("mesh", help="tessellate a net to OBJ")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--resolution", type=int, default=16)
    p.add_argument("--no-normals", action="store_true")
    coords(p)
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("check", help="verify continuity against a ribbon")
    p.add_argument("--input", required=True)
    p.add_argument("--ribbon", required=True)
    p.add_argument("--output")
    p.add_argument("--continuity", choices=("c0", "g1"), default="g1")
    p.add_argument("--samples", type=int, default=33)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--c0-tolerance", type=float, default=1e-11)
    p.add_argument("--g1-tolerance", type=float, default=2e-3)
    coords(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("info", help="label counts of a net")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("gen", help="write a seeded random twist-compatible ribbon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--amplitude", type=float, default=0.2)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
