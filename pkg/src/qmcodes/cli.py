"""Command-line front end.

    qmcodes <command> <spec.json> [--mode qi|complete] [--format text|json]
                                  [--jobs N] [--budget N]

Commands: residues, classes, enum, dual, transform, verify, mindist.

Exit codes: 0 success (verify: verdict equal), 1 malformed spec, 2
computation error (error name on stderr), 3 verification mismatch.  Output
for a given spec and flags is byte-identical across runs and worker counts.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import codes, macwilliams
from .codespec import Context, build_context, load_spec, resolve_budget
from .enumerator import weight_enumerator
from .errors import ComputationError, SpecFileError

EXIT_OK = 0
EXIT_SPEC = 1
EXIT_COMPUTE = 2
EXIT_MISMATCH = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmcodes",
        description="Weight enumerators and MacWilliams transforms for codes "
                    "over quaternion-integer residue rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("residues", "print the canonical residues of the ring"),
        ("classes", "print the weight-class partition"),
        ("enum", "print the code's weight enumerator"),
        ("dual", "print the brute-force dual's weight enumerator"),
        ("transform", "print the MacWilliams image of the code's enumerator"),
        ("verify", "check the transform against the brute-force dual"),
        ("mindist", "print the minimum quaternion-Mannheim distance"),
    ]:
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("spec", help="path to a code-spec JSON file")
        cmd.add_argument("--mode", choices=["qi", "complete"], default="qi",
                         help="enumerator flavor (default: qi)")
        cmd.add_argument("--format", choices=["text", "json"], default="text",
                         dest="fmt", help="output rendering (default: text)")
        cmd.add_argument("--jobs", type=int, default=1,
                         help="worker cap for the dual search")
        cmd.add_argument("--budget", type=int, default=None,
                         help="max p^(2n) for brute force (also QMCODES_BUDGET)")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        ctx = build_context(spec)
        budget = resolve_budget(spec, args.budget)
        return _dispatch(args, ctx, budget)
    except SpecFileError as exc:
        print(f"SpecFileError: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except ComputationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def _dispatch(args, ctx: Context, budget: int) -> int:
    out = sys.stdout
    if args.command == "residues":
        payload = dict(ctx.ring.to_json())
        payload["residues"] = [list(q.coeffs()) for q in ctx.ring.residues]
        if args.fmt == "json":
            _emit_json(payload, out)
        else:
            print(f"p = {ctx.ring.p}, pi = {ctx.ring.modulus.pi}", file=out)
            for q in ctx.ring.residues:
                print(f"  {list(q.coeffs())}  {q}", file=out)
        return EXIT_OK

    if args.command == "classes":
        part = ctx.partition
        if args.fmt == "json":
            _emit_json({
                "p": ctx.ring.p,
                "pi": list(ctx.ring.modulus.pi.coeffs()),
                "m": part.m,
                "reps": [list(q.coeffs()) for q in part.reps],
                "classes": part.to_json(),
                "left_right_agree": part.left_right_agree,
            }, out)
        else:
            print(f"p = {ctx.ring.p}, m = {part.m}, "
                  f"left/right orbits agree: {str(part.left_right_agree).lower()}",
                  file=out)
            for t in range(part.m + 1):
                members = ", ".join(str(q) for q in part.class_members(t))
                print(f"  class {t} (rep {part.reps[t]}): {{{members}}}", file=out)
        return EXIT_OK

    if args.command == "mindist":
        print(codes.min_qm_distance(ctx.code), file=out)
        return EXIT_OK

    classifier = ctx.classifier(args.mode)

    if args.command == "enum":
        _emit_enum(weight_enumerator(ctx.code, classifier), args.fmt, out)
        return EXIT_OK

    if args.command == "dual":
        dual_code = codes.dual(ctx.code, budget=budget, jobs=args.jobs)
        _emit_enum(weight_enumerator(dual_code, classifier), args.fmt, out)
        return EXIT_OK

    if args.command == "transform":
        primal = weight_enumerator(ctx.code, classifier)
        if args.mode == "qi":
            image = macwilliams.qi_transform(primal, ctx.code.size, ctx.qi_kernel)
        else:
            image = macwilliams.complete_transform(
                primal, ctx.code.size, ctx.complete_kernel)
        _emit_enum(image, args.fmt, out)
        return EXIT_OK

    if args.command == "verify":
        report = macwilliams.verify_duality(
            ctx.code, ctx.correspondence, ctx.partition, ctx.qi_kernel,
            budget=budget, jobs=args.jobs)
        if args.fmt == "json":
            _emit_json(report.to_json(), out)
        else:
            print(report.render_text(), file=out)
        return EXIT_OK if report.equal else EXIT_MISMATCH

    raise AssertionError(f"unhandled command {args.command}")


def _emit_enum(enum, fmt: str, out) -> None:
    if fmt == "json":
        _emit_json(enum.to_json(), out)
    else:
        print(enum.render_text(), file=out)


def _emit_json(payload, out) -> None:
    json.dump(payload, out, indent=2, sort_keys=True)
    out.write("\n")


if __name__ == "__main__":
    sys.exit(main())
