"""Command-line front end.  JSON in, JSON out, stable exit codes.

Exit codes: 0 success or witness found; 2 hypothesis violated; 3
counterexample candidate (or selftest failure); 4 input or processing error.
JSON goes to stdout, a short human summary to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import acceptance, chow, covering, harness, jsonio, polytope
from .covering import (
    COUNTEREXAMPLE_CANDIDATE,
    HYPOTHESIS_VIOLATED,
    WITNESS_FOUND,
    LatticeModel,
)
from .polytope import moment_map_eval

EXIT_OK = 0
EXIT_HYPOTHESIS_VIOLATED = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_INPUT_ERROR = 4

_VERDICT_EXIT = {
    WITNESS_FOUND: EXIT_OK,
    HYPOTHESIS_VIOLATED: EXIT_HYPOTHESIS_VIOLATED,
    COUNTEREXAMPLE_CANDIDATE: EXIT_COUNTEREXAMPLE,
}


class InputError(Exception):
    pass


def _load_json(spec: str):
    """Accept a file path, inline JSON (starts with '{'), or '-' for stdin."""
    try:
        if spec == "-":
            return json.load(sys.stdin)
        if spec.lstrip().startswith("{"):
            return json.loads(spec)
        with open(spec) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON near line {exc.lineno}, column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise InputError(f"cannot read input {spec!r}: {exc}")


def _field(data: dict, name: str):
    if name not in data:
        raise InputError(f"missing required field {name!r}")
    return data[name]


def _emit(data: dict, summary: str, out_path=None) -> None:
    text = json.dumps(data, indent=2)
    print(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    print(summary, file=sys.stderr)


def _cmd_ring(args) -> int:
    p = jsonio.polytope_from_json(_load_json(args.input))
    pres = chow.presentation(p)
    _emit(jsonio.presentation_to_json(pres),
          f"ring: {p.num_facets} generators, {len(pres.minimal_nonfaces)} minimal non-faces",
          args.output)
    return EXIT_OK


def _cmd_intersect(args) -> int:
    data = _load_json(args.input)
    p = jsonio.polytope_from_json(_field(data, "polytope"))
    divisors = tuple(
        jsonio.divisor_from_json(p, d) for d in _field(data, "divisors")
    )
    value = chow.intersection_number(chow.IntersectionQuery(p, divisors))
    _emit({"value": jsonio.frac_to_str(value)}, f"intersection number = {value}", args.output)
    return EXIT_OK


def _cmd_principal(args) -> int:
    data = _load_json(args.input)
    p = jsonio.polytope_from_json(_field(data, "polytope"))
    d = jsonio.divisor_from_json(p, _field(data, "divisor"))
    v = chow.is_principal(p, d)
    if v is None:
        _emit({"principal": False}, "not principal", args.output)
    else:
        _emit(
            {"principal": True, "vector": [jsonio.frac_to_str(x) for x in v]},
            f"principal with v = {tuple(map(str, v))}", args.output,
        )
    return EXIT_OK


def _cmd_avoid(args) -> int:
    data = _load_json(args.input)
    p = jsonio.polytope_from_json(_field(data, "polytope"))
    d = jsonio.divisor_from_json(p, _field(data, "divisor"))
    touched = [int(f) for f in _field(data, "touched")]
    cert = chow.avoidance_certificate(p, d, touched)
    if cert is None:
        _emit({"exists": False}, "no avoidance certificate", args.output)
    else:
        _emit({"exists": True, "divisor": jsonio.divisor_to_json(cert)},
              f"certificate avoids facets {sorted(touched)}", args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    data = _load_json(args.input)
    if args.theorem == "kkm-lebesgue":
        p, cover, eps = jsonio.point_cover_from_json(data)
        if args.eps is not None:
            eps = Fraction(args.eps)
        report = covering.kkm_lebesgue_witness(p, cover, eps)
    else:
        cover = jsonio.cover_from_json(data)
        if args.theorem == "lebesgue":
            report = covering.lebesgue_witness(cover)
        elif args.theorem == "kkm":
            if args.k is None:
                raise InputError("--k is required for the kkm theorem")
            report = covering.kkm_witness(cover, args.k)
        elif args.theorem == "complement":
            if args.k is None:
                raise InputError("--k is required for the complement theorem")
            report = covering.complement_witness(cover, args.k)
        elif args.theorem == "axes":
            report = covering.axes_witness(cover)
        else:
            raise InputError(f"unknown theorem {args.theorem!r}")
    _emit(jsonio.report_to_json(report), f"verdict: {report.verdict}", args.output)
    return _VERDICT_EXIT[report.verdict]


def _cmd_color(args) -> int:
    cover = jsonio.cover_from_json(_load_json(args.input))
    classes = covering.palais_coloring(cover)
    data = {
        "classes": [
            [
                {"sets": list(piece.cover_sets), "points": sorted(map(list, piece.points))}
                for piece in cls
            ]
            for cls in classes
        ]
    }
    _emit(data, f"{len(classes)} color classes", args.output)
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.pattern == "bricks":
        cover = harness.shifted_brick_cover(args.n, args.r)
        data = jsonio.cover_to_json(cover)
        summary = f"bricks: {len(cover.sets)} bricks on n={args.n} r={args.r}"
    elif args.pattern == "kkm":
        cover = harness.kkm_standard_cover(args.n, args.r)
        data = jsonio.cover_to_json(cover)
        summary = f"kkm stars: {len(cover.sets)} sets"
    elif args.pattern == "random":
        model = LatticeModel(args.kind, args.n, args.r)
        stamped = harness.random_low_multiplicity_cover(model, args.m, args.seed)
        data = jsonio.cover_to_json(stamped.cover, multiplicity=stamped.multiplicity)
        summary = (
            f"random cover: {len(stamped.cover.sets)} sets, "
            f"measured multiplicity {stamped.multiplicity}"
        )
    else:
        raise InputError(f"unknown pattern {args.pattern!r}")
    _emit(data, summary, args.output)
    return EXIT_OK


def _cmd_moment(args) -> int:
    data = _load_json(args.input)
    raw = _field(data, "input")
    if args.kind == "cpn":
        value = [
            (jsonio.frac_from_str(re), jsonio.frac_from_str(im)) for re, im in raw
        ]
    elif args.kind == "product_cp1":
        value = [
            tuple(
                (jsonio.frac_from_str(re), jsonio.frac_from_str(im))
                for re, im in pair
            )
            for pair in raw
        ]
    else:
        value = [jsonio.frac_from_str(x) for x in raw]
    point = moment_map_eval(args.kind, value)
    _emit({"point": [jsonio.frac_to_str(x) for x in point]},
          f"moment image: {tuple(map(str, point))}", args.output)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    results = acceptance.run_all(quick=args.quick)
    data = {
        "criteria": [
            {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
        ],
        "ok": all(r.ok for r in results),
    }
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}", file=sys.stderr)
    _emit(data, "selftest: " + ("all criteria passed" if data["ok"] else "FAILURES"),
          args.output)
    return EXIT_OK if data["ok"] else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricover",
        description="Exact polytope divisor arithmetic and covering-theorem verifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_input=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if needs_input:
            p.add_argument("--input", "-i", required=True,
                           help="path, inline JSON, or '-' for stdin")
        p.add_argument("--output", "-o", help="also write the JSON result here")
        p.set_defaults(fn=fn)
        return p

    add("ring", _cmd_ring, help="cohomology ring presentation of a polytope")
    add("intersect", _cmd_intersect, help="top intersection number of n divisors")
    add("principal", _cmd_principal, help="test a divisor for linear equivalence to zero")
    add("avoid", _cmd_avoid, help="divisor avoiding a facet set, if one exists")

    p_verify = add("verify", _cmd_verify, help="run a covering-theorem verifier")
    p_verify.add_argument(
        "--theorem", required=True,
        choices=["lebesgue", "kkm", "axes", "complement", "kkm-lebesgue"],
    )
    p_verify.add_argument("--k", type=int, help="face dimension for kkm/complement")
    p_verify.add_argument("--eps", help="touch tolerance p/q for kkm-lebesgue")

    add("color", _cmd_color, help="Palais coloring of a lattice cover")

    p_gen = add("generate", _cmd_generate, needs_input=False,
                help="emit a structured or random cover")
    p_gen.add_argument("--pattern", required=True, choices=["bricks", "kkm", "random"])
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--r", type=int, required=True)
    p_gen.add_argument("--kind", default="cube", choices=["cube", "simplex"])
    p_gen.add_argument("--m", type=int, default=2, help="target multiplicity (random)")
    p_gen.add_argument("--seed", type=int, default=0)

    p_moment = add("moment", _cmd_moment, help="evaluate a moment map exactly")
    p_moment.add_argument(
        "--kind", required=True, choices=["cpn", "product_cp1", "real_sphere"]
    )

    p_self = add("selftest", _cmd_selftest, needs_input=False,
                 help="run the full acceptance matrix")
    p_self.add_argument("--quick", action="store_true",
                        help="smaller suites (smoke run, not the real gate)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (KeyError, TypeError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (
        covering.BadSampleError,
        covering.WrongArityError,
        harness.BadResolutionError,
        chow.NefLiftFailedError,
        polytope.NotSimpleError,
        polytope.UnboundedError,
        polytope.EmptyPolytopeError,
        polytope.ZeroVectorError,
        polytope.BudgetExhaustedError,
    ) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
