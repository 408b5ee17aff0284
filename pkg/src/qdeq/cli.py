"""Command line interface.

One equation per invocation, given as a positional argument or through
--input (a UTF-8 text file, or "-" for stdin).  Output goes to stdout
in the format chosen by --format (text or json); diagnostics go to
stderr as one JSON object per line.

Exit codes: 0 success, 1 error, 2 expectation failure (a corpus run
with failing expectations, or a growth check against explicitly given
bounds that does not hold).
"""

import argparse
import json
import sys
from fractions import Fraction

from . import growth
from .corpus import corpus, get_entry, jones
from .dsl import parse, parse_ratq
from .errors import (
    DegenerateAfterEvaluation,
    QdeqError,
    RootOfUnityDetected,
)
from .nonlinear import QdeqPoly, linearize
from .series import TruncSeries
from .skewop import newton_polygon, resonance_poly
from .solver import extend
from .unitcircle import roots_of, scan_condition_H, unit_q


def _diag(**fields):
    print(json.dumps(fields), file=sys.stderr)


def _emit(payload, fmt):
    if fmt == "json":
        obj = payload.to_json() if hasattr(payload, "to_json") else payload
        print(json.dumps(obj))
    else:
        if hasattr(payload, "to_text"):
            print(payload.to_text())
        elif isinstance(payload, str):
            print(payload)
        else:
            print(json.dumps(payload, indent=2))
    return 0


def _read_text(args):
    if getattr(args, "equation", None):
        return args.equation
    if args.input:
        if args.input == "-":
            return sys.stdin.read()
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    raise QdeqError("no equation given; pass it as an argument or via --input")


def _read_source(args):
    return parse(_read_text(args).strip())


def _seed_coeffs(text):
    if not text:
        raise QdeqError("this command needs --seed \"c0,c1,...\"")
    return [parse_ratq(part.strip()) for part in text.split(",")]


def _as_equation(src):
    """Nonlinear input passes through; operators become sum a_i w_i = 0."""
    if src.kind == "nonlinear":
        return src.parsed
    return QdeqPoly.from_operator(src.parsed)


def _fraction(text):
    return Fraction(text)


# -- subcommands -------------------------------------------------------------


def _cmd_parse(args):
    src = _read_source(args)
    if args.format == "json":
        return _emit(src, args.format)
    print(f"{src.kind}: {src.canonical_text()}")
    return 0


def _cmd_polygon(args):
    src = _read_source(args)
    if src.kind != "linear_operator":
        raise QdeqError("polygon needs a linear operator; for a nonlinear"
                        " equation use linearize first")
    return _emit(newton_polygon(src.parsed), args.format)


def _cmd_linearize(args):
    src = _read_source(args)
    if src.kind != "nonlinear":
        raise QdeqError("linearize needs a nonlinear equation; an operator"
                        " is already linear")
    seed = _seed_coeffs(args.seed)
    if args.order is not None and args.order > len(seed) - 1:
        series = extend(src.parsed, seed, args.order).solution
    else:
        series = TruncSeries(seed)
    return _emit(linearize(src.parsed, series), args.format)


def _cmd_solve(args):
    src = _read_source(args)
    F = _as_equation(src)
    seed = _seed_coeffs(args.seed)
    order = args.order if args.order is not None else 16
    return _emit(extend(F, seed, order), args.format)


def _load_series_json(obj):
    if isinstance(obj, list):
        return TruncSeries([parse_ratq(t) for t in obj])
    if "trunc" in obj:
        return TruncSeries.from_json(obj)
    if "coeffs" in obj:  # solve output
        return TruncSeries([parse_ratq(t) for t in obj["coeffs"]],
                           obj.get("resolved_through", len(obj["coeffs"]) - 1))
    raise QdeqError("unrecognized series JSON; expected a coefficient list,"
                    " a series object, or solve output")


def _cmd_growth(args):
    text = _read_text(args).strip()
    polygon = None
    if text.startswith(("[", "{")):
        y = _load_series_json(json.loads(text))
        if args.predict_from_polygon:
            raise QdeqError("--predict-from-polygon needs an equation, not"
                            " a bare series")
    else:
        src = parse(text)
        F = _as_equation(src)
        seed = _seed_coeffs(args.seed)
        order = args.order if args.order is not None else 16
        rep = extend(F, seed, order)
        y = rep.solution
        if args.predict_from_polygon:
            polygon = newton_polygon(linearize(F, y))
    report = growth.analyze(
        y,
        order_deg=args.s, order_ord=args.s,
        slack_deg=args.C, slack_ord=args.C,
        polygon=polygon,
    )
    code = _emit(report, args.format)
    if (args.s is not None or args.C is not None) and not report.passed():
        return 2
    return code


def _cmd_jones(args):
    value = jones(args.n)
    if args.format == "json":
        print(json.dumps({"n": args.n, "value": value.to_text(),
                          "deg_q": value.deg_q, "ord_q": value.ord_q}))
    else:
        print(value.to_text())
    return 0


def _cmd_corpus(args):
    if args.entry:
        try:
            entries = [get_entry(args.entry)]
        except KeyError as exc:
            raise QdeqError(str(exc.args[0])) from None
    else:
        entries = corpus()
    if not args.run:
        listing = [{"id": e.id, "description": e.description,
                    "seeds": [c.to_text() for c in e.seeds],
                    "expectations": [x.name for x in e.expected],
                    "variants": sorted(e.variants)}
                   for e in entries]
        if args.format == "json":
            print(json.dumps({"entries": listing}))
        else:
            for item in listing:
                print(f"{item['id']}: {item['description']}")
                if item["seeds"]:
                    print(f"  seeds: {', '.join(item['seeds'])}")
                print(f"  expectations: {', '.join(item['expectations'])}")
                if item["variants"]:
                    print(f"  variants: {', '.join(item['variants'])}")
        return 0
    reports = [e.run(order=args.order) for e in entries]
    ok = all(r.passed() for r in reports)
    if args.format == "json":
        print(json.dumps({"passed": ok,
                          "entries": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            print(r.to_text())
        print("all expectations pass" if ok else "EXPECTATION FAILURES")
    return 0 if ok else 2


def _parse_theta(text):
    if "/" in text or "." not in text:
        return Fraction(text)
    return float(text)


def _cmd_diophantine(args):
    theta = _parse_theta(args.theta)
    q = unit_q(theta)
    if args.op:
        with open(args.op, encoding="utf-8") as fh:
            src = parse(fh.read().strip())
        if src.kind != "linear_operator":
            raise QdeqError("--op must contain a linear operator")
        roots = roots_of(resonance_poly(src.parsed), q)
    elif args.roots:
        roots = [complex(part.strip()) for part in args.roots.split(",")]
    else:
        roots = [1 + 0j]
    grid = None
    if args.c2_grid:
        grid = [Fraction(part.strip()) for part in args.c2_grid.split(",")]
    try:
        scan = scan_condition_H(q, roots, args.N, c2_grid=grid, theta=theta)
    except RootOfUnityDetected as exc:
        payload = {"verdict": "root_of_unity", "n": exc.n}
        if args.format == "json":
            print(json.dumps(payload))
        else:
            print(f"root of unity: q^{exc.n} = 1")
        return 0
    return _emit(scan, args.format)


# -- argument wiring -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; 2 means expectation failure here,
    so usage problems are rerouted to the error exit code."""

    def error(self, message):
        _diag(error="UsageError", message=message)
        raise SystemExit(1)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--input", help="equation file, or - for stdin")
    common.add_argument("--order", type=int, help="truncation order")
    common.add_argument("--seed", help="comma-separated seed coefficients")

    top = _Parser(
        prog="qdeq",
        description="Exact Newton polygons, series solutions, and q-Gevrey"
                    " growth checks for q-difference equations.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common],
                       help="echo the canonical form of an equation")
    p.add_argument("equation", nargs="?")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("polygon", parents=[common],
                       help="Newton polygon of a linear operator")
    p.add_argument("equation", nargs="?")
    p.set_defaults(fn=_cmd_polygon)

    p = sub.add_parser("linearize", parents=[common],
                       help="operator of partial derivatives along a series")
    p.add_argument("equation", nargs="?")
    p.set_defaults(fn=_cmd_linearize)

    p = sub.add_parser("solve", parents=[common],
                       help="extend seed coefficients to a series solution")
    p.add_argument("equation", nargs="?")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("growth", parents=[common],
                       help="q-Gevrey growth report for a series or solution")
    p.add_argument("equation", nargs="?",
                   help="equation text, or JSON series/solve output")
    p.add_argument("--s", type=_fraction,
                   help="assert this growth order on both sides")
    p.add_argument("--C", type=_fraction,
                   help="assert this slack constant on both sides")
    p.add_argument("--predict-from-polygon", action="store_true",
                   help="compare against the linearized polygon prediction")
    p.set_defaults(fn=_cmd_growth)

    p = sub.add_parser("jones", parents=[common],
                       help="figure-eight invariant at one color")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_jones)

    p = sub.add_parser("corpus", parents=[common],
                       help="list bundled examples, or run their checks")
    p.add_argument("--run", action="store_true")
    p.add_argument("--entry", help="restrict to one entry id")
    p.set_defaults(fn=_cmd_corpus)

    p = sub.add_parser("diophantine", parents=[common],
                       help="scan |q^n - u| along the unit circle")
    p.add_argument("--theta", required=True,
                   help="rotation number, rational p/r or float")
    p.add_argument("--op", help="file with an operator whose resonance"
                                " roots are scanned")
    p.add_argument("--roots", help="comma-separated complex roots"
                                   " (default: 1)")
    p.add_argument("--N", type=int, default=10000)
    p.add_argument("--c2-grid", dest="c2_grid",
                   help="comma-separated decay exponents")
    p.set_defaults(fn=_cmd_diophantine)

    return top


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DegenerateAfterEvaluation as exc:
        _diag(error="DegenerateAfterEvaluation", message=str(exc))
        return 1
    except QdeqError as exc:
        fields = {"error": type(exc).__name__, "message": str(exc)}
        if hasattr(exc, "pos"):
            fields["pos"] = exc.pos
        _diag(**fields)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        _diag(error=type(exc).__name__, message=str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
