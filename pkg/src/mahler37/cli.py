"""Command-line front end.

Every subcommand prints JSON to stdout (CSV/SVG for `region`).  Floats are
rendered as decimal strings with 15 significant digits so that identical runs
produce identical bytes.  Exit codes: 0 success, 1 verification failure,
2 usage or parse error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import curves, dilog, divisors, lseries, region
from .errors import Mahler37Error, TorusVanishingSuspected
from .measure import mahler_grid2d, mahler_jensen, vanishes_on_torus
from .polyparse import parse_line_function, parse_poly

_DEFAULTS = {"tol": 1e-6, "nodes": 4096, "terms": 400, "grid": 40}


def _fmt(x: float) -> str:
    return f"{float(x):.15g}"


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _step(name, value, expected, tol, ok):
    return {"name": name, "value": value, "expected": expected,
            "tol": _fmt(tol) if isinstance(tol, float) else str(tol), "pass": bool(ok)}


# ----------------------------------------------------------------------------
# Individual subcommands.

def _cmd_curve_info(args) -> int:
    curve = curves.CURVES[args.model]
    gen = curves.generator(curve)
    _emit({
        "model": curve.name,
        "a_invariants": [str(curve.a1), str(curve.a2), str(curve.a3),
                         str(curve.a4), str(curve.a6)],
        "discriminant": str(curves.discriminant(curve)),
        "generator": repr(gen),
        "multiples": {str(n): repr(curves.multiple(curve, n)) for n in range(1, 7)},
    })
    return 0


def _cmd_divisor(args) -> int:
    f = parse_line_function(args.function)
    div = divisors.divisor_of(args.model, f)
    _emit({
        "model": args.model,
        "function": args.function,
        "divisor": {str(n): v for n, v in div.items()},
        "degree": div.degree(),
    })
    return 0


def _cmd_diamond(args) -> int:
    f = parse_line_function(args.f)
    g = parse_line_function(args.g)
    vec = divisors.diamond(divisors.divisor_of(args.model, f),
                           divisors.divisor_of(args.model, g))
    _emit({"model": args.model, "f": args.f, "g": args.g, "vector": vec.dense()})
    return 0


def _cmd_tame(args) -> int:
    f = parse_line_function(args.f)
    g = parse_line_function(args.g)
    value = divisors.tame_symbol(args.model, f, g, args.at)
    _emit({"model": args.model, "f": args.f, "g": args.g, "at": args.at,
           "value": str(value)})
    return 0


def _cmd_dilog(args) -> int:
    entries = [int(v) for v in args.vector.split(",")]
    vec = divisors.DiamondVector.from_dense(entries)
    pd = dilog.periods(curves.E)
    result = dilog.dilog_of_vector(pd, vec)
    _emit({"vector": entries, "value": _fmt(result.value), "abs_err": _fmt(result.abs_err)})
    return 0


def _cmd_measure(args) -> int:
    poly = parse_poly(args.poly)
    if args.method == "jensen":
        result = mahler_jensen(poly, args.tol)
    else:
        result = mahler_grid2d(poly, args.grid)
    _emit({"poly": poly.render(), "method": result.method, "value": _fmt(result.value),
           "abs_err": _fmt(result.abs_err), "samples": result.samples})
    return 0


def _region_csv(grid) -> str:
    lines = ["theta1,theta2,re_k,im_k"]
    for t1, t2, k in grid.samples:
        lines.append(f"{t1:.6g},{t2:.6g},{k.real:.6g},{k.imag:.6g}")
    return "\n".join(lines) + "\n"


def _region_svg(grid) -> str:
    # axes: Re k in [-6, 4], Im k in [-5, 5]
    width = height = 500.0
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" '
        f'height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for _, _, k in grid.samples:
        cx = (k.real - (-6.0)) / 10.0 * width
        cy = (5.0 - k.imag) / 10.0 * height
        if 0.0 <= cx <= width and 0.0 <= cy <= height:
            parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="1" '
                         'stroke="black" stroke-width="1" fill="none"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_region(args) -> int:
    grid = region.region_grid(args.family, args.grid)
    text = _region_csv(grid) if args.out == "csv" else _region_svg(grid)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_regulator(args) -> int:
    path = region.path_sigma(args.family, args.k, args.nodes)
    eta = region.eta_integral(path)
    m = mahler_jensen(region.family_poly(args.family, args.k), 1e-9)
    two_pi_m = 2.0 * math.pi * m.value
    _emit({"family": args.family, "k": _fmt(args.k), "eta": _fmt(eta),
           "two_pi_m": _fmt(two_pi_m), "ratio": _fmt(abs(eta) / two_pi_m)})
    return 0


def _cmd_lvalue(args) -> int:
    data = lseries.an_expand(args.terms)
    l2 = lseries.l_value_2(args.terms, data)
    lp = lseries.l_prime_0(args.terms, data)
    _emit({"L2": _fmt(l2.value), "Lprime0": _fmt(lp.value), "eps": data.eps,
           "terms": args.terms})
    return 0


def _cmd_recognize(args) -> int:
    guess = lseries.recognize_rational(args.value, args.maxden, args.tol)
    if guess is None:
        _emit({"value": _fmt(args.value), "maxden": args.maxden, "result": None})
    else:
        _emit({"value": _fmt(args.value), "maxden": args.maxden,
               "p": guess.p, "q": guess.q, "residual": _fmt(guess.residual)})
    return 0


def _cmd_relation(args) -> int:
    p1 = parse_poly(args.p1)
    p2 = parse_poly(args.p2)
    for label, poly in (("p1", p1), ("p2", p2)):
        scan = vanishes_on_torus(poly, 512)
        if scan.vanishes:
            raise TorusVanishingSuspected(
                f"{label} = {poly.render()} vanishes on the torus near "
                f"(theta1, theta2) = {scan.witness}; no measure relation is computed")
    m1 = mahler_jensen(p1, args.tol)
    m2 = mahler_jensen(p2, args.tol)
    ratio = m2.value / m1.value
    guess = lseries.recognize_rational(ratio, 100, 100.0 * args.tol)
    out = {
        "p1": p1.render(), "p2": p2.render(),
        "m1": _fmt(m1.value), "m2": _fmt(m2.value), "ratio": _fmt(ratio),
        "conjectural": True,
    }
    if guess is None:
        out["identity"] = None
    else:
        out["identity"] = f"m(p2) = {guess.p}/{guess.q} * m(p1)"
        out["residual"] = _fmt(guess.residual)
    _emit(out)
    return 0


# ----------------------------------------------------------------------------
# The verification pipeline.

_EXPECTED_DIVISORS = {
    ("E", "x"): {1: 1, -1: 1, 0: -2},
    ("E", "y"): {1: 1, 2: 1, -3: 1, 0: -3},
    ("E1", "x"): {2: 1, -2: 1, 0: -2},
    ("E1", "y"): {2: 2, -4: 1, 0: -3},
    ("E2", "x"): {-2: 1, 2: 1, 0: -2},
    ("E2", "y"): {2: 1, -1: 2, 0: -3},
}

_EXPECTED_VECTORS = {
    "x<>y": [1, 2, -3, 1, 0, 0],
    "x1<>y1": [0, 5, 0, -4, 0, 1],
    "x2<>y2": [-6, 2, 2, -1, 0, 0],
    "-y<>1+y": [-8, -7, 8, 1, 0, -1],
    "x-y<>1-x+y": [-9, 5, -5, 5, 0, -1],
}


def _cmd_verify(args) -> int:
    steps = []
    x_fn = divisors.LineFunction(0, 1, 0)
    y_fn = divisors.LineFunction(0, 0, 1)

    # divisors of the six coordinate functions, exactly
    computed_div = {}
    for (model, which), expected in _EXPECTED_DIVISORS.items():
        fn = x_fn if which == "x" else y_fn
        div = divisors.divisor_of(model, fn)
        computed_div[(model, which)] = div
        ok = div == divisors.Divisor(expected)
        steps.append(_step(f"divisor_{which}_{model}", str(dict(div.items())),
                           str(dict(sorted(expected.items()))), 0, ok))

    # diamond vectors
    vecs = {
        "x<>y": divisors.diamond(computed_div[("E", "x")], computed_div[("E", "y")]),
        "x1<>y1": divisors.diamond(computed_div[("E1", "x")], computed_div[("E1", "y")]),
        "x2<>y2": divisors.diamond(computed_div[("E2", "x")], computed_div[("E2", "y")]),
        "-y<>1+y": divisors.diamond(
            divisors.divisor_of("E", divisors.LineFunction(0, 0, -1)),
            divisors.divisor_of("E", divisors.LineFunction(1, 0, 1))),
        "x-y<>1-x+y": divisors.diamond(
            divisors.divisor_of("E", divisors.LineFunction(0, 1, -1)),
            divisors.divisor_of("E", divisors.LineFunction(1, -1, 1))),
    }
    for name, expected in _EXPECTED_VECTORS.items():
        ok = vecs[name].dense() == expected
        steps.append(_step(f"diamond_{name}", str(vecs[name].dense()), str(expected), 0, ok))

    if args.selftest_corrupt:
        # negative-control hook: perturb one table entry so the linear
        # relations below must fail
        vecs["x<>y"] = vecs["x<>y"] + divisors.DiamondVector({1: 1})

    # integer linear relations between the vectors
    rel1_l = divisors.vec_combine([(7, vecs["x<>y"]), (1, vecs["x1<>y1"])])
    rel1_r = divisors.vec_combine([(-2, vecs["-y<>1+y"]), (1, vecs["x-y<>1-x+y"])])
    rel2_l = divisors.vec_combine([(5, vecs["x<>y"]), (1, vecs["x2<>y2"])])
    rel2_r = divisors.vec_combine([(-1, vecs["-y<>1+y"]), (1, vecs["x-y<>1-x+y"])])
    steps.append(_step("relation_7xy_plus_x1y1", str(rel1_l.dense()), str(rel1_r.dense()),
                       0, rel1_l == rel1_r))
    steps.append(_step("relation_5xy_plus_x2y2", str(rel2_l.dense()), str(rel2_r.dense()),
                       0, rel2_l == rel2_r))

    # dilogarithm side: Steinberg vanishing and the -7 / -5 ratios
    pd = dilog.periods(curves.E)
    lxy = dilog.dilog_of_vector(pd, vecs["x<>y"]).value
    for name in ("-y<>1+y", "x-y<>1-x+y"):
        val = dilog.dilog_of_vector(pd, vecs[name]).value
        steps.append(_step(f"steinberg_{name}", _fmt(val), "0", 1e-8, abs(val) < 1e-8))
    for name, expected in (("x1<>y1", -7.0), ("x2<>y2", -5.0)):
        ratio = dilog.dilog_of_vector(pd, vecs[name]).value / lxy
        ok = abs(ratio - expected) < 1e-8 * abs(expected)
        steps.append(_step(f"dilog_ratio_{name}", _fmt(ratio), _fmt(expected), 1e-8, ok))

    # regulator integrals against Mahler measures at the boundary parameters
    measures = {}
    for fam, k in (("F1", -4.0), ("F2", -2.0)):
        path = region.path_sigma(fam, k, args.nodes)
        eta = region.eta_integral(path)
        m = mahler_jensen(region.family_poly(fam, k), min(args.tol, 1e-8))
        measures[fam] = m.value
        rel = abs(abs(eta) - 2 * math.pi * m.value) / (2 * math.pi * m.value)
        steps.append(_step(f"regulator_vs_mahler_{fam}_k{k:g}", _fmt(abs(eta)),
                           _fmt(2 * math.pi * m.value), args.tol, rel < args.tol))

    ratio = measures["F2"] / measures["F1"]
    ok = abs(ratio - 5.0 / 7.0) < args.tol
    steps.append(_step("mahler_ratio_5_over_7", _fmt(ratio), _fmt(5.0 / 7.0), args.tol, ok))

    if args.lseries:
        data = lseries.an_expand(args.terms)
        lp = lseries.l_prime_0(args.terms, data).value
        for fam, label in (("F2", "a"), ("F1", "b")):
            guess = lseries.recognize_rational(measures[fam] / lp, 48, 1e-5)
            val = "none" if guess is None else f"{guess.p}/{guess.q}"
            steps.append(_step(f"bloch_beilinson_{label}", val, "rational, den <= 48",
                               1e-5, guess is not None))

    ok_all = all(s["pass"] for s in steps)
    _emit({"command": "verify", "pass": ok_all, "steps": steps})
    return 0 if ok_all else 1


# ----------------------------------------------------------------------------
# Argument wiring.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mahler37",
        description="Mahler-measure identities for the conductor-37 elliptic curve",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", help="named curve models")
    curve_sub = p.add_subparsers(dest="curve_command", required=True)
    info = curve_sub.add_parser("info", help="model constants and small multiples")
    info.add_argument("--model", choices=("E", "E1", "E2"), default="E")
    info.set_defaults(func=_cmd_curve_info)

    p = sub.add_parser("divisor", help="divisor of a line function")
    p.add_argument("--model", choices=("E", "E1", "E2"), default="E")
    p.add_argument("--function", required=True, help="line function, e.g. '1+y'")
    p.set_defaults(func=_cmd_divisor)

    p = sub.add_parser("diamond", help="diamond pairing of two line-function divisors")
    p.add_argument("--model", choices=("E", "E1", "E2"), default="E")
    p.add_argument("-f", required=True)
    p.add_argument("-g", required=True)
    p.set_defaults(func=_cmd_diamond)

    p = sub.add_parser("tame", help="tame symbol of two line functions at nP")
    p.add_argument("--model", choices=("E", "E1", "E2"), default="E")
    p.add_argument("-f", required=True)
    p.add_argument("-g", required=True)
    p.add_argument("--at", type=int, required=True, help="point index n (0 for infinity)")
    p.set_defaults(func=_cmd_tame)

    p = sub.add_parser("dilog", help="elliptic dilogarithm of a folded vector")
    p.add_argument("--vector", required=True, help="comma-separated a1,...,a6")
    p.set_defaults(func=_cmd_dilog)

    p = sub.add_parser("measure", help="logarithmic Mahler measure")
    p.add_argument("--poly", required=True)
    p.add_argument("--method", choices=("jensen", "grid2d"), default="jensen")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--grid", type=int, default=512, help="grid2d base size")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("region", help="forward image of the torus grid")
    p.add_argument("--family", choices=region.FAMILY_IDS, default="F1")
    p.add_argument("--grid", type=int, default=_DEFAULTS["grid"])
    p.add_argument("--out", choices=("csv", "svg"), default="csv")
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("regulator", help="regulator path integral vs Mahler measure")
    p.add_argument("--family", choices=region.FAMILY_IDS, default="F1")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--nodes", type=int, default=_DEFAULTS["nodes"])
    p.set_defaults(func=_cmd_regulator)

    p = sub.add_parser("lvalue", help="L(E,2), L'(E,0), functional-equation sign")
    p.add_argument("--terms", type=int, default=_DEFAULTS["terms"])
    p.set_defaults(func=_cmd_lvalue)

    p = sub.add_parser("recognize", help="bounded-denominator rational recognition")
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--maxden", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("relation", help="conjectural measure ratio of two polynomials")
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_cmd_relation)

    p = sub.add_parser("verify", help="run the full verification pipeline")
    p.add_argument("--tol", type=float, default=_DEFAULTS["tol"])
    p.add_argument("--nodes", type=int, default=_DEFAULTS["nodes"])
    p.add_argument("--terms", type=int, default=_DEFAULTS["terms"])
    p.add_argument("--grid", type=int, default=_DEFAULTS["grid"])
    p.add_argument("--lseries", action="store_true",
                   help="also recognize the measures against L'(E,0)")
    p.add_argument("--selftest-corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Mahler37Error as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return exc.exit_code
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
