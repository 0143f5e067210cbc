"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible with `pytest -s` or in the
captured output of a failing run) and asserts the stated tolerance and time
budget.
"""

import math
import time
from fractions import Fraction

import pytest

from mahler37 import (
    DiamondVector,
    Divisor,
    E,
    LineFunction,
    an_expand,
    diamond,
    dilog_of_vector,
    disc_roots,
    divisor_of,
    eta_integral,
    family_poly,
    fit_constant,
    l_prime_0,
    l_value_1,
    l_value_2,
    mahler_grid2d,
    mahler_jensen,
    parse_poly,
    path_sigma,
    period_reality_check,
    periods,
    real_boundary,
    recognize_rational,
    region_grid,
    vanishes_on_torus,
    vec_combine,
)
from mahler37.cli import _region_csv
from mahler37.lseries import fricke_sum

P1_TEXT = "y^2+4*x*y+y-x^3+x^2"
P2_TEXT = "y^2+2*x*y+y-x^3-2*x^2-x"

X_FN = LineFunction(0, 1, 0)
Y_FN = LineFunction(0, 0, 1)


class _Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.start
        if exc_type is None:
            assert self.elapsed < self.seconds, (
                f"{self.name} took {self.elapsed:.1f}s, budget {self.seconds}s")


def _line(name, ok, detail):
    print(f"{name}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"{name}: {detail}"


def test_a1_measure_ratio():
    with _Budget("A1", 60):
        m1 = mahler_jensen(parse_poly(P1_TEXT), 1e-9)
        m2 = mahler_jensen(parse_poly(P2_TEXT), 1e-9)
        ratio = m2.value / m1.value
        err = abs(ratio - 5 / 7) / (5 / 7)
    _line("A1", err < 1e-6, f"m2/m1 = {ratio:.15f}, rel err {err:.2e}")


def test_a2_divisors_exact():
    expected = {
        ("E", "x"): {1: 1, -1: 1, 0: -2},
        ("E", "y"): {1: 1, 2: 1, -3: 1, 0: -3},
        ("E1", "x"): {2: 1, -2: 1, 0: -2},
        ("E1", "y"): {2: 2, -4: 1, 0: -3},
        ("E2", "x"): {-2: 1, 2: 1, 0: -2},
        ("E2", "y"): {2: 1, -1: 2, 0: -3},
    }
    with _Budget("A2", 1):
        results = {key: divisor_of(key[0], X_FN if key[1] == "x" else Y_FN)
                   for key in expected}
        ok = all(results[key] == Divisor(val) for key, val in expected.items())
    _line("A2", ok, f"all {len(expected)} divisors exact, "
          f"(y1) multiplicity 2 at [2P]: {results[('E1', 'y')].coeff(2) == 2}, "
          f"(y2) has 2[-P]: {results[('E2', 'y')].coeff(-1) == 2}")


def _vectors():
    return {
        "xy": diamond(divisor_of("E", X_FN), divisor_of("E", Y_FN)),
        "x1y1": diamond(divisor_of("E1", X_FN), divisor_of("E1", Y_FN)),
        "x2y2": diamond(divisor_of("E2", X_FN), divisor_of("E2", Y_FN)),
        "a": diamond(divisor_of("E", LineFunction(0, 0, -1)),
                     divisor_of("E", LineFunction(1, 0, 1))),
        "b": diamond(divisor_of("E", LineFunction(0, 1, -1)),
                     divisor_of("E", LineFunction(1, -1, 1))),
    }


def test_a3_diamond_vectors_exact():
    expected = {
        "xy": [1, 2, -3, 1, 0, 0],
        "x1y1": [0, 5, 0, -4, 0, 1],
        "x2y2": [-6, 2, 2, -1, 0, 0],
        "a": [-8, -7, 8, 1, 0, -1],
        "b": [-9, 5, -5, 5, 0, -1],
    }
    with _Budget("A3", 1):
        vecs = _vectors()
        ok = all(vecs[k].dense() == v for k, v in expected.items())
    _line("A3", ok, "all five vectors match exactly")


def test_a4_linear_relations_with_negative_control():
    with _Budget("A4", 1):
        v = _vectors()
        rel1 = (vec_combine([(7, v["xy"]), (1, v["x1y1"])])
                == vec_combine([(-2, v["a"]), (1, v["b"])]))
        rel2 = (vec_combine([(5, v["xy"]), (1, v["x2y2"])])
                == vec_combine([(-1, v["a"]), (1, v["b"])]))
        # negative control: perturb a single entry by 1 in every slot in turn
        controls_fail = True
        for slot in range(1, 7):
            bad = v["xy"] + DiamondVector({slot: 1})
            controls_fail &= (vec_combine([(7, bad), (1, v["x1y1"])])
                              != vec_combine([(-2, v["a"]), (1, v["b"])]))
    _line("A4", rel1 and rel2 and controls_fail,
          f"relations exact: {rel1}, {rel2}; perturbed controls all fail: {controls_fail}")


def test_a5_steinberg_vanishing():
    with _Budget("A5", 10):
        pd = periods(E)
        v = _vectors()
        s1 = abs(dilog_of_vector(pd, v["a"]).value)
        s2 = abs(dilog_of_vector(pd, v["b"]).value)
        ref = abs(dilog_of_vector(pd, v["xy"]).value)
        ok = s1 < 1e-8 and s2 < 1e-8 and ref > 1e-2
    _line("A5", ok, f"|L| = {s1:.2e}, {s2:.2e} (reference magnitude {ref:.3f})")


def test_a6_dilog_ratios():
    with _Budget("A6", 10):
        pd = periods(E)
        v = _vectors()
        base = dilog_of_vector(pd, v["xy"]).value
        r1 = dilog_of_vector(pd, v["x1y1"]).value / base
        r2 = dilog_of_vector(pd, v["x2y2"]).value / base
        e1 = abs(r1 + 7) / 7
        e2 = abs(r2 + 5) / 5
        ok = e1 < 1e-8 and e2 < 1e-8
    _line("A6", ok, f"ratios {r1:.12f} (rel err {e1:.1e}), {r2:.12f} (rel err {e2:.1e})")


def test_a7_regulator_equals_mahler():
    with _Budget("A7", 120):
        details = []
        ok = True
        for fam, k in (("F1", 5.0), ("F1", -4.0), ("F2", -2.0)):
            eta = eta_integral(path_sigma(fam, k, 4096))
            m = mahler_jensen(family_poly(fam, k), 1e-9).value
            rel = abs(abs(eta) - 2 * math.pi * m) / (2 * math.pi * m)
            ok &= rel < 1e-6
            details.append(f"{fam}@{k:g}: rel {rel:.1e}")
        residual = period_reality_check("F1", 5.0, 2048)
        ok &= residual < 1e-8
        details.append(f"reality residual {residual:.1e}")
    _line("A7", ok, "; ".join(details))


def test_a8_discriminant_roots():
    with _Budget("A8", 1):
        alpha, beta = disc_roots()
        ok = f"{alpha:.4f}" == "-3.7996" and f"{beta:.4f}" == "0.3305"
    _line("A8", ok, f"alpha = {alpha:.10f}, beta = {beta:.10f}")


def test_a9_region_boundaries_and_figure(tmp_path):
    with _Budget("A9", 60):
        f1 = real_boundary("F1")
        ok = (len(f1) == 2 and abs(f1[0] + 4) < 1e-3 and abs(f1[1] - 2) < 1e-3)
        f2 = real_boundary("F2")
        ok &= any(abs(k + 2) < 1e-3 for k in f2)
        ok &= vanishes_on_torus(family_poly("F3", 0), 256).vanishes
        csv_text = _region_csv(region_grid("F1", 40))
        target = tmp_path / "figure1.csv"
        target.write_text(csv_text)
        rows = target.read_text().strip().splitlines()
        ok &= len(rows) == 1601  # header + 1600 samples
    _line("A9", ok, f"F1 boundary {[round(v, 5) for v in f1]}, "
          f"F2 boundary {[round(v, 5) for v in f2]}, CSV rows {len(rows) - 1}")


def test_a10_l_series():
    with _Budget("A10", 30):
        data = an_expand(800)
        coeff_ok = (data.a(2), data.a(3), data.a(4), data.a(5)) == (-2, -3, 2, -2)
        l1_vanishes = abs(l_value_1(data, -1)) < 1e-10 and abs(fricke_sum(data)) < 1e-10
        l1_nonzero = abs(l_value_1(data, +1)) > 1e-3
        eps_ok = data.eps == -1
        v400 = l_value_2(400, data).value
        v800 = l_value_2(800, data).value
        plateau = abs(v400 - v800) < 1e-12
        ok = coeff_ok and l1_vanishes and l1_nonzero and eps_ok and plateau
    _line("A10", ok, f"a_2..a_5 = {(data.a(2), data.a(3), data.a(4), data.a(5))}, "
          f"eps = {data.eps}, L(2) = {v400:.15f}, doubling shift {abs(v400 - v800):.1e}")


def test_a11_bloch_beilinson_recognition():
    with _Budget("A11", 60):
        data = an_expand(400)
        lp = l_prime_0(400, data).value
        m1 = mahler_jensen(parse_poly(P1_TEXT), 1e-10).value
        m2 = mahler_jensen(parse_poly(P2_TEXT), 1e-10).value
        a = recognize_rational(m2 / lp, 48, 1e-5)
        b = recognize_rational(m1 / lp, 48, 1e-5)
        # non-blocking (conjectural) part: report, warn on failure
        for label, guess in (("a", a), ("b", b)):
            if guess is None:
                print(f"A11 WARN: {label} not recognized with denominator <= 48")
            else:
                print(f"A11 info: {label} = {guess.p}/{guess.q} "
                      f"(residual {guess.residual:.1e})")
        # blocking part: the ratio recognition must return exactly 5/7
        ratio_guess = recognize_rational(m2 / m1, 100, 1e-6)
        ok = ratio_guess is not None and Fraction(ratio_guess.p, ratio_guess.q) == Fraction(5, 7)
    _line("A11", ok, f"ratio recognized as {ratio_guess.p}/{ratio_guess.q}; "
          f"a = {None if a is None else f'{a.p}/{a.q}'}, "
          f"b = {None if b is None else f'{b.p}/{b.q}'}, L'(0) = {lp:.12f}")


def test_a12_oracle_equivalence():
    polys = [
        parse_poly(P1_TEXT),
        parse_poly(P2_TEXT),
        parse_poly("y^2-5*x*y+y-x^3+x^2"),   # family member well outside the region
        parse_poly("x+y+3"),
        parse_poly("x*y^2+3*y+x^2+5"),
    ]
    with _Budget("A12", 120):
        details = []
        ok = True
        for poly in polys:
            mj = mahler_jensen(poly, 1e-8).value
            mg = mahler_grid2d(poly, 512).value
            diff = abs(mj - mg)
            ok &= diff < 1e-3
            details.append(f"{diff:.1e}")
    _line("A12", ok, "jensen-vs-grid differences: " + ", ".join(details))
