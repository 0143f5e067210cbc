import cmath
import math

import numpy as np
import pytest

from mahler37.curves import E
from mahler37.dilog import dilog_of_vector, periods
from mahler37.divisors import DiamondVector
from mahler37.errors import BranchCollision, InconsistentFit
from mahler37.measure import mahler_jensen, vanishes_on_torus
from mahler37.polyparse import parse_poly
from mahler37.region import (
    ProportionalityFit,
    disc_k,
    disc_roots,
    eta_integral,
    family_poly,
    fit_constant,
    path_sigma,
    period_reality_check,
    real_boundary,
    region_grid,
    region_map,
)


def test_family_poly_matches_named_models():
    assert family_poly("F1", -4) == parse_poly("y^2+4*x*y+y-x^3+x^2")
    assert family_poly("F2", -2) == parse_poly("y^2+2*x*y+y-x^3-2*x^2-x")
    assert family_poly("F3", 0) == parse_poly("y^2+y-x^3+x")


def test_family_poly_non_integer_parameter():
    coeffs = family_poly("F1", 0.5)
    assert isinstance(coeffs, dict)
    assert coeffs[(1, 1)] == -0.5


def test_region_map_examples():
    assert region_map("F1", 0.0, 0.0) == pytest.approx(2.0, abs=1e-14)
    assert abs(region_map("F1", 0.0, 0.5)) < 1e-14
    a = region_map("F1", 0.17, 0.31)
    b = region_map("F1", -0.17, -0.31)
    assert a == pytest.approx(b.conjugate(), abs=1e-13)


def test_region_grid_shape_and_bounds():
    grid = region_grid("F1", 40)
    assert len(grid.samples) == 1600
    assert all(abs(k.real) <= 10 and abs(k.imag) <= 10 for _, _, k in grid.samples)
    corners = region_grid("F1", 2)
    assert len(corners.samples) == 4
    got = sorted(round(k.real, 9) for _, _, k in corners.samples)
    assert got == [-4.0, 0.0, 2.0, 2.0]


def test_region_grid_real_axis_trace():
    grid = region_grid("F1", 40)
    near_real = [k.real for _, _, k in grid.samples if abs(k.imag) <= 0.2]
    assert min(near_real) >= -4.2
    assert max(near_real) <= 2.2


def test_real_boundary_values():
    f1 = real_boundary("F1")
    assert len(f1) == 2
    assert f1[0] == pytest.approx(-4.0, abs=1e-3)
    assert f1[1] == pytest.approx(2.0, abs=1e-3)
    f2 = real_boundary("F2")
    assert any(abs(k + 2.0) < 1e-3 for k in f2)


def test_f3_interior_vanishing():
    for k in (0, 0.25, -0.25):
        assert vanishes_on_torus(family_poly("F3", k), 256).vanishes


def test_path_sigma_examples():
    path = path_sigma("F1", -4.0, 256)
    assert abs(path.y1[0]) < 1e-12          # roots {0, k-1} at theta = 0
    assert path.y2[0] == pytest.approx(-5.0, abs=1e-12)

    path5 = path_sigma("F1", 5.0, 256)
    assert np.abs(path5.y1).max() < 1.0
    assert np.abs(path5.y2).min() > 1.0

    with pytest.raises(BranchCollision):
        path_sigma("F1", 0.0, 1024)


def test_path_vieta_product():
    path = path_sigma("F1", 5.0, 512)
    c = path.x ** 2 - path.x ** 3  # y-constant term of the first family
    resid = np.abs(np.abs(path.y1 * path.y2) - np.abs(c)).max()
    assert resid < 1e-10


def test_eta_equals_two_pi_m():
    for fam, k, tol in [("F1", 5.0, 1e-6), ("F1", -4.0, 1e-6), ("F1", 2.0, 1e-6),
                        ("F1", -6.0, 1e-6), ("F1", 10.0, 1e-6), ("F2", -2.0, 1e-6)]:
        path = path_sigma(fam, k, 1024)
        eta = eta_integral(path)
        m = mahler_jensen(family_poly(fam, k), 1e-9).value
        assert abs(eta) == pytest.approx(2 * math.pi * m, rel=tol)


def test_eta_orientation():
    path = path_sigma("F1", 5.0, 512)
    assert eta_integral(path.reversed()) == pytest.approx(-eta_integral(path), abs=1e-10)


def test_period_reality():
    assert period_reality_check("F1", 5.0, 2048) < 1e-8
    assert period_reality_check("F1", -4.0, 2048) < 1e-6
    assert period_reality_check("F1", 10.0, 2048) < 1e-8


def test_period_reality_requires_positive_discriminant():
    with pytest.raises(ValueError):
        period_reality_check("F1", 0.0, 256)


def test_disc_values():
    # the printed quartic constant is corrected to -11: the stated real roots
    # (-3.7996 and 0.3305) and the actual cubic discriminant both require it
    assert disc_k(0.0) == -11.0
    assert disc_k(-4.0) == 37.0
    alpha, beta = disc_roots()
    assert f"{alpha:.4f}" == "-3.7996"
    assert f"{beta:.4f}" == "0.3305"


def test_disc_roots_against_cubic_oracle():
    # oracle: the discriminant of 4x^3 + (k^2-4)x^2 - 2kx + 1 via the
    # standard 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2 formula
    def cubic_disc(k):
        a, b, c, d = 4.0, k * k - 4.0, -2.0 * k, 1.0
        return (18 * a * b * c * d - 4 * b ** 3 * d + b * b * c * c
                - 4 * a * c ** 3 - 27 * a * a * d * d)

    for k in [-5.0, -3.0, -1.0, 0.0, 0.4, 2.0, 7.0]:
        assert cubic_disc(k) == pytest.approx(16.0 * disc_k(k), rel=1e-12)
    alpha, beta = disc_roots()
    assert cubic_disc(alpha) == pytest.approx(0.0, abs=1e-6)
    assert cubic_disc(beta) == pytest.approx(0.0, abs=1e-6)


def test_fit_constant_consistency():
    pd = periods(E)
    eta1 = eta_integral(path_sigma("F1", -4.0, 1024))
    eta2 = eta_integral(path_sigma("F2", -2.0, 1024))
    d1 = dilog_of_vector(pd, DiamondVector.from_dense([0, 5, 0, -4, 0, 1])).value
    d2 = dilog_of_vector(pd, DiamondVector.from_dense([-6, 2, 2, -1, 0, 0])).value
    fit = fit_constant(pd, [(eta1, d1), (eta2, d2)])
    assert isinstance(fit, ProportionalityFit)
    assert fit.c != 0
    assert max(fit.residuals) < 1e-6
    single = fit_constant(pd, [(eta1, d1)])
    assert single.c == pytest.approx(eta1 / d1, rel=1e-15)


def test_fit_constant_rejects_zero_dilog():
    pd = periods(E)
    with pytest.raises(ValueError):
        fit_constant(pd, [(1.0, 0.0)])


def test_fit_constant_rejects_inconsistent_pairs():
    pd = periods(E)
    with pytest.raises(InconsistentFit):
        fit_constant(pd, [(1.0, 1.0), (2.0, 1.0)])


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        family_poly("F9", 1)
