from fractions import Fraction

import pytest

from mahler37.curves import (
    CHANGE_E_TO_E1,
    CHANGE_E_TO_E2,
    E,
    E1,
    E2,
    GENERATOR,
    INFINITY,
    CurvePoint,
    WeierstrassCurve,
    add,
    apply_change,
    discriminant,
    identify_multiple,
    multiple,
    negate,
    on_curve,
)
from mahler37.errors import NotASmallMultiple

P = GENERATOR


def test_on_curve_examples():
    assert on_curve(E, CurvePoint(0, 0))
    assert on_curve(E, INFINITY)
    assert not on_curve(E, CurvePoint(2, 1))  # 1 + 1 != 8 - 2


def test_add_examples():
    assert add(E, P, INFINITY) == P
    assert add(E, P, P) == CurvePoint(1, 0)
    assert add(E, CurvePoint(1, 0), P) == CurvePoint(-1, -1)


def test_add_rejects_points_off_curve():
    with pytest.raises(ValueError):
        add(E, CurvePoint(2, 1), P)


def test_negate_examples():
    assert negate(E, CurvePoint(0, 0)) == CurvePoint(0, -1)
    assert negate(E, INFINITY) == INFINITY
    assert negate(E, CurvePoint(1, 0)) == CurvePoint(1, -1)


def test_multiple_examples():
    assert multiple(E, 1) == CurvePoint(0, 0)
    assert multiple(E, 2) == CurvePoint(1, 0)
    assert multiple(E, -3) == CurvePoint(-1, 0)
    assert multiple(E, 0) == INFINITY
    assert multiple(E, 5) == CurvePoint(Fraction(1, 4), Fraction(-5, 8))


def test_group_law_exhaustive():
    for m in range(-10, 11):
        for n in range(-10, 11):
            assert add(E, multiple(E, m), multiple(E, n)) == multiple(E, m + n)


def test_negation_involution_and_inverse():
    for n in range(-10, 11):
        pt = multiple(E, n)
        assert negate(E, negate(E, pt)) == pt
        assert add(E, pt, negate(E, pt)) == INFINITY


def test_identify_multiple():
    assert identify_multiple(E, CurvePoint(2, -3), 8) == 4
    assert identify_multiple(E, CurvePoint(0, -1), 8) == -1
    assert identify_multiple(E, INFINITY, 8) == 0
    with pytest.raises(NotASmallMultiple):
        identify_multiple(E, CurvePoint(5, 11), 8)


def test_identify_multiple_exhaustive_oracle():
    # oracle: generate every nP directly and require the exact index back
    for n in range(-12, 13):
        assert identify_multiple(E, multiple(E, n), 12) == n


def test_coordinate_change_examples():
    assert apply_change(CHANGE_E_TO_E1, P) == CurvePoint(-1, 2)
    assert on_curve(E1, CurvePoint(-1, 2))
    assert apply_change(CHANGE_E_TO_E2, P) == CurvePoint(-1, 1)
    assert on_curve(E2, CurvePoint(-1, 1))
    assert apply_change(CHANGE_E_TO_E1, INFINITY) == INFINITY


def test_coordinate_changes_land_on_models():
    for n in range(-10, 11):
        pt = multiple(E, n)
        q1 = apply_change(CHANGE_E_TO_E1, pt)
        q2 = apply_change(CHANGE_E_TO_E2, pt)
        assert on_curve(E1, q1)
        assert on_curve(E2, q2)
        assert CHANGE_E_TO_E1.inverse().apply(q1) == pt
        assert CHANGE_E_TO_E2.inverse().apply(q2) == pt


def test_changes_respect_group_structure():
    for n in range(-6, 7):
        assert apply_change(CHANGE_E_TO_E1, multiple(E, n)) == multiple(E1, n)
        assert apply_change(CHANGE_E_TO_E2, multiple(E, n)) == multiple(E2, n)


def test_discriminants():
    assert discriminant(E) == 37
    # the changes are unimodular, so the discriminants agree exactly
    assert discriminant(E1) == discriminant(E)
    assert discriminant(E2) == discriminant(E)
    assert discriminant(WeierstrassCurve(0, 0, 0, 0, 0)) == 0


def test_point_validation():
    with pytest.raises(ValueError):
        CurvePoint(1, None)
