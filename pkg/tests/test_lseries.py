import math
import random

import pytest

from mahler37.errors import InsufficientTerms
from mahler37.lseries import (
    LSeriesData,
    an_expand,
    ap,
    determine_eps,
    exp1,
    fricke_sum,
    l_prime_0,
    l_value_1,
    l_value_2,
    recognize_rational,
)

# regression constants from the first verified run; L(2) cross-checked
# against raw Dirichlet partial sums, L'(0) against the measure recognitions
L2_REF = 0.3815754082607115
LP0_REF = -0.3576204661274979


def _brute_ap(p: int) -> int:
    count = sum(1 for x in range(p) for y in range(p)
                if (y * y + y - x ** 3 + x) % p == 0)
    return p - count


@pytest.fixture(scope="module")
def data() -> LSeriesData:
    return an_expand(1000)


def test_ap_examples():
    assert ap(2) == -2
    assert ap(3) == -3
    assert ap(5) == -2
    assert ap(7) == -1


def test_ap_against_brute_force():
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 43]:
        assert ap(p) == _brute_ap(p)


def test_conductor_prime():
    # nonsplit multiplicative reduction: the tangent-cone slope 15 is a
    # non-residue mod 37, so a_37 = -1
    assert ap(37) == -1


def test_hecke_recursion_values(data):
    assert data.a(1) == 1
    assert data.a(4) == data.a(2) ** 2 - 2      # a_2^2 - p at p = 2
    assert data.a(6) == data.a(2) * data.a(3) == 6
    assert data.a(9) == data.a(3) ** 2 - 3


def test_multiplicativity_random_coprime(data):
    rng = random.Random(12345)
    checked = 0
    while checked < 50:
        m = rng.randrange(2, 1000)
        n = rng.randrange(2, 1000)
        if m * n > 1000 or math.gcd(m, n) != 1:
            continue
        assert data.a(m * n) == data.a(m) * data.a(n)
        checked += 1


def test_hasse_bound_to_ten_thousand():
    big = an_expand(10 ** 4)
    sieve = [True] * (10 ** 4 + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, 101):
        if sieve[i]:
            sieve[i * i:: i] = [False] * len(range(i * i, 10 ** 4 + 1, i))
    for p, is_p in enumerate(sieve):
        if is_p and p != 37:
            assert big.a(p) ** 2 <= 4 * p


def test_eps_measured_negative(data):
    assert data.eps == -1
    assert determine_eps(data.coeffs) == -1


def test_smoothed_central_value(data):
    assert abs(l_value_1(data, -1)) < 1e-10
    assert abs(l_value_1(data, +1)) > 1e-3
    # the substantive vanishing: the form at the Fricke fixed point
    assert abs(fricke_sum(data)) < 1e-10


def test_l2_value_and_plateau(data):
    v200 = l_value_2(200, data).value
    v400 = l_value_2(400, data).value
    v800 = l_value_2(800, data).value
    assert abs(v200 - v400) < 1e-12
    assert abs(v400 - v800) < 1e-13
    assert v400 > 0
    assert v400 == pytest.approx(L2_REF, abs=1e-13)


def test_l2_dirichlet_partial_sum_oracle(data):
    # crude but independent: averaged tail of the raw Dirichlet series
    partial = 0.0
    averages = []
    for n in range(1, 1001):
        partial += data.a(n) / n ** 2
        averages.append(partial)
    smoothed = sum(averages[-200:]) / 200
    assert smoothed == pytest.approx(L2_REF, abs=1e-3)


def test_insufficient_terms():
    with pytest.raises(InsufficientTerms):
        l_value_2(20, an_expand(20))


def test_l_prime_0(data):
    lp = l_prime_0(400, data)
    assert lp.value == pytest.approx(LP0_REF, abs=1e-12)
    assert lp.value != 0
    for X in (200, 800):
        assert l_prime_0(X, an_expand(X)).value == pytest.approx(lp.value, abs=1e-10)


def test_exp1_against_scipy():
    sp = pytest.importorskip("scipy.special")
    for x in [0.01, 0.1, 0.5, 1.0, 1.4, 1.5, 1.6, 2.0, 5.0, 10.0, 30.0, 44.0]:
        assert exp1(x) == pytest.approx(float(sp.exp1(x)), abs=1e-14, rel=1e-12)
    with pytest.raises(ValueError):
        exp1(0.0)


def test_recognize_rational_examples():
    g = recognize_rational(0.714285714285, 10, 1e-9)
    assert (g.p, g.q) == (5, 7)
    g = recognize_rational(0.5, 10, 1e-12)
    assert (g.p, g.q) == (1, 2)
    assert recognize_rational(math.pi, 10, 1e-6) is None
    g = recognize_rational(-2.5, 48, 1e-9)
    assert (g.p, g.q) == (-5, 2)


def test_recognize_rational_validation():
    with pytest.raises(ValueError):
        recognize_rational(0.5, 0, 1e-9)


def test_bloch_beilinson_constants(data):
    # conjectural identities, pinned as regressions of this computation:
    # m2 = -5/2 L'(0) and m1 = -7/2 L'(0)
    from mahler37.measure import mahler_jensen
    from mahler37.polyparse import parse_poly

    lp = l_prime_0(400, data).value
    m1 = mahler_jensen(parse_poly("y^2+4*x*y+y-x^3+x^2"), 1e-10).value
    m2 = mahler_jensen(parse_poly("y^2+2*x*y+y-x^3-2*x^2-x"), 1e-10).value
    a = recognize_rational(m2 / lp, 48, 1e-5)
    b = recognize_rational(m1 / lp, 48, 1e-5)
    assert (a.p, a.q) == (-5, 2)
    assert (b.p, b.q) == (-7, 2)
