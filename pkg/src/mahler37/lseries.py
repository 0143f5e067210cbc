"""L-function of the conductor-37 curve: coefficients, L(2), and L'(0).

Coefficients come from direct point counting mod p (a quadratic-residue
table over y makes each prime O(p)) extended by Hecke multiplicativity.
Special values use the completed function Lambda(s) = N^(s/2) (2pi)^-s
Gamma(s) L(s), entire with Lambda(s) = eps * Lambda(2 - s):

* splitting the Mellin integral at t = 1 gives the exponentially convergent
  sum Lambda(2) = sum a_n [G2(x_n) + eps * E1(x_n)], x_n = 2 pi n / sqrt(N),
  with G2(x) = exp(-x)(1+x)/x^2 and E1 the exponential integral;
* at s = 0 the Gamma pole forces L(0) = 0 and leaves Lambda(0) = L'(0)
  (the gamma and log-conductor terms only enter at second order), so the
  functional equation gives L'(0) = eps * (N / 4 pi^2) * L(2);
* the sign eps is measured, not assumed: the split point t0 is arbitrary,
  so only the true sign makes the two-piece formula for Lambda(1) agree
  between different t0 (the wrong sign shifts it by a t0-dependent amount).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import InsufficientTerms

CONDUCTOR = 37


@dataclass(frozen=True)
class LSeriesData:
    N: int
    eps: int
    coeffs: tuple[int, ...]  # a_1 .. a_X

    def a(self, n: int) -> int:
        return self.coeffs[n - 1]


@dataclass(frozen=True)
class RationalGuess:
    p: int
    q: int
    residual: float


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def _singular_point_count(p: int) -> int:
    """Number of affine singular points of y^2 + y = x^3 - x over Z/pZ."""
    count = 0
    for x in range(p):
        for y in range(p):
            if (y * y + y - (x * x * x - x)) % p:
                continue
            if (2 * y + 1) % p == 0 and (3 * x * x - 1) % p == 0:
                count += 1
    return count


def ap(p: int) -> int:
    """Trace of Frobenius by point counting; conductor primes use the smooth locus."""
    if p > 10 ** 5:
        raise ValueError("point counting capped at p <= 1e5")
    affine = kernels.count_affine(p)
    if p == CONDUCTOR:
        # multiplicative reduction: #E_ns(F_p) = affine - (singular points) + 1
        # and a_p = p - #E_ns in {+1, -1}
        return p - (affine - _singular_point_count(p) + 1)
    return p - affine


def an_expand(X: int) -> LSeriesData:
    """Coefficients a_1..a_X by Hecke recursion, with the measured sign."""
    if X < 1:
        raise ValueError("need X >= 1")
    work = max(X, 240)  # enough terms to pin the functional-equation sign
    spf = list(range(work + 1))
    for i in range(2, math.isqrt(work) + 1):
        if spf[i] == i:
            for j in range(i * i, work + 1, i):
                if spf[j] == j:
                    spf[j] = i
    a = [0] * (work + 1)
    a[1] = 1
    ap_cache = {p: ap(p) for p in _primes_up_to(work)}
    for n in range(2, work + 1):
        p = spf[n]
        m = n // p
        if m % p:
            a[n] = ap_cache[p] * a[m]
        elif p == CONDUCTOR:
            a[n] = ap_cache[p] * a[m]
        else:
            a[n] = ap_cache[p] * a[m] - p * a[m // p]
    eps = determine_eps(a[1:])
    return LSeriesData(CONDUCTOR, eps, tuple(a[1 : X + 1]))


# ----------------------------------------------------------------------------
# Incomplete-gamma helpers.

_EULER_GAMMA = 0.5772156649015328606065


def exp1(x: float) -> float:
    """Exponential integral E1(x) for x > 0: series below 1.5, Lentz CF above."""
    if x <= 0:
        raise ValueError("E1 requires x > 0")
    if x < 1.5:
        # E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k * k!)
        total = -_EULER_GAMMA - math.log(x)
        term = -1.0
        for k in range(1, 60):
            term *= -x / k  # (-1)^(k+1) x^k / k!
            total += term / k
            if abs(term / k) < 1e-18 * abs(total):
                break
        return total
    # modified Lentz for the continued fraction e^-x / (x + 1 - 1/(x + 3 - 4/(...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for k in range(1, 200):
        an = -k * k
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def _g1(x: float) -> float:
    return math.exp(-x) / x


def _g2(x: float) -> float:
    return math.exp(-x) * (1.0 + x) / (x * x)


def _x_n(n: int) -> float:
    return 2.0 * math.pi * n / math.sqrt(CONDUCTOR)


def _lambda1_split(coeffs, eps: int, t0: float) -> float:
    """Two-piece formula for Lambda(1) with the Mellin integral split at t0:

    Lambda(1) = sum a_n / x_n * [exp(-x_n t0) + eps * exp(-x_n / t0)].
    """
    total = 0.0
    for n, a in enumerate(coeffs, start=1):
        if a == 0:
            continue
        x = _x_n(n)
        if x * min(t0, 1.0 / t0) > 45:
            break
        total += a / x * (math.exp(-x * t0) + eps * math.exp(-x / t0))
    return total


def determine_eps(coeffs) -> int:
    """Measure the functional-equation sign by split-point independence."""
    best = None
    for eps in (-1, 1):
        spread = abs(_lambda1_split(coeffs, eps, 1.3) - _lambda1_split(coeffs, eps, 0.8))
        if best is None or spread < best[1]:
            best = (eps, spread)
    eps, spread = best
    other = abs(_lambda1_split(coeffs, -eps, 1.3) - _lambda1_split(coeffs, -eps, 0.8))
    if not (spread < 1e-8 and other > 1e3 * max(spread, 1e-30)):
        raise InsufficientTerms(
            f"sign detection inconclusive: spreads {spread:.3e} vs {other:.3e}")
    return eps


def l_value_1(data: LSeriesData, eps: int | None = None) -> float:
    """Smoothed central series (1 + eps) * sum (a_n / n) exp(-x_n)."""
    if eps is None:
        eps = data.eps
    total = 0.0
    for n, a in enumerate(data.coeffs, start=1):
        if a:
            total += a / n * math.exp(-_x_n(n))
    return (1 + eps) * total


def fricke_sum(data: LSeriesData) -> float:
    """sum a_n exp(-x_n): the weight-2 form at the fixed point of the Fricke
    involution, which vanishes exactly when eps = -1."""
    return sum(a * math.exp(-_x_n(n)) for n, a in enumerate(data.coeffs, start=1) if a)


def l_value_2(X: int = 400, data: LSeriesData | None = None):
    """L(E, 2) from Lambda(2) = sum a_n [G2(x_n) + eps E1(x_n)].

    The dropped tail is below sum_{n>X} n * 2 exp(-x_n), reported as abs_err;
    X below roughly 60 cannot reach 1e-12 and is rejected.
    """
    from .dilog import RealValue

    if data is None or len(data.coeffs) < X:
        data = an_expand(X)
    eps = data.eps
    total = 0.0
    for n in range(1, X + 1):
        a = data.a(n)
        if a == 0:
            continue
        x = _x_n(n)
        if x > 45:
            break
        total += a * (_g2(x) + eps * exp1(x))
    xt = _x_n(X + 1)
    tail = 4.0 * (X + 1) * math.exp(-xt) / (1.0 - math.exp(-_x_n(1)))
    if tail > 1e-12:
        raise InsufficientTerms(f"{X} terms leave a tail bound of {tail:.2e}")
    l2 = (4.0 * math.pi ** 2 / CONDUCTOR) * total
    return RealValue(l2, (4.0 * math.pi ** 2 / CONDUCTOR) * tail + 1e-14)


def l_prime_0(X: int = 400, data: LSeriesData | None = None):
    """L'(E, 0) = eps * (N / 4 pi^2) * L(E, 2) via the functional equation."""
    from .dilog import RealValue

    if data is None or len(data.coeffs) < X:
        data = an_expand(X)
    l2 = l_value_2(X, data)
    scale = CONDUCTOR / (4.0 * math.pi ** 2)
    return RealValue(data.eps * scale * l2.value, scale * l2.abs_err)


def recognize_rational(x: float, maxden: int, tol: float) -> RationalGuess | None:
    """Best bounded-denominator approximation (continued-fraction convergent)."""
    if maxden < 1:
        raise ValueError("maxden must be at least 1")
    guess = Fraction(x).limit_denominator(maxden)
    residual = abs(x - float(guess))
    if residual < tol:
        return RationalGuess(guess.numerator, guess.denominator, residual)
    return None
