"""Period lattice, elliptic logarithm, and the elliptic dilogarithm.

The three models here have positive discriminant, so the lattice is
rectangular: omega1 real, omega2 purely imaginary, q = exp(2*pi*i*tau) real in
(0, 1).  Points on the unbounded real component have a real normalized log;
points on the bounded oval sit on the horizontal line Im(u) = Im(tau)/2, so
their circle coordinate z = exp(2*pi*i*u) has modulus sqrt(q).

The elliptic dilogarithm of a point is the Bloch-Wigner dilogarithm D summed
over the q-power orbit of z; it is odd and q-periodic, which lets it act on
folded divisor classes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curves import CurvePoint, WeierstrassCurve, discriminant, generator
from .divisors import DiamondVector
from .errors import AgmFailure

_TRUNC = 1e-16  # drop q^n terms below this


@dataclass(frozen=True)
class RealValue:
    value: float
    abs_err: float


@dataclass(frozen=True)
class PeriodData:
    curve: WeierstrassCurve
    omega1: float                       # positive real period
    omega2: complex                     # purely imaginary period, Im > 0
    tau: complex                        # omega2 / omega1
    q: float                            # exp(2*pi*i*tau), real in (0, 1)
    u_p: complex                        # normalized log of the generator
    e_roots: tuple[float, float, float]  # ascending roots of the quartic model


def _agm(a: float, b: float) -> float:
    for _ in range(64):
        if abs(a - b) <= 1e-15 * abs(a):
            return 0.5 * (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise AgmFailure(f"AGM({a}, {b}) did not converge in 64 steps")


def _rf(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_F by the duplication theorem."""
    for _ in range(200):
        lam = math.sqrt(x) * math.sqrt(y) + math.sqrt(y) * math.sqrt(z) + math.sqrt(z) * math.sqrt(x)
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        mu = (x + y + z) / 3
        if max(abs(x - mu), abs(y - mu), abs(z - mu)) < 1e-14 * mu:
            return 1.0 / math.sqrt(mu)
    raise AgmFailure("Carlson R_F did not converge")


def _quartic_roots(curve: WeierstrassCurve) -> tuple[float, float, float]:
    """Ascending real roots of 4x^3 + b2 x^2 + 2 b4 x + b6 (Y^2 = that, Y = 2y+a1x+a3)."""
    b2, b4, b6 = float(curve.b2), float(curve.b4), float(curve.b6)
    roots = np.roots([4.0, b2, 2.0 * b4, b6])
    if np.abs(roots.imag).max() > 1e-8:
        raise ValueError("negative-discriminant lattice (non-rectangular) not supported")
    es = np.sort(roots.real)

    def polish(e):
        for _ in range(3):
            f = ((4 * e + b2) * e + 2 * b4) * e + b6
            fp = (12 * e + 2 * b2) * e + 2 * b4
            if fp != 0:
                e -= f / fp
        return e

    return tuple(polish(float(e)) for e in es)


def periods(curve: WeierstrassCurve) -> PeriodData:
    """Rectangular period lattice by AGM, plus the generator's normalized log."""
    if discriminant(curve) == 0:
        raise ValueError("singular curve has no period lattice")
    e1, e2, e3 = _quartic_roots(curve)
    omega1 = math.pi / _agm(math.sqrt(e3 - e1), math.sqrt(e3 - e2))
    omega2 = 1j * math.pi / _agm(math.sqrt(e3 - e1), math.sqrt(e2 - e1))
    tau = omega2 / omega1
    q = math.exp(-2.0 * math.pi * tau.imag)
    pd = PeriodData(curve, omega1, omega2, tau, q, 0j, (e1, e2, e3))
    u_p = elliptic_log(pd, generator(curve))
    return PeriodData(curve, omega1, omega2, tau, q, u_p, (e1, e2, e3))


def _big_y(curve: WeierstrassCurve, x: float, y: float) -> float:
    return 2.0 * y + float(curve.a1) * x + float(curve.a3)


def _float_add(curve: WeierstrassCurve, p1, p2):
    """Chord addition in floating point (p1 != +-p2 assumed)."""
    a1, a2, a3 = float(curve.a1), float(curve.a2), float(curve.a3)
    (x1, y1), (x2, y2) = p1, p2
    lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = lam * (x1 - x3) - y1 - a1 * x3 - a3
    return x3, y3


def _log_unbounded(pd: PeriodData, x0: float, y0: float) -> complex:
    """Un-normalized log of a point with x0 >= e3 (identity real component).

    Convention: u = +R_F when the point is on the branch with 2y+a1x+a3 < 0
    (x decreasing from infinity as u runs over (0, omega1/2)).
    """
    e1, e2, e3 = pd.e_roots
    r = _rf(max(x0 - e1, 0.0), max(x0 - e2, 0.0), max(x0 - e3, 0.0))
    return -r if _big_y(pd.curve, x0, y0) > 0 else r


def elliptic_log(pd: PeriodData, pt: CurvePoint) -> complex:
    """Normalized elliptic logarithm u with z = exp(2*pi*i*u), mod Z + Z*tau.

    Points on the bounded oval are translated by the oval's 2-torsion point
    (e1, .) so the Carlson integral applies, then shifted back by omega2/2.
    """
    if pt.is_infinity:
        raise ValueError("the point at infinity has no elliptic logarithm")
    curve = pd.curve
    x0, y0 = float(pt.x), float(pt.y)
    e1, e2, e3 = pd.e_roots
    if x0 >= e3 - 1e-12:
        u = complex(_log_unbounded(pd, max(x0, e3), y0))
    elif x0 <= e2 + 1e-12:
        a1, a3 = float(curve.a1), float(curve.a3)
        yt = -(a1 * e1 + a3) / 2.0  # 2-torsion on the oval: big-Y vanishes
        x3, y3 = _float_add(curve, (x0, y0), (e1, yt))
        u = _log_unbounded(pd, x3, y3) - pd.omega2 / 2.0
    else:
        raise ValueError(f"x = {x0} lies in the forbidden gap ({e2}, {e3})")
    v = u / pd.omega1
    return _reduce_mod_lattice(v, pd.tau)


def _reduce_mod_lattice(v: complex, tau: complex) -> complex:
    """Canonical representative: Im in (-Im(tau)/2, Im(tau)/2], Re in [-1/2, 1/2).

    The upper-edge convention puts the bounded oval (Im u = Im(tau)/2) at
    |exp(2*pi*i*u)| = sqrt(q) rather than its reciprocal.
    """
    v -= math.ceil(v.imag / tau.imag - 0.5) * tau
    v -= math.floor(v.real + 0.5)
    return v


# ----------------------------------------------------------------------------
# Bloch-Wigner dilogarithm.

_BERNOULLI_COUNT = 40


def _bernoulli_numbers(count: int) -> list[float]:
    """B_0..B_count in the B_1 = -1/2 convention (what the log series wants)."""
    from fractions import Fraction

    out = []
    b = [Fraction(0)] * (count + 1)
    for m in range(count + 1):
        b[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            b[j - 1] = j * (b[j - 1] - b[j])
        out.append(float(b[0]))
    out[1] = -out[1]
    return out


_BERN = _bernoulli_numbers(_BERNOULLI_COUNT)


def _li2_small(z: complex) -> complex:
    """Power series, reliable for |z| <= 1/2."""
    total = 0j
    term = complex(z)
    k = 1
    while abs(term) > 1e-18 * max(abs(total), 1.0) and k < 200:
        total += term / (k * k)
        k += 1
        term *= z
    return total


def _li2_log_series(z: complex) -> complex:
    """Bernoulli series in w = -log(1-z); converges for |w| < 2*pi."""
    w = -cmath.log(1.0 - z)
    total = 0j
    wp = w
    fact = 1.0
    for n in range(_BERNOULLI_COUNT):
        fact *= (n + 1)
        total += _BERN[n] * wp / fact
        wp *= w
        if abs(wp) / (fact * (n + 2)) < 1e-18:
            break
    return total


def _li2(z: complex) -> complex:
    if z == 0:
        return 0j
    if z == 1:
        return complex(math.pi * math.pi / 6)
    if abs(z) > 1.0:
        return -_li2(1.0 / z) - math.pi ** 2 / 6 - 0.5 * cmath.log(-z) ** 2
    if abs(z) <= 0.5:
        return _li2_small(z)
    if abs(1.0 - z) <= 0.5:
        return math.pi ** 2 / 6 - cmath.log(z) * cmath.log(1.0 - z) - _li2_small(1.0 - z)
    return _li2_log_series(z)


def bloch_wigner(z: complex) -> float:
    """D(z) = Im(Li2(z)) + arg(1 - z) * log|z|; vanishes identically on the reals."""
    z = complex(z)
    if z.imag == 0.0:
        return 0.0
    li2 = _li2(z)
    return li2.imag + cmath.phase(1.0 - z) * math.log(abs(z))


# ----------------------------------------------------------------------------
# Elliptic dilogarithm.

def _d_tail_bound(r: float) -> float:
    """Crude bound for |D(w)| with |w| = r <= 1/2 (or its inversion partner)."""
    if r <= 0.0:
        return 0.0
    return r * (2.0 + abs(math.log(r)))


def elliptic_dilog(pd: PeriodData, point_or_u) -> RealValue:
    """Sum of D over the q-power orbit of z = exp(2*pi*i*u).

    Accepts a CurvePoint or a normalized logarithm u (complex).  Truncation
    keeps |q|^n >= 1e-16 symmetrically in n; the reported error bounds the
    dropped tail.
    """
    if isinstance(point_or_u, CurvePoint):
        u = elliptic_log(pd, point_or_u)
    else:
        u = complex(point_or_u)
    q = pd.q
    u = _reduce_mod_lattice(u, pd.tau)  # pull z into the annulus sqrt(q) <= |z| <= 1/sqrt(q)
    z = cmath.exp(2j * math.pi * u)
    nmax = max(2, int(math.ceil(math.log(_TRUNC) / math.log(q))))
    total = 0.0
    for n in range(-nmax, nmax + 1):
        total += bloch_wigner(q ** n * z)
    edge = q ** (nmax + 1) * max(abs(z), 1.0 / abs(z))
    err = 4.0 * _d_tail_bound(edge) / (1.0 - q)
    return RealValue(total, err)


def dilog_of_vector(pd: PeriodData, vec: DiamondVector) -> RealValue:
    """Linear extension: sum of a_n * L(n * u_P) over the vector entries."""
    total = 0.0
    err = 0.0
    for n, a in vec.items():
        part = elliptic_dilog(pd, n * pd.u_p)
        total += a * part.value
        err += abs(a) * part.abs_err
    return RealValue(total, err)
