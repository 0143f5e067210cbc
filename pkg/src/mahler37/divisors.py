"""Divisors of line functions, the diamond pairing, and tame symbols.

Divisors are formal integer sums over multiples of the generator P on E,
indexed by the multiple n (0 meaning the point at infinity).  Line functions
a + b*x + c*y on the models E, E1, E2 cover every function needed here; their
zeros are found by exact factorization of the substituted cubic (or of the
fiber quadratic for vertical lines), and points on E1/E2 are carried back to
E through the inverse coordinate changes before being identified as nP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    CHANGES_FROM_E,
    CURVES,
    E,
    CurvePoint,
    WeierstrassCurve,
    identify_multiple,
    multiple,
)
from .errors import NonRationalZero

Rational = Fraction


@dataclass(frozen=True)
class LineFunction:
    """f(x, y) = a + b*x + c*y on some named curve model."""

    a: Rational
    b: Rational
    c: Rational

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.b == 0 and self.c == 0:
            raise ValueError("line function must be non-constant: (b, c) != (0, 0)")

    def __call__(self, x, y):
        return self.a + self.b * x + self.c * y

    def __repr__(self):
        return f"LineFunction({self.a} + {self.b}*x + {self.c}*y)"


class Divisor:
    """Finite map n -> coefficient, standing for sum of coeff*[nP] (n = 0 is O)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        self._c = {int(n): int(v) for n, v in dict(coeffs).items() if v != 0}

    def coeff(self, n: int) -> int:
        return self._c.get(n, 0)

    def items(self):
        return sorted(self._c.items())

    def support(self):
        return sorted(self._c)

    def degree(self) -> int:
        return sum(self._c.values())

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self._c)
        for n, v in other._c.items():
            out[n] = out.get(n, 0) + v
        return Divisor(out)

    def __rmul__(self, k: int) -> "Divisor":
        return Divisor({n: k * v for n, v in self._c.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        return f"Divisor({dict(self.items())})"


class DiamondVector:
    """Class of sum a_n*[nP] with [-nP] ~ -[nP] folded in: keys are positive."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = {}
        for n, v in dict(coeffs).items():
            n, v = int(n), int(v)
            if n <= 0:
                raise ValueError("diamond vector indices must be positive")
            if v:
                c[n] = v
        self._c = c

    @classmethod
    def from_dense(cls, entries) -> "DiamondVector":
        return cls({i + 1: v for i, v in enumerate(entries) if v})

    def dense(self, length: int = 6) -> list[int]:
        top = max(self._c, default=0)
        if top > length:
            raise ValueError(f"support reaches index {top} > {length}")
        return [self._c.get(n, 0) for n in range(1, length + 1)]

    def coeff(self, n: int) -> int:
        return self._c.get(n, 0)

    def items(self):
        return sorted(self._c.items())

    def __add__(self, other: "DiamondVector") -> "DiamondVector":
        out = dict(self._c)
        for n, v in other._c.items():
            out[n] = out.get(n, 0) + v
        return DiamondVector({n: v for n, v in out.items() if v})

    def __rmul__(self, k: int) -> "DiamondVector":
        return DiamondVector({n: k * v for n, v in self._c.items()})

    def __eq__(self, other):
        return isinstance(other, DiamondVector) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        top = max(self._c, default=0)
        return "[" + ",".join(str(self._c.get(n, 0)) for n in range(1, max(top, 6) + 1)) + "]"


# ----------------------------------------------------------------------------
# Exact factorization helpers.

def _divisors_of(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _rational_sqrt(v: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if v < 0:
        return None
    ns, ds = math.isqrt(v.numerator), math.isqrt(v.denominator)
    if ns * ns == v.numerator and ds * ds == v.denominator:
        return Fraction(ns, ds)
    return None


def _monic_quadratic_roots(p: Fraction, q: Fraction) -> list[Fraction] | None:
    """Roots of y^2 + p*y + q over the rationals; None if irrational."""
    disc = p * p - 4 * q
    s = _rational_sqrt(disc)
    if s is None:
        return None
    return [(-p + s) / 2, (-p - s) / 2]


def _one_rational_root(c2: Fraction, c1: Fraction, c0: Fraction) -> Fraction | None:
    """A rational root of the monic cubic x^3 + c2 x^2 + c1 x + c0, if any."""
    if c0 == 0:
        return Fraction(0)
    lcm = math.lcm(c2.denominator, c1.denominator, c0.denominator)
    # integer model: lcm*x^3 + ... with leading coefficient lcm
    a3 = lcm
    a0 = int(c0 * lcm)
    for p in _divisors_of(a0):
        for q in _divisors_of(a3):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand ** 3 + c2 * cand ** 2 + c1 * cand + c0 == 0:
                    return cand
    return None


def _monic_cubic_roots(c2: Fraction, c1: Fraction, c0: Fraction) -> list[tuple[Fraction, int]]:
    """All roots of a monic cubic with multiplicities; NonRationalZero if any root is irrational."""
    r = _one_rational_root(c2, c1, c0)
    if r is None:
        raise NonRationalZero(f"cubic x^3 + {c2}x^2 + {c1}x + {c0} has no rational root")
    # deflate: x^3 + c2 x^2 + c1 x + c0 = (x - r)(x^2 + p x + q)
    p = c2 + r
    q = c1 + r * p
    rest = _monic_quadratic_roots(p, q)
    if rest is None:
        raise NonRationalZero(f"quadratic factor x^2 + {p}x + {q} has irrational roots")
    roots: dict[Fraction, int] = {}
    for root in [r, *rest]:
        roots[root] = roots.get(root, 0) + 1
    return sorted(roots.items())


# ----------------------------------------------------------------------------
# Divisors of line functions.

def _pullback_to_e(model: str, pt: CurvePoint) -> CurvePoint:
    if model == "E":
        return pt
    return CHANGES_FROM_E[model].inverse().apply(pt)


def divisor_of(model: str, f: LineFunction) -> Divisor:
    """Divisor of a + b*x + c*y on the named model, in generator-multiple coordinates."""
    curve = CURVES[model]
    zeros: list[tuple[CurvePoint, int]] = []
    if f.c != 0:
        # Substitute the line y = alpha + beta*x into the curve equation.  The
        # result is monic: x^3 + c2 x^2 + c1 x + c0, whose root multiplicities
        # are the intersection multiplicities of the line with the curve.
        alpha = -f.a / f.c
        beta = -f.b / f.c
        a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
        c2 = a2 - beta * beta - a1 * beta
        c1 = a4 - 2 * alpha * beta - a1 * alpha - a3 * beta
        c0 = a6 - alpha * alpha - a3 * alpha
        for x0, mult in _monic_cubic_roots(c2, c1, c0):
            zeros.append((CurvePoint(x0, alpha + beta * x0), mult))
        pole_order = 3
    else:
        # Vertical line x = x0: the fiber quadratic in y gives [Q] + [-Q] - 2[O].
        x0 = -f.a / f.b
        p = curve.a1 * x0 + curve.a3
        q = -(x0 ** 3 + curve.a2 * x0 * x0 + curve.a4 * x0 + curve.a6)
        ys = _monic_quadratic_roots(p, q)
        if ys is None:
            raise NonRationalZero(f"fiber above x = {x0} on {model} is irrational")
        counts: dict[Fraction, int] = {}
        for y0 in ys:
            counts[y0] = counts.get(y0, 0) + 1
        for y0, mult in sorted(counts.items()):
            zeros.append((CurvePoint(x0, y0), mult))
        pole_order = 2

    coeffs = {0: -pole_order}
    for pt, mult in zeros:
        n = identify_multiple(E, _pullback_to_e(model, pt), 16)
        coeffs[n] = coeffs.get(n, 0) + mult
    return Divisor(coeffs)


def diamond(d1: Divisor, d2: Divisor) -> DiamondVector:
    """Pairing sum a_n b_m [(n-m)P], folded into positive indices ([-k] ~ -[k])."""
    raw: dict[int, int] = {}
    for n, a in d1.items():
        for m, b in d2.items():
            k = n - m
            raw[k] = raw.get(k, 0) + a * b
    folded = {}
    for k in range(1, max((abs(k) for k in raw), default=0) + 1):
        v = raw.get(k, 0) - raw.get(-k, 0)
        if v:
            folded[k] = v
    return DiamondVector(folded)


def vec_combine(terms) -> DiamondVector:
    """Integer linear combination of diamond vectors: sum of coeff * vector."""
    out: dict[int, int] = {}
    for coeff, vec in terms:
        for n, v in vec.items():
            out[n] = out.get(n, 0) + coeff * v
    return DiamondVector({n: v for n, v in out.items() if v})


# ----------------------------------------------------------------------------
# Local series expansions and tame symbols.
#
# Series are plain lists of Fractions, coeffs[k] being the t^k coefficient.

_ORDER = 10


def _ser_trim(a: list[Fraction]) -> list[Fraction]:
    return a[:_ORDER + 1] + [Fraction(0)] * max(0, _ORDER + 1 - len(a))


def _ser_add(a, b):
    return [x + y for x, y in zip(_ser_trim(a), _ser_trim(b))]


def _ser_mul(a, b):
    a, b = _ser_trim(a), _ser_trim(b)
    out = [Fraction(0)] * (_ORDER + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > _ORDER:
                break
            out[i + j] += ai * bj
    return out


def _ser_scale(a, s):
    return [s * x for x in _ser_trim(a)]


def _ser_const(v) -> list[Fraction]:
    return _ser_trim([Fraction(v)])


def _curve_defect_series(curve, xs, ys):
    """Series of F(x(t), y(t)) where F is the curve's defining polynomial."""
    out = _ser_mul(ys, ys)
    out = _ser_add(out, _ser_scale(_ser_mul(xs, ys), curve.a1))
    out = _ser_add(out, _ser_scale(ys, curve.a3))
    out = _ser_add(out, _ser_scale(_ser_mul(_ser_mul(xs, xs), xs), -1))
    out = _ser_add(out, _ser_scale(_ser_mul(xs, xs), -curve.a2))
    out = _ser_add(out, _ser_scale(xs, -curve.a4))
    return _ser_add(out, _ser_const(-curve.a6))


def _affine_expansions(curve: WeierstrassCurve, pt: CurvePoint):
    """Series for (x(t), y(t)) at an affine point.

    Uniformizer t = x - x0 when dF/dy != 0 there, else t = y - y0 (the
    vertical-tangent 2-torsion case); one of the two always works on a
    nonsingular curve.
    """
    x0, y0 = pt.x, pt.y
    fy = 2 * y0 + curve.a1 * x0 + curve.a3
    t = [Fraction(0), Fraction(1)]  # the series "t"
    if fy != 0:
        xs = _ser_add(_ser_const(x0), t)
        ys = _ser_const(y0)
        for k in range(1, _ORDER + 1):
            resid = _curve_defect_series(curve, xs, ys)
            ys[k] = -resid[k] / fy
        return xs, ys
    fx = curve.a1 * y0 - 3 * x0 * x0 - 2 * curve.a2 * x0 - curve.a4
    if fx == 0:
        raise ValueError("singular point on curve")
    ys = _ser_add(_ser_const(y0), t)
    xs = _ser_const(x0)
    for k in range(1, _ORDER + 1):
        resid = _curve_defect_series(curve, xs, ys)
        xs[k] = -resid[k] / fx
    return xs, ys


def _infinity_expansions(curve: WeierstrassCurve):
    """Laurent data at O in the standard parameter z = -x/y.

    Returns (x_offset, x_series, y_offset, y_series): x = z^-2 * series,
    y = -z^-3 * series (offsets -2 and -3).
    """
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    z = [Fraction(0), Fraction(1)]
    w = _ser_mul(_ser_mul(z, z), z)  # w = z^3 + ...
    for _ in range(_ORDER + 2):
        zw = _ser_mul(z, w)
        w2 = _ser_mul(w, w)
        nxt = _ser_mul(_ser_mul(z, z), z)
        nxt = _ser_add(nxt, _ser_scale(zw, a1))
        nxt = _ser_add(nxt, _ser_scale(_ser_mul(z, zw), a2))
        nxt = _ser_add(nxt, _ser_scale(w2, a3))
        nxt = _ser_add(nxt, _ser_scale(_ser_mul(z, w2), a4))
        nxt = _ser_add(nxt, _ser_scale(_ser_mul(w, w2), a6))
        w = nxt
    # w = z^3 * (1 + s(z)); invert the unit part
    unit = _ser_trim(w[3:])
    inv = _ser_const(1)
    for _ in range(_ORDER + 1):
        # Newton step for 1/unit: inv <- inv*(2 - unit*inv)
        inv = _ser_mul(inv, _ser_add(_ser_const(2), _ser_scale(_ser_mul(unit, inv), -1)))
    x_series = _ser_mul(z, inv)[1:]  # x = z * z^-3 / unit -> offset -2
    y_series = _ser_scale(inv, -1)   # y = -z^-3 / unit
    return -2, _ser_trim(x_series), -3, _ser_trim(y_series)


def _line_valuation_and_lead(curve, pt: CurvePoint, f: LineFunction):
    """(valuation, leading coefficient) of f in the local parameter at pt.

    At O the parameter is t = x/y; elsewhere t = x - x0 or t = y - y0 as in
    _affine_expansions.  The tame symbol is independent of these choices.
    """
    if pt.is_infinity:
        xo, xs, yo, ys = _infinity_expansions(curve)
        # align x (offset -2) and y (offset -3) to a common offset of -3
        coeffs = [Fraction(0)] * (_ORDER + 4)
        for k, v in enumerate(xs):
            coeffs[k + 1] += f.b * v
        for k, v in enumerate(ys):
            coeffs[k] += f.c * v
        coeffs[3] += f.a
        offset = -3
        for k, v in enumerate(coeffs):
            if v != 0:
                val = offset + k
                return val, v if val % 2 == 0 else -v  # convert from z = -x/y to t = x/y
        raise ValueError("zero function")
    xs, ys = _affine_expansions(curve, pt)
    coeffs = _ser_add(_ser_scale(xs, f.b), _ser_scale(ys, f.c))
    coeffs[0] += f.a
    for k, v in enumerate(coeffs):
        if v != 0:
            return k, v
    raise ValueError(f"line function vanishes to order > {_ORDER} at {pt}")


def tame_symbol(model: str, f: LineFunction, g: LineFunction, at: int) -> Fraction:
    """Tame symbol (-1)^(v(f)v(g)) * f^v(g) / g^v(f) evaluated at the point nP.

    The index `at` names the point as a multiple of the generator on E; it is
    carried to the requested model through the fixed coordinate change.
    """
    curve = CURVES[model]
    pt_e = multiple(E, at)
    pt = pt_e if model == "E" else CHANGES_FROM_E[model].apply(pt_e)
    vf = divisor_of(model, f).coeff(at)
    vg = divisor_of(model, g).coeff(at)
    vf_exp, lead_f = _line_valuation_and_lead(curve, pt, f)
    vg_exp, lead_g = _line_valuation_and_lead(curve, pt, g)
    if (vf_exp, vg_exp) != (vf, vg):
        raise RuntimeError(
            f"series valuations {(vf_exp, vg_exp)} disagree with the divisors "
            f"{(vf, vg)} at {at}P on {model}")
    sign = -1 if (vf * vg) % 2 else 1
    return sign * lead_f ** vg / lead_g ** vf
