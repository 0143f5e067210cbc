"""Exact arithmetic on long Weierstrass models of the conductor-37 curve.

Coordinates are `fractions.Fraction` throughout; nothing here touches floating
point, so group-law identities can be asserted bit-exactly.  The three named
models E, E1, E2 and the affine-linear changes of variables between them are
module constants, as is the Mordell-Weil generator P = (0, 0) on E.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotASmallMultiple

Rational = Fraction


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 over the rationals."""

    a1: Rational
    a2: Rational
    a3: Rational
    a4: Rational
    a6: Rational
    name: str = ""

    def __post_init__(self):
        for f in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, f, _frac(getattr(self, f)))

    # Standard b-invariants.
    @property
    def b2(self) -> Fraction:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Fraction:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> Fraction:
        return (self.a1 * self.a1 * self.a6 + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4 + self.a2 * self.a3 * self.a3
                - self.a4 * self.a4)

    def defect(self, x, y):
        """F(x, y) = y^2 + a1*x*y + a3*y - x^3 - a2*x^2 - a4*x - a6.

        Zero exactly when (x, y) lies on the curve.
        """
        return (y * y + self.a1 * x * y + self.a3 * y
                - x * x * x - self.a2 * x * x - self.a4 * x - self.a6)

    def __repr__(self):
        return f"WeierstrassCurve({self.name or (self.a1, self.a2, self.a3, self.a4, self.a6)})"


@dataclass(frozen=True)
class CurvePoint:
    """Affine rational point, or the point at infinity when both fields are None."""

    x: Rational | None = None
    y: Rational | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates must be given, or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


def discriminant(curve: WeierstrassCurve) -> Fraction:
    b2, b4, b6, b8 = curve.b2, curve.b4, curve.b6, curve.b8
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def on_curve(curve: WeierstrassCurve, pt: CurvePoint) -> bool:
    if pt.is_infinity:
        return True
    return curve.defect(pt.x, pt.y) == 0


def negate(curve: WeierstrassCurve, pt: CurvePoint) -> CurvePoint:
    if pt.is_infinity:
        return pt
    return CurvePoint(pt.x, -pt.y - curve.a1 * pt.x - curve.a3)


def add(curve: WeierstrassCurve, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """Chord-and-tangent sum, exact in rational arithmetic."""
    for pt in (p, q):
        if not on_curve(curve, pt):
            raise ValueError(f"point {pt} is not on {curve.name or 'the curve'}")
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    if p.x == q.x:
        if p.y != q.y or 2 * p.y + a1 * p.x + a3 == 0:
            # q = -p (two points on a vertical line, or a 2-torsion tangent)
            return INFINITY
        den = 2 * p.y + a1 * p.x + a3
        lam = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / den
        nu = (-p.x ** 3 + a4 * p.x + 2 * a6 - a3 * p.y) / den
    else:
        lam = (q.y - p.y) / (q.x - p.x)
        nu = p.y - lam * p.x
    x3 = lam * lam + a1 * lam - a2 - p.x - q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


@dataclass(frozen=True)
class CoordChange:
    """Affine-linear change of variables x' = r0.x + r1.y + r2 (and same shape for y').

    The 2x2 linear part must be unimodular so the map is invertible over the
    integers and carries one Weierstrass model to another.
    """

    x_row: tuple[int, int, int]
    y_row: tuple[int, int, int]
    source: str
    target: str

    def apply(self, pt: CurvePoint) -> CurvePoint:
        if pt.is_infinity:
            return pt
        ax, bx, cx = self.x_row
        ay, by, cy = self.y_row
        return CurvePoint(ax * pt.x + bx * pt.y + cx, ay * pt.x + by * pt.y + cy)

    def inverse(self) -> "CoordChange":
        a, b, tx = self.x_row
        c, d, ty = self.y_row
        det = a * d - b * c
        if det not in (1, -1):
            raise ValueError("coordinate change is not unimodular")
        ia, ib, ic, id_ = d // det, -b // det, -c // det, a // det
        return CoordChange(
            (ia, ib, -(ia * tx + ib * ty)),
            (ic, id_, -(ic * tx + id_ * ty)),
            self.target,
            self.source,
        )


def apply_change(change: CoordChange, pt: CurvePoint) -> CurvePoint:
    return change.apply(pt)


# The three models of the conductor-37 curve and the changes between them.
E = WeierstrassCurve(0, 0, 1, -1, 0, name="E")     # y^2 + y = x^3 - x
E1 = WeierstrassCurve(4, -1, 1, 0, 0, name="E1")   # y^2 + 4xy + y = x^3 - x^2
E2 = WeierstrassCurve(2, 2, 1, 1, 0, name="E2")    # y^2 + 2xy + y = x^3 + 2x^2 + x

CHANGE_E_TO_E1 = CoordChange((1, 0, -1), (-2, 1, 2), "E", "E1")
CHANGE_E_TO_E2 = CoordChange((1, 0, -1), (-1, 1, 1), "E", "E2")

CURVES = {"E": E, "E1": E1, "E2": E2}
CHANGES_FROM_E = {"E1": CHANGE_E_TO_E1, "E2": CHANGE_E_TO_E2}

GENERATOR = CurvePoint(0, 0)

_GENERATORS = {
    E: GENERATOR,
    E1: CHANGE_E_TO_E1.apply(GENERATOR),
    E2: CHANGE_E_TO_E2.apply(GENERATOR),
}


def generator(curve: WeierstrassCurve) -> CurvePoint:
    try:
        return _GENERATORS[curve]
    except KeyError:
        raise ValueError(f"no known Mordell-Weil generator for {curve!r}") from None


@lru_cache(maxsize=None)
def _cached_multiple(curve: WeierstrassCurve, n: int) -> CurvePoint:
    return _multiple_uncached(curve, n)


def _multiple_uncached(curve: WeierstrassCurve, n: int) -> CurvePoint:
    if n == 0:
        return INFINITY
    if n < 0:
        return negate(curve, multiple(curve, -n))
    base = generator(curve)
    result = INFINITY
    addend = base
    k = n
    while k:
        if k & 1:
            result = add(curve, result, addend)
        k >>= 1
        if k:
            addend = add(curve, addend, addend)
    return result


def multiple(curve: WeierstrassCurve, n: int) -> CurvePoint:
    """n-th multiple of the model's generator; multiples up to |n| = 16 are cached."""
    if abs(n) <= 16:
        return _cached_multiple(curve, n)
    return _multiple_uncached(curve, n)


def identify_multiple(curve: WeierstrassCurve, pt: CurvePoint, bound: int) -> int:
    """Exhaustively match pt against n*P for |n| <= bound."""
    if pt.is_infinity:
        return 0
    for n in range(1, bound + 1):
        cand = multiple(curve, n)
        if cand == pt:
            return n
        if negate(curve, cand) == pt:
            return -n
    raise NotASmallMultiple(f"{pt} is not nP for any |n| <= {bound} on {curve.name}")
