"""Boyd-family parameter scans, torus paths, and regulator integrals.

Each family is a one-parameter pencil P_k(x, y) = P_0(x, y) - k*x*y that is
quadratic in y.  For parameters where P_k has no torus zeros the fiber over
|x| = 1 splits into an inside root y1 and an outside root y2, and the closed
path (x, y1(x)) carries the regulator integrand

    eta(x, y) = log|x| d(arg y) - log|y| d(arg x)  ->  -log|y1| d(arg x).

The inside root vanishes wherever the y-constant term c(x) has a circle zero
(x = +-1 for these families), giving the integrand integrable log spikes that
a node quadrature cannot sample.  In that case the integrand is rewritten
through the exact fiber identity |y1| = |c(x)| / |y2|: the bounded branch
log|y2| is analytic over the whole circle (exponentially convergent
trapezoid), and the circle average of log|c| is a one-variable Mahler measure
known in closed form by Jensen.  Where c has no circle zeros, log|y1| itself
is analytic and the plain node trapezoid is used unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dilog import PeriodData
from .errors import BranchCollision, InconsistentFit, NoCrossingFound
from .measure import LaurentPoly2, _roots_grid, vanishes_on_torus

FAMILY_IDS = ("F1", "F2", "F3")

# y^2 + y - (cubic in x); the parameter enters as -k*x*y.
_BASE = {
    "F1": {(0, 2): 1, (0, 1): 1, (3, 0): -1, (2, 0): 1},
    "F2": {(0, 2): 1, (0, 1): 1, (3, 0): -1, (2, 0): -2, (1, 0): -1},
    "F3": {(0, 2): 1, (0, 1): 1, (3, 0): -1, (1, 0): 1},
}


def _check_family(family_id: str):
    if family_id not in _BASE:
        raise ValueError(f"unknown family {family_id!r}; expected one of {FAMILY_IDS}")


def family_poly(family_id: str, k):
    """Instantiate the family at parameter k.

    Integer k gives a LaurentPoly2; any other real k gives a plain coefficient
    mapping with float values that the numeric scans accept just the same.
    """
    _check_family(family_id)
    base = _BASE[family_id]
    if isinstance(k, float) and k.is_integer():
        k = int(k)
    if isinstance(k, int):
        return LaurentPoly2({**base, (1, 1): -k})
    from fractions import Fraction

    if isinstance(k, Fraction) and k.denominator == 1:
        return LaurentPoly2({**base, (1, 1): -int(k)})
    coeffs = {key: float(v) for key, v in base.items()}
    coeffs[(1, 1)] = -float(k)
    return coeffs


def region_map(family_id: str, theta1: float, theta2: float) -> complex:
    """Parameter value k = P_0(x, y) / (x*y) at a torus point."""
    _check_family(family_id)
    x = np.exp(2j * np.pi * theta1)
    y = np.exp(2j * np.pi * theta2)
    num = sum(v * x ** i * y ** j for (i, j), v in _BASE[family_id].items())
    return complex(num / (x * y))


@dataclass(frozen=True)
class RegionGrid:
    family: str
    n: int
    samples: tuple  # row-major (theta1, theta2, complex k)


def region_grid(family_id: str, n: int) -> RegionGrid:
    """Forward image of the n x n torus grid under the region map."""
    _check_family(family_id)
    if n < 2:
        raise ValueError("grid size must be at least 2")
    x = np.exp(2j * np.pi * np.arange(n) / n)
    num = np.zeros((n, n), dtype=np.complex128)
    for (i, j), v in _BASE[family_id].items():
        num += v * np.outer(x ** i, x ** j)
    k = num / np.outer(x, x)
    samples = tuple(
        (a / n, b / n, complex(k[a, b])) for a in range(n) for b in range(n)
    )
    return RegionGrid(family_id, n, samples)


def real_boundary(family_id: str, tol: float = 1e-4, k_min: float = -10.0,
                  k_max: float = 10.0, step: float = 0.05, grid: int = 192) -> list[float]:
    """Real parameters where torus-vanishing membership switches, by bisection."""
    _check_family(family_id)

    def member(k: float, n: int) -> bool:
        return vanishes_on_torus(family_poly(family_id, k), n).vanishes

    ks = np.arange(k_min, k_max + step / 2, step)
    flags = [member(float(k), grid) for k in ks]
    crossings = []
    for a, b, fa, fb in zip(ks, ks[1:], flags, flags[1:]):
        if fa == fb:
            continue
        lo, hi = float(a), float(b)
        flo = fa
        while hi - lo > tol / 2:
            mid = 0.5 * (lo + hi)
            # vanishing arcs shrink like sqrt(distance to the boundary), so
            # the bisection scans finer grids than the coarse sweep
            if member(mid, 4096) == flo:
                lo = mid
            else:
                hi = mid
        crossings.append(0.5 * (lo + hi))
    if not crossings:
        raise NoCrossingFound(f"no membership switches for {family_id} in [{k_min}, {k_max}]")
    return crossings


@dataclass(frozen=True)
class PathSample:
    """Branch-tracked fiber roots over the unit x-circle for one parameter."""

    family: str
    k: float
    theta: np.ndarray
    x: np.ndarray
    y1: np.ndarray  # inside root, |y1| < 1
    y2: np.ndarray  # outside root, |y2| > 1

    @property
    def orientation(self) -> int:
        return 1 if self.theta[-1] >= self.theta[0] else -1

    def reversed(self) -> "PathSample":
        return PathSample(self.family, self.k, self.theta[::-1].copy(),
                          self.x[::-1].copy(), self.y1[::-1].copy(), self.y2[::-1].copy())


_SEP_GUARD = 1e-9       # tolerated one-sided overshoot of |y1| <= 1 <= |y2|
_COLLISION_TOL = 1e-10


def path_sigma(family_id: str, k: float, n: int = 4096) -> PathSample:
    """The closed path (x, y1(x)) with branch continuity along theta = m/n."""
    _check_family(family_id)
    poly = family_poly(family_id, float(k))
    theta = np.arange(n) / n
    _, roots = _roots_grid(poly, theta)
    # initial labels at theta = 0 by modulus, then nearest-match tracking
    first = sorted(roots[0], key=abs)
    y1 = np.empty(n, dtype=np.complex128)
    y2 = np.empty(n, dtype=np.complex128)
    y1[0], y2[0] = first
    for m in range(1, n):
        ra, rb = roots[m]
        keep = abs(ra - y1[m - 1]) + abs(rb - y2[m - 1])
        swap = abs(rb - y1[m - 1]) + abs(ra - y2[m - 1])
        y1[m], y2[m] = (ra, rb) if keep <= swap else (rb, ra)
    gap = np.abs(y1 - y2).min()
    if gap < _COLLISION_TOL:
        raise BranchCollision(f"fiber roots collide (min gap {gap:.2e}) at k = {k}")
    if abs(y1[-1] - y1[0]) > abs(y1[-1] - y2[0]):
        raise BranchCollision(f"branch tracking does not close at k = {k}; raise n")
    if np.abs(y1).max() > 1.0 + _SEP_GUARD or np.abs(y2).min() < 1.0 - _SEP_GUARD:
        raise BranchCollision(
            f"inside/outside separation fails at k = {k}: parameter lies in the "
            "vanishing region or the resolution is too low")
    x = np.exp(2j * np.pi * theta)
    return PathSample(family_id, float(k), theta, x, y1, y2)


# ----------------------------------------------------------------------------
# Quadrature along the path.

def _constant_term_on_circle(poly):
    """(has circle zeros, exact circle average of log|c|) for the y-constant column."""
    from .measure import _mahler_one_variable, _y_columns

    _, cols = _y_columns(poly)
    col = cols[0]
    if not col:
        return True, None  # c = 0: y1 = 0 identically, path degenerate
    imin = min(col)
    deg = max(col) - imin
    if deg == 0:
        return False, math.log(abs(col[imin]))
    coeffs = [0.0] * (deg + 1)
    for i, v in col.items():
        coeffs[i - imin] = float(v)
    has_zero = any(abs(abs(r) - 1.0) < 1e-9 for r in np.roots(coeffs[::-1]))
    return has_zero, _mahler_one_variable(col)


def eta_integral(path: PathSample) -> float:
    """Integral of eta(x, y) along the path: -int log|y1| d(arg x).

    Orientation follows the sample order; reversing the path negates the
    value.  Where the constant term c(x) has no zeros on the circle, log|y1|
    is analytic and the node trapezoid converges exponentially.  Where it
    does (x = +-1 for these families), y1 vanishes there and the node values
    blow up, so the integrand is rewritten through the exact fiber identity
    |y1| = |c(x)| / |y2|: the bounded branch log|y2| keeps the exponential
    trapezoid, and the circle average of log|c| is a one-variable Mahler
    measure evaluated in closed form by Jensen.
    """
    poly = family_poly(path.family, path.k)
    sign = path.orientation
    has_zero, c_average = _constant_term_on_circle(poly)
    if c_average is None:
        raise BranchCollision("constant term vanishes identically; no inside branch")
    if not has_zero:
        return sign * 2.0 * math.pi * float(np.mean(-np.log(np.abs(path.y1))))
    return sign * 2.0 * math.pi * (float(np.mean(np.log(np.abs(path.y2)))) - c_average)


def period_reality_check(family_id: str, k: float, n: int = 2048) -> float:
    """Relative real part of the period integral of dx / (2y - kx + 1) along the path."""
    if disc_k(k) <= 0:
        raise ValueError(f"discriminant is not positive at k = {k}")
    path = path_sigma(family_id, k, n)
    w = 2j * np.pi * path.x / (2.0 * path.y1 - k * path.x + 1.0)
    integral = complex(np.mean(w))
    return abs(integral.real) / abs(integral)


# ----------------------------------------------------------------------------
# Discriminant of the completed-square quartic model.

def disc_k(k: float) -> float:
    """Discriminant (scaled by 1/16) of f(x) = 4x^3 + (k^2-4)x^2 - 2kx + 1.

    Expanding the standard cubic discriminant of f gives
    16*(k^4 - k^3 - 8k^2 + 36k - 11).
    """
    return (((k - 1.0) * k - 8.0) * k + 36.0) * k - 11.0


def disc_roots() -> tuple[float, float]:
    """The two real roots of disc_k, located by bisection to 1e-10."""
    roots = []
    ks = np.arange(-10.0, 10.0, 0.01)
    vals = [disc_k(float(k)) for k in ks]
    for a, b, fa, fb in zip(ks, ks[1:], vals, vals[1:]):
        if fa == 0.0:
            roots.append(float(a))
            continue
        if fa * fb < 0:
            lo, hi, flo = float(a), float(b), fa
            while hi - lo > 1e-12:
                mid = 0.5 * (lo + hi)
                fm = disc_k(mid)
                if fm == 0.0:
                    lo = hi = mid
                elif (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    if len(roots) != 2:
        raise NoCrossingFound(f"expected 2 real discriminant roots, found {len(roots)}")
    return roots[0], roots[1]


# ----------------------------------------------------------------------------
# Proportionality between regulator integrals and dilogarithm values.

@dataclass(frozen=True)
class ProportionalityFit:
    c: float
    residuals: tuple[float, ...]


def fit_constant(pd: PeriodData, pairs) -> ProportionalityFit:
    """Least-squares single constant c with eta ~ c * dilog, relative residuals."""
    pairs = [(float(e), float(d)) for e, d in pairs]
    if len(pairs) < 1:
        raise ValueError("at least one (eta, dilog) pair is required")
    if any(d == 0.0 for _, d in pairs):
        raise ValueError("dilog values must be nonzero (Steinberg vectors excluded)")
    num = sum(e * d for e, d in pairs)
    den = sum(d * d for _, d in pairs)
    c = num / den
    residuals = tuple(abs(e - c * d) / abs(e) for e, d in pairs)
    if any(r > 1e-6 for r in residuals):
        raise InconsistentFit(f"fit residuals {residuals} exceed 1e-6")
    return ProportionalityFit(c, residuals)
