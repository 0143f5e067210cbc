"""Logarithmic Mahler measures of two-variable integer Laurent polynomials.

The primary evaluator reduces the torus average of log|P| to a single angular
integral by Jensen's formula: for each x on the unit circle the inner integral
over y equals log of the leading y-coefficient plus log+ of every y-root.
A tensor midpoint rule on the full torus (`mahler_grid2d`) serves as the slow,
independent cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    LeadingCoeffVanishes,
    NonFiniteSample,
    TorusVanishingSuspected,
)

MAX_EXPONENT = 64

_CIRCLE_BAND = 1e-12     # |modulus - 1| below this counts as "on the circle"
_TOUCH_BAND = 1e-3       # refinement window around near-unit root moduli
_LEAD_GUARD = 1e-9       # minimum circle distance for non-monomial leaders


class LaurentPoly2:
    """Finite integer combination of monomials x^i * y^j, |i|, |j| <= 64."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = {}
        for key, v in dict(coeffs).items():
            i, j = int(key[0]), int(key[1])
            if abs(i) > MAX_EXPONENT or abs(j) > MAX_EXPONENT:
                raise ValueError(f"exponent ({i},{j}) outside +-{MAX_EXPONENT}")
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"coefficient of x^{i}*y^{j} is not an integer: {v!r}")
            if v:
                c[(i, j)] = v
        self._c = c

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> "LaurentPoly2":
        return cls({(i, j): coeff})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly2":
        return cls({(0, 0): value})

    def items(self):
        return sorted(self._c.items())

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other):
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly2(out)

    def __neg__(self):
        return LaurentPoly2({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: other * v for k, v in self._c.items()})
        out: dict = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        out = LaurentPoly2.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def substitute_x_inverse(self) -> "LaurentPoly2":
        return LaurentPoly2({(-i, j): v for (i, j), v in self._c.items()})

    def substitute_y_inverse(self) -> "LaurentPoly2":
        return LaurentPoly2({(i, -j): v for (i, j), v in self._c.items()})

    def evaluate(self, x: complex, y: complex) -> complex:
        return sum(v * x ** i * y ** j for (i, j), v in self._c.items())

    def y_degree_span(self) -> tuple[int, int]:
        js = [j for (_, j) in self._c]
        return min(js), max(js)

    def render(self) -> str:
        """Canonical text form, parseable by the CLI grammar."""
        if not self._c:
            return "0"
        parts = []
        for (i, j), v in sorted(self._c.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
            factors = []
            if abs(v) != 1 or (i == 0 and j == 0):
                factors.append(str(abs(v)))
            if i != 0:
                factors.append("x" if i == 1 else f"x^{i}")
            if j != 0:
                factors.append("y" if j == 1 else f"y^{j}")
            term = "*".join(factors)
            if not parts:
                parts.append(term if v > 0 else "-" + term)
            else:
                parts.append(("+" if v > 0 else "-") + term)
        return "".join(parts)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly2) and self._c == other._c

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        return f"LaurentPoly2({self.render()})"


@dataclass(frozen=True)
class MahlerResult:
    value: float
    abs_err: float
    method: str
    samples: int


@dataclass(frozen=True)
class TorusScan:
    """Outcome of a vanishing scan: either a crossing witness or a margin report."""

    vanishes: bool
    witness: tuple[float, float] | None
    min_abs_log_modulus: float | None

    def __bool__(self) -> bool:
        return self.vanishes


# ----------------------------------------------------------------------------
# Shared numeric plumbing.  These helpers accept either a LaurentPoly2 or a
# plain {(i, j): coefficient} mapping with float coefficients, which is what
# the Boyd-family scans at non-integer parameters feed in.

def _coeff_items(P):
    if isinstance(P, LaurentPoly2):
        return P.items()
    return sorted(dict(P).items())


def _y_columns(P):
    """(jmin, columns) where columns[m] maps i -> coefficient of x^i y^(jmin+m)."""
    items = _coeff_items(P)
    if not items:
        raise ValueError("zero polynomial")
    js = [j for (_, j), _ in items]
    jmin, jmax = min(js), max(js)
    cols = [{} for _ in range(jmax - jmin + 1)]
    for (i, j), v in items:
        cols[j - jmin][i] = v
    return jmin, cols


def _eval_column(col: dict, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x, dtype=np.complex128)
    for i, v in sorted(col.items()):
        out += v * x ** i
    return out


def _quad_roots_vec(a, b, c):
    """Roots of a*y^2 + b*y + c for arrays, numerically stable pairing."""
    disc = b * b - 4.0 * a * c
    s = np.sqrt(disc.astype(np.complex128))
    s = np.where((np.conj(b) * s).real < 0.0, -s, s)
    q = -0.5 * (b + s)
    r1 = q / a
    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = np.where(q != 0, c / np.where(q != 0, q, 1.0), 0.0)
    return np.stack([r1, r2], axis=-1)


def _roots_at_x(P, x: np.ndarray):
    """Leading-coefficient values and all y-roots above given x values.

    Returns (lead, roots) with shapes (len(x),) and (len(x), d).  Roots are
    unordered; callers sort or track branches themselves.
    """
    _, cols = _y_columns(P)
    d = len(cols) - 1
    if d < 1:
        raise ValueError("polynomial has y-degree 0")
    x = np.asarray(x, dtype=np.complex128)
    vals = [_eval_column(c, x) for c in cols]
    lead = vals[d]
    if d == 1:
        roots = (-vals[0] / lead)[:, None]
    elif d == 2:
        roots = _quad_roots_vec(vals[2], vals[1], vals[0])
    else:
        roots = np.empty((len(x), d), dtype=np.complex128)
        for m in range(len(x)):
            coeffs = [vals[k][m] for k in range(d, -1, -1)]
            r = np.roots(coeffs)
            if len(r) < d:  # leading coefficient underflow; root escaped to infinity
                raise LeadingCoeffVanishes(f"degree dropped at x={x[m]}")
            roots[m] = r
    return lead, roots


def _roots_grid(P, thetas: np.ndarray):
    """_roots_at_x along the unit circle x = exp(2*pi*i*theta)."""
    return _roots_at_x(P, np.exp(2j * np.pi * np.asarray(thetas, dtype=np.float64)))


def roots_in_y(P, x: complex) -> list[complex]:
    """All y-roots of P(x, .) for a fixed x on (or off) the unit circle.

    Roots are sorted by modulus (ties by real then imaginary part).
    """
    _, cols = _y_columns(P)
    d = len(cols) - 1
    if d < 1:
        raise ValueError("polynomial has y-degree 0")
    vals = [_eval_column(c, np.array([complex(x)]))[0] for c in cols]
    scale = max(abs(v) for v in vals)
    if abs(vals[d]) <= 1e-13 * scale:
        raise LeadingCoeffVanishes(f"leading y-coefficient vanishes at x = {x}")
    if d == 1:
        roots = [-vals[0] / vals[1]]
    elif d == 2:
        roots = list(_quad_roots_vec(np.array([vals[2]]), np.array([vals[1]]),
                                     np.array([vals[0]]))[0])
    else:
        roots = list(np.roots([vals[k] for k in range(d, -1, -1)]))
    return sorted((complex(r) for r in roots), key=lambda r: (abs(r), r.real, r.imag))


def _require_integer_poly(P) -> LaurentPoly2:
    if not isinstance(P, LaurentPoly2):
        P = LaurentPoly2(P)
    if P.is_zero():
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    return P


def _lead_column_circle_guard(P):
    """Reject leading y-coefficients that vanish on (or hug) the unit circle."""
    _, cols = _y_columns(P)
    lead = cols[-1]
    if len(lead) <= 1:
        return  # monomial leader: constant modulus on the circle
    imin = min(lead)
    degs = sorted(i - imin for i in lead)
    coeffs = [0] * (degs[-1] + 1)
    for i, v in lead.items():
        coeffs[i - imin] = v
    for r in np.roots(coeffs[::-1]):
        if abs(abs(r) - 1.0) < _LEAD_GUARD:
            raise LeadingCoeffVanishes(
                "leading y-coefficient has a zero on the unit circle")


def _adaptive_simpson(f, a, b, tol, depth=24):
    """Plain recursive Simpson; returns (integral, error_estimate)."""
    fa, fm, fb = f(a), f((a + b) / 2), f(b)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = (a + b) / 2
        lm, rm = (a + m) / 2, (m + b) / 2
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        err = (left + right - whole) / 15
        if depth <= 0 or abs(err) <= tol:
            return left + right + err, abs(err)
        lv, le = recurse(a, m, fa, flm, fm, left, tol / 2, depth - 1)
        rv, re = recurse(m, b, fm, frm, fb, right, tol / 2, depth - 1)
        return lv + rv, le + re

    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    return recurse(a, b, fa, fm, fb, whole, tol, depth)


def _mahler_one_variable(col: dict) -> float:
    """Exact Mahler measure of a one-variable Laurent polynomial via Jensen."""
    imin = min(col)
    deg = max(col) - imin
    if deg == 0:
        return math.log(abs(col[imin]))
    coeffs = [0.0] * (deg + 1)
    for i, v in col.items():
        coeffs[i - imin] = float(v)
    roots = np.roots(coeffs[::-1])
    mods = np.abs(roots)
    return math.log(abs(coeffs[deg])) + float(np.log(mods[mods > 1.0]).sum())


def _jensen_integrand(P, thetas):
    """log|lead| + sum of log+ of root moduli, plus per-node root moduli."""
    lead, roots = _roots_grid(P, thetas)
    mods = np.abs(roots)
    with np.errstate(divide="ignore"):
        logplus = np.where(mods > 1.0, np.log(np.maximum(mods, 1e-300)), 0.0)
    vals = np.log(np.abs(lead)) + logplus.sum(axis=1)
    return vals, mods


def mahler_jensen(P, tol: float = 1e-8) -> MahlerResult:
    """m(P) by Jensen reduction in y and a doubling periodic trapezoid rule.

    If the doubling stalls on a kinked integrand (a root modulus grazing the
    circle), the grazing windows get a local adaptive pass.  Root moduli glued
    to the circle over a window of angles mean a factor of P vanishes along
    the whole window, and raise TorusVanishingSuspected.
    """
    P = _require_integer_poly(P)
    _, cols = _y_columns(P)
    if len(cols) == 1:
        # No y-dependence beyond a monomial factor: Jensen in x is exact.
        return MahlerResult(value=_mahler_one_variable(cols[0]), abs_err=1e-14,
                            method="jensen", samples=0)
    _lead_column_circle_guard(P)
    samples = 0
    n = 64
    prev = None
    while True:
        thetas = np.arange(n) / n
        vals, mods = _jensen_integrand(P, thetas)
        samples += n
        onband = (np.abs(mods - 1.0) < _CIRCLE_BAND).any(axis=1)
        if np.any(onband & np.roll(onband, -1)):
            raise TorusVanishingSuspected(
                "a y-root modulus stays within 1e-12 of 1 over consecutive nodes")
        estimate = float(vals.mean())
        if prev is not None:
            diff = abs(estimate - prev)
            if diff < 0.5 * tol or n >= 2 ** 20:
                break
        prev = estimate
        n *= 2
    err = diff

    # Local refinement around angles where a root modulus grazes the circle.
    # The composite periodic trapezoid converges exponentially for analytic
    # integrands (its per-window errors cancel globally, so local patching
    # would only hurt); the patching below is the fallback for integrands
    # whose doubling stalled on a genuine kink at a grazing angle.
    flagged = (np.abs(mods - 1.0) < _TOUCH_BAND).any(axis=1)
    if err >= 0.5 * tol and flagged.any() and not flagged.all():
        idx = np.flatnonzero(flagged)
        runs = []
        start = prev_i = idx[0]
        for i in idx[1:]:
            if i == prev_i + 1:
                prev_i = i
                continue
            runs.append((start, prev_i))
            start = prev_i = i
        runs.append((start, prev_i))
        # merge a wrap-around run
        if len(runs) > 1 and runs[0][0] == 0 and runs[-1][1] == n - 1:
            runs[0] = (runs[-1][0] - n, runs[0][1])
            runs.pop()

        def scalar_f(theta):
            v, _ = _jensen_integrand(P, np.array([theta % 1.0]))
            return float(v[0])

        h = 1.0 / n
        local_tol = tol / (4.0 * len(runs))
        for i0, i1 in runs:
            a, b = (i0 - 1) * h, (i1 + 1) * h
            inner = vals[np.arange(i0, i1 + 1) % n].sum()
            trap = h * (0.5 * vals[(i0 - 1) % n] + inner + 0.5 * vals[(i1 + 1) % n])
            refined, ref_err = _adaptive_simpson(scalar_f, a, b, local_tol)
            estimate += (refined - trap)
            err += ref_err
            samples += 64  # nominal accounting for the adaptive pass
    return MahlerResult(value=estimate, abs_err=max(err, 1e-16), method="jensen",
                        samples=samples)


def mahler_grid2d(P, n: int = 512) -> MahlerResult:
    """m(P) by an n x n (then 2n x 2n) midpoint rule over the full torus."""
    P = _require_integer_poly(P)
    items = P.items()
    cre = np.array([float(v) for _, v in items])
    cim = np.zeros_like(cre)
    iexp = np.array([i for (i, _), _ in items], dtype=np.int64)
    jexp = np.array([j for (_, j), _ in items], dtype=np.int64)
    totals = []
    for size in (n, 2 * n):
        total, min_abs = kernels.grid_logabs_sum(cre, cim, iexp, jexp, size)
        if min_abs < 1e-300:
            raise NonFiniteSample(f"|P| underflowed on the {size}x{size} grid")
        totals.append(total / size ** 2)
    return MahlerResult(value=totals[1], abs_err=abs(totals[1] - totals[0]),
                        method="grid2d", samples=n * n + 4 * n * n)


def _classify(mods: np.ndarray):
    """Per-node (inside count, on-circle flag) from root moduli."""
    on = np.abs(mods - 1.0) < _CIRCLE_BAND
    inside = mods < 1.0 - _CIRCLE_BAND
    return inside.sum(axis=1), on.any(axis=1)


def vanishes_on_torus(P, n: int = 256) -> TorusScan:
    """Detect whether some y-root modulus crosses 1 along the midpoint grid.

    A sign change of (|root| - 1) between neighbouring sample angles, or a
    root modulus pinned to 1 over consecutive nodes, witnesses a torus zero;
    the witness is refined by bisection.  Tangential grazes at isolated
    angles (boundary parameters) do not count as crossings.
    """
    thetas = (np.arange(n) + 0.5) / n
    _, roots = _roots_grid(P, thetas)
    mods = np.abs(roots)
    n_in, onband = _classify(mods)

    def witness_at(theta, root_row):
        k = int(np.argmin(np.abs(np.abs(root_row) - 1.0)))
        ang = (cmath.phase(complex(root_row[k])) / (2 * math.pi)) % 1.0
        return (float(theta % 1.0), ang)

    # pinned to the circle over a positive-length window
    sustained = onband & np.roll(onband, -1)
    if sustained.any():
        i = int(np.flatnonzero(sustained)[0])
        return TorusScan(True, witness_at(thetas[i], roots[i]), None)

    clean = np.flatnonzero(~onband)
    if len(clean) == 0:
        i = 0
        return TorusScan(True, witness_at(thetas[0], roots[0]), None)

    def refine(lo, hi, lo_count):
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            _, r = _roots_grid(P, np.array([mid % 1.0]))
            m = np.abs(r)
            c, on = _classify(m)
            if on[0] or hi - lo < 1e-13:
                return witness_at(mid, r[0])
            if c[0] == lo_count:
                lo = mid
            else:
                hi = mid
        return witness_at(0.5 * (lo + hi), r[0])

    for a, b in zip(clean, np.roll(clean, -1)):
        tb = thetas[b] if b > a else thetas[b] + 1.0
        if n_in[a] != n_in[b]:
            return TorusScan(True, refine(thetas[a], tb, n_in[a]), None)

    margin = float(np.abs(np.log(mods)).min())
    return TorusScan(False, None, margin)
