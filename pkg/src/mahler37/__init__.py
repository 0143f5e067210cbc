"""Mahler-measure identities for the conductor-37 elliptic curve.

Exact divisor algebra on the three Weierstrass models, elliptic dilogarithms
over the period lattice, Jensen-formula Mahler measures with a torus-grid
cross-check, regulator path integrals over the Boyd families, and the
L-function special values the measures are conjecturally proportional to.
"""

from .curves import (
    CHANGE_E_TO_E1,
    CHANGE_E_TO_E2,
    CURVES,
    E,
    E1,
    E2,
    GENERATOR,
    INFINITY,
    CoordChange,
    CurvePoint,
    WeierstrassCurve,
    add,
    apply_change,
    discriminant,
    generator,
    identify_multiple,
    multiple,
    negate,
    on_curve,
)
from .dilog import (
    PeriodData,
    RealValue,
    bloch_wigner,
    dilog_of_vector,
    elliptic_dilog,
    elliptic_log,
    periods,
)
from .divisors import (
    DiamondVector,
    Divisor,
    LineFunction,
    diamond,
    divisor_of,
    tame_symbol,
    vec_combine,
)
from .lseries import (
    LSeriesData,
    RationalGuess,
    an_expand,
    ap,
    l_prime_0,
    l_value_1,
    l_value_2,
    recognize_rational,
)
from .measure import (
    LaurentPoly2,
    MahlerResult,
    TorusScan,
    mahler_grid2d,
    mahler_jensen,
    roots_in_y,
    vanishes_on_torus,
)
from .polyparse import parse_line_function, parse_poly
from .region import (
    FAMILY_IDS,
    PathSample,
    ProportionalityFit,
    RegionGrid,
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

__version__ = "0.1.0"
