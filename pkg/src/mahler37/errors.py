"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` (kebab-case) used by the
CLI when reporting failures, and an ``exit_code`` for process-level mapping:
2 for input/parse problems, 3 for numerical failures.
"""


class Mahler37Error(Exception):
    code = "error"
    exit_code = 3


class NotASmallMultiple(Mahler37Error):
    """A point is not n*P for any |n| within the searched bound."""

    code = "not-a-small-multiple"


class NonRationalZero(Mahler37Error):
    """A line function has a zero outside the rational points of the curve."""

    code = "nonrational-zero"


class AgmFailure(Mahler37Error):
    """AGM iteration for the period lattice did not converge."""

    code = "agm-failure"


class LeadingCoeffVanishes(Mahler37Error):
    """The leading y-coefficient vanishes at (or too near) the evaluation point."""

    code = "leading-coeff-vanishes"


class TorusVanishingSuspected(Mahler37Error):
    """A root modulus sticks to 1 over a positive-length window of angles."""

    code = "torus-vanishing-suspected"


class NonFiniteSample(Mahler37Error):
    """A quadrature sample magnitude underflowed (|P| < 1e-300)."""

    code = "non-finite-sample"


class NoCrossingFound(Mahler37Error):
    """A boundary scan detected no membership switches."""

    code = "no-crossing-found"


class BranchCollision(Mahler37Error):
    """Inside/outside root branches collided or could not be separated."""

    code = "branch-collision"


class InconsistentFit(Mahler37Error):
    """A proportionality fit left a residual above tolerance."""

    code = "inconsistent-fit"


class InsufficientTerms(Mahler37Error):
    """Series truncation error exceeds the requested tolerance."""

    code = "insufficient-terms"


class PolyParseError(Mahler37Error):
    """Polynomial expression could not be parsed; ``position`` is 0-based."""

    code = "parse-error"
    exit_code = 2

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class NonIntegerCoeff(PolyParseError):
    code = "nonint-coeff"


class BadExponent(PolyParseError):
    code = "bad-exponent"
