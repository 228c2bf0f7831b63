"""Exception hierarchy for ellgauss."""


class EllgaussError(Exception):
    """Base class for all ellgauss errors."""


class DegenerateLattice(EllgaussError):
    """Generators are zero or real multiples of each other."""


class WrongOrientation(EllgaussError):
    """Generator pair spans a negatively oriented cell; swap the generators."""


class ShellTooLarge(EllgaussError):
    """Requested shell would enumerate more points than the configured cap."""


class TooCloseToPole(EllgaussError):
    """Evaluation point is within the pole-guard radius of a lattice point."""


class ToleranceNotReached(EllgaussError):
    """Adaptive extension cap was hit before the requested tolerance.

    Carries the best value computed so far and the achieved error estimate.
    """

    def __init__(self, message, value=None, achieved=None):
        super().__init__(message)
        self.value = value
        self.achieved = achieved


class BadModulus(EllgaussError):
    """Modulus tau is not in the upper half-plane."""


class OutsideStrip(EllgaussError):
    """Argument lies outside the convergence strip of the double q-series."""


class BadExponent(EllgaussError):
    """Exponent too close to the boundary of absolute convergence."""


class SlowConvergence(EllgaussError):
    """The nome is too close to the unit circle for a double-precision q-series."""


class ConsistencyFailure(EllgaussError):
    """Internal cross-check between independently derived quantities failed."""


class ParseError(EllgaussError, ValueError):
    """Malformed complex-number literal.

    Subclasses ValueError so argparse maps it to a usage error.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
