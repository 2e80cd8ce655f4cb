"""Exception types shared across the package."""


class BeliefChainError(Exception):
    """Base class for numerical failures raised by this package."""


class QuadratureError(BeliefChainError):
    """Adaptive quadrature did not reach the requested tolerance."""


class BracketingError(BeliefChainError):
    """Root bracketing failed; the likelihood-ratio range does not cover
    the requested target on the truncated support."""


class DegenerateDenominatorError(BeliefChainError):
    """A denominator in the first-order optimality condition vanished,
    typically because both conditional thresholds collapsed to one point."""


class ConfigError(BeliefChainError):
    """An experiment configuration is malformed or inconsistent."""
