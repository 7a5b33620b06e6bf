class AttractorError(Exception):
    """Base class for every error raised by piecewise_attractor."""


class DomainError(AttractorError, ValueError):
    """An input lies outside the domain an operation is defined on."""


class ConfigError(AttractorError):
    """A run configuration is invalid. Raised before any computation starts."""


class NumericalError(AttractorError):
    """A computation could not produce a usable result."""


class DivergenceError(NumericalError):
    """The integrated state left the blow-up guard."""

    def __init__(self, t: float, state) -> None:
        self.t = t
        self.state = tuple(state)
        super().__init__(
            f"Integration diverged at t={t:.6g} with state "
            f"({', '.join(f'{v:.6g}' for v in self.state)})."
        )


class InsufficientDataError(NumericalError):
    """Not enough samples, maxima or points to carry out an operation."""


class TieError(NumericalError):
    """Two values are equal within the ranking tolerance."""
