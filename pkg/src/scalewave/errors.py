"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the region where a formula or representation is defined."""


class QuadratureError(RuntimeError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate=float("nan")):
        super().__init__(f"{message} (error estimate {estimate:.3e})")
        self.estimate = estimate


class PicardDivergence(RuntimeError):
    """Picard increments grew for several consecutive steps."""
