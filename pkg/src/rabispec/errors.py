"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ResourceLimitError(ValueError):
    """A truncation or index exceeds the supported ceiling (m, n <= 512)."""


class ConvergenceError(RuntimeError):
    """An iterative computation failed to stabilize.

    For truncation sweeps, ``last`` and ``previous`` hold the two most
    recent level arrays so the caller can inspect how far apart they were.
    """

    def __init__(self, message, previous=None, last=None):
        super().__init__(message)
        self.previous = previous
        self.last = last


class DiscriminantError(ArithmeticError):
    """The cubic discriminant condition (Gamma < 0, A > 0) is violated."""

    def __init__(self, message, gamma, a):
        super().__init__(f"{message} (Gamma={gamma:.6g}, A={a:.6g})")
        self.gamma = gamma
        self.a = a


class ComplexRadicalError(ArithmeticError):
    """A quartic inner square root went complex (out-of-regime input)."""


class ResonanceError(ArithmeticError):
    """A perturbative denominator is singular at (near-)integer bias."""
