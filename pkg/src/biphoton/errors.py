"""Exception hierarchy shared by all modules."""


class BiphotonError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BiphotonError, ValueError):
    """An input lies outside the domain of a formula."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class IntegrabilityError(BiphotonError, ArithmeticError):
    """A Gaussian integral does not converge (real part not positive definite)."""

    def __init__(self, message, variable=None):
        super().__init__(message)
        self.variable = variable


class DivergenceError(IntegrabilityError):
    """A trace or normalization integral diverges."""


class CapacityError(BiphotonError):
    """A truncated series cannot represent the requested degree."""


class DegenerateProjectionError(BiphotonError, ArithmeticError):
    """The projected density matrix has vanishing trace."""


class InvalidStateError(BiphotonError, ValueError):
    """A matrix is not a valid two-qubit density matrix."""


class PrecisionError(BiphotonError, ArithmeticError):
    """A finite-difference estimate lost too much precision."""


class InsufficientDomainError(BiphotonError):
    """A quadrature grid does not cover the support of its integrand."""


class ConvergenceError(BiphotonError):
    """A numerical estimate did not converge within tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
