"""
Exception classes raised across coblockfit.

Each class derives from the builtin exception that would otherwise be
raised for the same situation, so callers may catch either.
"""

from typing import Optional, Tuple

__all__ = [
    "DomainError",
    "DimensionError",
    "InfeasibleCountsError",
    "SizeLimitError",
    "NumericalError",
    "UnsupportedKernelError",
    "ConfigError",
    "SchemaError",
]


class DomainError(ValueError):
    """A parameter or an input value lies outside its admissible domain."""


class DimensionError(ValueError):
    """Array shapes or label lengths are inconsistent."""


class InfeasibleCountsError(ValueError):
    """Class counts cannot be realized by any labeling."""


class SizeLimitError(ValueError):
    """Exact enumeration is requested above the supported size."""


class NumericalError(ArithmeticError):
    """An adaptive quadrature routine failed to reach its tolerance.

    Parameters
    ----------
    message : str
        The reason reported by the integrator.
    integrand : str, optional
        A short description of the integrand.
    bounds : Tuple[float, ...], optional
        The integration bounds.
    estimate : float, optional
        The last estimate of the integral.
    error : float, optional
        The last estimate of the absolute error.
    """

    def __init__(
        self,
        message: str,
        integrand: str = "",
        bounds: Optional[Tuple[float, ...]] = None,
        estimate: Optional[float] = None,
        error: Optional[float] = None,
    ):
        self.integrand = integrand
        self.bounds = bounds
        self.estimate = estimate
        self.error = error
        details = (
            f"{message} (integrand: {integrand or '-'}, bounds: {bounds}, "
            f"estimate: {estimate}, error: {error})"
        )
        super().__init__(details)


class UnsupportedKernelError(NotImplementedError):
    """An exact oracle is requested for a kernel it does not cover."""


class ConfigError(ValueError):
    """An experiment configuration file is invalid."""


class SchemaError(ValueError):
    """A results file does not have the expected columns."""
