"""
Module with the sigmoidal separable kernel family.

The kernel reads

    omega(x, y) = rho * (f(x) * f(y) + 1 / 2),

where f is the normalized sigmoid

    f(x) = (g(x) - 1 / 2) / Z,  g(x) = x^beta / (x^beta + (1 - x)^beta),

and Z = 4 * int_0^{1/2} (1/2 - g(x)) dx keeps the area under |f| equal to
one half for every shape exponent beta >= 1. The sigmoid is computed as
expit(beta * logit(x)), which is exact at the end points and stable for
large exponents.

For small exponents the product f(x) f(y) may leave [-1/2, 1/2]; evaluation
then clamps to [0, 1] and the kernel reports ``valid_unclamped = False``.
"""

from __future__ import annotations

import functools
import logging

import numpy as np

from dataclasses import dataclass, field
from numpy.typing import ArrayLike
from scipy.special import expit, logit
from typing import Tuple, Union

from .kernel_abc import KernelABC
from ..core.exceptions import DomainError
from ..core.quadrature import integrate_1d
from ..global_settings import ARRAY_FLOAT, QUAD_TOL_1D

__all__ = [
    "f_beta",
    "z_beta",
    "f_integral",
    "f_square_integral",
    "SigmoidSeparableKernel",
    "make_sigmoid_kernel",
]

logger = logging.getLogger(__name__)


def _verify_beta(beta: float) -> float:
    beta = float(beta)
    if not beta >= 1.0:
        raise DomainError(f"Shape exponent must be >= 1! Got {beta}.")
    return beta


def _sigmoid(beta: float, xx: ARRAY_FLOAT) -> ARRAY_FLOAT:
    """The unnormalized sigmoid g with g(0) = 0, g(1/2) = 1/2, g(1) = 1."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return expit(beta * logit(xx))


@functools.lru_cache(maxsize=None)
def z_beta(beta: float) -> float:
    """Compute the normalizer Z of the sigmoid with shape exponent beta.

    Parameters
    ----------
    beta : float
        The shape exponent, at least 1.

    Returns
    -------
    float
        Four times the integral of 1/2 - g over [0, 1/2].

    Raises
    ------
    DomainError
        If beta is smaller than one.
    NumericalError
        If the adaptive quadrature does not converge.
    """
    beta = _verify_beta(beta)
    value = 4.0 * integrate_1d(
        lambda x: 0.5 - float(_sigmoid(beta, x)),
        0.0,
        0.5,
        epsabs=QUAD_TOL_1D / 4.0,
        description=f"sigmoid normalizer (beta={beta})",
    )
    logger.debug("Normalizer for beta=%s is %.15g", beta, value)

    return value


def f_beta(beta: float, x: ArrayLike) -> Union[float, ARRAY_FLOAT]:
    """Evaluate the normalized sigmoid f at x.

    Parameters
    ----------
    beta : float
        The shape exponent, at least 1.
    x : ArrayLike
        Latent position(s) in [0, 1].

    Returns
    -------
    Union[float, ARRAY_FLOAT]
        The normalized sigmoid value(s); a float for scalar input.

    Raises
    ------
    DomainError
        If beta < 1 or any x is outside [0, 1].
    """
    beta = _verify_beta(beta)
    xx = np.asarray(x, dtype=np.float64)
    if not np.all(np.logical_and(xx >= 0.0, xx <= 1.0)):
        raise DomainError("Latent positions must be within [0, 1]!")

    values = (_sigmoid(beta, xx) - 0.5) / z_beta(beta)
    if values.ndim == 0:
        return float(values)

    return values


@functools.lru_cache(maxsize=None)
def _half_integral(beta: float, t: float) -> float:
    """The integral of f over [0, t] for t in [0, 1/2]."""
    return -integrate_1d(
        lambda x: 0.5 - float(_sigmoid(beta, x)),
        0.0,
        t,
        epsabs=QUAD_TOL_1D / 4.0,
        description=f"sigmoid partial integral (beta={beta}, t={t})",
    ) / z_beta(beta)


def f_integral(beta: float, t: ArrayLike) -> Union[float, ARRAY_FLOAT]:
    """Compute the integral of f over [0, t].

    The antiderivative is symmetric, F(t) = F(1 - t), because f is
    antisymmetric about 1/2 and integrates to zero; only t <= 1/2 is
    integrated numerically (and cached).
    """
    beta = _verify_beta(beta)
    tt = np.asarray(t, dtype=np.float64)
    if not np.all(np.logical_and(tt >= 0.0, tt <= 1.0)):
        raise DomainError("Integration limits must be within [0, 1]!")

    folded = np.minimum(tt, 1.0 - tt)
    values = np.array(
        [_half_integral(beta, float(value)) for value in folded.ravel()]
    ).reshape(folded.shape)
    if values.ndim == 0:
        return float(values)

    return values


@functools.lru_cache(maxsize=None)
def f_square_integral(beta: float) -> float:
    """Compute the integral of f squared over [0, 1]."""
    beta = _verify_beta(beta)
    half = integrate_1d(
        lambda x: (0.5 - float(_sigmoid(beta, x))) ** 2,
        0.0,
        0.5,
        epsabs=QUAD_TOL_1D / 4.0,
        description=f"squared sigmoid (beta={beta})",
    )

    return 2.0 * half / z_beta(beta) ** 2


@dataclass(frozen=True, eq=False)
class SigmoidSeparableKernel(KernelABC):
    """The separable kernel rho * (f(x) f(y) + 1/2) built on a sigmoid.

    Parameters
    ----------
    beta : float
        The shape exponent, at least 1.
    rho : float
        The sparsity scale in (0, 1].

    Attributes
    ----------
    z_beta : float
        The cached sigmoid normalizer.
    max_abs_f : float
        The maximum of |f|, equal to 0.5 / z_beta (attained at 0 and 1).
    valid_unclamped : bool
        True if max_abs_f^2 <= 1/2 so that no clamping ever takes place.
    """

    _description = "Sigmoidal separable kernel"

    beta: float
    rho: float
    z_beta: float = field(init=False)
    max_abs_f: float = field(init=False)
    valid_unclamped: bool = field(init=False)

    def __post_init__(self) -> None:
        beta = _verify_beta(self.beta)
        rho = float(self.rho)
        if not 0.0 < rho <= 1.0:
            raise DomainError(f"Sparsity scale must be in (0, 1]! Got {rho}.")
        z_value = z_beta(beta)
        max_abs_f = 0.5 / z_value

        # Because frozen=True, post init must access self via setattr
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "z_beta", z_value)
        object.__setattr__(self, "max_abs_f", max_abs_f)
        object.__setattr__(
            self, "valid_unclamped", bool(max_abs_f**2 <= 0.5)
        )

    @property
    def supports_four_case(self) -> bool:
        return self.valid_unclamped

    def f(self, xx: ARRAY_FLOAT) -> ARRAY_FLOAT:
        """The normalized sigmoid of this kernel."""
        return (_sigmoid(self.beta, xx) - 0.5) / self.z_beta

    def evaluate(self, xx: ARRAY_FLOAT, yy: ARRAY_FLOAT) -> ARRAY_FLOAT:
        values = self.rho * (self.f(xx) * self.f(yy) + 0.5)

        return np.clip(values, 0.0, 1.0)

    def breakpoints(self) -> Tuple[ARRAY_FLOAT, ARRAY_FLOAT]:
        if self.valid_unclamped:
            return super().breakpoints()
        # Clamping kinks lie inside the corner quadrants
        points = np.array([0.0, 0.5, 1.0])
        return points, points.copy()

    def f_integral(self, t: ArrayLike) -> Union[float, ARRAY_FLOAT]:
        """The integral of f over [0, t]."""
        return f_integral(self.beta, t)

    def f_square_integral(self) -> float:
        """The integral of f squared over [0, 1]."""
        return f_square_integral(self.beta)

    def cumulative_mass(self, xs: ArrayLike, ys: ArrayLike) -> ARRAY_FLOAT:
        if not self.valid_unclamped:
            return super().cumulative_mass(xs, ys)

        xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
        ys = np.atleast_1d(np.asarray(ys, dtype=np.float64))
        f_xs = np.atleast_1d(self.f_integral(xs))
        f_ys = np.atleast_1d(self.f_integral(ys))

        return self.rho * (np.outer(f_xs, f_ys) + 0.5 * np.outer(xs, ys))

    def total_mass(self) -> float:
        if not self.valid_unclamped:
            return super().total_mass()
        return self.rho / 2.0

    def square_mass(self) -> float:
        if not self.valid_unclamped:
            return super().square_mass()
        return self.rho**2 * (self.f_square_integral() ** 2 + 0.25)

    def __str__(self) -> str:
        out = (
            f"Kernel          : {self.description}\n"
            f"Shape exponent  : {self.beta}\n"
            f"Sparsity scale  : {self.rho}\n"
            f"Normalizer      : {self.z_beta:.10f}\n"
            f"Valid unclamped : {self.valid_unclamped}"
        )

        return out


def make_sigmoid_kernel(beta: float, rho: float) -> SigmoidSeparableKernel:
    """Create a sigmoidal separable kernel with cached constants."""
    kernel = SigmoidSeparableKernel(beta, rho)
    if not kernel.valid_unclamped:
        logger.info(
            "Sigmoid kernel with beta=%s is clamped to [0, 1]; "
            "population oracles fall back to approximations",
            kernel.beta,
        )

    return kernel
