"""
This is the conftest module for coblockfit.

All global fixtures and random instance builders are defined here.
"""

import numpy as np
import pytest

from typing import Any, Callable

from coblockfit.core import ClassCounts, CoBlockParams
from coblockfit.kernels import make_sigmoid_kernel

# Shape exponents whose sigmoid kernels need no clamping
UNCLAMPED_BETAS = [3.0, 5.0]


def create_random_counts(
    rng: np.random.Generator, total: int, num_classes: int = 2
) -> ClassCounts:
    """Create random class counts with every class non-empty.

    Parameters
    ----------
    rng : np.random.Generator
        The random number generator.
    total : int
        The number of nodes, at least ``num_classes``.
    num_classes : int, optional
        The number of classes.

    Returns
    -------
    ClassCounts
        Random class counts summing to ``total``.
    """
    cuts = np.sort(rng.choice(np.arange(1, total), num_classes - 1, False))
    counts = np.diff(np.concatenate(([0], cuts, [total])))

    return ClassCounts(counts)


def create_random_phi(
    rng: np.random.Generator, total: int = 100, num_classes: int = 2
) -> CoBlockParams:
    """Create a random co-blockmodel with non-empty classes."""
    mu = create_random_counts(rng, total, num_classes)
    nu = create_random_counts(rng, total, num_classes)
    theta = rng.uniform(0.05, 0.95, (num_classes, num_classes))

    return CoBlockParams(mu, nu, theta)


def create_random_array(
    rng: np.random.Generator, num_rows: int, num_cols: int, density=0.5
) -> np.ndarray:
    """Create a random binary array."""
    return (rng.random((num_rows, num_cols)) < density).astype(np.int8)


def assert_call(fct: Callable[..., Any], *args: Any, **kwargs: Any) -> None:
    """Assert that a call runs as expected."""
    try:
        fct(*args, **kwargs)
    except Exception as e:
        print(type(e))
        raise AssertionError(
            f"The function was not called properly. "
            f"It raised the exception:\n\n {e.__class__.__name__}: {e}"
        )


@pytest.fixture(params=UNCLAMPED_BETAS)
def sigmoid_kernel(request):
    return make_sigmoid_kernel(request.param, 0.5)
