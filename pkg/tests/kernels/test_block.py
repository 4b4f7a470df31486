"""
Test module for the piecewise-constant kernels.
"""

import numpy as np
import pytest

from conftest import create_random_phi
from coblockfit.core import ClassCounts, CoBlockParams, DomainError
from coblockfit.core import DimensionError
from coblockfit.kernels import BlockKernel, GridKernel, constant_kernel


@pytest.fixture
def block_kernel():
    phi = CoBlockParams(
        ClassCounts([3, 7]),
        ClassCounts([1, 1]),
        np.array([[0.9, 0.1], [0.2, 0.6]]),
    )
    return BlockKernel(phi)


def test_left_continuous_inverse(block_kernel):
    """Class boundaries belong to the lower class."""
    xx = np.array([0.0, 0.3, 0.31, 1.0])
    yy = np.array([0.0, 0.5, 0.51, 1.0])

    assert block_kernel(xx, yy).tolist() == [0.9, 0.9, 0.6, 0.6]


def test_block_masses(block_kernel):
    """Masses are sums of class-size products."""
    assert block_kernel.total_mass() == pytest.approx(
        0.3 * 0.5 * (0.9 + 0.1) + 0.7 * 0.5 * (0.2 + 0.6)
    )
    assert block_kernel.mass(0.0, 0.3, 0.0, 0.5) == pytest.approx(0.135)
    assert block_kernel.mass(0.1, 0.5, 0.25, 0.75) == pytest.approx(
        0.2 * 0.25 * 0.9 + 0.2 * 0.25 * 0.1
        + 0.2 * 0.25 * 0.2 + 0.2 * 0.25 * 0.6
    )


def test_square_mass_and_entropy(block_kernel):
    """Pointwise integrals are exact weighted sums."""
    weights = np.outer([0.3, 0.7], [0.5, 0.5])
    theta = np.array([[0.9, 0.1], [0.2, 0.6]])
    entropy = theta * np.log(theta) + (1 - theta) * np.log(1 - theta)

    assert block_kernel.square_mass() == pytest.approx(
        np.sum(weights * theta**2)
    )
    assert block_kernel.neg_entropy() == pytest.approx(
        np.sum(weights * entropy)
    )


def test_random_block_cumulative_mass():
    """The cumulative table agrees with rectangle masses."""
    rng = np.random.default_rng(42)
    kernel = BlockKernel(create_random_phi(rng, 20, 3))
    xs = np.sort(rng.random(5))
    ys = np.sort(rng.random(4))
    table = kernel.cumulative_mass(xs, ys)

    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            assert table[i, j] == pytest.approx(kernel.mass(0, x, 0, y))
    assert table.shape == (5, 4)


def test_empty_class_has_no_width():
    """An empty class occupies a degenerate interval."""
    phi = CoBlockParams(
        ClassCounts([0, 4]), ClassCounts([2, 2]), np.full((2, 2), 0.5)
    )
    kernel = BlockKernel(phi)

    assert kernel.row_edges.tolist() == [0.0, 0.0, 1.0]
    assert float(kernel(0.0, 0.2)) == 0.5
    assert kernel.total_mass() == pytest.approx(0.5)


def test_four_case_only_for_constant():
    """Only constant piecewise kernels admit the interval reduction."""
    assert constant_kernel(0.3).supports_four_case
    assert GridKernel(np.full((2, 3), 0.2)).supports_four_case
    assert not GridKernel([[0.1, 0.2], [0.3, 0.4]]).supports_four_case


def test_grid_kernel():
    """Grid kernels split the unit square into equal cells."""
    kernel = GridKernel([[0.1, 0.2], [0.3, 0.4]])

    assert float(kernel(0.25, 0.75)) == 0.2
    assert float(kernel(1.0, 1.0)) == 0.4
    assert kernel.total_mass() == pytest.approx(0.25)
    assert constant_kernel(0.3).total_mass() == pytest.approx(0.3)


@pytest.mark.parametrize(
    "values, error",
    [
        ([[0.1, 1.2]], DomainError),
        ([0.1, 0.2], DimensionError),
        (np.empty((0, 2)), DimensionError),
    ],
)
def test_invalid_grid(values, error):
    """Grid values must be a matrix of probabilities."""
    with pytest.raises(error):
        GridKernel(values)
