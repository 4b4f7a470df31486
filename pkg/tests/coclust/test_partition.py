"""
Test module for interval partitions and their block masses.
"""

import numpy as np
import pytest

from conftest import create_random_phi
from coblockfit.coclust import (
    IntervalPartition,
    canonical_partitions,
    family_block_masses,
    population_block_mass,
    threshold_family,
)
from coblockfit.core import DimensionError, DomainError
from coblockfit.kernels import BlockKernel, constant_kernel


def test_canonical_labels():
    sigma_1, sigma_2 = canonical_partitions([0.3, 0.7])
    xx = np.array([0.0, 0.29, 0.31, 0.69, 0.71, 0.99])

    assert sigma_1.label(xx).tolist() == [1, 1, 2, 2, 2, 2]
    assert sigma_2.label(xx).tolist() == [2, 2, 2, 2, 1, 1]
    assert sigma_1.kind == "canonical_1"
    assert sigma_2.kind == "canonical_2"
    assert str(sigma_1) == "canonical_1"


def test_threshold_family():
    """Both orientations are enumerated, canonical partitions first."""
    family = threshold_family([0.25, 0.75], grid_size=5)

    assert len(family) == 10
    assert family[0] == IntervalPartition.canonical_1([0.25, 0.75])
    assert family[5] == IntervalPartition.canonical_2([0.25, 0.75])
    assert [p.start for p in family[:5]] == pytest.approx(
        [0.0, 0.1875, 0.375, 0.5625, 0.75]
    )
    assert family[4].end == pytest.approx(1.0)
    assert family[1].kind == "threshold"


def test_degenerate_family():
    """An empty class leaves one partition per orientation."""
    family = threshold_family([0.0, 1.0], grid_size=7)

    assert len(family) == 2


def test_invalid_partitions():
    with pytest.raises(DomainError):
        IntervalPartition((0.5, 0.5), 1, 0.6)
    with pytest.raises(DomainError):
        IntervalPartition((0.5, 0.5), 3, 0.0)
    with pytest.raises(DimensionError):
        IntervalPartition((0.2, 0.3, 0.5))
    with pytest.raises(DomainError):
        threshold_family([0.5, 0.5], 0)


def test_constant_kernel_masses():
    """The masses of a constant kernel are c mu_a nu_b."""
    summary = population_block_mass(
        constant_kernel(0.4),
        IntervalPartition.canonical_2([0.2, 0.8]),
        IntervalPartition((0.5, 0.5), 2, 0.25),
    )

    assert np.allclose(summary.mass, 0.4 * np.outer([0.2, 0.8], [0.5, 0.5]))
    assert np.allclose(summary.means, 0.4)


def test_family_masses_against_rectangles():
    """Family masses agree with sums of rectangle masses."""
    rng = np.random.default_rng(3)
    kernel = BlockKernel(create_random_phi(rng, 10))
    sigmas = threshold_family([0.4, 0.6], 4)
    taus = threshold_family([0.3, 0.7], 3)
    masses = family_block_masses(kernel, sigmas, taus)

    assert masses.shape == (8, 6, 2, 2)
    assert np.allclose(masses.sum(axis=(2, 3)), kernel.total_mass())
    for p, sigma in enumerate(sigmas):
        for q, tau in enumerate(taus):
            inside_inside = kernel.mass(
                sigma.start, sigma.end, tau.start, tau.end
            )
            a = sigma.inside_class - 1
            b = tau.inside_class - 1
            assert masses[p, q, a, b] == pytest.approx(inside_inside)


def test_family_row_sums():
    """Row class masses do not depend on the column partition."""
    rng = np.random.default_rng(4)
    kernel = BlockKernel(create_random_phi(rng, 12))
    sigmas = threshold_family([0.5, 0.5], 3)
    taus = threshold_family([0.25, 0.75], 3)
    masses = family_block_masses(kernel, sigmas, taus)
    row_masses = masses.sum(axis=3)

    assert np.allclose(row_masses, row_masses[:, :1, :])
