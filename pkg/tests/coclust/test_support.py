"""
Test module for the empirical and population support functions.

Notes
-----
- Empirical support values are checked against enumeration of both row
  and column labelings on tiny arrays.
- Population support values of unclamped sigmoid kernels are checked
  against a fine interval partition family.
"""

import numpy as np
import pytest

from conftest import create_random_array, create_random_counts
from coblockfit.coclust import (
    Direction,
    block_summary,
    family_block_masses,
    labelings_with_counts,
    support_empirical,
    support_oracle,
    threshold_family,
)
from coblockfit.core import (
    ClassCounts,
    DomainError,
    SizeLimitError,
    UnsupportedKernelError,
)
from coblockfit.kernels import constant_kernel, make_sigmoid_kernel


def _brute_force(a, mu, nu, gamma):
    return max(
        block_summary(a, s, t).inner(gamma)
        for s in labelings_with_counts(mu)
        for t in labelings_with_counts(nu)
    )


@pytest.mark.parametrize(
    "shape, mu, nu",
    [
        ((4, 5), [2, 2], [2, 3]),
        ((3, 4), [1, 1, 1], [2, 1, 1]),
        ((5, 3), [1, 4], [3, 0]),
    ],
)
def test_exact_against_brute_force(shape, mu, nu):
    rng = np.random.default_rng(shape[0] * 10 + shape[1])
    mu, nu = ClassCounts(mu), ClassCounts(nu)
    for idx in range(5):
        a = create_random_array(rng, *shape)
        gamma = Direction.random(mu.num_classes, 1, idx)
        result = support_empirical(a, mu, nu, gamma, method="exact")

        assert result.value == pytest.approx(_brute_force(a, mu, nu, gamma))
        assert result.value == pytest.approx(
            block_summary(a, result.s, result.t).inner(gamma)
        )
        assert result.s.counts == mu
        assert result.t.counts == nu


def test_alternating_matches_exact():
    """Alternating maximization never exceeds and nearly always equals."""
    rng = np.random.default_rng(17)
    num_equal = 0
    for idx in range(200):
        num_rows, num_cols = rng.integers(2, 9, size=2)
        mu = create_random_counts(rng, num_rows)
        nu = create_random_counts(rng, num_cols)
        a = create_random_array(rng, num_rows, num_cols, rng.random())
        gamma = Direction.random(2, 2, idx)
        exact = support_empirical(a, mu, nu, gamma, "exact")
        alternating = support_empirical(
            a, mu, nu, gamma, "alternating", restarts=32, seed=idx
        )

        assert alternating.value <= exact.value + 1e-12
        assert alternating.method == "alternating"
        num_equal += abs(alternating.value - exact.value) <= 1e-12

    assert num_equal >= 198


def test_alternating_reproducible():
    rng = np.random.default_rng(5)
    a = create_random_array(rng, 20, 30)
    mu, nu = ClassCounts([10, 10]), ClassCounts([15, 15])
    gamma = Direction.random(2, 0, 0)
    result_1 = support_empirical(a, mu, nu, gamma, restarts=3, seed=9)
    result_2 = support_empirical(a, mu, nu, gamma, restarts=3, seed=9)

    assert result_1.value == result_2.value
    assert result_1.s == result_2.s


def test_counts_are_rescaled():
    """Proportions given over another total are expressed over m and n."""
    a = np.ones((4, 6))
    result = support_empirical(
        a, ClassCounts([1, 1]), ClassCounts([1, 2]), np.eye(2), "exact"
    )

    assert result.s.counts == ClassCounts([2, 2])
    assert result.t.counts == ClassCounts([2, 4])
    assert result.value == pytest.approx((2 * 2 + 2 * 4) / 24)


def test_exact_size_limit():
    a = np.zeros((11, 2))
    with pytest.raises(SizeLimitError):
        support_empirical(
            a, ClassCounts([5, 6]), ClassCounts([1, 1]), np.eye(2), "exact"
        )


def test_unknown_method():
    with pytest.raises(DomainError):
        support_empirical(
            np.zeros((2, 2)),
            ClassCounts([1, 1]),
            ClassCounts([1, 1]),
            np.eye(2),
            "greedy",
        )


def test_constant_kernel_oracle():
    kernel = constant_kernel(0.3)
    halves = [0.5, 0.5]

    ones = support_oracle(kernel, halves, halves, Direction.ones(2), True)
    identity = support_oracle(kernel, halves, halves, np.eye(2), True)

    assert ones.value == pytest.approx(0.3)
    assert identity.value == pytest.approx(0.15)
    assert not ones.approximate


def test_four_case_dominates_family(sigmoid_kernel):
    """No interval partition beats the canonical ones."""
    rng = np.random.default_rng(23)
    mu, nu = [0.3, 0.7], [0.55, 0.45]
    masses = family_block_masses(
        sigmoid_kernel, threshold_family(mu, 64), threshold_family(nu, 64)
    )
    for idx in range(20):
        gamma = rng.uniform(-1, 1, (2, 2))
        oracle = support_oracle(sigmoid_kernel, mu, nu, gamma, exact=True)
        family_best = np.max(np.einsum("pqab,ab->pq", masses, gamma))

        assert oracle.value >= family_best - 1e-9
        assert oracle.value == pytest.approx(family_best, abs=1e-9)
        assert oracle.sigma.kind.startswith("canonical")


def test_clamped_kernel_oracle():
    """Clamped kernels are approximated on request only."""
    kernel = make_sigmoid_kernel(1.0, 1.0)
    halves = [0.5, 0.5]
    with pytest.raises(UnsupportedKernelError):
        support_oracle(kernel, halves, halves, np.eye(2), exact=True)

    with pytest.warns(UserWarning):
        result = support_oracle(kernel, halves, halves, np.eye(2), False, 8)

    assert result.approximate
    assert result.value >= 0.5 * kernel.total_mass() - 1e-9


@pytest.mark.parametrize("scale", [0.0, 0.25, 0.5, 1.0])
def test_positive_homogeneity(scale):
    rng = np.random.default_rng(31)
    mu, nu = ClassCounts([2, 4]), ClassCounts([3, 2])
    for idx in range(20):
        a = create_random_array(rng, 6, 5)
        gamma = Direction.random(2, 3, idx).gamma
        value = support_empirical(a, mu, nu, gamma, "exact").value
        scaled = support_empirical(a, mu, nu, scale * gamma, "exact").value

        assert scaled == pytest.approx(scale * value, abs=1e-12)


@pytest.mark.parametrize("num_classes", [2, 3])
def test_sublinearity(num_classes):
    """The support of a sum is at most the sum of the supports."""
    rng = np.random.default_rng(37 + num_classes)
    mu = ClassCounts(np.full(num_classes, 2))
    nu = create_random_counts(rng, 7, num_classes)
    for _ in range(20):
        a = create_random_array(rng, 2 * num_classes, 7)
        gamma_1 = rng.uniform(-0.5, 0.5, (num_classes, num_classes))
        gamma_2 = rng.uniform(-0.5, 0.5, (num_classes, num_classes))
        value_1 = support_empirical(a, mu, nu, gamma_1, "exact").value
        value_2 = support_empirical(a, mu, nu, gamma_2, "exact").value
        total = support_empirical(a, mu, nu, gamma_1 + gamma_2, "exact")

        assert total.value <= value_1 + value_2 + 1e-12


def test_oracle_symmetry(sigmoid_kernel):
    """Swapping the sides and transposing Gamma leaves the value intact."""
    rng = np.random.default_rng(41)
    for _ in range(20):
        mu = rng.dirichlet([1.0, 1.0])
        nu = rng.dirichlet([1.0, 1.0])
        gamma = rng.uniform(-1, 1, (2, 2))
        value = support_oracle(sigmoid_kernel, mu, nu, gamma, True).value
        swapped = support_oracle(sigmoid_kernel, nu, mu, gamma.T, True)

        assert swapped.value == pytest.approx(value, abs=1e-12)
