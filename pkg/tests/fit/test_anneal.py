"""
Test module for the annealing co-blockmodel fit.

Notes
-----
- Tiny arrays are checked against exhaustive enumeration of all
  labelings (including those that leave a class empty).
"""

import itertools

import numpy as np
import pytest

from coblockfit.coclust import hamming_normalized
from coblockfit.core import (
    ClassCounts,
    CoBlockParams,
    DimensionError,
    DomainError,
)
from coblockfit.fit import (
    FitConfig,
    block_means,
    fit_coblockmodel,
    init_labels,
)
from coblockfit.kernels import BlockKernel, LatentSample, sample_bipartite
from coblockfit.risk import avg_kl, objective_at

EPS = 1e-6

PLANTED = CoBlockParams(
    ClassCounts([1, 1]), ClassCounts([1, 1]), [[0.9, 0.1], [0.1, 0.9]]
)


def _exhaustive_best(a, kind):
    num_rows, num_cols = a.shape
    values = []
    for s in itertools.product([1, 2], repeat=num_rows):
        for t in itertools.product([1, 2], repeat=num_cols):
            theta = block_means(a, s, t, EPS, 2)
            values.append(objective_at(a, s, t, theta, kind, EPS))

    return max(values) if kind == "pl" else min(values)


def _planted_array(seed, size=40):
    return sample_bipartite(BlockKernel(PLANTED), size, size, seed)


def test_block_means():
    a = np.array([[1, 0, 1], [0, 0, 1]])
    means = block_means(a, [1, 1], [1, 2, 2], EPS, num_classes=2)

    assert means[0, 0] == pytest.approx(0.5)
    assert means[0, 1] == pytest.approx(0.5)
    # Empty row class
    assert means[1, 0] == 0.5
    with pytest.raises(DimensionError):
        block_means(a, [1, 2, 1], [1, 2, 2])


def test_block_means_are_clamped():
    means = block_means(np.zeros((2, 2)), [1, 2], [1, 2], 0.01)

    assert np.all(means == 0.01)


@pytest.mark.parametrize("kind", ["pl", "ls"])
def test_tiny_arrays_reach_optimum(kind):
    rng = np.random.default_rng(12 if kind == "pl" else 13)
    config = FitConfig(restarts=8, seed=3)
    for _ in range(3):
        a = (rng.random((4, 4)) < 0.5).astype(np.int8)
        fit = fit_coblockmodel(a, 2, kind, config)

        assert fit.objective == pytest.approx(
            _exhaustive_best(a, kind), abs=1e-12
        )


def test_recovers_planted_partition():
    sample = _planted_array(4)
    truth = np.where(np.asarray(sample.latents.xi) <= 0.5, 1, 2)
    fit = fit_coblockmodel(sample.a, 2, "pl", FitConfig(restarts=4))
    distance = hamming_normalized(fit.s, truth)

    assert min(distance, 1.0 - distance) <= 0.05
    assert np.max(fit.phi_hat.theta) > 0.8
    assert np.min(fit.phi_hat.theta) < 0.2


def test_deterministic():
    sample = _planted_array(5)
    config = FitConfig(restarts=2, seed=11)
    fit_1 = fit_coblockmodel(sample.a, 2, "ls", config)
    fit_2 = fit_coblockmodel(sample.a, 2, "ls", config)

    assert fit_1.s == fit_2.s
    assert fit_1.t == fit_2.t
    assert fit_1.objective == fit_2.objective
    assert fit_1.trace == fit_2.trace


@pytest.mark.parametrize("kind", ["pl", "ls"])
def test_objective_is_recomputed(kind):
    """The reported objective agrees with the incremental bookkeeping."""
    sample = _planted_array(6)
    fit = fit_coblockmodel(sample.a, 3, kind, FitConfig(restarts=2))

    assert fit.objective == pytest.approx(
        objective_at(sample.a, fit.s, fit.t, fit.phi_hat.theta, kind, EPS)
    )
    assert fit.trace[fit.best_restart] == pytest.approx(fit.objective)
    assert fit.phi_hat.mu == fit.s.counts
    assert len(fit.trace) == 2
    assert len(fit.initial_objectives) == 2


def test_polish_improves():
    sample = _planted_array(7)
    fit = fit_coblockmodel(
        sample.a, 2, "pl", FitConfig(restarts=3, anneal_steps=5)
    )
    for initial, final, polish in zip(
        fit.initial_objectives, fit.trace, fit.polish_traces
    ):
        assert final >= initial - 1e-12
        assert list(polish) == sorted(polish)


def test_all_zeros():
    fit = fit_coblockmodel(np.zeros((5, 6)), 2, "pl", FitConfig(restarts=1))
    sizes = np.outer(fit.s.counts.counts, fit.t.counts.counts)

    assert fit.objective == pytest.approx(np.log(1 - EPS))
    assert np.all(fit.phi_hat.theta[sizes > 0] == EPS)


def test_single_class():
    a = np.array([[1, 0], [1, 1]])
    fit = fit_coblockmodel(a, 1, "ls", FitConfig(restarts=1))

    assert fit.phi_hat.theta.tolist() == [[0.75]]
    assert fit.objective == pytest.approx(0.1875)


def test_oracle_initialization():
    latents = LatentSample([0.1, 0.7, 0.4], [0.9, 0.2])
    s, t = init_labels("oracle_latent", 3, 2, 2, latents=latents)

    assert s.labels.tolist() == [1, 2, 1]
    assert t.labels.tolist() == [2, 1]


def test_random_initialization():
    s_1, t_1 = init_labels("random", 5, 4, 3, seed=2, restart=0)
    s_2, _ = init_labels("random", 5, 4, 3, seed=2, restart=0)

    assert s_1 == s_2
    assert len(t_1) == 4
    assert s_1.num_classes == 3


def test_provided_initialization():
    s, t = init_labels(
        "provided", 2, 3, 2, provided=([2, 1], [1, 1, 2])
    )

    assert s.labels.tolist() == [2, 1]
    with pytest.raises(DimensionError):
        init_labels("provided", 3, 3, 2, provided=([2, 1], [1, 1, 2]))


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"strategy": "oracle_latent"}, DomainError),
        ({"strategy": "provided"}, DomainError),
        ({"strategy": "spectral"}, DomainError),
    ],
)
def test_initialization_errors(kwargs, error):
    with pytest.raises(error):
        init_labels(num_rows=2, num_cols=2, num_classes=2, **kwargs)


def test_oracle_initialization_needs_two_classes():
    latents = LatentSample([0.1, 0.7], [0.9, 0.2])
    with pytest.raises(DimensionError):
        init_labels("oracle_latent", 2, 2, 3, latents=latents)


def test_invalid_fit_arguments():
    with pytest.raises(DomainError):
        fit_coblockmodel(np.ones((2, 2)), 0, "pl")
    with pytest.raises(DomainError):
        fit_coblockmodel(np.ones((2, 2)), 2, "ml")  # type: ignore


def _accuracy(labeling, truth):
    distance = hamming_normalized(labeling, truth)

    return max(distance, 1.0 - distance)


@pytest.mark.parametrize("kind", ["pl", "ls"])
def test_permutation_equivariance(kind):
    """Relabeling the classes of a fit leaves its objective unchanged."""
    sample = _planted_array(8, size=20)
    fit = fit_coblockmodel(sample.a, 3, kind, FitConfig(restarts=2))
    for row_order in itertools.permutations(range(3)):
        col_order = row_order[::-1]
        theta = fit.phi_hat.permuted(row_order, col_order).theta
        value = objective_at(
            sample.a,
            fit.s.relabel(row_order),
            fit.t.relabel(col_order),
            theta,
            kind,
            EPS,
        )

        assert value == pytest.approx(fit.objective, abs=1e-12)


@pytest.mark.slow
def test_planted_recovery_rate():
    """Labels are recovered to 99% accuracy for at least 95 of 100 seeds."""
    num_recovered = 0
    for seed in range(100):
        sample = _planted_array(seed, size=100)
        row_truth = np.where(np.asarray(sample.latents.xi) <= 0.5, 1, 2)
        col_truth = np.where(np.asarray(sample.latents.zeta) <= 0.5, 1, 2)
        fit = fit_coblockmodel(
            sample.a, 2, "pl", FitConfig(restarts=4, seed=seed)
        )
        num_recovered += (
            _accuracy(fit.s, row_truth) >= 0.99
            and _accuracy(fit.t, col_truth) >= 0.99
        )

    assert num_recovered >= 95


@pytest.mark.slow
@pytest.mark.filterwarnings("ignore::UserWarning")
def test_planted_divergence():
    """The fitted blockmodel is close to the planted one in divergence."""
    kernel = BlockKernel(PLANTED)
    num_close = 0
    for seed in range(50):
        sample = _planted_array(seed, size=200)
        fit = fit_coblockmodel(
            sample.a, 2, "pl", FitConfig(restarts=2, seed=seed)
        )
        num_close += avg_kl(kernel, fit.phi_hat, EPS) <= 0.01

    assert num_close >= 45
