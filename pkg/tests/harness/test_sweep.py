"""
Test module for the simulation sweep.
"""

import math

import numpy as np
import pytest

from coblockfit.harness import (
    SWEEP_COLUMNS,
    ExperimentConfig,
    kl_limit,
    run_sweep,
)
from coblockfit.harness.sweep import run_tasks
from coblockfit.kernels import make_sigmoid_kernel
from coblockfit.risk import avg_kl, phi_star_search


def small_config(**kwargs) -> ExperimentConfig:
    settings = dict(
        betas=(3.0, 5.0),
        rho_modes=("dense",),
        n_grid=(8, 12),
        reps=2,
        kinds=("ls", "pl"),
        anneal_steps=100,
        phi_grid=10,
        oracle_grid=16,
        seed=11,
    )
    settings.update(kwargs)

    return ExperimentConfig(**settings)


@pytest.fixture
def serial(monkeypatch):
    monkeypatch.delenv("COCLUST_THREADS", raising=False)


def test_sweep_rows(serial, tmp_path):
    """One row per cell, replicate and estimator, sorted."""
    config = small_config()
    out = tmp_path / "sweep.csv"
    rows = run_sweep(config, out)

    assert len(rows) == 2 * 1 * 2 * 2 * 2
    keys = [row.sort_key for row in rows]
    assert keys == sorted(keys)

    for row in rows:
        assert row.m == row.n
        assert row.rho_value == 0.5
        assert row.runtime_ms == 0
        assert math.isfinite(row.excess_risk_rel)
        assert row.kl_normalized >= -1e-6
        assert 0.0 <= row.fidelity
        if row.kind == "ls":
            assert row.objective >= 0.0
        else:
            assert row.objective < 0.0

    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert len(lines) == len(rows) + 1


def test_sweep_is_deterministic(serial, tmp_path):
    """The same configuration gives byte-identical files."""
    config = small_config(betas=(3.0,), n_grid=(8,), kinds=("pl",))
    out_1 = tmp_path / "first.csv"
    out_2 = tmp_path / "second.csv"
    run_sweep(config, out_1)
    run_sweep(config, out_2)

    assert out_1.read_bytes() == out_2.read_bytes()


def test_sweep_seeds_differ(serial):
    config = small_config(betas=(3.0,), n_grid=(8,), kinds=("pl",))
    rows = run_sweep(config)

    assert len({row.seed for row in rows}) == len(rows)


def test_output_from_config(serial, tmp_path):
    out = tmp_path / "from_config.csv"
    config = small_config(
        betas=(3.0,), n_grid=(8,), kinds=("ls",), output=str(out)
    )
    run_sweep(config)

    assert out.exists()


def test_kl_limit():
    """The small-sparsity limit is finite and non-negative."""
    limit = kl_limit(3.0, 10, 1e-6)

    assert math.isfinite(limit)
    assert limit >= -1e-9


def test_run_tasks():
    """Pooled and serial execution agree and keep the task order."""
    tasks = [-3, 1, -2, 5]

    assert run_tasks(abs, tasks, 1) == [3, 1, 2, 5]
    assert run_tasks(abs, tasks, 2) == [3, 1, 2, 5]
    assert run_tasks(abs, [], 4) == []


def _kl_star(beta, rho, resolution, eps):
    kernel = make_sigmoid_kernel(beta, rho)
    phi_star = phi_star_search(kernel, resolution, "pl", eps)

    return avg_kl(kernel, phi_star, eps) / rho


def test_fits_do_not_beat_phi_star(serial):
    """On sizes dividing the resolution no fit beats the best blockmodel."""
    config = small_config(n_grid=(10, 20), phi_grid=100)
    rows = run_sweep(config)
    kl_stars = {beta: _kl_star(beta, 0.5, 100, config.eps) for beta in (3, 5)}

    assert len(rows) == 2 * 2 * 2 * 2
    for row in rows:
        assert row.excess_risk_rel >= -1e-9
        assert row.kl_normalized >= kl_stars[row.beta] - 1e-6


def _medians(rows, field):
    sizes = sorted({row.n for row in rows})
    return [
        np.median([getattr(row, field) for row in rows if row.n == size])
        for size in sizes
    ]


@pytest.mark.slow
@pytest.mark.parametrize("beta", [3.0, 5.0])
def test_excess_risk_decays(serial, beta):
    """Median excess risk and divergence gap shrink with the size."""
    config = ExperimentConfig(
        betas=(beta,),
        rho_modes=("dense",),
        n_grid=(100, 200, 400),
        reps=50,
        kinds=("pl",),
        init="oracle_latent",
        seed=2024,
    )
    rows = run_sweep(config)
    excess = _medians(rows, "excess_risk_rel")
    kl_star = _kl_star(beta, 0.5, config.phi_grid, config.eps)
    kl_gaps = [
        np.median(
            [abs(row.kl_normalized - kl_star) for row in rows if row.n == n]
        )
        for n in config.n_grid
    ]

    assert excess[0] > excess[1] > excess[2]
    assert excess[2] < 0.5 * excess[0]
    assert kl_gaps[0] > kl_gaps[1] > kl_gaps[2]
