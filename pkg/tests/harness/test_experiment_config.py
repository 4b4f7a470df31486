"""
Test module for the experiment configuration.
"""

import pytest

from coblockfit.core import ConfigError
from coblockfit.harness import (
    DECLARED_KEYS,
    ExperimentConfig,
    load_experiment_config,
    parse_config_text,
    worker_count,
)


def test_defaults():
    """The dataclass defaults mirror the declared keys."""
    config = ExperimentConfig()
    values = config.as_dict()

    for key in DECLARED_KEYS:
        default = key["value"]
        if isinstance(default, list):
            default = tuple(default)
        assert values[key["keyword"]] == default

    assert config.fit_config().anneal_steps is None
    assert config.fit_config(seed=5).seed == 5


def test_parse_config_text():
    text = """
    # A small sweep
    betas = 3, 5
    n_grid = 10, 20   # sizes
    rho_modes = dense, poly
    timing = yes
    aspect = 1.5
    """
    config = parse_config_text(text)

    assert config.betas == (3.0, 5.0)
    assert config.n_grid == (10, 20)
    assert config.rho_modes == ("dense", "poly")
    assert config.timing
    assert config.num_rows(10) == 15
    assert config.reps == 50


def test_load_experiment_config(tmp_path):
    path = tmp_path / "sweep.cfg"
    path.write_text("reps = 3\nkinds = ls, pl\n")
    config = load_experiment_config(path)

    assert config.reps == 3
    assert config.kinds == ("ls", "pl")


@pytest.mark.parametrize(
    "text",
    [
        "unknown = 1",
        "reps = 2\nreps = 3",
        "reps 3",
        "reps = many",
        "timing = maybe",
        "reps = 0",
        "betas = 0.5",
        "rho_modes = sparse",
        "kinds = ml",
        "init = provided",
        "cooling_rate = 1.5",
        "n_grid = ",
    ],
)
def test_invalid_config(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_error_names_the_line():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config_text("reps = 2\nfoo = 1\n", source="exp.cfg")


def test_describe():
    """The description lists every declared key."""
    description = ExperimentConfig(betas=(1.0, 3.0)).describe()

    for key in DECLARED_KEYS:
        assert key["keyword"] in description
    assert "1.0, 3.0" in description


def test_worker_count(monkeypatch):
    monkeypatch.delenv("COCLUST_THREADS", raising=False)
    assert worker_count() == 1

    monkeypatch.setenv("COCLUST_THREADS", "4")
    assert worker_count() == 4

    for value in ["0", "four"]:
        monkeypatch.setenv("COCLUST_THREADS", value)
        with pytest.raises(ConfigError):
            worker_count()
