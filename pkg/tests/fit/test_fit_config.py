"""
Test module for the fit configuration.
"""

import pytest

from coblockfit.core import DomainError
from coblockfit.fit import FitConfig


def test_defaults():
    config = FitConfig()

    assert config.restarts == 8
    assert config.cooling_rate == 0.995
    assert config.moves == ("single_relabel", "pair_swap")
    assert config.steps_for(30, 20) == 2500
    assert config.replace(anneal_steps=7).steps_for(30, 20) == 7


@pytest.mark.parametrize(
    "changes",
    [
        {"restarts": 0},
        {"anneal_steps": 0},
        {"initial_temperature": 0.0},
        {"cooling_rate": 1.0},
        {"cooling_rate": 0.0},
        {"moves": ()},
        {"moves": ("teleport",)},
        {"eps": 0.5},
        {"seed": -1},
        {"init": "spectral"},
    ],
)
def test_invalid_config(changes):
    with pytest.raises(DomainError):
        FitConfig(**changes)


def test_moves_are_stored_as_tuple():
    config = FitConfig(moves=["pair_swap"])

    assert config.moves == ("pair_swap",)
