"""
Core module that contains custom types used in coblockfit.

Custom types are used to assist type checker during the code development.
"""

from typing import Any, List
from typing_extensions import Literal, TypedDict

__all__ = [
    "Kind",
    "RhoMode",
    "SupportMethod",
    "InitStrategy",
    "Move",
    "DeclaredKey",
    "DeclaredKeys",
]

# Least squares or profile likelihood
Kind = Literal["ls", "pl"]

RhoMode = Literal["dense", "poly", "polylog"]

SupportMethod = Literal["exact", "alternating"]

InitStrategy = Literal["random", "oracle_latent", "provided"]

Move = Literal["single_relabel", "pair_swap"]


class DeclaredKey(TypedDict):
    keyword: str
    value: Any
    type: type
    description: str


DeclaredKeys = List[DeclaredKey]
