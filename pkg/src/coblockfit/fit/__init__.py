"""
The fit subpackage: least-squares and profile-likelihood co-blockmodel
estimators.
"""

from .config import FitConfig
from .anneal import FitResult, block_means, init_labels, fit_coblockmodel
from .records import write_fit_record, read_fit_record

__all__ = [
    "FitConfig",
    "FitResult",
    "block_means",
    "init_labels",
    "fit_coblockmodel",
    "write_fit_record",
    "read_fit_record",
]
