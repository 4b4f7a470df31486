"""
The coclust subpackage: labelings, block summaries and support functions.
"""

from ..core.params import ClassCounts
from .labeling import (
    Labeling,
    as_labeling,
    indicator_matrix,
    hamming_normalized,
    labelings_with_counts,
    write_labeling,
    read_labeling,
)
from .summary import Direction, BlockSummary, block_summary
from .assign import assign_side
from .partition import (
    IntervalPartition,
    canonical_partitions,
    threshold_family,
    family_block_masses,
    population_block_mass,
)
from .support import (
    SupportResult,
    OracleResult,
    support_empirical,
    support_oracle,
)

__all__ = [
    "ClassCounts",
    "Labeling",
    "as_labeling",
    "indicator_matrix",
    "hamming_normalized",
    "labelings_with_counts",
    "write_labeling",
    "read_labeling",
    "Direction",
    "BlockSummary",
    "block_summary",
    "assign_side",
    "IntervalPartition",
    "canonical_partitions",
    "threshold_family",
    "family_block_masses",
    "population_block_mass",
    "SupportResult",
    "OracleResult",
    "support_empirical",
    "support_oracle",
]
