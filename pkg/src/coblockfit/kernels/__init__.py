"""
The kernels subpackage: generative kernels and array sampling.
"""

from .kernel_abc import KernelABC
from .sigmoid import (
    f_beta,
    z_beta,
    f_integral,
    f_square_integral,
    SigmoidSeparableKernel,
    make_sigmoid_kernel,
)
from .block import PiecewiseConstantKernel, BlockKernel
from .grid import GridKernel, constant_kernel
from .sampling import (
    LatentSample,
    SampledArray,
    sample_bipartite,
    rho_schedule,
    read_adjacency,
    write_adjacency,
)

__all__ = [
    "KernelABC",
    "f_beta",
    "z_beta",
    "f_integral",
    "f_square_integral",
    "SigmoidSeparableKernel",
    "make_sigmoid_kernel",
    "PiecewiseConstantKernel",
    "BlockKernel",
    "GridKernel",
    "constant_kernel",
    "LatentSample",
    "SampledArray",
    "sample_bipartite",
    "rho_schedule",
    "read_adjacency",
    "write_adjacency",
]
