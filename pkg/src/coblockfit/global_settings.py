import numpy as np
import numpy.typing as npt

ARRAY_FLOAT = npt.NDArray[np.float64]
ARRAY_INT = npt.NDArray[np.int64]

# Clamp applied to connectivity probabilities before any logarithm
DEFAULT_EPS = 1e-6

# Absolute tolerances of the adaptive quadrature routines
QUAD_TOL_1D = 1e-10
QUAD_TOL_2D = 1e-8

DEFAULT_THRESHOLD_GRID = 256
DEFAULT_PHI_RESOLUTION = 100
DEFAULT_SUPPORT_RESTARTS = 32
EXACT_ENUMERATION_CAP = 10
