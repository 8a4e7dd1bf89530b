"""Integer constants shared by both kernel backends."""
import numpy as np

from ..core import signed_permutations
from ..embedding import MINKOWSKI_MIN_GROUPS, MINKOWSKI_VECTORS
from ..reduction import SIGMA

STANDARD_SUPERBASE = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
                              dtype=np.int64)

# Upper-triangle index pairs of the 4x4 superbase matrix, lexicographic.
PAIRS = np.array([(i, j) for i in range(4) for j in range(i + 1, 4)], dtype=np.int64)

# sigma_1..sigma_3 then the identity for case (iv).
SIGMAS = np.array([SIGMA[1], SIGMA[2], SIGMA[3], np.eye(3, dtype=np.int64)],
                  dtype=np.float64)

SIGNED_PERMS = np.array(signed_permutations(3), dtype=np.int64)

MINKOWSKI_VECTORS = np.array(MINKOWSKI_VECTORS, dtype=np.int64)

MIN_GROUPS = tuple(np.array(g, dtype=np.int64) for g in MINKOWSKI_MIN_GROUPS)

# Flattened form of MIN_GROUPS for the compiled kernels: vectors and group ids.
MIN_GROUP_VECTORS = np.concatenate(MIN_GROUPS)
MIN_GROUP_IDS = np.concatenate([np.full(len(g), k, dtype=np.int64)
                                for k, g in enumerate(MIN_GROUPS)])
