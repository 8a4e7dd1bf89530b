"""Piecewise-linear fingerprints of 3D lattices in R^13.

Exact rational arithmetic is the default; see :func:`numeric_mode` to switch
to floats.  The main entry points are re-exported here.
"""
from .core import (CellParameters, SymMat, apply_unimodular, cell_from_gram,
                   gram_from_cell, is_positive_definite, numeric_mode, sym2, sym3)
from .ctype import (enumerate_ctype_reps, facets, initial_phi, neighbor_phi,
                    phi_equivalent)
from .embedding import (Embedding13, EmbeddingKind, MetricKind, embed,
                        embed_distance, iota_m, iota_s, lattice_distance,
                        rank2_distance, vonorm_distance_generic)
from .errors import (DegenerateCone, InternalAssertion, KindMismatch,
                     LatticeError, NonPositiveDefinite, NonTermination,
                     NotReduced, ParseError, RetryExhausted)
from .isometry import (candidate_isometries, exact_isometries, match_isometry,
                       psi_sets, stably_less)
from .reduction import (is_minkowski_reduced, is_selling_reduced,
                        minkowski_reduce, reduce_2d, selling_reduce)
from .vonorm import (PhiSet, VonormTable, conorm_map, shortest_in_coset,
                     vonorm_map, voronoi_vectors)

__version__ = "0.1.0"

__all__ = [
    "CellParameters", "DegenerateCone", "Embedding13", "EmbeddingKind",
    "InternalAssertion", "KindMismatch", "LatticeError", "MetricKind",
    "NonPositiveDefinite", "NonTermination", "NotReduced", "ParseError",
    "PhiSet", "RetryExhausted", "SymMat", "VonormTable", "apply_unimodular",
    "candidate_isometries", "cell_from_gram", "conorm_map", "embed",
    "embed_distance", "enumerate_ctype_reps", "exact_isometries", "facets",
    "gram_from_cell", "initial_phi", "iota_m", "iota_s", "is_minkowski_reduced",
    "is_positive_definite", "is_selling_reduced", "lattice_distance",
    "match_isometry", "minkowski_reduce", "neighbor_phi", "numeric_mode",
    "phi_equivalent", "psi_sets", "rank2_distance", "reduce_2d",
    "selling_reduce", "shortest_in_coset", "stably_less", "sym2", "sym3",
    "vonorm_distance_generic", "vonorm_map", "voronoi_vectors",
]
