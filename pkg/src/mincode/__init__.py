"""Minimal codewords of linear codes over small finite fields, via projective geometry."""

from .alpha import (AlphaConfig, CoverWitness, alpha_brute, alpha_closed, alpha_construction,
                    alpha_value, bound_M, bound_Ml, complement_code, exact_m)
from .canon import canonical_form
from .code import (LinearCode, code_from_matrix, code_from_points, count_minimal,
                   count_support_minimal, ghw, is_minimal_hyperplane, min_distance,
                   oracle_count_minimal, oracle_count_support_minimal, reduce_to_projective,
                   subcode_of_subspace, subspace_of_subcode, weight_hierarchy)
from .errors import MincodeError
from .geometry import PointSet, gaussian_binomial, hyperplanes, pg_points, point_index, subspaces_codim
from .gf import FieldSpec, field_new
from .linalg import MatrixGF, nullspace_basis, rank, rref
from .search import M_value, SearchTask, TableEntry, class_counts, m_table, m_value

__version__ = "0.1.0"

__all__ = [
    "AlphaConfig", "CoverWitness", "FieldSpec", "LinearCode", "M_value", "MatrixGF",
    "MincodeError", "PointSet", "SearchTask", "TableEntry", "alpha_brute", "alpha_closed",
    "alpha_construction", "alpha_value", "bound_M", "bound_Ml", "canonical_form",
    "class_counts", "code_from_matrix", "code_from_points", "complement_code",
    "count_minimal", "count_support_minimal", "exact_m", "field_new", "gaussian_binomial",
    "ghw", "hyperplanes", "is_minimal_hyperplane", "m_table", "m_value", "min_distance",
    "nullspace_basis", "oracle_count_minimal", "oracle_count_support_minimal", "pg_points",
    "point_index", "rank", "reduce_to_projective", "rref", "subcode_of_subspace",
    "subspace_of_subcode", "subspaces_codim", "weight_hierarchy",
]
