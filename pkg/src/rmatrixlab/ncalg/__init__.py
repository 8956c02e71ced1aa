from .words import GenAlphabet, NCPoly, ugl_alphabet, uq_alphabet
from .rewrite import RewriteSystem, derive_uq_rules, nc_reduce, ugl_rules
from .operators import (build_L, lower_mat, mat_reduce, mats_equal_reduced,
                        nc_identity, nc_triangular_inverse, quotient_op,
                        rep_apply, rep_apply_matrix, to_nc, upper_mat,
                        upper_spectral, vector_rep)
from .checks import is_central

__all__ = [
    "GenAlphabet", "NCPoly", "ugl_alphabet", "uq_alphabet",
    "RewriteSystem", "derive_uq_rules", "nc_reduce", "ugl_rules",
    "build_L", "lower_mat", "upper_mat", "nc_identity", "mat_reduce",
    "mats_equal_reduced", "nc_triangular_inverse", "quotient_op", "to_nc",
    "upper_spectral", "vector_rep", "rep_apply", "rep_apply_matrix",
    "is_central",
]
