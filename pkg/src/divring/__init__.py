"""Exact computations with finite-dimensional division rings: maximal subfields,
commutators, bounded-degree identities and word rewriting over a subfield."""

from .errors import *  # noqa: F401,F403
from .exactfield import (
    GF, QQ, ExtensionField, FieldElem, PrimeField, RationalField, UPoly,
    field_arithmetic, field_from_spec, is_irreducible, is_separable, poly_arithmetic,
)
from .linalg import (
    DependenceTracker, Matrix, are_similar, charpoly, companion, direct_sum, inverse,
    is_nonderogatory, minpoly_matrix, minpoly_over_base, parse_matrix, rank,
    similarity_transform, solve_linear,
)
from .algebra import (
    AlgebraDef, AlgebraElem, alg_inverse, alg_mul, center, commutators, from_table,
    hilbert_symbol, is_division_quaternion, local_symbols, matrix_algebra, multiquadratic,
    quaternion, random_element, simple_extension,
)
from .subfield import SubfieldCtx, build_subfield, k_coordinates, regular_rep
from .identities import (
    DegreeProfile, cyclic_vector, degree_profile, eval_gd, eval_gd_batch, is_alg_bounded,
    left_inverse_from_minpoly, left_minpoly, minpoly_element,
)
from .maxsubfield import (
    build_l33_basis, is_max_subfield_gen, search_add_commutator, search_l34,
    search_mult_commutator, verify_bound_d2, verify_case1_identity,
)
from .words import (
    FormalSum, Word, bell_decompose, deglex_cmp, estimate_bound_n, polarization_terms,
    power_factorization, shirshov_split, word,
)
from .rewrite import reduce_power_case, reduce_shirshov_case, rewrite_word, verify_span_dim
