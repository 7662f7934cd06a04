"""Exact standard-monomial arithmetic for derivative-closed
determinantal ideals, straightening of minor-symbol products, and
jet-invariant verification, all over the integers."""

from .errors import InvariantViolation, UsageError
from .linalg import SparseMatrix, SpanSolver, rank, solve
from .minors import (MinorSymbol, SignedMinor, expand_minor, expand_product,
                     f_sum, fundamental_relation, in_ideal, make_minor,
                     minor_det, normalize_sequence, parse_minor,
                     parse_product, relation_coeffs)
from .morphism import (JetLieElement, invariant_kernel_dim, lie_derive, qh,
                       x_generator)
from .ring import (Monomial, Polynomial, Variable, a_var, b_var, bidegree,
                   bidegree_split, dbar, dbar_directional, derive,
                   poly_from_json, poly_to_json, x_var)
from .straighten import (StandardCombination, graded_dim, qh_product,
                         straighten, straighten_oracle)
from .tableaux import (Tableau, TaggedMinor, canonical_tagging,
                       chain_from_tableau, collapse, compare, enum_tagged,
                       enumerate_standard, is_greater, is_standard,
                       largest_tagged, largest_tagged_direct,
                       leading_monomial, leq_tagged, make_tagged, offsets,
                       tableau_from_monomial, tableau_of, truncate)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
