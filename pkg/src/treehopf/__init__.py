"""Exact computation in the Hopf algebras of rooted trees.

Canonical rooted trees and forests, growth/pruning multiplicities, the
Kreimer Hopf algebra and its graded dual, and the Grossman-Larson algebra
with its isomorphism onto that dual.
"""
from .errors import (ArgumentOrderError, ConsistencyError, DegreeMismatchError, InvalidWordError,
                     ResourceLimitError, TreeHopfError, TreeSyntaxError)
from .grossman_larson import (chi, chi_by_pairing, chi_inverse, find_panaite_witness, gl_coproduct,
                              gl_coproduct_lin, gl_mul, gl_product, panaite_bracket_check,
                              primitive_basis, triple_m, triple_n)
from .kreimer import (DualElem, admissible_cuts, coproduct_cuts, coproduct_recursive, d_bullet,
                      derivation_D, derivation_N, derivation_P, dual_N_star, dual_P_star, dual_product,
                      m_bullet, n_star_closed, naturally_grown, p_star_closed, pn_char_poly_predicted,
                      pn_matrix, product, z)
from .linalg import char_poly
from .linspace import LinComb, Tensor, inner_forest, inner_tree
from .operators import (WordNP, apply_word, binomial_sum_check, grow, involution_sum, m_mult, n_mult,
                        prune, stanley_word_value)
from .serialize import parse_lincomb
from .trees import (BULLET, UNIT, Forest, RootedTree, b_minus, b_plus, chain, cm_weight,
                    enumerate_forests, enumerate_trees, labelling_count, parse, parse_forest, star,
                    symmetry_order, tree_counts)

__version__ = "0.1.0"
