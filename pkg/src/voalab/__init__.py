"""voalab: exact-arithmetic workbench for lattice vertex algebras."""

__version__ = "0.1.0"

from .linalg import (Element, RowBasis, SpanSolver, row_reduce, quotient_dim,
                     solve_in_span, nullspace, NotInSpanError, SpaceMismatchError)
from .fock import (Space, FockBasis, TruncationOverflow, vacuum, basis_element,
                   strata, stratum_basis, enumerate_basis, heisenberg_mode,
                   lattice_mode, theta, fixed_subspace, conformal_vector, transport)
from .modes import (mode_action, virasoro_mode, virasoro_check, verify_commutator,
                    verify_iterate, set_memoization, clear_memo, integer_binomial)
from .cofinite import (QuotientTable, RewriteParams, C1Data, TensorReport,
                       cn_subspace, quotient_table, choose_X, c1_reps,
                       v_words, apply_word_to_vacuum, v_normal_form,
                       v_span_check, tensor_space, embed_pair, tensor_c2_check)
from .zhu import (star, circ, o_action, ZhuContext, build_context,
                  windowed_adim, ZhuProducts, a_product_table, class_coords)
from .rewrite import (NormalFormCertificate, NormalizeResult, LWVReport,
                      apply_word, word_operator_weight, word_measure,
                      compute_L, unfold_iterate, normalize, repetition_break,
                      lowest_weight_bound_B, annihilator_monomials, find_omega)
