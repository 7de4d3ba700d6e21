"""Exact invariants of Brieskorn spheres and negative-definite Seifert fibred spaces:
standard plumbing graphs, complete blow-downs, fillable contact structures,
d3-invariants, correction terms and obstruction reports."""
__version__ = "0.1.0"

from .arith import (Rational, SymIntMatrix, as_rational, eval_neg_cont_frac, exact_inverse,
                    is_irreducible, is_negative_definite, neg_cont_frac)
from .classify import (ObstructionReport, case_inequalities, expected_two_fillable, invariants,
                       obstruction_report, search_two_fillable)
from .dinv import correction_term, e0_obstruction_check, square
from .errors import (AmbiguousGammaPrime, InternalTypingError, SingularMatrixError, UnsupportedCase,
                     UnsupportedGraph, UnsupportedPresentation, ValidationError)
from .mlemma import BoxProblem, box_min, lemma_check, validate_m_matrix
from .plumbing import (GammaType, PlumbingGraph, TwistingData, gamma_prime, intersection_matrix,
                       standard_graph, validate_standard)
from .seifert import (BrieskornData, SeifertData, brieskorn_to_seifert, euler_number,
                      family_membership, reverse_orientation)
from .surgery import (SurgeryPresentation, blow_down_once, complete_blow_down, d3, d3_canonical,
                      enumerate_rotation_vectors, fillable_count)
