"""Rank-metric MRD codes of the twisted-Gabidulin family.

Construction and exhaustive verification of H_{k,s}(L1, L2) codes over
small finite fields, together with every invariant used to separate them:
Delsarte duals, adjoint codes, nuclei, equivalence tests and automorphism
groups with their closed-form cardinalities.
"""

from .errors import (BudgetExceededError, MrdError, PreconditionError,
                     PresetConditionError)
from .gf import Field, field_create
from .linpoly import (AdditiveMap, LinPoly, adjoint, compose, compose_add,
                      factor_through, invert, is_invertible, kernel, matrix_of,
                      rank, rho_twist)
from .codes import (Code, CodeSpec, PROP, PROP_NONE, PROP_TWIST, build_h_code,
                    gabidulin, is_mrd, min_distance_exhaustive,
                    mrd_norm_criterion, preset, proportionality_class,
                    rank_spectrum)
from .invariants import (NucleusResult, adjoint_code, adjoint_code_shape_check,
                         delsarte_dual, dual_closed_form, nucleus,
                         nucleus_closed_form, nucleus_duality_check)
from .equivalence import (EquivMap, GammaSet, apply_equiv, equiv_closed_form,
                          full_equiv_search, gamma_closed_form,
                          gamma_enumerate, monomial_equiv_search)
from .automorphism import (AutTriple, SupportSet, aut_brute, aut_enumerate,
                           aut_membership, aut_order_closed_form,
                           aut_order_monomial, compose_triples,
                           congruence_solution_counts, identity_triple,
                           invert_triple, kappa, support_of, tau_general,
                           tau_witness_set)

__version__ = "0.1.0"
