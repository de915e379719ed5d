"""Analysis of finitely generated Coxeter presentations.

Classifies finite visible subgroups, decides twist/blow-down/blow-up
eligibility of bases, executes those diagram transformations with certified
generator-substitution records, and computes the rank spectrum of the group
from any one presentation diagram.
"""

from .classify import (Base, SphericalType, basic_subsets, classify_irreducible,
                       direct_product, find_base, find_isomorphism, free_product,
                       group_order, is_spherical, template_matrix)
from .coxfile import emit, emit_dot, parse, parse_file
from .eligibility import (EligibilityReport, all_reports, blow_up_eligible,
                          condition1, condition2, condition3, is_contractible,
                          report, sinks_of)
from .errors import CertificationFailed, CoxError, InternalInconsistency, ParseError
from .geometry import geometric_check
from .matrix import (INFINITY, CoxeterMatrix, components, extended_odd,
                     find_cycles_chord_free_through, is_simplex, neighborhood,
                     odd_component, perp)
from .spectrum import RankSpectrum, compute_k, compute_l, spectrum
from .transforms import (TransformRecord, blow_down, blow_up,
                         normalize_for_blow_down, track, twist)
from .words import (CanonicalForm, enumerate_elements, equal, longest_element,
                    reduce_word, verify_isomorphism)

__all__ = [
    "Base", "CanonicalForm", "CertificationFailed", "CoxError", "CoxeterMatrix",
    "EligibilityReport", "INFINITY", "InternalInconsistency", "ParseError",
    "RankSpectrum", "SphericalType", "TransformRecord", "all_reports",
    "basic_subsets", "blow_down", "blow_up", "blow_up_eligible",
    "classify_irreducible", "components", "compute_k", "compute_l",
    "condition1", "condition2", "condition3", "direct_product", "emit",
    "emit_dot", "enumerate_elements", "equal", "extended_odd", "find_base",
    "find_cycles_chord_free_through", "find_isomorphism", "free_product",
    "geometric_check", "group_order", "is_contractible", "is_simplex",
    "is_spherical", "longest_element", "neighborhood", "normalize_for_blow_down",
    "odd_component", "parse", "parse_file", "perp", "reduce_word", "report",
    "sinks_of", "spectrum", "template_matrix", "track", "twist",
    "verify_isomorphism",
]
