"""Legendrian rational tangles, box-dot diagrams and flype classification."""
__version__ = "0.1.0"

from .rational_core import (FlypeVector, NotationError, Rational, TwistVector, cf_value,
                            enumerate_flype_vectors, parse_vector, regular_cf, subdivide)
from .boxdot import apply_f_move, diagram, mark_classes, sign_marks, standard_diagram, template
from .tangle import (build_front, build_unknot, connectivity_type, subtangle_connectivity,
                     trace_strands)
from .invariants import (Convention, cusp_counts, strandwise_invariants, tb_r, verify_unknot,
                         writhe)
from .classifier import (bijection_obstruction, canonicalize, cardinality_check, classify_pair,
                         elliptic_profile, sigma, sigma_inf)

__all__ = [
    "FlypeVector", "NotationError", "Rational", "TwistVector", "cf_value",
    "enumerate_flype_vectors", "parse_vector", "regular_cf", "subdivide",
    "apply_f_move", "diagram", "mark_classes", "sign_marks", "standard_diagram", "template",
    "build_front", "build_unknot", "connectivity_type", "subtangle_connectivity", "trace_strands",
    "Convention", "cusp_counts", "strandwise_invariants", "tb_r", "verify_unknot", "writhe",
    "bijection_obstruction", "canonicalize", "cardinality_check", "classify_pair",
    "elliptic_profile", "sigma", "sigma_inf",
]
