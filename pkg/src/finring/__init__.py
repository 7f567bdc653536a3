"""Finite rings as operation tables, with clean-ring classification and theorem checks."""

from .classify import (PROPERTIES, DecompositionRecord, PropertyVerdict, classify,
                       clean_decompositions, element_is_unituc, has_property, implication_audit,
                       replay_witness, unituc_oracle)
from .dsl import Node, ParseError, eval_expr, parse_expr, predicted_order, render_expr
from .persist import load_ring, save_ring
from .ring import (CapExceeded, ElementSubset, FiniteRing, RingError, RingHom, ring_add,
                   ring_mul, ring_neg, ring_pow, validate_ring_axioms, verify_hom,
                   verify_isomorphism)
from .structure import (are_conjugate, center, idempotent_conjugacy_classes, idempotents,
                        jacobson_radical, nilpotents, units)
from .verify import CorpusEntry, TheoremCheckResult, default_corpus, run_all, run_theorem

__all__ = [
    "PROPERTIES", "DecompositionRecord", "PropertyVerdict", "classify", "clean_decompositions",
    "element_is_unituc", "has_property", "implication_audit", "replay_witness", "unituc_oracle",
    "Node", "ParseError", "eval_expr", "parse_expr", "predicted_order", "render_expr",
    "load_ring", "save_ring", "CapExceeded", "ElementSubset", "FiniteRing", "RingError",
    "RingHom", "ring_add", "ring_mul", "ring_neg", "ring_pow", "validate_ring_axioms",
    "verify_hom", "verify_isomorphism", "are_conjugate", "center",
    "idempotent_conjugacy_classes", "idempotents", "jacobson_radical", "nilpotents",
    "units", "CorpusEntry", "TheoremCheckResult", "default_corpus", "run_all",
    "run_theorem",
]
