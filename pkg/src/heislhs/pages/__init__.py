"""Pages of the spectral sequence: E2, d2, E3, weights and E_infinity."""

from .d2 import d2, d2_computed, d2_matrix
from .e2 import E2Element, Page, build_e2, e2_product, evaluate, generator_element
from .e3 import build_e3, e3_relation, generator_survival
from .weights import build_einfinity, collapse_certificate, weight_vanishing

__all__ = [
    "E2Element",
    "Page",
    "build_e2",
    "build_e3",
    "build_einfinity",
    "collapse_certificate",
    "d2",
    "d2_computed",
    "d2_matrix",
    "e2_product",
    "e3_relation",
    "evaluate",
    "generator_element",
    "generator_survival",
    "weight_vanishing",
]
