"""Gallai (rainbow-triangle-free) edge-colorings: extraction, constructions, exact checks."""

from .coloring import EdgeColoring, Witness, check_witness, find_rainbow_triangle, is_gallai
from .constants import ConstantsGeneral, ConstantsTight3
from .constructions import WeightGraph, coloring_from_weight_graph, optimal_weight_graph
from .decomposition import build_decomposition, find_gallai_partition
from .discrepancy import PairWeights, find_heavy_set, heavy_set_from_deviation, variance_audit
from .errors import (BudgetExhausted, GallaiError, InputError, NotGallaiError, PropertyViolation,
                     ScaleCapExceeded)
from .extraction import (extract_general, extract_tight3, extract_triple, extract_two_colored,
                         extract_weak_general, validate_certificate)
from .oracle import g_exact
from .products import lex_product, random_gallai
from .ramsey import bicolor_clique_pair, weighted_ramsey

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted",
    "ConstantsGeneral",
    "ConstantsTight3",
    "EdgeColoring",
    "GallaiError",
    "InputError",
    "NotGallaiError",
    "PairWeights",
    "PropertyViolation",
    "ScaleCapExceeded",
    "WeightGraph",
    "Witness",
    "bicolor_clique_pair",
    "build_decomposition",
    "check_witness",
    "coloring_from_weight_graph",
    "extract_general",
    "extract_tight3",
    "extract_triple",
    "extract_two_colored",
    "extract_weak_general",
    "find_gallai_partition",
    "find_heavy_set",
    "find_rainbow_triangle",
    "g_exact",
    "heavy_set_from_deviation",
    "is_gallai",
    "lex_product",
    "optimal_weight_graph",
    "random_gallai",
    "validate_certificate",
    "variance_audit",
    "weighted_ramsey",
]
