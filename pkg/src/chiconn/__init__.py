"""Highly connected subgraphs with large chromatic number: templates, exact solvers, and constructive checks."""

from .coloring import BudgetExhausted, chromatic_number, find_coloring, find_respecting_coloring, respects
from .errors import InvariantViolation
from .graph import Graph, GraphInputError, induced_subgraph, vertex_connectivity_at_least
from .proof import HypothesisError, extend_316k, extend_4k, extract_subgraph, reduce_classes
from .template import EMPTY, Template, TemplateError
from .witness import Witness, minimal_inextensible_subgraph, verify_witness

__all__ = [
    "BudgetExhausted",
    "EMPTY",
    "Graph",
    "GraphInputError",
    "HypothesisError",
    "InvariantViolation",
    "Template",
    "TemplateError",
    "Witness",
    "chromatic_number",
    "extend_316k",
    "extend_4k",
    "extract_subgraph",
    "find_coloring",
    "find_respecting_coloring",
    "induced_subgraph",
    "minimal_inextensible_subgraph",
    "reduce_classes",
    "respects",
    "verify_witness",
    "vertex_connectivity_at_least",
]
