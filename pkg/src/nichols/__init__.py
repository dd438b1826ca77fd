"""Cartan graphs of Nichols algebras of diagonal type in ranks five to seven."""
from .braiding import BraidingMatrix, GDDiagram, apply_permutation, diagram_iso
from .cartan import CartanMatrix, NotIFinite, cartan_matrix
from .cartan_graph import (
    CartanGraph,
    LocalCartanGraph,
    build_graph,
    enumerate_roots,
    exchange_graph,
    verify_axioms,
)
from .cyclotomic import Ambient, RootOfUnity, q_integer_is_zero
from .neighborhoods import NeighborhoodWitness, good_neighborhood, goodnei_exists
from .reflection import reflect_diagram, reflect_matrix, s_map

__all__ = [
    "Ambient",
    "BraidingMatrix",
    "CartanGraph",
    "CartanMatrix",
    "GDDiagram",
    "LocalCartanGraph",
    "NeighborhoodWitness",
    "NotIFinite",
    "RootOfUnity",
    "apply_permutation",
    "build_graph",
    "cartan_matrix",
    "diagram_iso",
    "enumerate_roots",
    "exchange_graph",
    "good_neighborhood",
    "goodnei_exists",
    "q_integer_is_zero",
    "reflect_diagram",
    "reflect_matrix",
    "s_map",
    "verify_axioms",
]
