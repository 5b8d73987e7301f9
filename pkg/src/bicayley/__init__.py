"""Bi-Cayley graphs and the BCI/CI problems at desk scale."""

from .bci import (BCIVerdict, CIVerdict, bipartite_semiregular_class, build_reverser,
                  connection_set_classes, is_bci_graph, is_ci_digraph, is_m_bci_group,
                  is_m_dci_group, parse_set, set_labels)
from .caps import CapExceeded
from .graphs import (DiGraph, Graph, bcay, cay, girth, graph6_decode, graph6_encode,
                     named_graph, quotient_graph)
from .groups import (FinGroup, GroupSpec, GroupSpecError, build_group, classify_class_C,
                     is_homogeneous, parse_group_spec)
from .isomorph import automorphism_group, canonical_form, is_arc_transitive, s_regularity
from .kernels import BACKEND
from .permgrp import PermGroup

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BCIVerdict", "CIVerdict", "CapExceeded", "DiGraph", "FinGroup", "Graph",
    "GroupSpec", "GroupSpecError", "PermGroup", "automorphism_group", "bcay",
    "bipartite_semiregular_class", "build_group", "build_reverser", "canonical_form", "cay",
    "classify_class_C", "connection_set_classes", "girth", "graph6_decode", "graph6_encode",
    "is_arc_transitive", "is_bci_graph", "is_ci_digraph", "is_homogeneous", "is_m_bci_group",
    "is_m_dci_group", "named_graph", "parse_group_spec", "parse_set", "quotient_graph",
    "s_regularity", "set_labels",
]
