"""Iterated line graphs: divalent-path statistics, triangularity, Hamiltonian-type
indices and the oracles and harness that check the bounds on them."""

from __future__ import annotations

from .caps import Caps
from .divalent import d_tilde, ell_statistics, pendant_condition
from .graph import MultiGraph, classify, in_class_G
from .line import LineTower, build_tower, line_graph

__all__ = [
    "Caps",
    "LineTower",
    "MultiGraph",
    "build_tower",
    "classify",
    "d_tilde",
    "ell_statistics",
    "in_class_G",
    "line_graph",
    "pendant_condition",
]

__version__ = "0.1.0"
