"""Independently even drawings on the sphere and torus, and the embeddings behind them."""

from __future__ import annotations

__version__ = "0.1.0"

from .graph import Graph, Graph6Error, complete, complete_bipartite, k3n_with_bracers, parse_graph6, write_graph6
from .scheme import DrawingScheme, RotationSystem, even_vertices, is_iocr0, odd_independent_pairs
from .solver import SAT, UNKNOWN, UNSAT, certificate_check, min_iocr, solve_sphere, solve_torus
from .embedder import constrained_embed, euler_genus, is_planar, is_toroidal, min_genus

__all__ = [
    "Graph", "Graph6Error", "complete", "complete_bipartite", "k3n_with_bracers", "parse_graph6",
    "write_graph6", "DrawingScheme", "RotationSystem", "even_vertices", "is_iocr0",
    "odd_independent_pairs", "SAT", "UNSAT", "UNKNOWN", "certificate_check", "min_iocr",
    "solve_sphere", "solve_torus", "constrained_embed", "euler_genus", "is_planar", "is_toroidal",
    "min_genus",
]
