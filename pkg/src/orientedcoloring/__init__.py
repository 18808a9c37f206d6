"""Oriented coloring of bounded-degree graphs via Paley/Tromp targets."""

__version__ = "0.1.0"

from .colorer import (
    ColoringResult,
    color_auto,
    color_deg3,
    color_degenerate,
    color_general,
    select_target,
)
from .digraph import (
    ColorMap,
    GraphError,
    OrientedGraph,
    TargetGraph,
    connected_components,
    degree_profile,
    find_k_sinks,
    find_k_sources,
    has_source_adjacent_to_sink,
    parse_color_map,
    parse_digraph,
    verify_homomorphism,
    write_color_map,
    write_digraph,
)
from .generators import GenSpec, Xorshift64Star, generate
from .gf import FieldError, FieldSpec, build_field
from .homsolver import SolverConfig, TheoremContradiction, qr7_oracle, solve
from .paley import PaleyTournament, affine_automorphism, build_paley, converse_map, map_arc_to_arc
from .properties import (
    Certification,
    PropertyReport,
    alpha_successors,
    certified_properties,
    check_cnk,
    check_pnk,
    count_transitive_triangles,
    is_compatible,
    search_minimal_paley,
)
from .tromp import (
    TrompGraph,
    TrStarGraph,
    build_t9,
    build_tromp,
    build_tromp_star,
    find_tromp_automorphism,
    tromp_over_paley,
)

__all__ = [name for name in dir() if not name.startswith("_")]
