"""Computational geometry of Dyer groups.

Word problem and normal forms over the syllable generating set X_S, Cayley
balls, mediangle axiom checks and hyperplanes, fellow-traveller path
shortening, and the cone-type automaton of the geodesic language.
"""

from .cayley import CayleyBall, ResourceLimitError, build_ball
from .cones import (
    ConsistencyError,
    GeodesicAutomaton,
    build_geodesic_automaton,
    cone_profile,
    geodesic_growth,
    growth_rational,
    minimize,
    spherical_growth,
    truncated_cone_type,
)
from .fftp import FalsificationEvent, shorten_within_tube, verify_fftp
from .graph import (
    INF,
    CompatibilityError,
    DyerGraph,
    DyerGraphError,
    GroupClass,
    Letter,
    classify,
    enumerate_letters,
    max_edge_label,
    parse_dyer_graph,
)
from .mediangle import check_all, compute_hyperplanes, verify_hyperplane_criterion
from .words import DyerGroup, format_word, parse_word

__version__ = "0.1.0"

__all__ = [
    "INF",
    "CayleyBall",
    "CompatibilityError",
    "ConsistencyError",
    "DyerGraph",
    "DyerGraphError",
    "DyerGroup",
    "FalsificationEvent",
    "GeodesicAutomaton",
    "GroupClass",
    "Letter",
    "ResourceLimitError",
    "build_ball",
    "build_geodesic_automaton",
    "check_all",
    "classify",
    "compute_hyperplanes",
    "cone_profile",
    "enumerate_letters",
    "format_word",
    "geodesic_growth",
    "growth_rational",
    "max_edge_label",
    "minimize",
    "parse_dyer_graph",
    "parse_word",
    "shorten_within_tube",
    "spherical_growth",
    "truncated_cone_type",
    "verify_fftp",
    "verify_hyperplane_criterion",
]
