"""Compact routing in unit disk graphs via well-separated pair decompositions."""
from .geom import (
    ShortestPathTree,
    Site,
    UnitDiskGraph,
    build_udg,
    density_upper_bound,
    graph_diameter,
    shortest_paths,
)
from .hierarchy import Emst, Hierarchy, HierarchyNode, balanced_edge, build_emst, build_hierarchy
from .wspd import Wspd, WspdPair, build_wspd, find_representing_pair, is_well_separated
from .scheme import (
    RoutingScheme,
    assign_pairs,
    build_scheme,
    choose_c,
    compute_middle_sites_fast,
    middle_site,
)
from .router import Header, RouteTrace, StepResult, measure_stretch, route, route_step
from .density import ExtendedScheme, build_extended_scheme, build_net, find_bridges, route_extended

__version__ = "0.1.0"
