"""copwin: exact cops-and-robbers machinery on small graphs.

Library surface: a compact graph core with graph6 I/O and isomorphism
machinery, an exact game-state solver for up to four cops, a bounded-degree
connected-graph generator, the reduction calculus for cop-number thresholds,
and the two-phase merging search for candidate 4-cop-win graphs.  The
`copwin` CLI drives classification campaigns and the published-table
verifiers.
"""

from .graph import (
    Graph,
    GraphError,
    VertexSet,
    closed_neighborhood,
    connected_components,
    corner_extensions,
    find_corners,
    girth,
    is_connected,
    is_planar,
    parse_graph6,
    strong_stable_sets,
    write_graph6,
)
from .named import cornered_petersen, corner_labels, dodecahedral, named_graph, petersen, robertson
from .canon import (
    Partition,
    all_isomorphisms,
    are_strongly_isomorphic,
    automorphism_orbits,
    automorphisms,
    canonical_form,
    canonical_labeling,
    vertex_orbits,
    vertex_order_classes,
)
from .engine import (
    COPS,
    ROBBER,
    GameState,
    WinTable,
    can_force,
    cop_number,
    cops_can_win,
    is_dismantlable,
)
from .generate import GenSpec, generate, generate_subtree, iter_graphs, subtree_roots
from .reductions import (
    Classification,
    classify,
    component_rule,
    degree_shortcut,
    m_filter,
    retract_component_rule,
    strip_corners,
)
from .merge import MergeConfig, MergeReport, PartialGraph, phase1, phase2, run_merge

__all__ = [name for name in dir() if not name.startswith("_")]
