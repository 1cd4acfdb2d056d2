"""Reference graphs transcribed from published drawings.

Petersen labelling: vertices 0..4 are the outer 5-cycle (alpha_1..alpha_5),
vertices 5..9 the inner pentagram (beta_1..beta_5), with spokes i -- i+5.

Each cornered Petersen variant P1..P6 is the Petersen graph plus one extra
vertex m = 10 whose neighbourhood lies inside the closed neighbourhood of
m' = 0, so m' corners m.  Regularity/girth self-checks guard transcription
errors in the hardcoded edge lists.
"""

from __future__ import annotations

from .graph import Graph, GraphError, girth

PETERSEN_M_PRIME = 0
CORNERED_VERTEX = 10

# N(m) for P1..P6, drawn from {m'=0, alpha_2=1, alpha_5=4, beta_1=5} = N[0]
_CORNER_NEIGHBORS = {
    1: (0,),
    2: (0, 5),
    3: (1, 4),
    4: (0, 1, 4),
    5: (5, 1, 4),
    6: (0, 5, 1, 4),
}

_ROBERTSON_EDGES_1BASED = [
    (1, 2), (1, 5), (1, 16), (1, 19), (2, 3), (2, 9), (2, 13), (3, 4),
    (3, 7), (3, 18), (4, 5), (4, 12), (4, 15), (5, 6), (5, 10), (6, 7),
    (6, 13), (6, 17), (7, 8), (7, 11), (8, 9), (8, 15), (8, 19), (9, 10),
    (9, 17), (10, 11), (10, 14), (11, 12), (11, 16), (12, 13), (12, 19),
    (13, 14), (14, 15), (14, 18), (15, 16), (16, 17), (17, 18), (18, 19),
]

_DODECAHEDRAL_EDGES_1BASED = [
    (1, 14), (1, 15), (1, 16), (2, 5), (2, 6), (2, 13), (3, 7), (3, 14),
    (3, 19), (4, 8), (4, 15), (4, 20), (5, 11), (5, 19), (6, 12), (6, 20),
    (7, 11), (7, 16), (8, 12), (8, 16), (9, 10), (9, 14), (9, 17), (10, 15),
    (10, 18), (11, 12), (13, 17), (13, 18), (17, 19), (18, 20),
]


def _check(g: Graph, degree: int, want_girth: int) -> Graph:
    if any(d != degree for d in g.degrees()) or girth(g) != want_girth:
        raise AssertionError("transcribed edge list failed its regularity/girth self-check")
    return g


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return _check(Graph.from_edges(10, edges), 3, 5)


def robertson() -> Graph:
    edges = [(u - 1, v - 1) for u, v in _ROBERTSON_EDGES_1BASED]
    return _check(Graph.from_edges(19, edges), 4, 5)


def dodecahedral() -> Graph:
    edges = [(u - 1, v - 1) for u, v in _DODECAHEDRAL_EDGES_1BASED]
    return _check(Graph.from_edges(20, edges), 3, 5)


def cornered_petersen(i: int) -> Graph:
    """The i-th cornered Petersen graph, i in 1..6; vertex 10 is m, vertex 0 is m'."""
    if i not in _CORNER_NEIGHBORS:
        raise GraphError(f"no cornered Petersen variant {i}")
    g = petersen()
    return g.with_vertex(sum(1 << v for v in _CORNER_NEIGHBORS[i]))


def corner_labels(i: int) -> list[tuple[int, int]]:
    """Valid (m, m') assignments for P_i.

    For P5 and P6 the two vertices have identical neighbourhoods, so both
    labellings are exposed and callers pick one.
    """
    if i not in _CORNER_NEIGHBORS:
        raise GraphError(f"no cornered Petersen variant {i}")
    pairs = [(CORNERED_VERTEX, PETERSEN_M_PRIME)]
    if i in (5, 6):
        pairs.append((PETERSEN_M_PRIME, CORNERED_VERTEX))
    return pairs


def named_graph(name: str) -> Graph:
    """Look up a reference graph by name.

    Known names: petersen, robertson, dodecahedral, cornered_petersen_1..6.
    """
    key = name.strip().lower()
    if key == "petersen":
        return petersen()
    if key == "robertson":
        return robertson()
    if key == "dodecahedral":
        return dodecahedral()
    if key.startswith("cornered_petersen_"):
        suffix = key.rsplit("_", 1)[-1]
        if suffix.isdigit():
            return cornered_petersen(int(suffix))
    raise GraphError(f"unknown named graph {name!r}")
