"""Graph-core predicates against brute-force oracles, plus the named graphs."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from copwin.graph import (
    Graph,
    GraphError,
    VertexSet,
    closed_neighborhood,
    connected_components,
    corner_extensions,
    find_corners,
    girth,
    is_connected,
    strong_stable_sets,
)
from copwin.named import (
    CORNERED_VERTEX,
    PETERSEN_M_PRIME,
    cornered_petersen,
    corner_labels,
    dodecahedral,
    named_graph,
    petersen,
    robertson,
)
from copwin.canon import canonical_form

from conftest import random_graph


def adjacency_sets(g: Graph) -> list[set[int]]:
    return [set(g.neighbors(v)) for v in range(g.n)]


# -- construction invariants ---------------------------------------------------


def test_rejects_loops_asymmetry_capacity():
    with pytest.raises(GraphError):
        Graph(2, [0b01, 0b01])  # loop at 0 (bit 0 set on vertex 0)
    with pytest.raises(GraphError):
        Graph(2, [0b10, 0b00])  # asymmetric
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.empty(33)


def test_vertex_set_complement():
    vs = VertexSet.of([0, 2], 4)
    assert vs.complement().as_set() == {1, 3}
    assert 2 in vs and 1 not in vs
    assert len(vs) == 2


# -- neighbourhoods and components ----------------------------------------------


def test_closed_neighborhood_examples():
    p = petersen()
    for u in range(10):
        assert len(closed_neighborhood(p, u)) == 4
    k1 = Graph.empty(1)
    assert closed_neighborhood(k1, 0).as_set() == {0}
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    for v in range(5):
        assert closed_neighborhood(c5, v).as_set() == {(v - 1) % 5, v, (v + 1) % 5}


def test_components_petersen_connected():
    comps = connected_components(petersen())
    assert len(comps) == 1 and len(comps[0]) == 10


def test_components_disjoint_union():
    edges = [(i, (i + 1) % 4) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 5) for i in range(5)]
    g = Graph.from_edges(9, edges)
    comps = connected_components(g)
    assert [c.as_set() for c in comps] == [{0, 1, 2, 3}, {4, 5, 6, 7, 8}]


def test_petersen_minus_closed_neighborhood_is_6_cycle():
    p = petersen()
    for u in range(10):
        sub, _ = p.induced(p.vertex_mask() & ~p.closed_mask(u))
        comps = connected_components(sub)
        assert len(comps) == 1 and len(comps[0]) == 6
        assert all(sub.degree(v) == 2 for v in range(6))
        assert girth(sub) == 6


# -- corners ------------------------------------------------------------------


def corners_oracle(g: Graph) -> set[tuple[int, int]]:
    adj = adjacency_sets(g)
    out = set()
    for x in range(g.n):
        for u in range(g.n):
            if x != u and adj[x] <= adj[u] | {u}:
                out.add((x, u))
    return out


def test_corners_match_oracle_on_random_graphs():
    rng = random.Random(21)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.1, 0.9))
        assert set(find_corners(g)) == corners_oracle(g)


def test_path_endpoints_are_corners():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    found = set(find_corners(path))
    assert (0, 1) in found and (2, 1) in found


def test_petersen_has_no_corners():
    assert find_corners(petersen()) == []


def test_cornered_petersens_have_m_cornered_by_m_prime():
    for i in range(1, 7):
        g = cornered_petersen(i)
        assert (CORNERED_VERTEX, PETERSEN_M_PRIME) in find_corners(g)
        assert g.delete(1 << CORNERED_VERTEX) == petersen()


# -- corner extensions -----------------------------------------------------------


def test_corner_extensions_of_petersen_yields_the_six_variants():
    exts = corner_extensions(petersen(), 4)
    assert len(exts) == 6
    forms = {canonical_form(g) for g in exts}
    want = {canonical_form(cornered_petersen(i)) for i in range(1, 7)}
    assert forms == want
    # same six even with a looser degree cap or none: N[u] only has 4 vertices
    assert {canonical_form(g) for g in corner_extensions(petersen(), 5)} == want
    assert {canonical_form(g) for g in corner_extensions(petersen())} == want


def test_corner_extensions_tiny_cases():
    k1 = Graph.empty(1)
    exts = corner_extensions(k1, 1)
    assert len(exts) == 1 and exts[0].edge_count() == 1
    k2 = Graph.from_edges(2, [(0, 1)])
    assert corner_extensions(k2, 1) == []


def test_corner_extensions_outputs_satisfy_contract():
    rng = random.Random(4)
    from conftest import random_connected_graph

    for _ in range(20):
        g = random_connected_graph(rng, rng.randint(2, 7))
        cap = rng.randint(1, g.n)
        exts = corner_extensions(g, cap)
        forms = [canonical_form(h) for h in exts]
        assert len(set(forms)) == len(forms)
        for h in exts:
            assert h.n == g.n + 1
            assert h.delete(1 << g.n) == g
            assert h.max_degree() <= cap
            assert any(x == g.n for x, _ in find_corners(h))


# -- strong stable sets ------------------------------------------------------------


def strong_stable_oracle(g: Graph) -> set[tuple[int, int, int]]:
    adj = adjacency_sets(g)
    out = set()
    for x, y, z in combinations(range(g.n), 3):
        if y in adj[x] or z in adj[x] or z in adj[y]:
            continue
        if adj[x] & adj[y] & adj[z]:
            continue
        out.add((x, y, z))
    return out


def test_strong_stable_sets_match_oracle():
    rng = random.Random(31)
    for _ in range(100):
        g = random_graph(rng, rng.randint(3, 10), rng.uniform(0.1, 0.8))
        assert set(strong_stable_sets(g)) == strong_stable_oracle(g)


def test_strong_stable_sets_examples():
    p = petersen()
    sets = set(strong_stable_sets(p))
    assert sets == strong_stable_oracle(p)
    # alpha_1=0, beta_2=6, beta_3=7 from the reference labelling
    assert (0, 6, 7) in sets
    k3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert strong_stable_sets(k3) == []


# -- named graphs -------------------------------------------------------------------


def test_named_graph_dispatch_and_shapes():
    p = named_graph("petersen")
    assert p.n == 10 and p.edge_count() == 15 and girth(p) == 5
    r = named_graph("robertson")
    assert r.n == 19 and r.edge_count() == 38 and girth(r) == 5
    assert all(r.degree(v) == 4 for v in range(19))
    d = named_graph("dodecahedral")
    assert d.n == 20 and d.edge_count() == 30 and girth(d) == 5
    with pytest.raises(GraphError):
        named_graph("heawood")


def test_cornered_petersen_6_twins():
    g = named_graph("cornered_petersen_6")
    m, mp = CORNERED_VERTEX, PETERSEN_M_PRIME
    assert g.degree(m) == 4 and g.degree(mp) == 4
    assert g.closed_mask(m) == g.closed_mask(mp)
    assert corner_labels(6) == [(m, mp), (mp, m)]


def test_cornered_petersen_5_twins():
    g = named_graph("cornered_petersen_5")
    m, mp = CORNERED_VERTEX, PETERSEN_M_PRIME
    assert g.neighbors_mask(m) == g.neighbors_mask(mp)
    assert corner_labels(5) == [(m, mp), (mp, m)]
    assert corner_labels(3) == [(m, mp)]


def test_cornered_petersens_pairwise_non_isomorphic():
    forms = {canonical_form(cornered_petersen(i)) for i in range(1, 7)}
    assert len(forms) == 6


def test_connectivity_flags():
    assert is_connected(petersen())
    assert not is_connected(Graph.empty(2))
    assert not is_connected(Graph.empty(0))
