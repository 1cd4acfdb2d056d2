"""Reduction calculus: corner stripping, degree shortcuts, composite classify."""

from __future__ import annotations

import random

from copwin.canon import canonical_form
from copwin.engine import cops_can_win
from copwin.generate import GenSpec, iter_graphs
from copwin.graph import Graph, find_corners
from copwin.named import cornered_petersen, petersen, robertson
from copwin.reductions import (
    Classification,
    classify,
    classify_engine_only,
    component_rule,
    degree_shortcut,
    m_filter,
    retract_component_rule,
    strip_corners,
)

from conftest import random_connected_graph


def petersen_with_pendant_path() -> Graph:
    edges = petersen().edges() + [(0, 10), (10, 11)]
    return Graph.from_edges(12, edges)


# -- strip_corners ----------------------------------------------------------------


def test_strip_corners_examples():
    assert canonical_form(strip_corners(cornered_petersen(1))) == canonical_form(petersen())
    tree = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)])
    assert strip_corners(tree).n == 1
    assert strip_corners(petersen()) == petersen()


def test_strip_corners_confluent_up_to_isomorphism():
    rng = random.Random(61)

    def random_strip(g: Graph, rg: random.Random) -> Graph:
        while True:
            corners = find_corners(g)
            if not corners:
                return g
            x, _ = rg.choice(corners)
            g = g.delete(1 << x)

    for _ in range(60):
        g = random_connected_graph(rng, rng.randint(3, 10), rng.uniform(0.2, 0.7))
        a = random_strip(g, random.Random(rng.random()))
        b = random_strip(g, random.Random(rng.random()))
        assert canonical_form(a) == canonical_form(b)


# -- degree shortcut ------------------------------------------------------------------


def test_degree_shortcut_examples():
    k5 = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert degree_shortcut(k5) == 2
    assert degree_shortcut(petersen()) == 3
    assert degree_shortcut(robertson()) is None


def test_degree_shortcut_never_contradicted():
    rng = random.Random(62)
    for _ in range(60):
        g = random_connected_graph(rng, rng.randint(4, 10), rng.uniform(0.2, 0.7))
        bound = degree_shortcut(g)
        if bound is not None:
            assert cops_can_win(g, min(bound, 4))


# -- component rule --------------------------------------------------------------------


def leaf3(g: Graph) -> Classification:
    return classify(g, 3)


def test_component_rule_examples():
    c4_tree = Graph.from_edges(
        8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (5, 7)]
    )
    assert component_rule(c4_tree, 3, leaf3).cop_number == 2
    pk1 = Graph.from_edges(11, petersen().edges())
    assert component_rule(pk1, 3, leaf3).cop_number == 3
    assert component_rule(petersen(), 3, leaf3).cop_number == 3


# -- retract component rule ---------------------------------------------------------------


def test_retract_rule_strips_pendant_path():
    g = petersen_with_pendant_path()
    # N[1] contains the attachment vertex 0, so {10, 11} is a component of
    # G - N[1] with cop number 1
    reduced = retract_component_rule(g, 1, 3)
    assert reduced is not None
    assert canonical_form(reduced) == canonical_form(petersen())


def test_retract_rule_keeps_petersen_component():
    edges = [(0, 1), (0, 2), (0, 3), (1, 4)]
    edges += [(4 + u, 4 + v) for u, v in petersen().edges()]
    g = Graph.from_edges(14, edges)
    assert retract_component_rule(g, 0, 3) is None


def test_retract_rule_dominating_vertex():
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert retract_component_rule(star, 0, 2) is None


# -- classify ------------------------------------------------------------------------------


def test_classify_matches_engine_small_exhaustive():
    for n in range(1, 7):
        for g in iter_graphs(GenSpec(n)):
            assert classify(g, 3).cop_number == classify_engine_only(g, 3).cop_number


def test_classify_matches_engine_random_sample():
    rng = random.Random(63)
    for _ in range(500):
        n = rng.randint(8, 13)
        g = random_connected_graph(rng, n, rng.uniform(0.15, 0.6))
        assert classify(g, 3).cop_number == classify_engine_only(g, 3).cop_number


def test_classify_named_examples():
    for i in range(1, 7):
        assert classify(cornered_petersen(i), 3).cop_number == 3
    res = classify(robertson(), 3)
    assert res.cop_number is None and res.bucket() == ">3"
    assert classify(robertson(), 4).cop_number == 4
    assert classify(Graph.empty(0), 3).cop_number == 0


def test_classify_disconnected_combines_components():
    pk1 = Graph.from_edges(11, petersen().edges())
    res = classify(pk1, 3)
    assert res.cop_number == 3 and res.evidence == "components"


# -- m filter -------------------------------------------------------------------------------


def test_m_filter_requires_cornerless():
    forms = {canonical_form(petersen())}
    assert not m_filter(cornered_petersen(1), forms)


def test_m_filter_c5_fails():
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert not m_filter(c5, {canonical_form(petersen())})


def test_m_filter_robertson():
    r = robertson()
    deletions = []
    for u in range(r.n):
        sub, _ = r.induced(r.vertex_mask() & ~r.closed_mask(u))
        deletions.append(sub)
    forms = {canonical_form(s) for s in deletions}
    # every neighbourhood deletion of the Robertson graph is a connected
    # 3-cop-win graph on 14 vertices with max degree 4
    for s in deletions:
        assert s.n == 14 and s.max_degree() <= 4
        assert classify(s, 3).cop_number == 3
    assert m_filter(r, forms)
    assert not m_filter(r, set())


def test_m_filter_false_on_disconnected_deletion():
    g = petersen_with_pendant_path()
    assert not m_filter(g, {canonical_form(petersen())})
