"""Game engine: named cop numbers, fixpoint properties, dismantlability."""

from __future__ import annotations

import random

import pytest

from copwin.engine import (
    COPS,
    ROBBER,
    GameState,
    WinTable,
    can_force,
    cop_number,
    cops_can_win,
    is_dismantlable,
)
from copwin.generate import GenSpec, iter_graphs
from copwin.graph import Graph, GraphError
from copwin.named import cornered_petersen, dodecahedral, petersen, robertson

from conftest import random_connected_graph


def test_named_cop_numbers():
    assert not cops_can_win(petersen(), 2)
    assert cops_can_win(petersen(), 3)
    assert cop_number(dodecahedral(), 3) == 3
    assert cop_number(cornered_petersen(3), 3) == 3
    assert cop_number(Graph.empty(1), 3) == 1


def test_robertson_is_four_cop_win():
    r = robertson()
    assert not cops_can_win(r, 3)
    assert cops_can_win(r, 4)
    assert cop_number(r, 3) is None
    assert cop_number(r, 4) == 4


def test_trees_and_cycles():
    tree = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (0, 5)])
    assert cops_can_win(tree, 1)
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert not cops_can_win(c4, 1)
    assert cops_can_win(c4, 2)


def test_bad_inputs():
    with pytest.raises(GraphError):
        cops_can_win(Graph.empty(0), 1)
    with pytest.raises(GraphError):
        cops_can_win(petersen(), 0)
    with pytest.raises(GraphError):
        cops_can_win(petersen(), 5)
    with pytest.raises(GraphError):
        cop_number(petersen(), 0)


def test_monotonicity_exhaustive_small():
    for n in range(1, 8):
        for g in iter_graphs(GenSpec(n)):
            wins = [cops_can_win(g, k) for k in (1, 2, 3)]
            for a, b in zip(wins, wins[1:]):
                assert (not a) or b


def test_monotonicity_random_larger():
    rng = random.Random(51)
    for _ in range(25):
        g = random_connected_graph(rng, rng.randint(8, 12), rng.uniform(0.15, 0.5))
        wins = [cops_can_win(g, k) for k in (1, 2, 3)]
        for a, b in zip(wins, wins[1:]):
            assert (not a) or b


def test_dismantlable_equals_one_cop_exhaustive():
    for n in range(1, 8):
        for g in iter_graphs(GenSpec(n)):
            assert is_dismantlable(g) == cops_can_win(g, 1)


def test_dismantlable_random_sample():
    rng = random.Random(52)
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(8, 12), rng.uniform(0.2, 0.6))
        assert is_dismantlable(g) == cops_can_win(g, 1)


def test_win_table_cop_order_invariance():
    g = petersen()
    t = WinTable(g, 2)
    rng = random.Random(53)
    for _ in range(50):
        a, b, r = rng.randrange(10), rng.randrange(10), rng.randrange(10)
        side = COPS if rng.random() < 0.5 else ROBBER
        assert t.is_cop_win(GameState((a, b), r, side)) == t.is_cop_win(
            GameState((b, a), r, side)
        )


def test_win_table_capture_states_marked():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    t = WinTable(g, 1)
    assert t.is_cop_win(GameState((1,), 1, ROBBER))
    assert t.is_cop_win(GameState((1,), 1, COPS))
    assert t.cops_succeed


def test_can_force_empty_targets_equals_cops_can_win():
    rng = random.Random(54)
    for _ in range(20):
        g = random_connected_graph(rng, rng.randint(4, 9), 0.4)
        for k in (1, 2):
            assert can_force(g, k, []) == cops_can_win(g, k)
    assert not can_force(petersen(), 2, [])


def test_can_force_malformed_targets():
    g = petersen()
    with pytest.raises(GraphError):
        can_force(g, 2, [GameState((0, 1, 2), 3, COPS)])
    with pytest.raises(GraphError):
        can_force(g, 2, [GameState((0, 99), 3, COPS)])
    with pytest.raises(GraphError):
        can_force(g, 2, [GameState((0, 1), 3, "nobody")])


def test_can_force_reaches_a_chasing_position():
    # strong stable set {alpha_1, beta_2, beta_3} = {0, 6, 7}: cops on {6,7},
    # robber on 0, cops to move
    p = petersen()
    assert can_force(p, 2, [GameState((6, 7), 0, COPS)])


def test_state_space_visit_bound():
    g = petersen()
    for k in (1, 2):
        t = WinTable(g, k)
        assert t.pushes <= t.state_count


def test_unconnected_component_unreachable_robber_wins():
    # two cops on a disconnected graph cannot guard both 4-cycles with one cop
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]
    g = Graph.from_edges(8, edges)
    assert not cops_can_win(g, 1)
    assert not cops_can_win(g, 2)  # robber picks the cycle with fewer cops
    assert cops_can_win(g, 4)
