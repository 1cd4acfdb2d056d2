"""Exact decision procedures for the pursuit game.

Rules: the cops pick starting vertices, then the robber picks one (picking an
occupied vertex is immediate capture), and play alternates with the cops
moving first.  Each piece may stay put or move along one edge; co-location at
any moment is capture.  Cops are interchangeable, so cop positions are kept
as sorted multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _solver
from .graph import Graph, GraphError

MAX_COPS = 4

COPS = "cops"
ROBBER = "robber"


@dataclass(frozen=True)
class GameState:
    """One node of the game's state space; cop order is irrelevant."""

    cops: tuple[int, ...]
    robber: int
    to_move: str

    def canonical(self) -> "GameState":
        return GameState(tuple(sorted(self.cops)), self.robber, self.to_move)


def _nbr_array(g: Graph) -> np.ndarray:
    return g.adj_array()


def _check_k(g: Graph, k: int) -> None:
    if g.n == 0:
        raise GraphError("empty graph has no pursuit game")
    if not 1 <= k <= MAX_COPS:
        raise GraphError(f"cop count {k} outside supported range 1..{MAX_COPS}")


class WinTable:
    """Solved success table for k cops on a fixed graph."""

    def __init__(self, g: Graph, k: int, targets: Iterable[GameState] = ()):
        _check_k(g, k)
        self.graph = g
        self.k = k
        n = g.n
        ms = _solver.multisets(n, k)
        self._rank = {tuple(int(x) for x in row): i for i, row in enumerate(ms)}
        tgt_cop: list[int] = []
        tgt_rob: list[int] = []
        for t in targets:
            s = _normalize_state(g, k, t)
            si = self._rank[s.cops] * n + s.robber
            (tgt_cop if s.to_move == COPS else tgt_rob).append(si)
        win_cop, win_rob, placement, pushes = _solver.solve(
            _nbr_array(g),
            k,
            np.array(sorted(set(tgt_cop)), dtype=np.int64),
            np.array(sorted(set(tgt_rob)), dtype=np.int64),
        )
        self._win_cop = win_cop
        self._win_rob = win_rob
        self.cops_succeed = bool(placement)
        self.pushes = int(pushes)
        self.state_count = 2 * len(self._rank) * n

    def is_cop_win(self, state: GameState) -> bool:
        s = _normalize_state(self.graph, self.k, state)
        si = self._rank[s.cops] * self.graph.n + s.robber
        table = self._win_cop if s.to_move == COPS else self._win_rob
        return bool(table[si])


def _normalize_state(g: Graph, k: int, state: GameState) -> GameState:
    if state.to_move not in (COPS, ROBBER):
        raise GraphError(f"bad side to move {state.to_move!r}")
    if len(state.cops) != k:
        raise GraphError(f"state uses {len(state.cops)} cops, expected {k}")
    for v in (*state.cops, state.robber):
        if not 0 <= v < g.n:
            raise GraphError(f"state mentions vertex {v} outside 0..{g.n - 1}")
    return state.canonical()


_NO_TARGETS = np.empty(0, dtype=np.int64)


def cops_can_win(g: Graph, k: int) -> bool:
    """True iff k cops have a winning strategy on g (assumed connected)."""
    _check_k(g, k)
    _, _, placement, _ = _solver.solve(_nbr_array(g), k, _NO_TARGETS, _NO_TARGETS)
    return bool(placement)


def can_force(g: Graph, k: int, targets: Iterable[GameState]) -> bool:
    """True iff k cops can guarantee reaching a target state or a capture.

    Computed as the least-fixpoint attacker-reachability solution: play that
    never hits a target or capture counts for the robber.  With no targets
    this coincides with cops_can_win.
    """
    return WinTable(g, k, targets).cops_succeed


def cop_number(g: Graph, k_max: int = 3) -> int | None:
    """Least k <= k_max with a cop win, or None meaning 'greater than k_max'."""
    if not 1 <= k_max <= MAX_COPS:
        raise GraphError(f"k_max {k_max} outside supported range 1..{MAX_COPS}")
    for k in range(1, k_max + 1):
        if cops_can_win(g, k):
            return k
    return None


def is_dismantlable(g: Graph) -> bool:
    """True iff deleting dominated vertices (N[x] <= N[u]) reaches K1.

    Agrees with cops_can_win(g, 1) on connected graphs.
    """
    if g.n == 0:
        raise GraphError("empty graph")
    return bool(_solver.dismantlable(_nbr_array(g)))
