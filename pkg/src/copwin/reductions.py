"""Threshold classifier built from cop-number shortcuts.

Cheap rules run before the game engine: disconnected graphs split into
components, corners strip off without changing cop numbers at least 2, and
a large maximum degree bounds the cop number outright (Delta >= n-5 gives
c <= 2, Delta > n-11 gives c <= 3).  Every verdict agrees with a pure
game-engine classification; the reductions only skip work.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .canon import canonical_form
from .engine import cops_can_win
from .graph import Graph, bits, connected_components, find_corners, is_connected


@dataclass(frozen=True)
class Classification:
    """Cop-number verdict up to a threshold; None means 'greater than k_max'."""

    cop_number: int | None
    k_max: int
    evidence: str

    def bucket(self) -> str:
        return str(self.cop_number) if self.cop_number is not None else f">{self.k_max}"


def _first_corner(g: Graph) -> int | None:
    for x in range(g.n):
        nx = g.neighbors_mask(x)
        for u in range(g.n):
            if u != x and nx & ~g.closed_mask(u) == 0:
                return x
    return None


def strip_corners(g: Graph) -> Graph:
    """Delete corners until none remain.

    Cop-number preserving whenever the result's cop number is at least 2;
    callers distinguishing c=1 from c=2 must consult the engine on the
    original graph.
    """
    while True:
        x = _first_corner(g)
        if x is None:
            return g
        g = g.delete(1 << x)


def degree_shortcut(g: Graph) -> int | None:
    """Upper bound on c(g) from the maximum degree, when one applies."""
    n, delta = g.n, g.max_degree()
    if delta >= n - 5:
        return 2
    if delta > n - 11:
        return 3
    return None


def component_rule(
    g: Graph, k_max: int, leaf: Callable[[Graph], Classification]
) -> Classification:
    """Classify componentwise and combine by max; >k_max absorbs."""
    comps = connected_components(g)
    if len(comps) == 1:
        return leaf(g)
    best = 0
    for comp in comps:
        sub, _ = g.induced(comp.mask)
        res = leaf(sub)
        if res.cop_number is None:
            return Classification(None, k_max, f"components({res.evidence})")
        best = max(best, res.cop_number)
    return Classification(best, k_max, "components")


def retract_component_rule(g: Graph, u: int, k: int) -> Graph | None:
    """Strip components K of G-N[u] with c(K) <= k-1; preserves 'c <= k'.

    Returns G-K for the union K of all qualifying components, or None when no
    component qualifies (including when G-N[u] is empty).
    """
    rest = g.vertex_mask() & ~g.closed_mask(u)
    if rest == 0:
        return None
    sub, old = g.induced(rest)
    drop = 0
    for comp in connected_components(sub):
        csub, cold = sub.induced(comp.mask)
        verdict = classify(csub, min(k - 1, 4))
        if verdict.cop_number is not None and verdict.cop_number <= k - 1:
            for v in comp:
                drop |= 1 << old[v]
    if drop == 0:
        return None
    return g.delete(drop)


def classify(g: Graph, k_max: int) -> Classification:
    """Exact cop-number verdict up to k_max, using the reduction calculus.

    Rule order is cheapest-first: components, engine k=1 on the original
    graph (corner stripping cannot separate c=1 from c=2), corner stripping,
    degree shortcut, then the engine for the remaining k ascending.
    """
    if g.n == 0:
        return Classification(0, k_max, "empty")
    return component_rule(g, k_max, lambda comp: _classify_connected(comp, k_max))


def _classify_connected(g: Graph, k_max: int) -> Classification:
    if cops_can_win(g, 1):
        return Classification(1, k_max, "engine:k1")
    if k_max <= 1:
        return Classification(None, k_max, "engine:k1")
    h = strip_corners(g)
    tag = "corners+" if h.n < g.n else ""
    # c(g) >= 2 here; stripping preserves that c(g) = c(h) when c(h) >= 2,
    # and c(h) <= 1 collapses the answer to exactly 2
    bound = degree_shortcut(h)
    if bound == 2:
        return Classification(2, k_max, f"{tag}degree<=2")
    if bound == 3:
        if cops_can_win(h, 2):
            return Classification(2, k_max, f"{tag}engine:k2")
        if k_max >= 3:
            return Classification(3, k_max, f"{tag}degree<=3")
        return Classification(None, k_max, f"{tag}engine:k2")
    for k in range(2, k_max + 1):
        if cops_can_win(h, k):
            return Classification(k, k_max, f"{tag}engine:k{k}")
    return Classification(None, k_max, f"{tag}engine:k{k_max}")


def classify_engine_only(g: Graph, k_max: int) -> Classification:
    """Componentwise game-engine classification with no shortcuts."""
    if g.n == 0:
        return Classification(0, k_max, "empty")

    def leaf(comp: Graph) -> Classification:
        for k in range(1, k_max + 1):
            if cops_can_win(comp, k):
                return Classification(k, k_max, "engine")
        return Classification(None, k_max, "engine")

    return component_rule(g, k_max, leaf)


def m_filter(g: Graph, three_cop_forms: set[str]) -> bool:
    """Candidate filter: no corner, and G-N[u] connected with a form in the list.

    The list is meant to hold canonical forms of the relevant 3-cop-win
    graphs, making this the paper-style test that neighbourhood deletions
    cannot already certify c <= 3.
    """
    if find_corners(g):
        return False
    for u in range(g.n):
        rest = g.vertex_mask() & ~g.closed_mask(u)
        sub, _ = g.induced(rest)
        if not is_connected(sub):
            return False
        if canonical_form(sub) not in three_cop_forms:
            return False
    return True
