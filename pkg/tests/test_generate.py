"""Generator: exactly one representative per isomorphism class.

Two independent cross-checks: (a) brute-force labelled enumeration with
permutation-minimal canonical forms for tiny orders, and (b) counting all
labelled graphs directly and comparing against sum(n!/|Aut|) over the
generated classes, which catches both duplicates and omissions.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations

import numpy as np
import pytest
from numba import njit

from copwin.canon import automorphisms, canonical_form
from copwin.generate import GenSpec, generate, generate_subtree, iter_graphs, subtree_roots
from copwin.graph import Graph, GraphError

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


@njit(cache=True)
def _count_labeled(n, min_deg, max_deg, connected_only):
    m = n * (n - 1) // 2
    ei = np.empty(m, np.int64)
    ej = np.empty(m, np.int64)
    k = 0
    for j in range(1, n):
        for i in range(j):
            ei[k] = i
            ej[k] = j
            k += 1
    total = 0
    adj = np.empty(n, np.int64)
    for mask in range(1 << m):
        for v in range(n):
            adj[v] = 0
        for e in range(m):
            if mask >> e & 1:
                adj[ei[e]] |= np.int64(1) << ej[e]
                adj[ej[e]] |= np.int64(1) << ei[e]
        ok = True
        for v in range(n):
            d = 0
            x = adj[v]
            while x:
                x &= x - 1
                d += 1
            if d < min_deg or d > max_deg:
                ok = False
                break
        if not ok:
            continue
        if connected_only:
            seen = np.int64(1)
            frontier = np.int64(1)
            while frontier:
                nxt = np.int64(0)
                f = frontier
                while f:
                    low = f & -f
                    v = 0
                    while (low >> v) & 1 == 0:
                        v += 1
                    f ^= low
                    nxt |= adj[v]
                frontier = nxt & ~seen
                seen |= frontier
            if seen != (np.int64(1) << n) - 1:
                continue
        total += 1
    return total


def brute_classes(n: int, min_deg: int, max_deg: int, connected_only: bool) -> set:
    """Permutation-minimal canonical keys of every qualifying labelled graph."""
    from copwin.graph import is_connected

    pairs = list(combinations(range(n), 2))
    out = set()
    perms = list(permutations(range(n)))
    for mask in range(1 << len(pairs)):
        edges = [pairs[e] for e in range(len(pairs)) if mask >> e & 1]
        g = Graph.from_edges(n, edges)
        degs = g.degrees()
        if min(degs) < min_deg or max(degs) > max_deg:
            continue
        if connected_only and not is_connected(g):
            continue
        out.add(_perm_min(edges, perms))
    return out


def _perm_min(edges, perms):
    return min(
        tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges))
        for p in perms
    )


def perm_min_key(g: Graph):
    return _perm_min(g.edges(), list(permutations(range(g.n))))


# -- counts against published sequences ----------------------------------------------


@pytest.mark.parametrize("n,count", sorted(CONNECTED_COUNTS.items()))
def test_connected_counts(n, count):
    assert generate(GenSpec(n)) == count


@pytest.mark.parametrize("n,count", sorted(ALL_COUNTS.items()))
def test_all_graph_counts(n, count):
    assert generate(GenSpec(n, connected_only=False)) == count


# -- naive labelled oracle -------------------------------------------------------------


@pytest.mark.parametrize(
    "n,min_deg,max_deg,connected",
    [
        (4, 0, 3, True),
        (5, 0, 4, True),
        (5, 2, 3, True),
        (5, 0, 4, False),
        (5, 1, 2, False),
    ],
)
def test_exact_class_sets_vs_brute_force(n, min_deg, max_deg, connected):
    got = {
        perm_min_key(g)
        for g in iter_graphs(GenSpec(n, min_deg, max_deg, connected))
    }
    assert got == brute_classes(n, min_deg, max_deg, connected)


@pytest.mark.parametrize(
    "n,min_deg,max_deg,connected",
    [
        (6, 0, 5, True),
        (6, 2, 3, True),
        (7, 0, 6, True),
        (7, 2, 3, True),
        (7, 0, 4, True),
        (7, 0, 6, False),
        (7, 2, 4, False),
    ],
)
def test_labeled_count_equals_orbit_sum(n, min_deg, max_deg, connected):
    want = _count_labeled(n, min_deg, max_deg, connected)
    fact = math.factorial(n)
    got = 0
    for g in iter_graphs(GenSpec(n, min_deg, max_deg, connected)):
        got += fact // len(automorphisms(g))
    assert got == want


# -- stream properties ---------------------------------------------------------------


def test_no_isomorphic_duplicates_spotcheck():
    for spec in (GenSpec(8, 0, 7), GenSpec(9, 2, 3)):
        forms = [canonical_form(g) for g in iter_graphs(spec)]
        assert len(forms) == len(set(forms))


def test_emitted_graphs_respect_spec():
    spec = GenSpec(8, 2, 3)
    for g in iter_graphs(spec):
        assert g.n == 8
        assert g.min_degree() >= 2
        assert g.max_degree() <= 3
        from copwin.graph import is_connected

        assert is_connected(g)


def test_deterministic_stream_order():
    spec = GenSpec(7, 1, 4)
    first = [canonical_form(g) for g in iter_graphs(spec)]
    second = [canonical_form(g) for g in iter_graphs(spec)]
    assert first == second


def test_subtree_roots_partition_the_stream():
    spec = GenSpec(8, 2, 3)
    whole = sorted(canonical_form(g) for g in iter_graphs(spec))
    for depth in (3, 5, 7):
        parts: list[str] = []
        for root in subtree_roots(spec, depth):
            generate_subtree(spec, root, lambda g: parts.append(canonical_form(g)))
        assert sorted(parts) == whole


def test_spec_validation():
    with pytest.raises(GraphError):
        GenSpec(0)
    with pytest.raises(GraphError):
        GenSpec(17)
    with pytest.raises(GraphError):
        GenSpec(5, 3, 2)
    with pytest.raises(GraphError):
        GenSpec(5, 0, 5)  # max degree must stay below n
    with pytest.raises(GraphError):
        subtree_roots(GenSpec(5), 9)
